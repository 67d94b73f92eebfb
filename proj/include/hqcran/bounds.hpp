// Copyright 2026 The hqcran Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Interval-arithmetic bound propagation and ReLU stability classification.

#pragma once

#include <string_view>
#include <vector>

#include "hqcran/network.hpp"

namespace hqcran {

// Index 0 of pre_* / post_* holds the input box; entries 1..L hold the
// pre-activation and post-activation bounds of each layer.
struct BoundsStack {
  std::vector<Vector> pre_lower;
  std::vector<Vector> pre_upper;
  std::vector<Vector> post_lower;
  std::vector<Vector> post_upper;

  const Vector& input_lower() const { return pre_lower.front(); }
  const Vector& input_upper() const { return pre_upper.front(); }
  int num_layers() const { return static_cast<int>(pre_lower.size()) - 1; }
};

inline BoundsStack propagate_interval(const Network& net, const Ball& ball) {
  require(ball.center.size() == net.input_dim(), ErrorKind::kDimension,
          "ball center has length " + std::to_string(ball.center.size()) +
              ", network expects " + std::to_string(net.input_dim()));
  BoundsStack bs;
  Vector lo = ball.center.array() - ball.epsilon;
  Vector hi = ball.center.array() + ball.epsilon;
  bs.pre_lower.push_back(lo);
  bs.pre_upper.push_back(hi);
  bs.post_lower.push_back(lo);
  bs.post_upper.push_back(hi);
  for (int i = 1; i <= net.num_layers(); ++i) {
    const Layer& l = net.layer(i - 1);
    const Matrix w_pos = l.weights.cwiseMax(0.0);
    const Matrix w_neg = l.weights.cwiseMin(0.0);
    Vector pl = w_neg * hi + w_pos * lo + l.bias;
    Vector pu = w_pos * hi + w_neg * lo + l.bias;
    bs.pre_lower.push_back(pl);
    bs.pre_upper.push_back(pu);
    if (net.has_relu(i)) {
      lo = pl.cwiseMax(0.0);
      hi = pu.cwiseMax(0.0);
    } else {
      lo = pl;
      hi = pu;
    }
    bs.post_lower.push_back(lo);
    bs.post_upper.push_back(hi);
  }
  return bs;
}

enum class NeuronTag { kStableActive, kStableInactive, kUnstable, kLinear };

inline std::string_view to_string(NeuronTag tag) {
  switch (tag) {
    case NeuronTag::kStableActive: return "active";
    case NeuronTag::kStableInactive: return "inactive";
    case NeuronTag::kUnstable: return "unstable";
    case NeuronTag::kLinear: return "linear";
  }
  return "?";
}

struct StabilityMap {
  // tags[i-1][j] for layer i in 1..L.
  std::vector<std::vector<NeuronTag>> tags;
  // unstable_slot[i-1][j] is the column of y for an unstable neuron, else -1.
  std::vector<std::vector<int>> unstable_slot;
  int num_unstable = 0;

  NeuronTag tag(int layer, int j) const {
    return tags[static_cast<size_t>(layer - 1)][static_cast<size_t>(j)];
  }
  int slot(int layer, int j) const {
    return unstable_slot[static_cast<size_t>(layer - 1)][static_cast<size_t>(j)];
  }
};

// The lower-bound test runs first, so a degenerate [0, 0] interval is active.
inline NeuronTag classify(double lower, double upper) {
  if (lower >= 0.0) return NeuronTag::kStableActive;
  if (upper <= 0.0) return NeuronTag::kStableInactive;
  return NeuronTag::kUnstable;
}

inline StabilityMap classify_neurons(const BoundsStack& bs, bool final_relu) {
  StabilityMap sm;
  const int num_layers = bs.num_layers();
  for (int i = 1; i <= num_layers; ++i) {
    const Vector& lo = bs.pre_lower[static_cast<size_t>(i)];
    const Vector& hi = bs.pre_upper[static_cast<size_t>(i)];
    std::vector<NeuronTag> tags(static_cast<size_t>(lo.size()));
    std::vector<int> slots(static_cast<size_t>(lo.size()), -1);
    const bool linear = (i == num_layers) && !final_relu;
    for (Eigen::Index j = 0; j < lo.size(); ++j) {
      NeuronTag t = linear ? NeuronTag::kLinear : classify(lo[j], hi[j]);
      tags[static_cast<size_t>(j)] = t;
      if (t == NeuronTag::kUnstable) slots[static_cast<size_t>(j)] = sm.num_unstable++;
    }
    sm.tags.push_back(std::move(tags));
    sm.unstable_slot.push_back(std::move(slots));
  }
  return sm;
}

}  // namespace hqcran
