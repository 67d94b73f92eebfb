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

// Seeded random verification instances shared by the acceptance checks.

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "hqcran/bounds.hpp"
#include "hqcran/encode.hpp"

namespace hqcran::suite {

struct Instance {
  int id = 0;
  Network net;
  Vector x;
  double epsilon = 0.0;
  int predicted = 0;
  int target = 0;
  MipProblem mip;
};

inline constexpr std::array<double, 3> kEpsilons{0.01, 0.05, 0.1};

inline Instance make_instance(int id) {
  std::mt19937_64 rng(0x5eed0000u + static_cast<std::uint64_t>(id));
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<int> dims{pick(2, 6)};
  const int hidden = pick(1, 2);
  for (int k = 0; k < hidden; ++k) dims.push_back(pick(2, 8));
  dims.push_back(pick(2, 4));
  Instance in;
  in.id = id;
  in.net = generate_random_network(dims, 1.0, rng(), id % 2 == 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  in.x = Vector(dims.front());
  for (Eigen::Index k = 0; k < in.x.size(); ++k) in.x[k] = unit(rng);
  in.epsilon = kEpsilons[static_cast<size_t>(id) % kEpsilons.size()];
  in.predicted = forward(in.net, in.x).predicted_class;
  in.target = (in.predicted + 1 + pick(0, dims.back() - 2)) % dims.back();
  in.mip = build_mip(in.net, propagate_interval(in.net, Ball(in.x, in.epsilon)));
  set_target(in.mip, in.predicted, in.target);
  return in;
}

inline std::vector<Instance> make_suite(int n = 200) {
  std::vector<Instance> out;
  for (int id = 0; id < n; ++id) out.push_back(make_instance(id));
  return out;
}

}  // namespace hqcran::suite
