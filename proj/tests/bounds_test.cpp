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

#include <array>
#include <random>

#include <gtest/gtest.h>

#include "hqcran/bounds.hpp"
#include "oracles.hpp"

namespace hqcran {
namespace {

TEST(PropagateInterval, Tn1) {
  BoundsStack bs = propagate_interval(oracle::tn1(), Ball(Vector::Constant(1, 0.5), 0.1));
  EXPECT_NEAR(bs.pre_lower[1][0], -0.1, 1e-15);
  EXPECT_NEAR(bs.pre_upper[1][0], 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(bs.post_lower[1][0], 0.0);
  EXPECT_NEAR(bs.post_upper[1][0], 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(bs.pre_lower[2][0], 0.0);
  EXPECT_NEAR(bs.pre_upper[2][0], 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(bs.pre_lower[2][1], 0.25);
  EXPECT_DOUBLE_EQ(bs.pre_upper[2][1], 0.25);
  EXPECT_NEAR(bs.input_upper()[0] - 0.5, 0.1, 1e-15);
}

TEST(PropagateInterval, ZeroRadiusCollapses) {
  const std::array<int, 4> dims{3, 5, 4, 3};
  Network net = generate_random_network(dims, 1.0, 5);
  Vector x(3);
  x << 0.2, 0.7, 0.4;
  BoundsStack bs = propagate_interval(net, Ball(x, 0.0));
  auto pre = pre_activations(net, x);
  for (int i = 1; i <= net.num_layers(); ++i) {
    EXPECT_LT((bs.pre_lower[i] - pre[i]).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((bs.pre_upper[i] - pre[i]).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PropagateInterval, SignSplitByHand) {
  Matrix w(2, 2);
  w << 1, -1, 2, 0;
  Network net({Layer{w, Vector::Zero(2)}});
  BoundsStack bs = propagate_interval(net, Ball(Vector::Constant(2, 0.5), 0.5));
  EXPECT_DOUBLE_EQ(bs.pre_lower[1][0], -1.0);
  EXPECT_DOUBLE_EQ(bs.pre_upper[1][0], 1.0);
  EXPECT_DOUBLE_EQ(bs.pre_lower[1][1], 0.0);
  EXPECT_DOUBLE_EQ(bs.pre_upper[1][1], 2.0);
}

TEST(PropagateInterval, DimensionMismatch) {
  EXPECT_THROW(propagate_interval(oracle::tn1(), Ball(Vector::Zero(3), 0.1)), Error);
}

TEST(ClassifyNeurons, Tn1) {
  Network net = oracle::tn1();
  StabilityMap sm = classify_neurons(
      propagate_interval(net, Ball(Vector::Constant(1, 0.5), 0.1)), true);
  EXPECT_EQ(sm.tag(1, 0), NeuronTag::kUnstable);
  EXPECT_EQ(sm.tag(2, 0), NeuronTag::kStableActive);
  EXPECT_EQ(sm.tag(2, 1), NeuronTag::kStableActive);
  EXPECT_EQ(sm.num_unstable, 1);
  EXPECT_EQ(sm.slot(1, 0), 0);
}

TEST(ClassifyNeurons, DegenerateZeroIntervalIsActive) {
  Network net = oracle::tn1();
  StabilityMap sm = classify_neurons(
      propagate_interval(net, Ball(Vector::Constant(1, 0.5), 0.0)), true);
  EXPECT_EQ(sm.tag(1, 0), NeuronTag::kStableActive);
  EXPECT_EQ(sm.num_unstable, 0);
}

TEST(ClassifyNeurons, Rule) {
  EXPECT_EQ(classify(-1.0, -0.5), NeuronTag::kStableInactive);
  EXPECT_EQ(classify(0.0, 0.0), NeuronTag::kStableActive);
  EXPECT_EQ(classify(-0.1, 0.2), NeuronTag::kUnstable);
}

TEST(ClassifyNeurons, LinearFinalLayer) {
  const std::array<int, 3> dims{2, 3, 2};
  Network net = generate_random_network(dims, 1.0, 2, false);
  StabilityMap sm = classify_neurons(
      propagate_interval(net, Ball(Vector::Constant(2, 0.5), 0.1)), net.final_relu());
  EXPECT_EQ(sm.tag(2, 0), NeuronTag::kLinear);
  EXPECT_EQ(sm.tag(2, 1), NeuronTag::kLinear);
}

// Monte Carlo soundness, nesting in epsilon and monotone unstable count.
TEST(PropagateInterval, Properties) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int seed = 0; seed < 10; ++seed) {
    const std::array<int, 4> dims{4, 8, 6, 3};
    Network net = generate_random_network(dims, 1.0, 100 + seed);
    Vector x(4);
    for (int k = 0; k < 4; ++k) x[k] = unit(rng);
    const double eps = 0.05 + 0.05 * (seed % 3);
    BoundsStack bs = propagate_interval(net, Ball(x, eps));
    int violations = 0;
    for (int s = 0; s < 1000; ++s) {
      Vector xt(4);
      for (int k = 0; k < 4; ++k) xt[k] = x[k] + eps * (2.0 * unit(rng) - 1.0);
      auto pre = pre_activations(net, xt);
      for (int i = 1; i <= net.num_layers(); ++i)
        for (int j = 0; j < net.width(i); ++j)
          if (pre[i][j] < bs.pre_lower[i][j] - 1e-9 || pre[i][j] > bs.pre_upper[i][j] + 1e-9)
            ++violations;
    }
    EXPECT_EQ(violations, 0);

    BoundsStack wide = propagate_interval(net, Ball(x, 2.0 * eps));
    for (int i = 1; i <= net.num_layers(); ++i) {
      EXPECT_TRUE((wide.pre_lower[i].array() <= bs.pre_lower[i].array() + 1e-12).all());
      EXPECT_TRUE((wide.pre_upper[i].array() >= bs.pre_upper[i].array() - 1e-12).all());
    }
    EXPECT_LE(classify_neurons(bs, true).num_unstable, classify_neurons(wide, true).num_unstable);
  }
}

}  // namespace
}  // namespace hqcran
