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

#include "hqcran/verifiers.hpp"
#include "oracles.hpp"

namespace hqcran {
namespace {

struct Instance {
  Network net;
  BoundsStack bs;
  MipProblem mip;
};

Instance make(Network net, const Vector& x, double eps, int c, int t) {
  BoundsStack bs = propagate_interval(net, Ball(x, eps));
  MipProblem mip = build_mip(net, bs);
  set_target(mip, c, t);
  return {std::move(net), std::move(bs), std::move(mip)};
}

TEST(VerifyExact, Tn1) {
  Instance a = make(oracle::tn1(), Vector::Constant(1, 0.5), 0.1, 1, 0);
  VerifierResult r = verify_exact(a.mip);
  EXPECT_NEAR(r.bound, 0.15, 1e-9);
  EXPECT_TRUE(r.certified);
  // Independent check of the frozen value.
  EXPECT_NEAR(oracle::enumerate_phases(a.net, a.bs, a.mip.g).value, 0.15, 1e-9);

  Instance b = make(oracle::tn1(), Vector::Constant(1, 0.5), 0.5, 1, 0);
  r = verify_exact(b.mip);
  EXPECT_NEAR(r.bound, -0.25, 1e-9);
  EXPECT_FALSE(r.certified);
  EXPECT_NEAR(oracle::enumerate_phases(b.net, b.bs, b.mip.g).value, -0.25, 1e-9);
}

TEST(VerifyExact, ZeroRadiusIsLogitGap) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int seed = 0; seed < 10; ++seed) {
    const std::array<int, 4> dims{3, 5, 5, 3};
    Network net = generate_random_network(dims, 1.0, 40 + seed, seed % 2 == 0);
    Vector x(3);
    for (int k = 0; k < 3; ++k) x[k] = unit(rng);
    Prediction p = forward(net, x);
    const int t = (p.predicted_class + 1) % 3;
    Instance in = make(net, x, 0.0, p.predicted_class, t);
    EXPECT_NEAR(verify_exact(in.mip).bound, p.logits[p.predicted_class] - p.logits[t], 1e-6);
  }
}

TEST(VerifyConvex, Tn1) {
  Instance a = make(oracle::tn1(), Vector::Constant(1, 0.5), 0.1, 1, 0);
  EXPECT_NEAR(verify_convex(a.net, a.mip).bound, 0.15, 1e-9);
}

TEST(VerifyConvex, StableOnlyMatchesExact) {
  Instance a = make(oracle::tn1(), Vector::Constant(1, 0.5), 0.0, 1, 0);
  ASSERT_EQ(a.mip.num_y(), 0);
  EXPECT_NEAR(verify_convex(a.net, a.mip).bound, verify_exact(a.mip).bound, 1e-12);
}

// Exact equals phase enumeration; convex never exceeds exact; convex
// certificates imply exact certificates.
TEST(Verifiers, RandomSuiteAgainstEnumeration) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0, with_unstable = 0, convex_cert = 0, exact_cert = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const std::array<int, 4> dims{2, 6, 6, 2};
    Network net = generate_random_network(dims, 1.0, 500 + seed, seed % 4 != 3);
    Vector x(2);
    x << unit(rng), unit(rng);
    const double eps = std::array<double, 3>{0.02, 0.05, 0.1}[seed % 3];
    const int c = forward(net, x).predicted_class;
    Instance in = make(net, x, eps, c, 1 - c);
    const VerifierResult ex = verify_exact(in.mip);
    const VerifierResult cv = verify_convex(in.net, in.mip);
    EXPECT_LE(cv.bound, ex.bound + 1e-7) << "seed " << seed;
    if (cv.certified) EXPECT_TRUE(ex.certified) << "seed " << seed;
    convex_cert += cv.certified;
    exact_cert += ex.certified;
    if (in.mip.num_y() <= 12) {
      const auto en = oracle::enumerate_phases(in.net, in.bs, in.mip.g);
      ASSERT_TRUE(en.feasible);
      EXPECT_NEAR(ex.bound, en.value, 1e-6) << "seed " << seed;
      ++checked;
      with_unstable += in.mip.num_y() > 0;
    }
  }
  EXPECT_GE(checked, 40);
  EXPECT_GE(with_unstable, 20);
  EXPECT_LE(convex_cert, exact_cert);
}

}  // namespace
}  // namespace hqcran
