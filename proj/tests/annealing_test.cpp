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

#include <random>

#include <gtest/gtest.h>

#include "hqcran/annealing.hpp"
#include "oracles.hpp"

namespace hqcran {
namespace {

TEST(SolveSa, IndependentSpins) {
  IsingModel m;
  m.h = Vector(2);
  m.h << 1.0, -1.0;
  m.J = Matrix::Zero(2, 2);
  const AnnealResult r = solve_sa(m, 4, 100, 1);
  Vector want(2);
  want << 1.0, -1.0;
  EXPECT_EQ(r.spins, want);
  EXPECT_DOUBLE_EQ(r.energy, -2.0);
  Vector bits(2);
  bits << 1.0, 0.0;
  EXPECT_EQ(r.x, bits);
}

IsingModel random_ising(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  IsingModel m;
  m.h = Vector(n);
  m.J = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m.h[i] = g(rng);
    for (int j = i + 1; j < n; ++j) m.J(i, j) = g(rng);
  }
  m.offset = g(rng);
  return m;
}

TEST(SolveSa, Deterministic) {
  std::mt19937_64 rng(2);
  const IsingModel m = random_ising(rng, 12);
  const AnnealResult a = solve_sa(m, 10, 500, 42);
  const AnnealResult b = solve_sa(m, 10, 500, 42);
  EXPECT_EQ(a.spins, b.spins);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.best_read, b.best_read);
}

TEST(SolveSa, ReportedEnergyIsExact) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const IsingModel m = random_ising(rng, 10);
    const AnnealResult r = solve_sa(m, 3, 200, k);
    EXPECT_NEAR(r.energy, m.energy(r.spins), 1e-12);
  }
}

TEST(SolveSa, FindsGroundStateOfSmallGlasses) {
  std::mt19937_64 rng(4);
  int hits = 0;
  for (int k = 0; k < 30; ++k) {
    const IsingModel m = random_ising(rng, 10);
    const auto [s, e] = oracle::ising_minimum(m);
    const AnnealResult r = solve_sa(m, 20, 1000, k);
    EXPECT_GE(r.energy, e - 1e-9);
    hits += r.energy <= e + 1e-9;
  }
  EXPECT_GE(hits, 28);
}

TEST(SolveSa, RejectsBadArguments) {
  IsingModel m;
  m.h = Vector::Zero(1);
  m.J = Matrix::Zero(1, 1);
  EXPECT_THROW(solve_sa(m, 0, 10, 0), Error);
  EXPECT_THROW(solve_sa(m, 1, 0, 0), Error);
}

TEST(DefaultSchedule, HotBelowCold) {
  std::mt19937_64 rng(6);
  const AnnealSchedule s = default_schedule(random_ising(rng, 8));
  EXPECT_GT(s.beta_hot, 0.0);
  EXPECT_LT(s.beta_hot, s.beta_cold);
}

}  // namespace
}  // namespace hqcran
