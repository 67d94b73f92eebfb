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
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hqcran/encode.hpp"
#include "hqcran/samples.hpp"
#include "oracles.hpp"

namespace hqcran {
namespace {

MipProblem tn1_mip(double eps) {
  Network net = oracle::tn1();
  MipProblem mip = build_mip(net, propagate_interval(net, Ball(Vector::Constant(1, 0.5), eps)));
  set_target(mip, 1, 0);
  return mip;
}

TEST(BuildMip, Tn1Shapes) {
  MipProblem mip = tn1_mip(0.1);
  EXPECT_EQ(mip.num_z(), 4);
  EXPECT_EQ(mip.num_y(), 1);
  EXPECT_EQ(mip.num_b_rows(), 6);
  EXPECT_EQ(mip.num_d_rows(), 8);
  int nonzero_cols = 0;
  for (int k = 0; k < mip.num_y(); ++k) nonzero_cols += mip.b.col(k).cwiseAbs().sum() > 0;
  EXPECT_EQ(nonzero_cols, 1);
  EXPECT_NEAR(mip.b(0, 0), -0.1, 1e-15);
  EXPECT_NEAR(mip.b(3, 0), 0.1, 1e-15);
}

// Every entry derived by hand from the two coupling rows and the system rows.
TEST(BuildMip, Tn1Entries) {
  MipProblem mip = tn1_mip(0.1);
  Matrix a(6, 4);
  a << 1, -1, 0, 0,
       0, 1, -1, 0,
       0, 0, 0, -1,
       0, -1, 0, 0,
       0, 0, -1, 0,
       0, 0, 0, -1;
  Vector b(6);
  b << 0.4, 0.0, -0.25, 0.0, -0.1, -0.25;
  Matrix c(8, 4);
  c << 1, 0, 0, 0,
       -1, 0, 0, 0,
       -1, 1, 0, 0,
       0, -1, 1, 0,
       0, 0, 0, 1,
       0, 1, 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1;
  Vector d(8);
  d << 0.4, -0.6, -0.5, 0.0, 0.25, 0.0, 0.0, 0.0;
  EXPECT_LT((mip.a - a).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((mip.rhs_b - b).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((mip.c - c).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((mip.rhs_d - d).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(mip.b.col(0).cwiseAbs().sum() > 0, true);
  EXPECT_EQ(mip.b(1, 0), 0.0);
  EXPECT_EQ(mip.b(2, 0), 0.0);
}

TEST(BuildMip, NoUnstableMeansEmptyB) {
  MipProblem mip = tn1_mip(0.0);
  EXPECT_EQ(mip.num_y(), 0);
  EXPECT_EQ(mip.b.rows(), 6);
  EXPECT_EQ(mip.b.cols(), 0);
}

TEST(SetTarget, Layout) {
  MipProblem mip = tn1_mip(0.1);
  Vector g(4);
  g << 0, 0, -1, 1;
  EXPECT_EQ(mip.g, g);
  set_target(mip, 1, 0);
  EXPECT_EQ(mip.g, g);
  EXPECT_THROW(set_target(mip, 1, 1), Error);
  EXPECT_THROW(set_target(mip, 1, 2), Error);
}

bool matrix_form_holds(const MipProblem& mip, const Vector& z, const Vector& y, double tol) {
  const Vector lhs_b = mip.a * z + mip.b * y - mip.rhs_b;
  const Vector lhs_d = mip.c * z - mip.rhs_d;
  return (lhs_b.array() >= -tol).all() && (lhs_d.array() >= -tol).all();
}

// Feasibility of random (z, y) under the matrices agrees with the per-neuron
// constraint list; points are forward passes, optionally perturbed.
TEST(BuildMip, MatchesRawConstraints) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int feasible = 0, infeasible = 0;
  for (int net_seed = 0; net_seed < 6; ++net_seed) {
    for (bool final_relu : {true, false}) {
      const std::array<int, 3> dims{2, 4, 2};
      Network net = generate_random_network(dims, 1.0, 300 + net_seed, final_relu);
      Vector x(2);
      x << unit(rng), unit(rng);
      const double eps = 0.3;
      BoundsStack bs = propagate_interval(net, Ball(x, eps));
      MipProblem mip = build_mip(net, bs);
      for (int p = 0; p < 100; ++p) {
        Vector xt(2);
        for (int k = 0; k < 2; ++k) xt[k] = x[k] + eps * (2.0 * unit(rng) - 1.0);
        auto pre = pre_activations(net, xt);
        Vector z(mip.num_z());
        z.head(2) = xt;
        Vector y = Vector::Zero(mip.num_y());
        for (int i = 1; i <= net.num_layers(); ++i) {
          const Vector post = net.has_relu(i) ? Vector(pre[i].cwiseMax(0.0)) : pre[i];
          z.segment(mip.layer_offset[i], net.width(i)) = post;
          for (int j = 0; j < net.width(i); ++j)
            if (mip.stability.slot(i, j) >= 0) y[mip.stability.slot(i, j)] = pre[i][j] >= 0;
        }
        if (p % 2 == 1) {
          for (int k = 0; k < z.size(); ++k)
            if (unit(rng) < 0.3) z[k] += 0.2 * (2.0 * unit(rng) - 1.0);
          for (int k = 0; k < y.size(); ++k)
            if (unit(rng) < 0.3) y[k] = 1.0 - y[k];
        }
        const bool raw = oracle::raw_constraints_hold(net, bs, mip.stability, mip.layer_offset,
                                                      z, y, 1e-9);
        EXPECT_EQ(matrix_form_holds(mip, z, y, 1e-9), raw);
        (raw ? feasible : infeasible)++;
        if (raw) {
          set_target(mip, 0, 1);
          EXPECT_NEAR(mip.g.dot(z),
                      z[mip.num_z() - 2] - z[mip.num_z() - 1], 1e-12);
        }
      }
    }
  }
  EXPECT_GT(feasible, 100);
  EXPECT_GT(infeasible, 100);
}

// The dump is compared numerically against a checked-in golden file whose
// numbers match the hand-derived TN1 matrices above.
TEST(DumpMip, Tn1Golden) {
  std::ostringstream out;
  dump_mip(tn1_mip(0.1), out);
  std::ifstream in(oracle::data_path("tests/golden/tn1_eps0.1_encode.txt"));
  ASSERT_TRUE(static_cast<bool>(in));
  std::stringstream golden;
  golden << in.rdbuf();
  std::istringstream got(out.str()), want(golden.str());
  std::string gl, wl;
  int line = 0;
  while (std::getline(want, wl)) {
    ++line;
    ASSERT_TRUE(static_cast<bool>(std::getline(got, gl))) << "dump ends early at line " << line;
    auto gc = detail::split_csv_line(gl);
    auto wc = detail::split_csv_line(wl);
    ASSERT_EQ(gc.size(), wc.size()) << "line " << line;
    for (size_t k = 0; k < gc.size(); ++k) {
      char* end = nullptr;
      const double wv = std::strtod(wc[k].c_str(), &end);
      if (end != wc[k].c_str() && *end == '\0') {
        EXPECT_NEAR(std::strtod(gc[k].c_str(), nullptr), wv, 1e-12) << "line " << line;
      } else {
        EXPECT_EQ(gc[k], wc[k]) << "line " << line;
      }
    }
  }
  EXPECT_FALSE(static_cast<bool>(std::getline(got, gl)));
}

}  // namespace
}  // namespace hqcran
