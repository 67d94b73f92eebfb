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

// Reference verifiers: the exact MIP solved by branch and bound, and the
// triangle LP relaxation.

#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "hqcran/encode.hpp"
#include "hqcran/milp.hpp"

namespace hqcran {

struct VerifierResult {
  double bound = 0.0;       // optimum (exact) or lower bound (relaxation)
  bool certified = false;   // bound > 0
  std::string status;       // "optimal", "infeasible", "node_limit", ...
  std::int64_t nodes = 0;
  double seconds = 0.0;
  Vector z;                 // minimizer over z, when available
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// z bounds implied by interval propagation; they only tighten the relaxations.
inline void apply_z_bounds(const MipProblem& mip, lp::LpProblem& p) {
  const BoundsStack& bs = mip.bounds;
  for (int i = 0; i <= bs.num_layers(); ++i) {
    const int off = mip.layer_offset[static_cast<size_t>(i)];
    const Vector& lo = bs.post_lower[static_cast<size_t>(i)];
    const Vector& hi = bs.post_upper[static_cast<size_t>(i)];
    for (Eigen::Index j = 0; j < lo.size(); ++j) {
      p.lower[off + j] = lo[j];
      p.upper[off + j] = hi[j];
    }
  }
}

}  // namespace detail

// Variables [z, y]; rows [A B] >= b and [C 0] >= d; y binary.
inline lp::MilpProblem exact_milp(const MipProblem& mip) {
  const int n_z = mip.num_z();
  const int n_y = mip.num_y();
  lp::MilpProblem mp;
  mp.lp = lp::LpProblem(n_z + n_y);
  mp.lp.objective.head(n_z) = mip.g;
  mp.lp.ineq_matrix = Matrix::Zero(mip.num_b_rows() + mip.num_d_rows(), n_z + n_y);
  mp.lp.ineq_matrix.topLeftCorner(mip.num_b_rows(), n_z) = mip.a;
  mp.lp.ineq_matrix.topRightCorner(mip.num_b_rows(), n_y) = mip.b;
  mp.lp.ineq_matrix.bottomLeftCorner(mip.num_d_rows(), n_z) = mip.c;
  mp.lp.ineq_rhs.resize(mip.num_b_rows() + mip.num_d_rows());
  mp.lp.ineq_rhs << mip.rhs_b, mip.rhs_d;
  detail::apply_z_bounds(mip, mp.lp);
  for (int k = 0; k < n_y; ++k) {
    mp.lp.lower[n_z + k] = 0.0;
    mp.lp.upper[n_z + k] = 1.0;
  }
  mp.integer.assign(static_cast<size_t>(n_z + n_y), false);
  for (int k = 0; k < n_y; ++k) mp.integer[static_cast<size_t>(n_z + k)] = true;
  return mp;
}

inline VerifierResult verify_exact(const MipProblem& mip, const lp::MilpOptions& opt = {}) {
  require(mip.target >= 0, ErrorKind::kPrecondition, "no target class set");
  const auto t0 = std::chrono::steady_clock::now();
  const lp::MilpSolution s = lp::solve_milp(exact_milp(mip), opt);
  VerifierResult r;
  r.status = std::string(lp::to_string(s.status));
  r.nodes = s.nodes;
  if (s.status == lp::MilpStatus::kInfeasible) {
    // Empty feasible set: nothing can violate the property.
    r.bound = kInf;
  } else {
    r.bound = s.status == lp::MilpStatus::kOptimal ? s.objective : s.best_bound;
    if (s.has_incumbent) r.z = s.primal.head(mip.num_z());
  }
  r.certified = r.bound > 0.0;
  r.seconds = detail::seconds_since(t0);
  return r;
}

// Triangle relaxation: unstable neurons keep z >= 0, z >= w z' + v and the
// upper chord through (l, 0) and (u, u).
inline lp::LpProblem convex_lp(const Network& net, const MipProblem& mip) {
  const int n_z = mip.num_z();
  lp::LpProblem p(n_z);
  p.objective = mip.g;
  detail::apply_z_bounds(mip, p);
  const BoundsStack& bs = mip.bounds;
  int n_ineq = 0, n_eq = 0;
  for (int i = 1; i <= net.num_layers(); ++i)
    for (int j = 0; j < net.width(i); ++j) {
      if (mip.stability.tag(i, j) == NeuronTag::kUnstable) n_ineq += 2;
      else n_eq += 1;
    }
  p.ineq_matrix = Matrix::Zero(n_ineq, n_z);
  p.ineq_rhs = Vector::Zero(n_ineq);
  p.eq_matrix = Matrix::Zero(n_eq, n_z);
  p.eq_rhs = Vector::Zero(n_eq);
  int ri = 0, re = 0;
  for (int i = 1; i <= net.num_layers(); ++i) {
    const Layer& l = net.layer(i - 1);
    const int prev = mip.layer_offset[static_cast<size_t>(i - 1)];
    const int cur = mip.layer_offset[static_cast<size_t>(i)];
    const Vector& lo = bs.pre_lower[static_cast<size_t>(i)];
    const Vector& hi = bs.pre_upper[static_cast<size_t>(i)];
    for (int j = 0; j < net.width(i); ++j) {
      const auto w = l.weights.row(j);
      const double v = l.bias[j];
      switch (mip.stability.tag(i, j)) {
        case NeuronTag::kStableActive:
        case NeuronTag::kLinear:
          p.eq_matrix.block(re, prev, 1, w.size()) = -w;
          p.eq_matrix(re, cur + j) = 1.0;
          p.eq_rhs[re++] = v;
          break;
        case NeuronTag::kStableInactive:
          p.eq_matrix(re, cur + j) = 1.0;
          p.eq_rhs[re++] = 0.0;
          break;
        case NeuronTag::kUnstable: {
          p.ineq_matrix.block(ri, prev, 1, w.size()) = -w;
          p.ineq_matrix(ri, cur + j) = 1.0;
          p.ineq_rhs[ri++] = v;
          const double u = hi[j], lw = lo[j];
          p.ineq_matrix.block(ri, prev, 1, w.size()) = u * w;
          p.ineq_matrix(ri, cur + j) = -(u - lw);
          p.ineq_rhs[ri++] = u * (lw - v);
          break;
        }
      }
    }
  }
  return p;
}

inline VerifierResult verify_convex(const Network& net, const MipProblem& mip,
                                    const lp::LpOptions& opt = {}) {
  require(mip.target >= 0, ErrorKind::kPrecondition, "no target class set");
  const auto t0 = std::chrono::steady_clock::now();
  const lp::LpSolution s = lp::solve_lp(convex_lp(net, mip), opt);
  require(s.status != lp::Status::kIterationLimit && s.status != lp::Status::kUnbounded,
          ErrorKind::kPrecondition,
          "convex relaxation ended with status " + std::string(lp::to_string(s.status)));
  VerifierResult r;
  r.status = std::string(lp::to_string(s.status));
  r.nodes = 1;
  if (s.status == lp::Status::kInfeasible) {
    r.bound = kInf;
  } else {
    r.bound = s.objective;
    r.z = s.primal;
  }
  r.certified = r.bound > 0.0;
  r.seconds = detail::seconds_since(t0);
  return r;
}

}  // namespace hqcran
