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

// Benders decomposition of the verification MIP over the phase variables y.
//
// For fixed y the remaining problem is the LP q(y) = min g z s.t.
// A z >= b - B y, C z >= d. Its box-bounded dual
//
//   max alpha (b - B y) + beta d   s.t.  alpha A + beta C = g,
//                                        0 <= alpha <= abar, 0 <= beta <= bbar
//
// yields a cut e - (alpha B) y <= eta with e = alpha b + beta d. A dual
// solution touching its box is tagged as a ray candidate; it only becomes a
// feasibility cut (e - (alpha B) y <= 0) when the homogeneous system
// alpha A + beta C = 0 certifies that y is infeasible. Otherwise the point
// is still dual feasible and is kept as an ordinary cut.

#pragma once

#include <chrono>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hqcran/annealing.hpp"
#include "hqcran/encode.hpp"
#include "hqcran/milp.hpp"
#include "hqcran/qubo.hpp"
#include "hqcran/verifiers.hpp"

namespace hqcran {

enum class Variant { kV1, kV2 };
enum class MasterBackend { kMilp, kSa, kExhaustive };
enum class CertifyMode { kPaper, kSound };
enum class CutKind { kExtremePoint, kExtremeRay };
enum class TargetStatus { kCertified, kUnknown, kIterationCap, kSubInfeasible };

inline std::string_view to_string(Variant v) { return v == Variant::kV1 ? "v1" : "v2"; }
inline std::string_view to_string(MasterBackend b) {
  switch (b) {
    case MasterBackend::kMilp: return "milp";
    case MasterBackend::kSa: return "sa";
    case MasterBackend::kExhaustive: return "exhaustive";
  }
  return "?";
}
inline std::string_view to_string(CutKind k) {
  return k == CutKind::kExtremePoint ? "point" : "ray";
}
inline std::string_view to_string(TargetStatus s) {
  switch (s) {
    case TargetStatus::kCertified: return "certified";
    case TargetStatus::kUnknown: return "unknown";
    case TargetStatus::kIterationCap: return "iteration_cap";
    case TargetStatus::kSubInfeasible: return "sub_infeasible";
  }
  return "?";
}

inline constexpr double kBoundTol = 1e-6;
inline constexpr int kUnboundedPool = -1;
inline constexpr double kRayTol = 1e-7;

struct Cut {
  Vector alpha;
  Vector beta;
  CutKind kind = CutKind::kExtremePoint;
  double e = 0.0;  // alpha b + beta d
  Vector row;      // alpha B
  int birth = 0;
  int slack_bits = 0;

  // Cut expression e - row . y
  double value_at(const Vector& y) const { return e - row.dot(y); }
  CutTerms terms() const { return {e, row, kind == CutKind::kExtremeRay}; }
};

struct SubResult {
  lp::Status status = lp::Status::kInfeasible;
  double value = 0.0;
  bool at_bound = false;
  Cut cut;
};

namespace detail {

inline SubResult make_sub_result(const MipProblem& mip, double value, Vector alpha,
                                 Vector beta, double abar, double bbar) {
  SubResult r;
  r.status = lp::Status::kOptimal;
  r.value = value;
  r.cut.alpha = std::move(alpha);
  r.cut.beta = std::move(beta);
  r.cut.e = r.cut.alpha.dot(mip.rhs_b) + r.cut.beta.dot(mip.rhs_d);
  r.cut.row = mip.b.transpose() * r.cut.alpha;
  r.at_bound = (r.cut.alpha.array() >= abar - kBoundTol).any() ||
               (r.cut.beta.array() >= bbar - kBoundTol).any();
  r.cut.kind = r.at_bound ? CutKind::kExtremeRay : CutKind::kExtremePoint;
  return r;
}

// Multipliers of the primal LP at `y`. Accepted only when they are dual
// feasible, close the duality gap and sit strictly inside the box, in which
// case they also solve the box-bounded dual.
inline std::optional<SubResult> sub_from_primal(const MipProblem& mip, const Vector& y,
                                                double abar, double bbar) {
  const int m_b = mip.num_b_rows();
  lp::LpProblem p(mip.num_z());
  p.objective = mip.g;
  p.ineq_matrix.resize(m_b + mip.num_d_rows(), mip.num_z());
  p.ineq_matrix << mip.a, mip.c;
  p.ineq_rhs.resize(p.ineq_matrix.rows());
  p.ineq_rhs << mip.rhs_b - mip.b * y, mip.rhs_d;
  lp::LpOptions opt;
  opt.duals = true;
  const lp::LpSolution s = lp::solve_lp(p, opt);
  if (s.status != lp::Status::kOptimal) return std::nullopt;
  const double tol = 1e-9 * (1.0 + s.duals.cwiseAbs().maxCoeff());
  if ((s.duals.array() < -tol).any()) return std::nullopt;
  const Vector mult = s.duals.cwiseMax(0.0);
  const Vector alpha = mult.head(m_b);
  const Vector beta = mult.tail(mip.num_d_rows());
  if ((alpha.array() >= abar - kBoundTol).any() || (beta.array() >= bbar - kBoundTol).any())
    return std::nullopt;
  const Vector residual = mip.a.transpose() * alpha + mip.c.transpose() * beta - mip.g;
  if (residual.cwiseAbs().maxCoeff() > 1e-7) return std::nullopt;
  const double dual_value = mult.dot(p.ineq_rhs);
  if (std::abs(dual_value - s.objective) > 1e-7 * (1.0 + std::abs(s.objective)))
    return std::nullopt;
  return make_sub_result(mip, dual_value, alpha, beta, abar, bbar);
}

// Dual LP over (alpha, beta) with the objective evaluated at `y`, which may
// be fractional. `homogeneous` replaces g by 0 on the equality rows.
inline SubResult solve_dual_box(const MipProblem& mip, const Vector& y, double abar,
                                double bbar, bool homogeneous) {
  require(y.size() == mip.num_y(), ErrorKind::kDimension, "y has wrong length");
  require(abar > 0.0 && bbar > 0.0, ErrorKind::kPrecondition, "dual bounds must be positive");
  if (!homogeneous) {
    if (auto fast = sub_from_primal(mip, y, abar, bbar)) return *fast;
  }
  const int m_b = mip.num_b_rows();
  const int m_d = mip.num_d_rows();
  lp::LpProblem p(m_b + m_d);
  p.sense = lp::Sense::kMaximize;
  p.objective.head(m_b) = mip.rhs_b - mip.b * y;
  p.objective.tail(m_d) = mip.rhs_d;
  p.eq_matrix.resize(mip.num_z(), m_b + m_d);
  p.eq_matrix << mip.a.transpose(), mip.c.transpose();
  p.eq_rhs = homogeneous ? Vector::Zero(mip.num_z()) : Vector(mip.g);
  p.lower.setZero();
  p.upper.head(m_b).setConstant(abar);
  p.upper.tail(m_d).setConstant(bbar);
  const lp::LpSolution s = lp::solve_lp(p);
  require(s.status != lp::Status::kIterationLimit, ErrorKind::kPrecondition,
          "dual LP hit the iteration limit");
  if (s.status != lp::Status::kOptimal) {
    SubResult r;
    r.status = s.status;
    return r;
  }
  return make_sub_result(mip, s.objective, s.primal.head(m_b), s.primal.tail(m_d), abar, bbar);
}

}  // namespace detail

inline SubResult solve_sub(const MipProblem& mip, const Vector& y, double abar, double bbar) {
  return detail::solve_dual_box(mip, y, abar, bbar, false);
}

// Same feasible set as the sub problem, objective taken at the core point.
inline SubResult solve_additional(const MipProblem& mip, const Vector& y_core, double abar,
                                  double bbar) {
  return detail::solve_dual_box(mip, y_core, abar, bbar, false);
}

// Box-bounded Farkas system; a positive optimum proves q(y) infeasible.
inline SubResult solve_ray(const MipProblem& mip, const Vector& y, double abar, double bbar) {
  SubResult r = detail::solve_dual_box(mip, y, abar, bbar, true);
  if (r.status == lp::Status::kOptimal) r.cut.kind = CutKind::kExtremeRay;
  return r;
}

inline Vector update_core_point(const Vector& y_core, const Vector& y) {
  require(y_core.size() == y.size(), ErrorKind::kDimension, "core point length mismatch");
  return 0.5 * y_core + 0.5 * y;
}

// q(y): the verification LP with the phase pattern fixed. nullopt when
// infeasible.
inline std::optional<double> primal_value(const MipProblem& mip, const Vector& y) {
  require(y.size() == mip.num_y(), ErrorKind::kDimension, "y has wrong length");
  lp::LpProblem p(mip.num_z());
  p.objective = mip.g;
  p.ineq_matrix.resize(mip.num_b_rows() + mip.num_d_rows(), mip.num_z());
  p.ineq_matrix << mip.a, mip.c;
  p.ineq_rhs.resize(p.ineq_matrix.rows());
  p.ineq_rhs << mip.rhs_b - mip.b * y, mip.rhs_d;
  detail::apply_z_bounds(mip, p);
  const lp::LpSolution s = lp::solve_lp(p);
  require(s.status != lp::Status::kIterationLimit && s.status != lp::Status::kUnbounded,
          ErrorKind::kPrecondition,
          "fixed-phase LP ended with status " + std::string(lp::to_string(s.status)));
  if (s.status == lp::Status::kInfeasible) return std::nullopt;
  return s.objective;
}

// FIFO cut list; capacity < 0 means unbounded.
struct CutPool {
  std::deque<Cut> cuts;
  int capacity = -1;

  void push(Cut cut) {
    if (capacity > 0 && static_cast<int>(cuts.size()) >= capacity) cuts.pop_front();
    cuts.push_back(std::move(cut));
  }
  int size() const { return static_cast<int>(cuts.size()); }
};

inline void push_cut(CutPool& pool, Cut cut) { pool.push(std::move(cut)); }

struct MasterResult {
  bool feasible = false;
  double eta = 0.0;
  Vector y;
  double objective = 0.0;  // eta plus the Hamming term when enabled
};

// min eta [+ 1/2 |y - y_prev|^2] over binary y, eta in [eta_lo, eta_hi].
inline MasterResult solve_master_exact(const CutPool& pool, const Vector& y_prev, double eta_lo,
                                       double eta_hi, bool hamming,
                                       const lp::MilpOptions& opt = {}) {
  require(pool.size() >= 1, ErrorKind::kPrecondition, "master needs at least one cut");
  const int n_y = static_cast<int>(y_prev.size());
  const int eta = n_y;
  lp::MilpProblem mp;
  mp.lp = lp::LpProblem(n_y + 1);
  mp.integer.assign(static_cast<size_t>(n_y + 1), true);
  mp.integer[static_cast<size_t>(eta)] = false;
  for (int i = 0; i < n_y; ++i) {
    mp.lp.lower[i] = 0.0;
    mp.lp.upper[i] = 1.0;
    if (hamming) mp.lp.objective[i] = 0.5 * (1.0 - 2.0 * y_prev[i]);
  }
  mp.lp.lower[eta] = eta_lo;
  mp.lp.upper[eta] = eta_hi;
  mp.lp.objective[eta] = 1.0;
  mp.lp.ineq_matrix = Matrix::Zero(pool.size(), n_y + 1);
  mp.lp.ineq_rhs = Vector::Zero(pool.size());
  for (int k = 0; k < pool.size(); ++k) {
    const Cut& c = pool.cuts[static_cast<size_t>(k)];
    // point: eta + row y >= e ; ray: row y >= e
    mp.lp.ineq_matrix.row(k).head(n_y) = c.row.transpose();
    if (c.kind == CutKind::kExtremePoint) mp.lp.ineq_matrix(k, eta) = 1.0;
    mp.lp.ineq_rhs[k] = c.e;
  }
  const lp::MilpSolution s = lp::solve_milp(mp, opt);
  MasterResult r;
  if (!s.has_incumbent) return r;
  r.feasible = true;
  r.y = s.primal.head(n_y);
  r.eta = s.primal[eta];
  r.objective = s.objective + (hamming ? 0.5 * y_prev.sum() : 0.0);
  return r;
}

struct HqcranConfig {
  int T = 500;
  double xi = 1.0;
  double alpha_bar = 5.0;
  double beta_bar = 5.0;
  double omega_p = 0.01;
  double omega_a = 0.1;
  std::optional<int> phi;  // unset: unbounded for v1, 5 for v2; kUnboundedPool for none
  Variant variant = Variant::kV2;
  MasterBackend backend = MasterBackend::kMilp;
  CertifyMode certify = CertifyMode::kPaper;
  bool early_stop = false;
  int reads = 100;
  int sweeps = 50000;
  std::uint64_t seed = 0;
  std::optional<double> prune;
  // Solve the unregularized master MILP each iteration for the trace.
  bool track_lower_bound = false;
  bool stop_at_first_uncertified = false;
  lp::MilpOptions milp;

  int capacity() const {
    if (phi) return *phi;
    return variant == Variant::kV1 ? -1 : 5;
  }

  void validate() const {
    require(T >= 1, ErrorKind::kPrecondition, "T must be at least 1");
    require(xi > 0.0, ErrorKind::kPrecondition, "xi must be positive");
    require(alpha_bar > 0.0 && beta_bar > 0.0, ErrorKind::kPrecondition,
            "dual bounds must be positive");
    require(omega_p > 0.0 && omega_p <= 1.0 && omega_a > 0.0 && omega_a <= 1.0,
            ErrorKind::kPrecondition, "penalty weights must lie in (0, 1]");
    require(!phi || *phi >= 1 || *phi == kUnboundedPool, ErrorKind::kPrecondition,
            "phi must be at least 1");
    require(reads >= 1 && sweeps >= 1, ErrorKind::kPrecondition,
            "reads and sweeps must be at least 1");
  }
};

struct TraceRow {
  int iter = 0;
  double master_obj = 0.0;  // eta for milp, decoded w_p p otherwise
  double sub_obj = 0.0;     // bounded dual optimum at the evaluated y
  double gap = 0.0;         // s_hat - master_obj
  int qubits = 0;
  CutKind cut_kind = CutKind::kExtremePoint;
  double lower_bound = std::numeric_limits<double>::quiet_NaN();
  double s_hat = kInf;
};

struct IterationView {
  int target = 0;
  int iter = 0;
  const CutPool* pool = nullptr;
  const BitLayout* layout = nullptr;
  double eta_span = 0.0;
  const Vector* y_prev = nullptr;
  bool hamming = false;
};

struct TargetOutcome {
  int target = -1;
  double m_t = std::numeric_limits<double>::quiet_NaN();
  double master_value = std::numeric_limits<double>::quiet_NaN();
  double master_lower_bound = std::numeric_limits<double>::quiet_NaN();
  double s_hat = kInf;
  TargetStatus status = TargetStatus::kUnknown;
  int iterations = 0;
  std::vector<int> qubits;
  double seconds = 0.0;
  std::vector<TraceRow> trace;

  bool certified() const { return status == TargetStatus::kCertified; }
  double mean_qubits() const {
    if (qubits.empty()) return 0.0;
    double s = 0.0;
    for (int q : qubits) s += q;
    return s / static_cast<double>(qubits.size());
  }
};

struct VerifyOutcome {
  int predicted = -1;
  std::vector<TargetOutcome> targets;
  bool robust = false;
  double seconds = 0.0;
};

// Range needed for eta: |g z| <= |z_c| + |z_t| over the output bounds.
inline double eta_span(const MipProblem& mip) {
  const int last = mip.bounds.num_layers();
  const Vector& lo = mip.bounds.post_lower[static_cast<size_t>(last)];
  const Vector& hi = mip.bounds.post_upper[static_cast<size_t>(last)];
  auto mag = [&](int k) {
    return mip.final_relu ? std::max(0.0, hi[k]) : std::max(std::abs(lo[k]), std::abs(hi[k]));
  };
  return mag(mip.predicted) + mag(mip.target);
}

using IterationObserver = std::function<void(const IterationView&)>;

namespace detail {

inline bool certify_rule(const HqcranConfig& cfg, double m_t, double lower_bound) {
  if (!(m_t > 0.0)) return false;
  if (cfg.certify == CertifyMode::kSound) return lower_bound > 0.0;
  return true;
}

}  // namespace detail

// Decomposition loop for the target already set on `mip`.
inline TargetOutcome run_target(const MipProblem& mip, const HqcranConfig& cfg,
                                const IterationObserver& observer = {}) {
  cfg.validate();
  require(mip.target >= 0, ErrorKind::kPrecondition, "no target class set");
  const auto t0 = std::chrono::steady_clock::now();
  TargetOutcome out;
  out.target = mip.target;
  const int n_y = mip.num_y();
  const double span = eta_span(mip);
  BitLayout layout;
  layout.n_p = size_eta_bits(span, cfg.omega_p);
  layout.n_y = n_y;
  layout.omega_p = cfg.omega_p;
  layout.omega_a = cfg.omega_a;
  const double eta_lo = eta_min(layout.n_p, cfg.omega_p);
  const double eta_hi = eta_max(layout.n_p, cfg.omega_p);

  if (n_y == 0) {
    const auto q = primal_value(mip, Vector(0));
    require(q.has_value(), ErrorKind::kPrecondition, "verification LP is infeasible");
    out.m_t = out.master_value = out.master_lower_bound = out.s_hat = *q;
    out.iterations = 1;
    out.qubits.push_back(layout.n_p);
    out.trace.push_back({1, *q, *q, 0.0, layout.n_p, CutKind::kExtremePoint, *q, *q});
    out.status = out.m_t > 0.0 ? TargetStatus::kCertified : TargetStatus::kUnknown;
    out.seconds = detail::seconds_since(t0);
    return out;
  }

  const bool v2 = cfg.variant == Variant::kV2;
  const bool hamming = v2;
  CutPool pool;
  pool.capacity = cfg.capacity();
  Vector y = Vector::Zero(n_y);
  Vector y_core = Vector::Zero(n_y);
  double s_hat = kInf;
  double last_lb = std::numeric_limits<double>::quiet_NaN();
  enum class Stop { kNone, kGap, kEarlyCertified, kEarlyFalsified, kSubInfeasible,
                    kMasterInfeasible };
  Stop reason = Stop::kNone;
  const auto key_of = [](const Vector& v) {
    std::string k(static_cast<size_t>(v.size()), '0');
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (v[i] > 0.5) k[static_cast<size_t>(i)] = '1';
    return k;
  };
  std::set<std::string> visited;

  for (int t = 1; t <= cfg.T; ++t) {
    out.iterations = t;
    visited.insert(key_of(y));
    const SubResult sub = solve_sub(mip, y, cfg.alpha_bar, cfg.beta_bar);
    if (sub.status != lp::Status::kOptimal) {
      reason = Stop::kSubInfeasible;
      break;
    }
    Cut cut = sub.cut;
    bool y_feasible = true;
    if (sub.at_bound) {
      const SubResult ray = solve_ray(mip, y, cfg.alpha_bar, cfg.beta_bar);
      if (ray.status == lp::Status::kOptimal && ray.value > kRayTol) {
        y_feasible = false;
        cut = ray.cut;
      } else {
        cut.kind = CutKind::kExtremePoint;
      }
    }
    if (y_feasible) {
      const double q = sub.at_bound ? primal_value(mip, y).value_or(kInf) : sub.value;
      s_hat = std::min(s_hat, q);
    }
    if (v2) {
      y_core = update_core_point(y_core, y);
      if (y_feasible) {
        const SubResult add = solve_additional(mip, y_core, cfg.alpha_bar, cfg.beta_bar);
        if (add.status == lp::Status::kOptimal) {
          cut = add.cut;
          cut.kind = CutKind::kExtremePoint;
        }
      }
    }
    cut.birth = t;
    cut.slack_bits = size_slack_bits(cut.e, eta_hi, cut.row.lpNorm<1>(), cfg.omega_a);
    push_cut(pool, cut);

    layout.n_a.clear();
    for (const Cut& c : pool.cuts) layout.n_a.push_back(c.slack_bits);
    const int qubits = layout.total();
    out.qubits.push_back(qubits);
    if (observer) observer({mip.target, t, &pool, &layout, span, &y, hamming});

    double master_value = 0.0;
    Vector y_new;
    if (cfg.backend == MasterBackend::kMilp) {
      const MasterResult m = solve_master_exact(pool, y, eta_lo, eta_hi, hamming, cfg.milp);
      if (!m.feasible) {
        reason = Stop::kMasterInfeasible;
        break;
      }
      master_value = m.eta;
      y_new = m.y;
      if (!hamming) last_lb = m.eta;
    } else {
      std::vector<CutTerms> terms;
      for (const Cut& c : pool.cuts) terms.push_back(c.terms());
      const QuboModel qm = assemble_qubo(terms, y, layout, hamming);
      Vector x;
      if (cfg.backend == MasterBackend::kExhaustive) {
        x = solve_exhaustive(qm).x;
      } else {
        const IsingModel is = qubo_to_ising(qm, cfg.prune);
        const std::uint64_t seed =
            cfg.seed + 7919u * static_cast<std::uint64_t>(mip.target) + static_cast<std::uint64_t>(t);
        x = solve_sa(is, cfg.reads, cfg.sweeps, seed).x;
      }
      master_value = qm.eta(x);
      y_new = qm.y(x);
    }
    // With the Hamming term the regularized eta is no lower bound, so the exact
    // backend gates the gap on the plain master and takes its y on a revisit.
    const bool gate_on_lb = hamming && cfg.backend == MasterBackend::kMilp;
    double gap_value = master_value;
    if (gate_on_lb || (cfg.track_lower_bound && (hamming || cfg.backend != MasterBackend::kMilp))) {
      const MasterResult lb = solve_master_exact(pool, y, eta_lo, eta_hi, false, cfg.milp);
      if (lb.feasible) {
        last_lb = lb.eta;
        if (gate_on_lb) {
          gap_value = lb.eta;
          if (visited.count(key_of(y_new))) y_new = lb.y;
        }
      }
    }

    TraceRow row;
    row.iter = t;
    row.master_obj = master_value;
    row.sub_obj = sub.value;
    row.gap = s_hat - gap_value;
    row.qubits = qubits;
    row.cut_kind = cut.kind;
    row.lower_bound = last_lb;
    row.s_hat = s_hat;
    out.trace.push_back(row);
    out.master_value = master_value;
    out.master_lower_bound = last_lb;

    if (cfg.early_stop) {
      const double lb = std::isnan(last_lb) ? master_value : last_lb;
      if (lb > 0.0) {
        out.m_t = std::min(s_hat, lb);
        reason = Stop::kEarlyCertified;
        break;
      }
      if (s_hat < 0.0) {
        out.m_t = s_hat;
        reason = Stop::kEarlyFalsified;
        break;
      }
    }

    if (s_hat - gap_value <= cfg.xi || gap_value > s_hat) {
      const auto q = primal_value(mip, y_new);
      if (q) {
        s_hat = std::min(s_hat, *q);
        out.m_t = s_hat;
        reason = Stop::kGap;
        break;
      }
    }
    y = y_new;
  }

  out.s_hat = s_hat;
  switch (reason) {
    case Stop::kGap:
      if (cfg.certify == CertifyMode::kSound && std::isnan(out.master_lower_bound)) {
        const MasterResult lb = solve_master_exact(pool, y, eta_lo, eta_hi, false, cfg.milp);
        if (lb.feasible) out.master_lower_bound = lb.eta;
      }
      out.status = detail::certify_rule(cfg, out.m_t, out.master_lower_bound)
                       ? TargetStatus::kCertified
                       : TargetStatus::kUnknown;
      break;
    case Stop::kEarlyCertified:
      out.status = TargetStatus::kCertified;
      break;
    case Stop::kEarlyFalsified:
    case Stop::kMasterInfeasible:
      out.status = TargetStatus::kUnknown;
      out.m_t = s_hat;
      break;
    case Stop::kSubInfeasible:
      out.status = TargetStatus::kSubInfeasible;
      out.m_t = s_hat;
      break;
    case Stop::kNone:
      out.status = TargetStatus::kIterationCap;
      out.m_t = s_hat;
      break;
  }
  out.seconds = detail::seconds_since(t0);
  return out;
}

// Verifies every class other than the predicted one.
inline VerifyOutcome run_hqcran(const Network& net, const Ball& ball, const HqcranConfig& cfg,
                                const IterationObserver& observer = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  VerifyOutcome out;
  out.predicted = forward(net, ball.center).predicted_class;
  MipProblem mip = build_mip(net, propagate_interval(net, ball));
  out.robust = true;
  for (int t = 0; t < net.output_dim(); ++t) {
    if (t == out.predicted) continue;
    set_target(mip, out.predicted, t);
    out.targets.push_back(run_target(mip, cfg, observer));
    if (!out.targets.back().certified()) {
      out.robust = false;
      if (cfg.stop_at_first_uncertified) break;
    }
  }
  out.seconds = detail::seconds_since(t0);
  return out;
}

inline void write_trace_csv(const TargetOutcome& o, std::ostream& out) {
  out.precision(12);
  out << "iter,master_obj,sub_obj,gap,qubits,cut_kind\n";
  for (const TraceRow& r : o.trace)
    out << r.iter << ',' << r.master_obj << ',' << r.sub_obj << ',' << r.gap << ',' << r.qubits
        << ',' << to_string(r.cut_kind) << '\n';
}

}  // namespace hqcran
