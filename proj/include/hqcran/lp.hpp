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

// Dense two-phase primal simplex over box-bounded variables.
//
//   min/max  c x
//   s.t.     G x >= h
//            E x  = f
//            lo <= x <= hi      (entries may be -inf / +inf)
//
// Nonbasic variables sit at either bound. Single-variable rows are folded
// into the bounds before the tableau is built, and rows owning a column that
// appears nowhere else seed the initial basis so that phase 1 only needs
// artificials for the remaining rows.

#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "hqcran/common.hpp"

namespace hqcran::lp {

enum class Sense { kMinimize, kMaximize };
enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };
enum class BoundFlag { kAtLower, kAtUpper, kInterior };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kIterationLimit: return "iteration_limit";
  }
  return "?";
}

struct LpProblem {
  Sense sense = Sense::kMinimize;
  Vector objective;
  Matrix ineq_matrix;
  Vector ineq_rhs;
  Matrix eq_matrix;
  Vector eq_rhs;
  Vector lower;
  Vector upper;

  LpProblem() = default;

  // n free variables, zero objective, no rows.
  explicit LpProblem(int n)
      : objective(Vector::Zero(n)),
        ineq_matrix(0, n),
        ineq_rhs(0),
        eq_matrix(0, n),
        eq_rhs(0),
        lower(Vector::Constant(n, -kInf)),
        upper(Vector::Constant(n, kInf)) {}

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_ineq() const { return static_cast<int>(ineq_matrix.rows()); }
  int num_eq() const { return static_cast<int>(eq_matrix.rows()); }

  void add_ineq(const Vector& row, double rhs) {
    const Eigen::Index r = ineq_matrix.rows();
    ineq_matrix.conservativeResize(r + 1, num_vars());
    ineq_matrix.row(r) = row.transpose();
    ineq_rhs.conservativeResize(r + 1);
    ineq_rhs[r] = rhs;
  }

  void add_eq(const Vector& row, double rhs) {
    const Eigen::Index r = eq_matrix.rows();
    eq_matrix.conservativeResize(r + 1, num_vars());
    eq_matrix.row(r) = row.transpose();
    eq_rhs.conservativeResize(r + 1);
    eq_rhs[r] = rhs;
  }

  void validate() const {
    const Eigen::Index n = objective.size();
    require(lower.size() == n && upper.size() == n, ErrorKind::kDimension,
            "LP bound vectors do not match variable count");
    require(ineq_matrix.cols() == n && ineq_matrix.rows() == ineq_rhs.size(),
            ErrorKind::kDimension, "LP inequality block has inconsistent shape");
    require(eq_matrix.cols() == n && eq_matrix.rows() == eq_rhs.size(),
            ErrorKind::kDimension, "LP equality block has inconsistent shape");
    for (Eigen::Index j = 0; j < n; ++j) {
      require(!(lower[j] > upper[j]), ErrorKind::kPrecondition,
              "LP variable " + std::to_string(j) + " has lower > upper");
      require(!std::isnan(lower[j]) && !std::isnan(upper[j]), ErrorKind::kNonFinite,
              "LP bound is NaN");
    }
    require(objective.allFinite() && ineq_matrix.allFinite() && ineq_rhs.allFinite() &&
                eq_matrix.allFinite() && eq_rhs.allFinite(),
            ErrorKind::kNonFinite, "LP data contains non-finite entries");
  }
};

struct LpOptions {
  int max_iterations = -1;  // <= 0 selects 50 * (n + m)
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-7;
  double optimality_tol = 1e-9;
  bool duals = false;  // fill LpSolution::duals at optimality
};

struct LpSolution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  Vector primal;
  std::vector<BoundFlag> flags;
  // d objective / d rhs for every row, inequalities first, then equalities.
  Vector duals;
  int iterations = 0;

  bool optimal() const { return status == Status::kOptimal; }
};

namespace detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& p, const LpOptions& opt) : p_(p), opt_(opt) {}

  LpSolution solve(bool phase_one_only) {
    LpSolution sol;
    const int n = p_.num_vars();
    iteration_limit_ = opt_.max_iterations > 0
                           ? opt_.max_iterations
                           : 50 * (n + p_.num_ineq() + p_.num_eq()) + 50;
    if (!presolve()) {
      sol.status = Status::kInfeasible;
      return sol;
    }
    build();
    if (num_artificial_ > 0) {
      Vector cost = Vector::Zero(num_cols_);
      for (int c = num_cols_ - num_artificial_; c < num_cols_; ++c) cost[c] = 1.0;
      const Status st = iterate(cost);
      sol.iterations = iterations_;
      if (st == Status::kIterationLimit) {
        sol.status = st;
        return sol;
      }
      double infeasibility = 0.0;
      for (int r = 0; r < rows_; ++r)
        if (basis_[r] >= first_artificial_) infeasibility += std::max(0.0, xb_[r]);
      if (infeasibility > opt_.feasibility_tol * (1.0 + rhs_scale_)) {
        sol.status = Status::kInfeasible;
        return sol;
      }
      retire_artificials();
    }
    if (phase_one_only) {
      sol.status = Status::kOptimal;
      sol.iterations = iterations_;
      extract(sol);
      return sol;
    }
    Vector cost = Vector::Zero(num_cols_);
    const double sign = p_.sense == Sense::kMaximize ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      if (map_[j].col >= 0) cost[map_[j].col] += sign * map_[j].sign * p_.objective[j];
      if (map_[j].col2 >= 0) cost[map_[j].col2] -= sign * p_.objective[j];
    }
    const Status st = iterate(cost);
    sol.iterations = iterations_;
    sol.status = st;
    if (st == Status::kOptimal) extract(sol);
    return sol;
  }

 private:
  struct VarMap {
    int col = -1;       // primary internal column, -1 when fixed
    int col2 = -1;      // negative part of a free variable
    double sign = 1.0;  // x = offset + sign * x'
    double offset = 0.0;
  };

  // Folds empty and single-variable rows into the bounds. Returns false when
  // that alone proves infeasibility.
  bool presolve() {
    const int n = p_.num_vars();
    lo_ = p_.lower;
    hi_ = p_.upper;
    lo_src_.assign(static_cast<size_t>(n), -1);
    hi_src_.assign(static_cast<size_t>(n), -1);
    const double tol = opt_.feasibility_tol;
    for (int i = 0; i < p_.num_ineq(); ++i) {
      int nnz = 0, col = -1;
      for (int j = 0; j < n; ++j)
        if (p_.ineq_matrix(i, j) != 0.0) {
          ++nnz;
          col = j;
        }
      if (nnz == 0) {
        if (p_.ineq_rhs[i] > tol) return false;
      } else if (nnz == 1) {
        const double a = p_.ineq_matrix(i, col);
        const double v = p_.ineq_rhs[i] / a;
        if (a > 0 && (v > lo_[col] || lo_src_[static_cast<size_t>(col)] < 0)) {
          if (v >= lo_[col]) lo_src_[static_cast<size_t>(col)] = i;
          lo_[col] = std::max(lo_[col], v);
        } else if (a < 0 && (v < hi_[col] || hi_src_[static_cast<size_t>(col)] < 0)) {
          if (v <= hi_[col]) hi_src_[static_cast<size_t>(col)] = i;
          hi_[col] = std::min(hi_[col], v);
        }
      } else {
        ineq_rows_.push_back(i);
      }
    }
    for (int i = 0; i < p_.num_eq(); ++i) {
      int nnz = 0, col = -1;
      for (int j = 0; j < n; ++j)
        if (p_.eq_matrix(i, j) != 0.0) {
          ++nnz;
          col = j;
        }
      if (nnz == 0) {
        if (std::abs(p_.eq_rhs[i]) > tol) return false;
      } else if (nnz == 1) {
        const double v = p_.eq_rhs[i] / p_.eq_matrix(i, col);
        if (v < lo_[col] - tol || v > hi_[col] + tol) return false;
        lo_[col] = v;
        hi_[col] = v;
        lo_src_[static_cast<size_t>(col)] = hi_src_[static_cast<size_t>(col)] =
            p_.num_ineq() + i;
      } else {
        eq_rows_.push_back(i);
      }
    }
    for (int j = 0; j < n; ++j) {
      if (lo_[j] > hi_[j] + tol * (1.0 + std::abs(lo_[j]))) return false;
      if (lo_[j] > hi_[j]) hi_[j] = lo_[j];
    }
    return true;
  }

  void build() {
    const int n = p_.num_vars();
    map_.assign(static_cast<size_t>(n), VarMap{});
    int cols = 0;
    std::vector<double> col_ub;
    for (int j = 0; j < n; ++j) {
      VarMap& m = map_[static_cast<size_t>(j)];
      const bool lo_fin = std::isfinite(lo_[j]);
      const bool hi_fin = std::isfinite(hi_[j]);
      if (lo_fin && hi_fin && lo_[j] == hi_[j]) {
        m.offset = lo_[j];
      } else if (lo_fin) {
        m.col = cols++;
        m.offset = lo_[j];
        col_ub.push_back(hi_fin ? hi_[j] - lo_[j] : kInf);
      } else if (hi_fin) {
        m.col = cols++;
        m.sign = -1.0;
        m.offset = hi_[j];
        col_ub.push_back(kInf);
      } else {
        m.col = cols++;
        m.col2 = cols++;
        col_ub.push_back(kInf);
        col_ub.push_back(kInf);
      }
    }
    structural_ = cols;
    rows_ = static_cast<int>(ineq_rows_.size() + eq_rows_.size());
    const int num_surplus = static_cast<int>(ineq_rows_.size());

    // Row data over structural + surplus columns.
    RowMatrix a = RowMatrix::Zero(rows_, structural_ + num_surplus);
    Vector rhs(rows_);
    auto fill = [&](int r, const auto& src_row, double src_rhs) {
      double b = src_rhs;
      for (int j = 0; j < n; ++j) {
        const double v = src_row(j);
        if (v == 0.0) continue;
        const VarMap& m = map_[static_cast<size_t>(j)];
        b -= v * m.offset;
        if (m.col >= 0) a(r, m.col) += v * m.sign;
        if (m.col2 >= 0) a(r, m.col2) -= v;
      }
      rhs[r] = b;
    };
    int r = 0;
    for (int i : ineq_rows_) {
      fill(r, p_.ineq_matrix.row(i), p_.ineq_rhs[i]);
      a(r, structural_ + r) = -1.0;
      ++r;
    }
    for (int i : eq_rows_) {
      fill(r, p_.eq_matrix.row(i), p_.eq_rhs[i]);
      ++r;
    }
    for (int k = 0; k < num_surplus; ++k) col_ub.push_back(kInf);
    row_sign_ = Vector::Ones(rows_);
    for (int i = 0; i < rows_; ++i) {
      if (rhs[i] < 0) {
        a.row(i) *= -1.0;
        rhs[i] = -rhs[i];
        row_sign_[i] = -1.0;
      }
    }
    rhs_scale_ = rows_ > 0 ? rhs.cwiseAbs().maxCoeff() : 0.0;

    // Initial basis: a column living only in row i with a positive entry.
    const int base_cols = structural_ + num_surplus;
    std::vector<int> col_nnz(static_cast<size_t>(base_cols), 0);
    std::vector<int> col_row(static_cast<size_t>(base_cols), -1);
    for (int i = 0; i < rows_; ++i)
      for (int c = 0; c < base_cols; ++c)
        if (a(i, c) != 0.0) {
          ++col_nnz[static_cast<size_t>(c)];
          col_row[static_cast<size_t>(c)] = i;
        }
    std::vector<int> crash(static_cast<size_t>(rows_), -1);
    // Surplus columns first, then structurals.
    auto try_col = [&](int c) {
      if (col_nnz[static_cast<size_t>(c)] != 1) return;
      const int i = col_row[static_cast<size_t>(c)];
      if (crash[static_cast<size_t>(i)] >= 0) return;
      const double v = a(i, c);
      if (v <= opt_.pivot_tol) return;
      if (rhs[i] / v > col_ub[static_cast<size_t>(c)]) return;
      crash[static_cast<size_t>(i)] = c;
    };
    for (int c = structural_; c < base_cols; ++c) try_col(c);
    for (int c = 0; c < structural_; ++c) try_col(c);

    num_artificial_ = 0;
    for (int i = 0; i < rows_; ++i)
      if (crash[static_cast<size_t>(i)] < 0) ++num_artificial_;
    first_artificial_ = base_cols;
    num_cols_ = base_cols + num_artificial_;
    ub_ = Vector(num_cols_);
    for (int c = 0; c < base_cols; ++c) ub_[c] = col_ub[static_cast<size_t>(c)];
    for (int c = base_cols; c < num_cols_; ++c) ub_[c] = kInf;

    t_ = RowMatrix::Zero(rows_, num_cols_);
    t_.leftCols(base_cols) = a;
    if (opt_.duals) a_ = std::move(a);
    xb_ = Vector(rows_);
    basis_.assign(static_cast<size_t>(rows_), -1);
    is_basic_.assign(static_cast<size_t>(num_cols_), false);
    at_upper_.assign(static_cast<size_t>(num_cols_), false);
    int art = base_cols;
    art_row_.clear();
    for (int i = 0; i < rows_; ++i) {
      int c = crash[static_cast<size_t>(i)];
      if (c < 0) {
        c = art++;
        t_(i, c) = 1.0;
        art_row_.push_back(i);
      }
      const double piv = t_(i, c);
      t_.row(i) /= piv;
      xb_[i] = rhs[i] / piv;
      basis_[static_cast<size_t>(i)] = c;
      is_basic_[static_cast<size_t>(c)] = true;
    }
  }

  double nonbasic_value(int c) const { return at_upper_[static_cast<size_t>(c)] ? ub_[c] : 0.0; }

  void pivot(int r, int j) {
    const double piv = t_(r, j);
    t_.row(r) /= piv;
    nz_.clear();
    for (int c = 0; c < num_cols_; ++c)
      if (t_(r, c) != 0.0) nz_.push_back(c);
    const bool sparse = 4 * nz_.size() < static_cast<size_t>(num_cols_);
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, j);
      if (f == 0.0) continue;
      if (sparse) {
        for (int c : nz_) t_(i, c) -= f * t_(r, c);
      } else {
        t_.row(i) -= f * t_.row(r);
      }
    }
    const double fd = d_[j];
    if (fd != 0.0)
      for (int c : nz_) d_[c] -= fd * t_(r, c);
    const int leaving = basis_[static_cast<size_t>(r)];
    is_basic_[static_cast<size_t>(leaving)] = false;
    basis_[static_cast<size_t>(r)] = j;
    is_basic_[static_cast<size_t>(j)] = true;
    at_upper_[static_cast<size_t>(j)] = false;
  }

  Status iterate(const Vector& cost) {
    d_ = cost;
    for (int r = 0; r < rows_; ++r) {
      const double cb = cost[basis_[static_cast<size_t>(r)]];
      if (cb != 0.0) d_ -= cb * t_.row(r).transpose();
    }
    const int degenerate_limit = 3 * (num_cols_ + rows_);
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      // Pricing.
      int enter = -1;
      double best = 0.0;
      for (int c = 0; c < num_cols_; ++c) {
        if (is_basic_[static_cast<size_t>(c)] || blocked(c)) continue;
        double gain = 0.0;
        if (!at_upper_[static_cast<size_t>(c)]) {
          if (d_[c] < -opt_.optimality_tol && ub_[c] > 0.0) gain = -d_[c];
        } else if (d_[c] > opt_.optimality_tol) {
          gain = d_[c];
        }
        if (gain <= 0.0) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (gain > best) {
          best = gain;
          enter = c;
        }
      }
      if (enter < 0) return Status::kOptimal;
      if (iterations_ >= iteration_limit_) return Status::kIterationLimit;
      ++iterations_;

      const double dir = at_upper_[static_cast<size_t>(enter)] ? -1.0 : 1.0;
      // Ratio test.
      double theta = kInf;
      int leave = -1;
      double leave_alpha = 0.0;
      for (int r = 0; r < rows_; ++r) {
        const double alpha = t_(r, enter) * dir;
        double limit;
        if (alpha > opt_.pivot_tol) {
          limit = std::max(xb_[r], 0.0) / alpha;
        } else if (alpha < -opt_.pivot_tol) {
          const double ubb = ub_[basis_[static_cast<size_t>(r)]];
          if (!std::isfinite(ubb)) continue;
          limit = std::max(ubb - xb_[r], 0.0) / -alpha;
        } else {
          continue;
        }
        bool take = false;
        if (leave < 0 || limit < theta - 1e-12) {
          take = true;
        } else if (limit <= theta + 1e-12) {
          if (bland) {
            take = basis_[static_cast<size_t>(r)] < basis_[static_cast<size_t>(leave)];
          } else {
            take = std::abs(alpha) > std::abs(leave_alpha);
          }
        }
        if (take) {
          theta = leave < 0 ? limit : std::min(theta, limit);
          leave = r;
          leave_alpha = alpha;
        }
      }
      const double flip = ub_[enter];
      if (leave < 0 && !std::isfinite(flip)) return Status::kUnbounded;

      if (leave < 0 || flip <= theta) {
        // Bound flip of the entering variable; no basis change.
        for (int r = 0; r < rows_; ++r) xb_[r] -= dir * flip * t_(r, enter);
        at_upper_[static_cast<size_t>(enter)] = !at_upper_[static_cast<size_t>(enter)];
        degenerate_run = 0;
        bland = false;
        continue;
      }

      const double enter_value = nonbasic_value(enter) + dir * theta;
      for (int r = 0; r < rows_; ++r) xb_[r] -= dir * theta * t_(r, enter);
      const int leaving = basis_[static_cast<size_t>(leave)];
      const bool leaves_at_upper = leave_alpha < 0.0;
      pivot(leave, enter);
      xb_[leave] = enter_value;
      at_upper_[static_cast<size_t>(leaving)] = leaves_at_upper;

      if (theta <= 1e-12) {
        if (++degenerate_run > degenerate_limit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
  }

  bool blocked(int c) const { return retired_ && c >= first_artificial_; }

  // Pivots zero-valued artificials out of the basis where possible and fixes
  // every artificial at zero for phase 2.
  void retire_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[static_cast<size_t>(r)] < first_artificial_) continue;
      int best = -1;
      double best_abs = opt_.pivot_tol;
      for (int c = 0; c < first_artificial_; ++c) {
        if (is_basic_[static_cast<size_t>(c)]) continue;
        const double v = std::abs(t_(r, c));
        if (v > best_abs) {
          best_abs = v;
          best = c;
        }
      }
      if (best < 0) continue;  // redundant row
      const double value = nonbasic_value(best);
      const int leaving = basis_[static_cast<size_t>(r)];
      d_ = Vector::Zero(num_cols_);
      pivot(r, best);
      xb_[r] = value;
      at_upper_[static_cast<size_t>(leaving)] = false;
    }
    for (int c = first_artificial_; c < num_cols_; ++c) ub_[c] = 0.0;
    for (int r = 0; r < rows_; ++r)
      if (basis_[static_cast<size_t>(r)] >= first_artificial_) xb_[r] = 0.0;
    retired_ = true;
  }

  void extract(LpSolution& sol) const {
    Vector internal(num_cols_);
    for (int c = 0; c < num_cols_; ++c) internal[c] = nonbasic_value(c);
    for (int r = 0; r < rows_; ++r) internal[basis_[static_cast<size_t>(r)]] = xb_[r];
    const int n = p_.num_vars();
    sol.primal = Vector(n);
    sol.flags.assign(static_cast<size_t>(n), BoundFlag::kInterior);
    for (int j = 0; j < n; ++j) {
      const VarMap& m = map_[static_cast<size_t>(j)];
      double x = m.offset;
      if (m.col >= 0) x += m.sign * internal[m.col];
      if (m.col2 >= 0) x -= internal[m.col2];
      // Clamp tiny drift back into the original box.
      if (std::isfinite(p_.lower[j]) && x < p_.lower[j]) x = p_.lower[j];
      if (std::isfinite(p_.upper[j]) && x > p_.upper[j]) x = p_.upper[j];
      sol.primal[j] = x;
      const double tol = opt_.feasibility_tol;
      if (std::isfinite(p_.lower[j]) && std::abs(x - p_.lower[j]) <= tol)
        sol.flags[static_cast<size_t>(j)] = BoundFlag::kAtLower;
      else if (std::isfinite(p_.upper[j]) && std::abs(x - p_.upper[j]) <= tol)
        sol.flags[static_cast<size_t>(j)] = BoundFlag::kAtUpper;
    }
    sol.objective = p_.objective.dot(sol.primal);
    if (opt_.duals) extract_duals(sol);
  }

  // y = c_B B^-1 on the internal rows, mapped back to the original rows.
  // Folded rows take the reduced cost of the variable they bound.
  void extract_duals(LpSolution& sol) const {
    const int n = p_.num_vars();
    const double sense = p_.sense == Sense::kMaximize ? -1.0 : 1.0;
    Vector cost = Vector::Zero(num_cols_);
    for (int j = 0; j < n; ++j) {
      const VarMap& m = map_[static_cast<size_t>(j)];
      if (m.col >= 0) cost[m.col] += sense * m.sign * p_.objective[j];
      if (m.col2 >= 0) cost[m.col2] -= sense * p_.objective[j];
    }
    Matrix basis(rows_, rows_);
    Vector cb(rows_);
    const int base_cols = first_artificial_;
    for (int r = 0; r < rows_; ++r) {
      const int c = basis_[static_cast<size_t>(r)];
      if (c < base_cols) {
        basis.col(r) = a_.col(c);
      } else {
        basis.col(r).setZero();
        basis(art_row_[static_cast<size_t>(c - base_cols)], r) = 1.0;
      }
      cb[r] = cost[c];
    }
    Vector y = Vector::Zero(rows_);
    if (rows_ > 0) y = basis.transpose().fullPivLu().solve(cb);
    Vector duals = Vector::Zero(p_.num_ineq() + p_.num_eq());
    Vector rc = sense * p_.objective;
    for (int r = 0; r < rows_; ++r) {
      const double yr = row_sign_[r] * y[r];
      const bool is_ineq = r < static_cast<int>(ineq_rows_.size());
      const int orig = is_ineq ? ineq_rows_[static_cast<size_t>(r)]
                               : eq_rows_[static_cast<size_t>(r) - ineq_rows_.size()];
      duals[is_ineq ? orig : p_.num_ineq() + orig] = yr;
      if (is_ineq) rc -= yr * p_.ineq_matrix.row(orig).transpose();
      else rc -= yr * p_.eq_matrix.row(orig).transpose();
    }
    auto coeff = [&](int row, int j) {
      return row < p_.num_ineq() ? p_.ineq_matrix(row, j)
                                 : p_.eq_matrix(row - p_.num_ineq(), j);
    };
    for (int j = 0; j < n; ++j) {
      const int src = rc[j] > 0.0 ? lo_src_[static_cast<size_t>(j)]
                                  : hi_src_[static_cast<size_t>(j)];
      if (src < 0 || rc[j] == 0.0) continue;
      duals[src] += rc[j] / coeff(src, j);
    }
    sol.duals = sense * duals;
  }

  const LpProblem& p_;
  LpOptions opt_;
  Vector lo_, hi_;
  std::vector<int> ineq_rows_, eq_rows_;
  std::vector<int> lo_src_, hi_src_;  // row that set each folded bound
  Vector row_sign_;
  std::vector<int> art_row_;
  RowMatrix a_;
  std::vector<VarMap> map_;
  int structural_ = 0;
  int rows_ = 0;
  int num_cols_ = 0;
  int num_artificial_ = 0;
  int first_artificial_ = 0;
  double rhs_scale_ = 0.0;
  RowMatrix t_;
  std::vector<int> nz_;  // nonzero columns of the pivot row
  Vector xb_;
  Vector d_;
  Vector ub_;
  std::vector<int> basis_;
  std::vector<bool> is_basic_;
  std::vector<bool> at_upper_;
  bool retired_ = false;
  int iterations_ = 0;
  int iteration_limit_ = 0;
};

}  // namespace detail

inline LpSolution solve_lp(const LpProblem& p, const LpOptions& opt = {}) {
  p.validate();
  return detail::BoundedSimplex(p, opt).solve(/*phase_one_only=*/false);
}

// Phase 1 only. kOptimal means a feasible point exists.
inline Status feasibility_status(const LpProblem& p, const LpOptions& opt = {}) {
  p.validate();
  return detail::BoundedSimplex(p, opt).solve(/*phase_one_only=*/true).status;
}

inline bool check_feasible(const LpProblem& p, const LpOptions& opt = {}) {
  const Status s = feasibility_status(p, opt);
  require(s != Status::kIterationLimit, ErrorKind::kPrecondition,
          "feasibility check hit the iteration limit");
  return s == Status::kOptimal;
}

}  // namespace hqcran::lp
