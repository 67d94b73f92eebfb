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

// Penalized master problem as a QUBO over x = (p, y, a_1, ..., a_tau):
//
//   eta  ~ w_p p   two's complement, LSB first, sign bit last
//   a_k  ~ w_a a_k unsigned slack of cut k
//
//   value(x) = w_p p + 1/2 |y - y_prev|^2 + sum_k (e_k + h_k x)^2
//   h_k      = (-w_p, -alpha_k B, 0 .. w_a .. 0)
//
// Feasibility cuts drop the -w_p block so their penalty forces the cut
// expression itself to be non-positive.

#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "hqcran/common.hpp"

namespace hqcran {

struct BitLayout {
  int n_p = 2;
  int n_y = 0;
  std::vector<int> n_a;  // one entry per cut
  double omega_p = 0.01;
  double omega_a = 0.1;

  int y_offset() const { return n_p; }
  int a_offset(int k) const {
    int off = n_p + n_y;
    for (int i = 0; i < k; ++i) off += n_a[static_cast<size_t>(i)];
    return off;
  }
  int total() const { return a_offset(static_cast<int>(n_a.size())); }
};

// Largest decodable eta.
inline double eta_max(int n_p, double omega_p) {
  return omega_p * (std::ldexp(1.0, n_p - 1) - 1.0);
}
inline double eta_min(int n_p, double omega_p) { return -omega_p * std::ldexp(1.0, n_p - 1); }
inline double slack_max(int n_a, double omega_a) { return omega_a * (std::ldexp(1.0, n_a) - 1.0); }

// Sign bit plus enough magnitude bits to reach `span` = u_c + u_t.
inline int size_eta_bits(double span, double omega_p) {
  require(omega_p > 0.0, ErrorKind::kPrecondition, "omega_p must be positive");
  require(span >= 0.0 && std::isfinite(span), ErrorKind::kPrecondition,
          "eta span must be finite and non-negative");
  const int n = 1 + static_cast<int>(std::ceil(std::log2(1.0 + span / omega_p) - 1e-12));
  return std::max(2, n);
}

inline int size_eta_bits(double u_c, double u_t, double omega_p) {
  return size_eta_bits(u_c + u_t, omega_p);
}

inline int size_slack_bits(double e, double eta_bar, double row_l1, double omega_a) {
  require(omega_a > 0.0, ErrorKind::kPrecondition, "omega_a must be positive");
  const double reach = std::abs(e) + eta_bar + row_l1;
  const int n = static_cast<int>(std::ceil(std::log2(reach / omega_a + 1.0) - 1e-12));
  return std::max(1, n);
}

inline Vector eta_weights(int n_p, double omega_p) {
  Vector w(n_p);
  for (int i = 0; i < n_p - 1; ++i) w[i] = omega_p * std::ldexp(1.0, i);
  w[n_p - 1] = -omega_p * std::ldexp(1.0, n_p - 1);
  return w;
}

inline Vector slack_weights(int n_a, double omega_a) {
  Vector w(n_a);
  for (int i = 0; i < n_a; ++i) w[i] = omega_a * std::ldexp(1.0, i);
  return w;
}

inline double decode_eta(const Vector& bits, double omega_p) {
  return eta_weights(static_cast<int>(bits.size()), omega_p).dot(bits);
}

inline double decode_slack(const Vector& bits, double omega_a) {
  return slack_weights(static_cast<int>(bits.size()), omega_a).dot(bits);
}

// A cut as seen by the QUBO: e + (-eta) - coeff_y . y + a >= ... penalty.
struct CutTerms {
  double e = 0.0;
  Vector coeff_y;  // alpha B
  bool ray = false;
};

inline Vector cut_row(const CutTerms& cut, const BitLayout& layout, int k) {
  Vector h = Vector::Zero(layout.total());
  if (!cut.ray) h.head(layout.n_p) = -eta_weights(layout.n_p, layout.omega_p);
  h.segment(layout.y_offset(), layout.n_y) = -cut.coeff_y;
  h.segment(layout.a_offset(k), layout.n_a[static_cast<size_t>(k)]) =
      slack_weights(layout.n_a[static_cast<size_t>(k)], layout.omega_a);
  return h;
}

struct QuboModel {
  Matrix Q;  // symmetric
  Vector q;
  double kappa = 0.0;
  BitLayout layout;

  int size() const { return static_cast<int>(q.size()); }
  double evaluate(const Vector& x) const { return x.dot(Q * x) + q.dot(x) + kappa; }

  double eta(const Vector& x) const { return decode_eta(x.head(layout.n_p), layout.omega_p); }
  Vector y(const Vector& x) const { return x.segment(layout.y_offset(), layout.n_y); }
};

inline QuboModel assemble_qubo(const std::vector<CutTerms>& cuts, const Vector& y_prev,
                               const BitLayout& layout, bool hamming = true) {
  require(layout.n_a.size() == cuts.size(), ErrorKind::kDimension,
          "layout slack segments do not match the cut count");
  require(y_prev.size() == layout.n_y, ErrorKind::kDimension, "y_prev has wrong length");
  const int n = layout.total();
  QuboModel m;
  m.layout = layout;
  m.Q = Matrix::Zero(n, n);
  m.q = Vector::Zero(n);
  m.q.head(layout.n_p) = eta_weights(layout.n_p, layout.omega_p);
  for (size_t k = 0; k < cuts.size(); ++k) {
    require(cuts[k].coeff_y.size() == layout.n_y, ErrorKind::kDimension,
            "cut coefficient row has wrong length");
    const Vector h = cut_row(cuts[k], layout, static_cast<int>(k));
    m.Q.noalias() += h * h.transpose();
    m.q += 2.0 * cuts[k].e * h;
    m.kappa += cuts[k].e * cuts[k].e;
  }
  if (hamming) {
    for (int i = 0; i < layout.n_y; ++i) {
      m.Q(layout.y_offset() + i, layout.y_offset() + i) += 0.5;
      m.q[layout.y_offset() + i] -= y_prev[i];
    }
    m.kappa += 0.5 * y_prev.sum();
  }
  return m;
}

struct IsingModel {
  Vector h;
  Matrix J;  // strictly upper triangular
  double offset = 0.0;

  int size() const { return static_cast<int>(h.size()); }

  // E(s) = -sum h_i s_i - sum_{i<j} J_ij s_i s_j + offset
  double energy(const Vector& s) const {
    return -h.dot(s) - s.dot(J.triangularView<Eigen::StrictlyUpper>() * s) + offset;
  }
};

inline Vector spins_to_bits(const Vector& s) { return (s.array() + 1.0) * 0.5; }
inline Vector bits_to_spins(const Vector& x) { return 2.0 * x.array() - 1.0; }

// Substitutes x = (s + 1) / 2 after folding q into the diagonal. Couplings
// below prune_fraction * max|J| are dropped when a fraction is given.
inline IsingModel qubo_to_ising(const QuboModel& m,
                                std::optional<double> prune_fraction = std::nullopt) {
  const int n = m.size();
  Matrix qd = m.Q;
  qd.diagonal() += m.q;
  IsingModel is;
  is.h = Vector::Zero(n);
  is.J = Matrix::Zero(n, n);
  is.offset = m.kappa;
  for (int i = 0; i < n; ++i) {
    // x_i = (s_i + 1)/2; diagonal term Q'_ii x_i contributes Q'_ii/2 (s_i + 1).
    is.h[i] -= qd(i, i) / 2.0;
    is.offset += qd(i, i) / 2.0;
    for (int j = i + 1; j < n; ++j) {
      // 2 Q_ij x_i x_j = Q_ij/2 (s_i s_j + s_i + s_j + 1).
      const double c = qd(i, j) + qd(j, i);
      if (c == 0.0) continue;
      is.J(i, j) = -c / 4.0;
      is.h[i] -= c / 4.0;
      is.h[j] -= c / 4.0;
      is.offset += c / 4.0;
    }
  }
  if (prune_fraction) {
    const double cap = is.J.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::abs(is.J(i, j)) < *prune_fraction * cap || *prune_fraction >= 1.0)
          is.J(i, j) = 0.0;
  }
  return is;
}

struct QuboSolution {
  Vector x;
  double value = kInf;
};

inline bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

inline constexpr int kMaxExhaustiveBits = 24;

// Gray-code enumeration with incremental flip deltas.
inline QuboSolution solve_exhaustive(const QuboModel& m) {
  const int n = m.size();
  require(n <= kMaxExhaustiveBits, ErrorKind::kPrecondition,
          "exhaustive search limited to " + std::to_string(kMaxExhaustiveBits) + " bits");
  const Matrix sym = m.Q + m.Q.transpose();
  Vector x = Vector::Zero(n);
  Vector field = Vector::Zero(n);  // sum_{j != i} (Q_ij + Q_ji) x_j
  double value = m.kappa;
  QuboSolution best{x, value};
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < count; ++step) {
    const int i = __builtin_ctzll(step);
    const double dir = x[i] == 0.0 ? 1.0 : -1.0;
    value += dir * (m.Q(i, i) + m.q[i] + field[i]);
    x[i] += dir;
    for (int j = 0; j < n; ++j)
      if (j != i) field[j] += dir * sym(j, i);
    if (value < best.value - 1e-9 ||
        (value <= best.value + 1e-9 && lex_less(x, best.x))) {
      best.x = x;
      best.value = value;
    }
  }
  best.value = m.evaluate(best.x);
  return best;
}

// Edge list: upper triangle with the linear term on the diagonal and
// couplers doubled, then the constant.
inline void write_qubo_csv(const QuboModel& m, std::ostream& out) {
  out.precision(17);
  out << "i,j,value\n";
  for (int i = 0; i < m.size(); ++i) {
    const double diag = m.Q(i, i) + m.q[i];
    if (diag != 0.0) out << i << ',' << i << ',' << diag << '\n';
    for (int j = i + 1; j < m.size(); ++j) {
      const double c = m.Q(i, j) + m.Q(j, i);
      if (c != 0.0) out << i << ',' << j << ',' << c << '\n';
    }
  }
  out << "offset," << m.kappa << '\n';
}

}  // namespace hqcran
