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

// Single-spin-flip Metropolis annealing on an Ising model.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "hqcran/qubo.hpp"

namespace hqcran {

struct AnnealResult {
  Vector spins;
  Vector x;  // (spins + 1) / 2
  double energy = kInf;
  int best_read = -1;
};

struct AnnealSchedule {
  double beta_hot = 0.0;
  double beta_cold = 0.0;
};

// beta_hot = 0.1 / max_i(|h_i| + sum_j |J_ij|), beta_cold = 8 / smallest
// nonzero |h_i| (floored at 1e-3).
inline AnnealSchedule default_schedule(const IsingModel& m) {
  const int n = m.size();
  const Matrix sym = m.J + m.J.transpose();
  double d_max = 0.0;
  double d_min = kInf;
  for (int i = 0; i < n; ++i) {
    d_max = std::max(d_max, std::abs(m.h[i]) + sym.row(i).cwiseAbs().sum());
    if (m.h[i] != 0.0) d_min = std::min(d_min, std::abs(m.h[i]));
  }
  if (!std::isfinite(d_min)) d_min = 1.0;
  d_min = std::max(1e-3, d_min);
  if (d_max <= 0.0) d_max = 1.0;
  AnnealSchedule s;
  s.beta_hot = 0.1 / d_max;
  s.beta_cold = std::max(8.0 / d_min, s.beta_hot);
  return s;
}

inline AnnealResult solve_sa(const IsingModel& m, int reads, int sweeps, std::uint64_t seed) {
  require(reads >= 1 && sweeps >= 1, ErrorKind::kPrecondition,
          "reads and sweeps must be at least 1");
  const int n = m.size();
  AnnealResult best;
  if (n == 0) {
    best.spins = best.x = Vector(0);
    best.energy = m.offset;
    best.best_read = 0;
    return best;
  }
  const Matrix sym = m.J + m.J.transpose();
  const AnnealSchedule sched = default_schedule(m);
  const double ratio = sweeps > 1 ? std::pow(sched.beta_cold / sched.beta_hot,
                                             1.0 / static_cast<double>(sweeps - 1))
                                  : 1.0;
  Vector s(n), local(n);
  for (int read = 0; read < reads; ++read) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(read));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < n; ++i) s[i] = unit(rng) < 0.5 ? -1.0 : 1.0;
    // local_i = h_i + sum_j J_ij s_j, so flipping s_i changes E by 2 s_i local_i.
    local = m.h + sym * s;
    double energy = m.energy(s);
    double read_best = energy;
    Vector read_state = s;
    double beta = sched.beta_hot;
    for (int sweep = 0; sweep < sweeps; ++sweep, beta *= ratio) {
      for (int i = 0; i < n; ++i) {
        const double delta = 2.0 * s[i] * local[i];
        if (delta > 0.0 && unit(rng) >= std::exp(-beta * delta)) continue;
        s[i] = -s[i];
        energy += delta;
        const double step = 2.0 * s[i];
        for (int j = 0; j < n; ++j) local[j] += step * sym(j, i);
        if (energy < read_best - 1e-12) {
          read_best = energy;
          read_state = s;
        }
      }
    }
    read_best = m.energy(read_state);
    if (read_best < best.energy - 1e-12) {
      best.energy = read_best;
      best.spins = read_state;
      best.best_read = read;
    }
  }
  best.x = spins_to_bits(best.spins);
  return best;
}

}  // namespace hqcran
