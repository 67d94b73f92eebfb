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

// Best-first branch and bound on top of the LP engine.

#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <string_view>
#include <vector>

#include "hqcran/lp.hpp"

namespace hqcran::lp {

enum class MilpStatus { kOptimal, kInfeasible, kNodeLimit };

inline std::string_view to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::kOptimal: return "optimal";
    case MilpStatus::kInfeasible: return "infeasible";
    case MilpStatus::kNodeLimit: return "node_limit";
  }
  return "?";
}

struct MilpProblem {
  LpProblem lp;
  std::vector<bool> integer;  // one flag per variable
};

struct MilpOptions {
  std::int64_t node_limit = 1'000'000;
  double integrality_tol = 1e-6;
  double prune_tol = 1e-9;
  LpOptions lp;
};

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  double objective = 0.0;  // in the problem's own sense
  Vector primal;
  double best_bound = 0.0;  // proven bound in the problem's own sense
  std::int64_t nodes = 0;   // LP relaxations solved
};

inline MilpSolution solve_milp(const MilpProblem& mp, const MilpOptions& opt = {}) {
  const int n = mp.lp.num_vars();
  require(static_cast<int>(mp.integer.size()) == n, ErrorKind::kDimension,
          "integrality flags do not match variable count");
  const double sense = mp.lp.sense == Sense::kMaximize ? -1.0 : 1.0;

  LpProblem work = mp.lp;
  work.sense = Sense::kMinimize;
  work.objective = sense * mp.lp.objective;

  struct Node {
    double bound;
    std::int64_t seq;
    Vector lower, upper;
    int branch_var;
    double branch_value;
  };
  struct Worse {
    bool operator()(const Node& a, const Node& b) const {
      if (a.bound != b.bound) return a.bound > b.bound;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Node, std::vector<Node>, Worse> open;

  MilpSolution out;
  double incumbent = kInf;
  std::int64_t seq = 0;

  auto most_fractional = [&](const Vector& x) {
    int best = -1;
    double best_frac = opt.integrality_tol;
    for (int j = 0; j < n; ++j) {
      if (!mp.integer[static_cast<size_t>(j)]) continue;
      const double f = std::abs(x[j] - std::round(x[j]));
      if (f > best_frac + 1e-15) {
        best_frac = f;
        best = j;
      }
    }
    return best;
  };

  // Solves one relaxation and either records an incumbent, queues the node,
  // or drops it.
  auto evaluate = [&](Vector lower, Vector upper) {
    work.lower = lower;
    work.upper = upper;
    const LpSolution s = solve_lp(work, opt.lp);
    ++out.nodes;
    require(s.status != Status::kIterationLimit, ErrorKind::kPrecondition,
            "LP relaxation hit the iteration limit");
    require(s.status != Status::kUnbounded, ErrorKind::kPrecondition,
            "LP relaxation is unbounded");
    if (s.status == Status::kInfeasible) return;
    if (s.objective >= incumbent - opt.prune_tol) return;
    const int j = most_fractional(s.primal);
    if (j < 0) {
      incumbent = s.objective;
      out.has_incumbent = true;
      out.primal = s.primal;
      for (int k = 0; k < n; ++k)
        if (mp.integer[static_cast<size_t>(k)]) out.primal[k] = std::round(out.primal[k]);
      return;
    }
    open.push(Node{s.objective, seq++, std::move(lower), std::move(upper), j, s.primal[j]});
  };

  evaluate(mp.lp.lower, mp.lp.upper);
  while (!open.empty()) {
    if (open.top().bound >= incumbent - opt.prune_tol) {
      while (!open.empty()) open.pop();
      break;
    }
    if (out.nodes >= opt.node_limit) break;
    Node node = open.top();
    open.pop();
    const int j = node.branch_var;
    const double v = node.branch_value;
    Vector up_lower = node.lower;
    Vector down_upper = node.upper;
    down_upper[j] = std::floor(v);
    up_lower[j] = std::ceil(v);
    evaluate(node.lower, std::move(down_upper));
    evaluate(std::move(up_lower), node.upper);
  }

  if (!open.empty()) {
    out.status = MilpStatus::kNodeLimit;
    out.best_bound = sense * std::min(open.top().bound, incumbent);
  } else if (out.has_incumbent) {
    out.status = MilpStatus::kOptimal;
    out.best_bound = sense * incumbent;
  } else {
    out.status = MilpStatus::kInfeasible;
  }
  if (out.has_incumbent) out.objective = sense * incumbent;
  return out;
}

}  // namespace hqcran::lp
