// Copyright 2026 The mcftopo Authors.
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

#include "mcftopo/solver.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <vector>

#include "dual_simplex.h"

namespace mcftopo {

using internal::DualSimplex;

namespace {

constexpr double kIntegralityTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  std::vector<double> lower;  // bounds of the integral columns
  std::vector<double> upper;
  double bound = -kInf;  // parent LP value, minimization form
  int depth = 0;
  long sequence = 0;
};

// Best bound first, deeper first among equal bounds, then creation order.
struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.sequence > b.sequence;
  }
};

bool IntegralObjective(const MilpProblem& problem) {
  for (int j = 0; j < problem.num_columns(); ++j) {
    const double c = problem.objective(j);
    if (c == 0.0) continue;
    if (!problem.IsIntegral(j)) return false;
    if (c != std::round(c)) return false;
  }
  return true;
}

}  // namespace

MilpSolution BranchAndBoundSolve(const MilpProblem& problem,
                                 const SolverParams& params, int column_guard) {
  if (problem.num_columns() > column_guard) {
    throw SolverError("problem has " + std::to_string(problem.num_columns()) +
                      " columns, above the reference backend guard of " +
                      std::to_string(column_guard) +
                      "; use an external backend (--backend highs)");
  }
  const auto start = DualSimplex::Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<DualSimplex::Clock::duration>(
                  std::chrono::duration<double>(std::max(0.0, params.time_limit)));

  MilpSolution result;
  DualSimplex lp(problem);

  std::vector<int> integral;
  for (int j = 0; j < problem.num_columns(); ++j) {
    if (problem.IsIntegral(j)) integral.push_back(j);
  }
  const bool integral_objective = IntegralObjective(problem);

  Node root;
  for (int j : integral) {
    root.lower.push_back(std::ceil(lp.lower(j) - kIntegralityTol));
    root.upper.push_back(std::floor(lp.upper(j) + kIntegralityTol));
  }
  for (size_t k = 0; k < integral.size(); ++k) {
    if (root.lower[k] > root.upper[k]) {
      result.status = SolveStatus::kInfeasible;
      return result;
    }
  }

  double incumbent = kInf;
  std::vector<double> best;
  // A node is worth exploring only if it can beat the incumbent by more than
  // the tolerated gap (and, for integral objectives, by at least one).
  auto cutoff = [&]() {
    if (incumbent == kInf) return kInf;
    const double gap =
        std::max(1e-6, params.rel_gap * std::abs(incumbent));
    double c = incumbent - gap;
    if (integral_objective) c = std::min(c, incumbent - 1.0 + 1e-6);
    return c;
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long sequence = 0;
  open.push(root);
  bool timed_out = false;
  bool root_done = false;

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound > cutoff()) continue;
    if (DualSimplex::Clock::now() > deadline) {
      open.push(node);
      timed_out = true;
      break;
    }
    for (size_t k = 0; k < integral.size(); ++k) {
      lp.SetColumnBounds(integral[k], node.lower[k], node.upper[k]);
    }
    const DualSimplex::Status status = lp.Solve(cutoff(), deadline);
    ++result.nodes;
    if (status == DualSimplex::Status::kTimeLimit) {
      open.push(node);
      timed_out = true;
      break;
    }
    if (status == DualSimplex::Status::kIterationLimit) {
      throw SolverError("reference LP solver failed to converge");
    }
    if (status != DualSimplex::Status::kOptimal) continue;

    const std::vector<double> x = lp.ColumnValues();
    if (!root_done) {
      root_done = true;
      for (int j = 0; j < problem.num_columns(); ++j) {
        if (std::abs(x[j]) >= internal::kBigBound * (1 - 1e-9) &&
            problem.objective(j) != 0.0) {
          result.status = SolveStatus::kUnbounded;
          return result;
        }
      }
    }
    const double value = lp.Objective();
    if (value > cutoff()) continue;

    int branch = -1;
    double most = kIntegralityTol;
    for (size_t k = 0; k < integral.size(); ++k) {
      const double v = x[integral[k]];
      const double frac = std::abs(v - std::round(v));
      if (frac > most + 1e-12) {
        most = frac;
        branch = static_cast<int>(k);
      }
    }
    if (branch < 0) {
      incumbent = value;
      best = x;
      for (int j : integral) best[j] = std::round(best[j]);
      continue;
    }
    const double v = x[integral[branch]];
    Node down = node;
    down.upper[branch] = std::floor(v);
    Node up = node;
    up.lower[branch] = std::ceil(v);
    for (Node* child : {&down, &up}) {
      child->bound = value;
      child->depth = node.depth + 1;
    }
    // The child on the rounding side is created first and wins ties.
    const bool up_first = v - std::floor(v) >= 0.5;
    Node& first = up_first ? up : down;
    Node& second = up_first ? down : up;
    first.sequence = ++sequence;
    second.sequence = ++sequence;
    open.push(std::move(first));
    open.push(std::move(second));
  }
  result.lp_iterations = lp.iterations();

  if (best.empty()) {
    result.status = timed_out ? SolveStatus::kTimeout : SolveStatus::kInfeasible;
    result.seconds = std::chrono::duration<double>(
                         DualSimplex::Clock::now() - start).count();
    return result;
  }

  // Polish: fix the integral columns and re-solve the continuous part.
  for (int j : integral) lp.SetColumnBounds(j, best[j], best[j]);
  if (lp.Solve(kInf, DualSimplex::Clock::time_point::max()) ==
      DualSimplex::Status::kOptimal) {
    best = lp.ColumnValues();
    for (int j : integral) best[j] = std::round(best[j]);
  }

  result.values = best;
  result.objective_value = EvaluateObjective(problem, best);
  double open_bound = incumbent;
  if (timed_out && !open.empty()) open_bound = std::min(open_bound, open.top().bound);
  result.gap = std::max(0.0, incumbent - open_bound) /
               std::max(1.0, std::abs(incumbent));
  result.status = timed_out && result.gap > params.rel_gap
                      ? SolveStatus::kFeasibleGap
                      : SolveStatus::kOptimal;
  result.seconds =
      std::chrono::duration<double>(DualSimplex::Clock::now() - start).count();
  return result;
}

MilpSolution ReferenceBackend::Solve(const MilpProblem& problem,
                                     const SolverParams& params) {
  return BranchAndBoundSolve(problem, params, column_guard_);
}

std::unique_ptr<Backend> MakeBackend(const std::string& id) {
  std::string name = id;
  if (name.empty()) {
    const char* env = std::getenv("MCFTOPO_BACKEND");
    name = env && *env ? env : "reference";
  }
  if (name == "reference") return std::make_unique<ReferenceBackend>();
  if (name == "highs") return std::make_unique<HighsBackend>();
  throw SolverError("unknown backend '" + name + "'");
}

MilpSolution Solve(const MilpProblem& problem, const SolverParams& params,
                   Backend& backend) {
  if (params.rel_gap < 0.0 || params.rel_gap >= 1.0) {
    throw SolverError("relative gap must lie in [0, 1)");
  }
  MilpSolution solution = backend.Solve(problem, params);
  if (!solution.HasPoint()) {
    solution.values.clear();
    return solution;
  }
  const SolutionCheck check = CheckSolution(problem, solution.values);
  if (!check.ok) {
    throw SolverError("backend '" + backend.Name() +
                      "' returned a point that fails verification: " +
                      check.message);
  }
  solution.objective_value = EvaluateObjective(problem, solution.values);
  return solution;
}

}  // namespace mcftopo
