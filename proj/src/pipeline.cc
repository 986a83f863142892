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

#include "mcftopo/pipeline.h"

#include <chrono>
#include <cmath>

namespace mcftopo {

namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Re-solves the continuous part with all integral columns pinned.
std::vector<double> Polish(const MilpProblem& problem,
                           const std::vector<double>& values, Backend& backend,
                           const SolverParams& params) {
  MilpProblem fixed = problem;
  for (int j = 0; j < fixed.num_columns(); ++j) {
    if (!fixed.IsIntegral(j)) continue;
    const double v = std::round(values[j]);
    fixed.SetBounds(j, v, v);
  }
  MilpSolution lp = Solve(fixed, params, backend);
  if (!lp.HasPoint()) {
    throw SolverError("continuous re-solve after path cleanup failed");
  }
  return lp.values;
}

}  // namespace

OptimizeResult OptimizeArtifacts(const BuildArtifacts& artifacts,
                                 Backend& backend, const SolverParams& params) {
  const auto start = Clock::now();
  const MilpProblem& problem = artifacts.problem;
  OptimizeResult result;
  RunStats& stats = result.stats;
  stats.backend = backend.Name();
  stats.rows = problem.num_rows();
  stats.binaries = problem.CountColumns(VarKind::kBinary);
  stats.integers = problem.CountColumns(VarKind::kInteger);
  stats.continuous = problem.CountColumns(VarKind::kContinuous);
  stats.p_lim = artifacts.power.p_lim;

  MilpSolution solution = Solve(problem, params, backend);
  stats.solve_seconds = Since(start);
  stats.gap = solution.gap;
  stats.nodes = solution.nodes;
  stats.lp_iterations = solution.lp_iterations;
  result.status = solution.status;
  if (!solution.HasPoint()) {
    stats.wall_seconds = Since(start);
    return result;
  }

  std::vector<double> values = solution.values;
  stats.cycles_removed = RemoveDetachedCycles(values, artifacts);
  if (stats.cycles_removed > 0) {
    values = Polish(problem, values, backend, params);
  }
  const SolutionCheck check = CheckSolution(problem, values);
  if (!check.ok) throw SolverError("decoded point fails verification: " + check.message);

  result.topology = Decode(values, artifacts);
  result.values = std::move(values);
  result.report = Audit(result.topology, artifacts.topology);
  result.has_topology = true;
  stats.wall_seconds = Since(start);
  return result;
}

OptimizeResult Optimize(const Scenario& scenario, Backend& backend,
                        const SolverParams& params) {
  const auto start = Clock::now();
  const BuildArtifacts artifacts = Build(ExpandMaxTopology(scenario));
  const double build_seconds = Since(start);
  OptimizeResult result = OptimizeArtifacts(artifacts, backend, params);
  result.stats.build_seconds = build_seconds;
  result.stats.wall_seconds = Since(start);
  return result;
}

}  // namespace mcftopo
