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

// Scenario in, audited topology out.

#ifndef MCFTOPO_PIPELINE_H_
#define MCFTOPO_PIPELINE_H_

#include <string>
#include <vector>

#include "mcftopo/builder.h"
#include "mcftopo/decode.h"
#include "mcftopo/scenario.h"
#include "mcftopo/solver.h"

namespace mcftopo {

struct RunStats {
  std::string backend;
  int rows = 0;
  int binaries = 0;
  int integers = 0;
  int continuous = 0;
  double p_lim = 0.0;
  double build_seconds = 0.0;
  double solve_seconds = 0.0;
  double wall_seconds = 0.0;
  double gap = 0.0;
  long nodes = 0;
  long lp_iterations = 0;
  int cycles_removed = 0;
};

struct OptimizeResult {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_topology = false;  // status carries a point
  Topology topology;
  std::vector<double> values;  // final point, after cleanup
  ValidationReport report;
  RunStats stats;
};

// Builds, solves, cleans and decodes. When indicators outside the signal
// paths had to be cleared, the continuous columns are re-solved with every
// integral column fixed. Throws BuildError, SolverError or DecodeError.
OptimizeResult Optimize(const Scenario& scenario, Backend& backend,
                        const SolverParams& params);

// Same, on artifacts the caller has built (and possibly tightened).
OptimizeResult OptimizeArtifacts(const BuildArtifacts& artifacts,
                                 Backend& backend, const SolverParams& params);

}  // namespace mcftopo

#endif  // MCFTOPO_PIPELINE_H_
