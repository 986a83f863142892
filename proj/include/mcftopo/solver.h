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

// MILP backends.
//
// "reference": built-in LP-based branch and bound on a dense bounded dual
// simplex. Exact, deterministic, meant for problems of a few hundred
// columns.
// "highs": the HiGHS solver driven through a text bridge. The problem is
// exported in LP format and solved by tools/highs_bridge.py in a child
// process; values come back keyed by LP column name.

#ifndef MCFTOPO_SOLVER_H_
#define MCFTOPO_SOLVER_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>

#include "mcftopo/milp.h"

namespace mcftopo {

struct SolverParams {
  double time_limit = 600.0;  // seconds
  double rel_gap = 0.0;       // in [0, 1)
  int threads = 1;
  std::uint64_t seed = 0;
};

// Backend failures (crashes, garbage output, points that fail verification).
// Never used for infeasibility.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BackendCapabilities {
  bool integers = true;
  bool equality_rows = true;
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string Name() const = 0;
  virtual BackendCapabilities Capabilities() const = 0;
  virtual MilpSolution Solve(const MilpProblem& problem,
                             const SolverParams& params) = 0;
};

class ReferenceBackend : public Backend {
 public:
  explicit ReferenceBackend(int column_guard = 2000)
      : column_guard_(column_guard) {}
  std::string Name() const override { return "reference"; }
  BackendCapabilities Capabilities() const override { return {}; }
  MilpSolution Solve(const MilpProblem& problem,
                     const SolverParams& params) override;

 private:
  int column_guard_;
};

class HighsBackend : public Backend {
 public:
  // Empty arguments fall back to $MCFTOPO_PYTHON / $MCFTOPO_HIGHS_BRIDGE and
  // then to the build-time defaults.
  explicit HighsBackend(std::string python = {}, std::string bridge = {});
  std::string Name() const override { return "highs"; }
  BackendCapabilities Capabilities() const override { return {}; }
  MilpSolution Solve(const MilpProblem& problem,
                     const SolverParams& params) override;

  // True when the interpreter can import highspy.
  bool Available() const;

 private:
  std::string python_;
  std::string bridge_;
};

// Backend by id ("reference" or "highs"). An empty id reads
// $MCFTOPO_BACKEND and defaults to "reference". Throws SolverError for an
// unknown id.
std::unique_ptr<Backend> MakeBackend(const std::string& id);

// Runs the backend and re-verifies any returned point with CheckSolution.
// The objective value is recomputed from the point.
MilpSolution Solve(const MilpProblem& problem, const SolverParams& params,
                   Backend& backend);

// Reference branch and bound. Throws SolverError when the problem has more
// columns than `column_guard`.
MilpSolution BranchAndBoundSolve(const MilpProblem& problem,
                                 const SolverParams& params,
                                 int column_guard = 2000);

}  // namespace mcftopo

#endif  // MCFTOPO_SOLVER_H_
