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

// Dense-tableau bounded dual simplex for the reference backend.
//
// Each row i gets a logical column s_i = a_i x, so the system is
// [A | -I] z = 0 with every z_j boxed. Logical bounds combine the row
// relation with the activity range implied by the column bounds, which
// keeps every variable finite. With all variables boxed, putting each
// nonbasic variable at the bound matching the sign of its reduced cost
// makes any basis dual feasible, so the method never needs a phase 1 and a
// single tableau can be reused across branch-and-bound nodes by just
// changing bounds.

#ifndef MCFTOPO_DUAL_SIMPLEX_H_
#define MCFTOPO_DUAL_SIMPLEX_H_

#include <chrono>
#include <vector>

#include "mcftopo/milp.h"

namespace mcftopo::internal {

// Stand-in for infinite column bounds.
inline constexpr double kBigBound = 1e9;

class DualSimplex {
 public:
  enum class Status { kOptimal, kInfeasible, kCutoff, kIterationLimit, kTimeLimit };
  using Clock = std::chrono::steady_clock;

  // Minimizes the problem objective (negated for maximization problems).
  explicit DualSimplex(const MilpProblem& problem);

  int num_columns() const { return n_; }
  double lower(int column) const { return lo_[column]; }
  double upper(int column) const { return hi_[column]; }
  void SetColumnBounds(int column, double lower, double upper);

  // Stops with kCutoff once the dual bound exceeds `cutoff`.
  Status Solve(double cutoff, Clock::time_point deadline);

  // Minimization-form objective of the current basic solution.
  double Objective() const;
  std::vector<double> ColumnValues() const;
  long iterations() const { return iterations_; }
  // True when some row is provably infeasible from the column bounds alone.
  bool trivially_infeasible() const { return trivially_infeasible_; }

 private:
  double& T(int r, int j) { return tab_[static_cast<size_t>(r) * width_ + j]; }
  double T(int r, int j) const {
    return tab_[static_cast<size_t>(r) * width_ + j];
  }
  void PlaceNonbasic();
  void RecomputeBasicValues();
  void RecomputeReducedCosts();
  bool Refactor();
  void ResetToSlackBasis();
  bool Recover();
  double Residual() const;
  void Pivot(int row, int entering);

  const MilpProblem& problem_;
  int m_ = 0;
  int n_ = 0;
  int width_ = 0;
  std::vector<double> tab_;
  std::vector<double> cost_;
  std::vector<double> lo_, hi_;
  std::vector<double> value_;
  std::vector<double> reduced_;
  std::vector<int> basis_;     // variable basic in each row
  std::vector<int> position_;  // row of a basic variable, -1 if nonbasic
  long iterations_ = 0;
  int recoveries_ = 0;
  bool trivially_infeasible_ = false;
};

}  // namespace mcftopo::internal

#endif  // MCFTOPO_DUAL_SIMPLEX_H_
