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

// Solver-neutral mixed-integer linear program.
//
//   optimize   sum_j c_j x_j
//   subject to sum_j a_ij x_j {<=, =, >=} b_i   for every row i
//              l_j <= x_j <= u_j
//              x_j binary / integer / continuous by column kind.
//
// Rows keep their natural relation; nothing is normalized at this layer.

#ifndef MCFTOPO_MILP_H_
#define MCFTOPO_MILP_H_

#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mcftopo {

enum class VarKind { kBinary, kInteger, kContinuous };
enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMinimize, kMaximize };

std::string_view ToString(VarKind kind);
std::string_view ToString(Relation relation);

struct Term {
  int column = 0;
  double coefficient = 0.0;
};

struct Row {
  std::vector<Term> terms;
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
};

inline constexpr double kFeasibilityTolerance = 1e-6;

class MilpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MilpProblem {
 public:
  // Appends a column; returns its index. Binary columns must have bounds
  // inside [0, 1].
  int AddColumn(VarKind kind, double lower, double upper,
                std::string name = {});
  // Appends a row verbatim. Throws MilpError for unknown columns.
  int AddRow(std::vector<Term> terms, Relation relation, double rhs);

  void SetObjective(int column, double coefficient);
  void AddObjective(int column, double coefficient);
  void SetSense(ObjectiveSense sense) { sense_ = sense; }

  int num_columns() const { return static_cast<int>(kinds_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  ObjectiveSense sense() const { return sense_; }
  VarKind kind(int column) const { return kinds_[column]; }
  double lower(int column) const { return lower_[column]; }
  double upper(int column) const { return upper_[column]; }
  void SetBounds(int column, double lower, double upper);
  const std::string& name(int column) const { return names_[column]; }
  double objective(int column) const { return objective_[column]; }
  const std::vector<double>& objective() const { return objective_; }
  const Row& row(int index) const { return rows_[index]; }
  const std::vector<Row>& rows() const { return rows_; }

  bool IsIntegral(int column) const {
    return kinds_[column] != VarKind::kContinuous;
  }
  int CountColumns(VarKind kind) const;

 private:
  std::vector<VarKind> kinds_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::string> names_;
  std::vector<double> objective_;
  std::vector<Row> rows_;
  ObjectiveSense sense_ = ObjectiveSense::kMinimize;
};

// Flips the optimization sense and negates every objective coefficient.
// The set of optimal points is unchanged; the optimal value changes sign.
MilpProblem NegateObjective(MilpProblem problem);

enum class SolveStatus { kOptimal, kFeasibleGap, kInfeasible, kUnbounded, kTimeout };
std::string_view ToString(SolveStatus status);

struct MilpSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> values;
  double objective_value = 0.0;
  double gap = 0.0;
  // Backend statistics, informational only.
  long nodes = 0;
  long lp_iterations = 0;
  double seconds = 0.0;

  bool HasPoint() const {
    return status == SolveStatus::kOptimal || status == SolveStatus::kFeasibleGap;
  }
};

double EvaluateObjective(const MilpProblem& problem,
                         std::span<const double> values);

struct SolutionCheck {
  bool ok = true;
  double max_row_violation = 0.0;
  double max_bound_violation = 0.0;
  double max_integrality_violation = 0.0;
  int worst_row = -1;
  int worst_column = -1;
  std::string message;
};

// Solver-independent verification of a point against every row, bound and
// integrality requirement.
SolutionCheck CheckSolution(const MilpProblem& problem,
                            std::span<const double> values,
                            double tolerance = kFeasibilityTolerance);

// Name -> column map for the semantic variables of a model.
class VariableRegistry {
 public:
  // Registers `name` and appends the column to `problem`. Throws MilpError on
  // duplicate names.
  int Add(MilpProblem& problem, const std::string& name, VarKind kind,
          double lower, double upper);
  std::optional<int> Find(const std::string& name) const;
  int Column(const std::string& name) const;  // throws when unknown
  const std::string& Name(int column) const { return names_.at(column); }
  size_t size() const { return names_.size(); }

 private:
  std::unordered_map<std::string, int> columns_;
  std::vector<std::string> names_;
};

// Writes the problem in CPLEX LP text format. Column and row names are
// made LP-safe and unique; `LpColumnName` gives the name used for a column.
void WriteLpFormat(const MilpProblem& problem, std::ostream& out);
std::string LpColumnName(const MilpProblem& problem, int column);

}  // namespace mcftopo

#endif  // MCFTOPO_MILP_H_
