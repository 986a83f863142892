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

#include "mcftopo/milp.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace mcftopo {

std::string_view ToString(VarKind kind) {
  switch (kind) {
    case VarKind::kBinary: return "binary";
    case VarKind::kInteger: return "integer";
    case VarKind::kContinuous: return "continuous";
  }
  return "?";
}

std::string_view ToString(Relation relation) {
  switch (relation) {
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
    case Relation::kGreaterEqual: return ">=";
  }
  return "?";
}

std::string_view ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasibleGap: return "feasible_gap";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
    case SolveStatus::kTimeout: return "timeout";
  }
  return "?";
}

int MilpProblem::AddColumn(VarKind kind, double lower, double upper,
                           std::string name) {
  if (lower > upper) {
    throw MilpError("column '" + name + "': lower bound exceeds upper bound");
  }
  if (kind == VarKind::kBinary && (lower < 0.0 || upper > 1.0)) {
    throw MilpError("binary column '" + name + "' must stay within [0, 1]");
  }
  kinds_.push_back(kind);
  lower_.push_back(lower);
  upper_.push_back(upper);
  names_.push_back(std::move(name));
  objective_.push_back(0.0);
  return static_cast<int>(kinds_.size()) - 1;
}

int MilpProblem::AddRow(std::vector<Term> terms, Relation relation,
                        double rhs) {
  for (const Term& t : terms) {
    if (t.column < 0 || t.column >= num_columns()) {
      throw MilpError("row references unknown column " +
                      std::to_string(t.column));
    }
  }
  rows_.push_back(Row{std::move(terms), relation, rhs});
  return static_cast<int>(rows_.size()) - 1;
}

void MilpProblem::SetObjective(int column, double coefficient) {
  objective_.at(column) = coefficient;
}

void MilpProblem::AddObjective(int column, double coefficient) {
  objective_.at(column) += coefficient;
}

void MilpProblem::SetBounds(int column, double lower, double upper) {
  if (lower > upper) throw MilpError("lower bound exceeds upper bound");
  lower_.at(column) = lower;
  upper_.at(column) = upper;
}

int MilpProblem::CountColumns(VarKind kind) const {
  return static_cast<int>(std::count(kinds_.begin(), kinds_.end(), kind));
}

MilpProblem NegateObjective(MilpProblem problem) {
  for (int j = 0; j < problem.num_columns(); ++j) {
    problem.SetObjective(j, -problem.objective(j));
  }
  problem.SetSense(problem.sense() == ObjectiveSense::kMinimize
                       ? ObjectiveSense::kMaximize
                       : ObjectiveSense::kMinimize);
  return problem;
}

double EvaluateObjective(const MilpProblem& problem,
                         std::span<const double> values) {
  double sum = 0.0;
  for (int j = 0; j < problem.num_columns(); ++j) {
    if (problem.objective(j) != 0.0) sum += problem.objective(j) * values[j];
  }
  return sum;
}

SolutionCheck CheckSolution(const MilpProblem& problem,
                            std::span<const double> values, double tolerance) {
  SolutionCheck check;
  if (static_cast<int>(values.size()) != problem.num_columns()) {
    check.ok = false;
    check.message = "value vector has wrong length";
    return check;
  }
  for (int j = 0; j < problem.num_columns(); ++j) {
    const double v = values[j];
    if (!std::isfinite(v)) {
      check.ok = false;
      check.worst_column = j;
      check.message = "non-finite value in column " + problem.name(j);
      return check;
    }
    const double bound_violation =
        std::max({0.0, problem.lower(j) - v, v - problem.upper(j)});
    if (bound_violation > check.max_bound_violation) {
      check.max_bound_violation = bound_violation;
      if (bound_violation > tolerance) check.worst_column = j;
    }
    if (problem.IsIntegral(j)) {
      const double frac = std::abs(v - std::round(v));
      if (frac > check.max_integrality_violation) {
        check.max_integrality_violation = frac;
        if (frac > tolerance) check.worst_column = j;
      }
    }
  }
  for (int i = 0; i < problem.num_rows(); ++i) {
    const Row& row = problem.row(i);
    double activity = 0.0;
    for (const Term& t : row.terms) activity += t.coefficient * values[t.column];
    double violation = 0.0;
    switch (row.relation) {
      case Relation::kLessEqual: violation = activity - row.rhs; break;
      case Relation::kGreaterEqual: violation = row.rhs - activity; break;
      case Relation::kEqual: violation = std::abs(activity - row.rhs); break;
    }
    if (violation > check.max_row_violation) {
      check.max_row_violation = violation;
      check.worst_row = i;
    }
  }
  check.ok = check.max_row_violation <= tolerance &&
             check.max_bound_violation <= tolerance &&
             check.max_integrality_violation <= tolerance;
  if (!check.ok) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "row violation %.3g (row %d), bound violation %.3g, "
                  "integrality violation %.3g",
                  check.max_row_violation, check.worst_row,
                  check.max_bound_violation, check.max_integrality_violation);
    check.message = buf;
  }
  return check;
}

int VariableRegistry::Add(MilpProblem& problem, const std::string& name,
                          VarKind kind, double lower, double upper) {
  if (columns_.count(name)) {
    throw MilpError("duplicate variable name '" + name + "'");
  }
  const int column = problem.AddColumn(kind, lower, upper, name);
  if (column != static_cast<int>(names_.size())) {
    throw MilpError("registry out of sync with problem columns");
  }
  columns_.emplace(name, column);
  names_.push_back(name);
  return column;
}

std::optional<int> VariableRegistry::Find(const std::string& name) const {
  auto it = columns_.find(name);
  if (it == columns_.end()) return std::nullopt;
  return it->second;
}

int VariableRegistry::Column(const std::string& name) const {
  auto it = columns_.find(name);
  if (it == columns_.end()) throw MilpError("unknown variable '" + name + "'");
  return it->second;
}

namespace {

// Conservative subset of the characters LP readers accept in names.
bool LpSafe(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return c == '_' || c == '.';
}

std::string FormatNumber(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void WriteLinear(std::ostream& out, const MilpProblem& problem,
                 const std::vector<Term>& terms) {
  if (terms.empty()) {
    out << " 0 " << LpColumnName(problem, 0);
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    out << (t.coefficient < 0 ? " - " : " + ")
        << FormatNumber(std::abs(t.coefficient)) << ' '
        << LpColumnName(problem, t.column);
    if (++on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
  }
}

}  // namespace

std::string LpColumnName(const MilpProblem& problem, int column) {
  std::string name = "c" + std::to_string(column);
  const std::string& raw = problem.name(column);
  if (!raw.empty()) {
    name += '_';
    for (char c : raw) name += LpSafe(c) ? c : '_';
  }
  return name;
}

void WriteLpFormat(const MilpProblem& problem, std::ostream& out) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  out << "\\ " << problem.num_rows() << " rows, " << problem.num_columns()
      << " columns\n";
  out << (problem.sense() == ObjectiveSense::kMinimize ? "Minimize\n"
                                                       : "Maximize\n");
  std::vector<Term> objective;
  for (int j = 0; j < problem.num_columns(); ++j) {
    if (problem.objective(j) != 0.0) objective.push_back({j, problem.objective(j)});
  }
  out << " obj:";
  if (problem.num_columns() > 0) WriteLinear(out, problem, objective);
  out << "\nSubject To\n";
  for (int i = 0; i < problem.num_rows(); ++i) {
    const Row& row = problem.row(i);
    out << " r" << i << ':';
    WriteLinear(out, problem, row.terms);
    out << ' ' << ToString(row.relation) << ' ' << FormatNumber(row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < problem.num_columns(); ++j) {
    const double lo = problem.lower(j);
    const double hi = problem.upper(j);
    const std::string name = LpColumnName(problem, j);
    if (lo == hi) {
      out << ' ' << name << " = " << FormatNumber(lo) << '\n';
    } else if (lo == -kInf && hi == kInf) {
      out << ' ' << name << " free\n";
    } else {
      out << ' ' << (lo == -kInf ? std::string("-inf") : FormatNumber(lo))
          << " <= " << name << " <= "
          << (hi == kInf ? std::string("+inf") : FormatNumber(hi)) << '\n';
    }
  }
  // Integral columns all carry explicit bounds above, so binaries are
  // declared as general integers to keep pinned bounds intact.
  bool header = false;
  for (int j = 0; j < problem.num_columns(); ++j) {
    if (!problem.IsIntegral(j)) continue;
    if (!header) {
      out << "General\n";
      header = true;
    }
    out << ' ' << LpColumnName(problem, j) << '\n';
  }
  out << "End\n";
}

}  // namespace mcftopo
