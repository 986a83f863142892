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

#include <sstream>

#include <gtest/gtest.h>

#include "mcftopo/milp.h"
#include "mcftopo/solver.h"
#include "test_support.h"

namespace mcftopo {
namespace {

TEST(Registry, AddsAndFindsColumns) {
  MilpProblem p;
  VariableRegistry r;
  const int use = r.Add(p, "F0.useAB", VarKind::kInteger, 0, 3);
  const int tx = r.Add(p, "S0.D1.Tx", VarKind::kContinuous, -80.5, 80.5);
  EXPECT_EQ(use, 0);
  EXPECT_EQ(tx, 1);
  EXPECT_EQ(p.kind(use), VarKind::kInteger);
  EXPECT_EQ(p.upper(use), 3);
  EXPECT_EQ(p.lower(tx), -80.5);
  EXPECT_EQ(r.Column("S0.D1.Tx"), tx);
  EXPECT_EQ(r.Name(use), "F0.useAB");
  EXPECT_FALSE(r.Find("nope").has_value());
  EXPECT_THROW(r.Add(p, "F0.useAB", VarKind::kInteger, 0, 3), MilpError);
}

TEST(Problem, BinaryBoundsAreChecked) {
  MilpProblem p;
  EXPECT_THROW(p.AddColumn(VarKind::kBinary, 0, 2), MilpError);
  EXPECT_THROW(p.AddColumn(VarKind::kContinuous, 1, 0), MilpError);
}

TEST(Problem, RowsAreStoredVerbatim) {
  MilpProblem p;
  const int x = p.AddColumn(VarKind::kBinary, 0, 1);
  const int y = p.AddColumn(VarKind::kBinary, 0, 1);
  const int r = p.AddRow({{x, 1}, {y, 1}}, Relation::kEqual, 1);
  EXPECT_EQ(r, 0);
  EXPECT_EQ(p.row(r).relation, Relation::kEqual);
  EXPECT_EQ(p.row(r).terms.size(), 2u);
  EXPECT_EQ(p.AddRow({}, Relation::kLessEqual, 0), 1);
  EXPECT_THROW(p.AddRow({{7, 1}}, Relation::kLessEqual, 0), MilpError);
}

TEST(Problem, NegateObjectiveIsAnInvolution) {
  MilpProblem p;
  const int x = p.AddColumn(VarKind::kContinuous, 0, 1);
  p.SetObjective(x, 3);
  const MilpProblem n = NegateObjective(p);
  EXPECT_EQ(n.sense(), ObjectiveSense::kMaximize);
  EXPECT_EQ(n.objective(x), -3);
  const MilpProblem back = NegateObjective(n);
  EXPECT_EQ(back.sense(), ObjectiveSense::kMinimize);
  EXPECT_EQ(back.objective(x), 3);
}

TEST(Problem, NegatedModelAHasTheSameArgmin) {
  const BuildArtifacts a = Build(ExpandMaxTopology(testing::LoadCorpus("scenario1.json")));
  const MilpSolution min = BranchAndBoundSolve(a.problem, {});
  const MilpSolution max = BranchAndBoundSolve(NegateObjective(a.problem), {});
  ASSERT_EQ(min.status, SolveStatus::kOptimal);
  ASSERT_EQ(max.status, SolveStatus::kOptimal);
  EXPECT_NEAR(max.objective_value, -min.objective_value, 1e-9);
  // Type choices carry the whole objective; both forms must pick the same
  // cost.
  EXPECT_NEAR(EvaluateObjective(a.problem, max.values), min.objective_value, 1e-6);
}

TEST(Check, FlagsRowBoundAndIntegralityViolations) {
  MilpProblem p;
  const int x = p.AddColumn(VarKind::kInteger, 0, 5);
  const int y = p.AddColumn(VarKind::kContinuous, 0, 1);
  p.AddRow({{x, 1}, {y, 1}}, Relation::kLessEqual, 3);
  EXPECT_TRUE(CheckSolution(p, std::vector<double>{2, 1}).ok);
  EXPECT_TRUE(CheckSolution(p, std::vector<double>{2 + 5e-7, 1}).ok);
  EXPECT_FALSE(CheckSolution(p, std::vector<double>{2.5, 0}).ok);
  EXPECT_FALSE(CheckSolution(p, std::vector<double>{3, 1}).ok);
  EXPECT_FALSE(CheckSolution(p, std::vector<double>{0, 1.5}).ok);
  EXPECT_FALSE(CheckSolution(p, std::vector<double>{0}).ok);
}

TEST(Check, ObjectiveIsTheDotProduct) {
  MilpProblem p;
  const int x = p.AddColumn(VarKind::kContinuous, 0, 10);
  const int y = p.AddColumn(VarKind::kContinuous, 0, 10);
  p.SetObjective(x, 1.5);
  p.SetObjective(y, -2);
  EXPECT_DOUBLE_EQ(EvaluateObjective(p, std::vector<double>{2, 3}), 3 - 6);
}

TEST(LpFormat, WritesAllSections) {
  MilpProblem p;
  VariableRegistry r;
  const int b = r.Add(p, "F0.T.uni", VarKind::kBinary, 0, 1);
  const int i = r.Add(p, "F0.useAB", VarKind::kInteger, 0, 2);
  const int c = r.Add(p, "S0.D1.Tx", VarKind::kContinuous, -5, 0);
  p.SetObjective(b, 30);
  p.AddRow({{i, 1}, {b, -2}}, Relation::kLessEqual, 0);
  p.AddRow({{c, 1}}, Relation::kGreaterEqual, -4);
  p.AddRow({{b, 1}}, Relation::kEqual, 1);
  std::ostringstream out;
  WriteLpFormat(p, out);
  const std::string lp = out.str();
  for (const char* section : {"Minimize", "Subject To", "Bounds", "General", "End"}) {
    EXPECT_NE(lp.find(section), std::string::npos) << section;
  }
  EXPECT_NE(lp.find(LpColumnName(p, c)), std::string::npos);
  EXPECT_NE(LpColumnName(p, b), LpColumnName(p, i));
}

}  // namespace
}  // namespace mcftopo
