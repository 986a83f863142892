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

#include "test_support.h"

namespace mcftopo {
namespace {

using testing::LoadCorpus;
using testing::MakeScenario;
using testing::RowsFeasible;
using testing::RowsRange;
using testing::SwitchTypes;
using testing::TaggedRows;

TEST(PowerLimit, ModelB) {
  const PowerLimit p = ComputePowerLimit(SwitchTypes(), 5);
  EXPECT_DOUBLE_EQ(p.p_tx, 5);
  EXPECT_DOUBLE_EQ(p.p_rx, 14);
  EXPECT_DOUBLE_EQ(p.p_delta_dev, 0.5);
  EXPECT_DOUBLE_EQ(p.p_delta_fib, 15);
  EXPECT_DOUBLE_EQ(p.p_lim, 80.5);
}

TEST(PowerLimit, AllZeroTypes) {
  TypeTable tt;
  tt.device_types.push_back({"d", 2, 0, 0, 0, 0, 0, false, 1});
  tt.cable_types.push_back({"c", 1, 0, 1, false, true, true});
  EXPECT_DOUBLE_EQ(ComputePowerLimit(tt, 2).p_lim, 0);
}

TEST(PowerLimit, InFlightEntertainmentTypes) {
  const TypeTable tt = LoadCorpus("ife.json").type_table;
  EXPECT_DOUBLE_EQ(ComputePowerLimit(tt, 23).p_lim, 73.5);
  EXPECT_DOUBLE_EQ(ComputePowerLimit(tt, 24).p_lim, 76);
}

TEST(PowerLimit, NeedsTwoDevices) {
  EXPECT_THROW(ComputePowerLimit(SwitchTypes(), 1), BuildError);
}

TEST(Build, EveryRowIsTraced) {
  const BuildArtifacts a = Build(ExpandMaxTopology(LoadCorpus("scenario1.json")));
  ASSERT_EQ(a.trace.size(), static_cast<size_t>(a.problem.num_rows()));
  for (const RowTrace& t : a.trace) {
    EXPECT_FALSE(t.tag.empty());
    EXPECT_FALSE(t.element.empty());
  }
  std::ostringstream out;
  WriteTrace(a, out);
  int lines = 0;
  std::string line;
  std::istringstream in(out.str());
  while (std::getline(in, line)) {
    ++lines;
    EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 2) << line;
  }
  EXPECT_EQ(lines, a.problem.num_rows());
}

TEST(Build, ModelASize) {
  const BuildArtifacts a = Build(ExpandMaxTopology(LoadCorpus("scenario1.json")));
  EXPECT_EQ(a.problem.num_rows(), 288);
  EXPECT_EQ(a.problem.CountColumns(VarKind::kBinary), 63);
  EXPECT_EQ(a.problem.CountColumns(VarKind::kInteger), 6);
  EXPECT_EQ(a.problem.CountColumns(VarKind::kContinuous), 54);
  EXPECT_DOUBLE_EQ(a.power.p_lim, 23.5);
  for (int j = 0; j < a.problem.num_columns(); ++j) {
    if (a.problem.kind(j) != VarKind::kContinuous) continue;
    EXPECT_DOUBLE_EQ(a.problem.lower(j), -23.5);
    EXPECT_DOUBLE_EQ(a.problem.upper(j), 23.5);
  }
}

TEST(TypeAssignment, FixedSwitchIsPinned) {
  const BuildArtifacts a = Build(ExpandMaxTopology(LoadCorpus("scenario1.json")));
  const auto rows = TaggedRows(a, {"type.fixed"}, "2");
  ASSERT_EQ(rows.size(), 1u);
  const Row& row = a.problem.row(rows[0]);
  ASSERT_EQ(row.terms.size(), 1u);
  EXPECT_EQ(a.problem.name(row.terms[0].column), "D2.T.opaque");
  EXPECT_EQ(row.relation, Relation::kEqual);
  EXPECT_EQ(row.rhs, 1);
  EXPECT_EQ(TaggedRows(a, {"type.exists"}, "2").size(), 1u);
}

TEST(TypeAssignment, OptionalCableGetsOneAtMostOneRow) {
  const BuildArtifacts a = Build(ExpandMaxTopology(LoadCorpus("ife.json")));
  const std::string cable = a.topology.cables.front().id;
  const auto rows = TaggedRows(a, {"type.at_most_one"}, cable);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(a.problem.row(rows[0]).terms.size(), 4u);
  EXPECT_EQ(a.problem.row(rows[0]).relation, Relation::kLessEqual);
  EXPECT_TRUE(TaggedRows(a, {"type.exists"}, cable).empty());
}

TEST(TypeAssignment, MaskedTypesArePinnedToZero) {
  const BuildArtifacts a = Build(ExpandMaxTopology(LoadCorpus("ife.json")));
  // Switch slots admit only the two switch types.
  const std::string sw = a.topology.devices[0].id;
  EXPECT_EQ(TaggedRows(a, {"type.forbidden"}, sw).size(), 4u);
}

TEST(TypeAssignment, MaskExcludingTheFixedTypeIsRejected) {
  Scenario s = MakeScenario(SwitchTypes(), 2, {"0-1"}, {});
  s.devices[0].fixed_type = 1;
  s.devices[0].must_exist = true;
  s.devices[0].allowed_types = {true, false};
  EXPECT_ANY_THROW({
    ValidateScenario(s);
    Build(ExpandMaxTopology(s));
  });
}

TEST(Endpoints, TranslucentTypesAreMaskedAtSignalEnds) {
  const BuildArtifacts a =
      Build(ExpandMaxTopology(MakeScenario(SwitchTypes(), 3, {"0-1", "1-2"}, {"A:0>2"})));
  EXPECT_FALSE(a.topology.devices[0].allowed_types[1]);
  EXPECT_TRUE(a.topology.devices[1].allowed_types[1]);
  EXPECT_FALSE(a.topology.devices[2].allowed_types[1]);
}

TEST(Endpoints, FixedTranslucentEndpointIsABuildError) {
  Scenario s = MakeScenario(SwitchTypes(), 2, {"0-1"}, {"A:0>1"});
  s.devices[1].fixed_type = 1;
  s.devices[1].must_exist = true;
  s.devices[1].allowed_types = {false, true};
  EXPECT_THROW(Build(ExpandMaxTopology(s)), BuildError);
}

TEST(Ports, IsolatedDeviceGetsAVacuousRow) {
  const BuildArtifacts a = Build(ExpandMaxTopology(MakeScenario(SwitchTypes(), 3, {"0-1"}, {})));
  const auto rows = TaggedRows(a, {"ports"}, "2");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(RowsFeasible(a, rows, {{"D2.T.opaque", 0}, {"D2.T.translucent", 0}}));
}

TEST(Ports, UntypedDeviceCannotTerminateACable) {
  const BuildArtifacts a = Build(ExpandMaxTopology(MakeScenario(SwitchTypes(), 2, {"0-1"}, {})));
  const auto rows = TaggedRows(a, {"ports"}, "0");
  EXPECT_FALSE(RowsFeasible(a, rows, {{"D0.T.opaque", 0}, {"D0.T.translucent", 0},
                                      {"F0-1.T.bi_2core", 1}}));
  // Two cables fit a translucent switch, three do not.
  const BuildArtifacts star = Build(ExpandMaxTopology(
      MakeScenario(SwitchTypes(), 4, {"0-1", "0-2", "0-3"}, {})));
  const auto hub = TaggedRows(star, {"ports"}, "0");
  const std::map<std::string, double> translucent = {{"D0.T.opaque", 0},
                                                     {"D0.T.translucent", 1}};
  auto with = [&](int cables) {
    auto pins = translucent;
    const char* ids[] = {"F0-1.T.bi_2core", "F0-2.T.bi_2core", "F0-3.T.bi_2core"};
    for (int k = 0; k < 3; ++k) pins[ids[k]] = k < cables ? 1 : 0;
    return pins;
  };
  EXPECT_TRUE(RowsFeasible(star, hub, with(2)));
  EXPECT_FALSE(RowsFeasible(star, hub, with(3)));
}

class CableRows : public ::testing::Test {
 protected:
  CableRows()
      : a_(Build(ExpandMaxTopology(MakeScenario(SwitchTypes(true), 2, {"0-1"}, {})))),
        rows_(TaggedRows(a_, {"cable.cores", "cable.allow_ab", "cable.allow_ba",
                              "cable.direction", "cable.use_ab_limit", "cable.use_ba_limit"},
                         "0-1")) {}

  std::map<std::string, double> Typed(const std::string& type) const {
    return {{"F0-1.T.uni_2core", type == "uni_2core"}, {"F0-1.T.bi_3core", type == "bi_3core"}};
  }

  BuildArtifacts a_;
  std::vector<int> rows_;
};

TEST_F(CableRows, UnassignedCableCarriesNothing) {
  auto pins = Typed("none");
  const auto ab = RowsRange(a_, rows_, pins, "F0-1.allowAB");
  const auto use = RowsRange(a_, rows_, pins, "F0-1.useAB");
  ASSERT_EQ(ab.size(), 2u);
  EXPECT_EQ(ab[1], 0);
  EXPECT_EQ(use[1], 0);
  EXPECT_EQ(RowsRange(a_, rows_, pins, "F0-1.useBA")[1], 0);
}

TEST_F(CableRows, BidirectionalAllowsBothDirections) {
  auto pins = Typed("bi_3core");
  EXPECT_EQ(RowsRange(a_, rows_, pins, "F0-1.allowAB")[0], 1);
  EXPECT_EQ(RowsRange(a_, rows_, pins, "F0-1.allowBA")[0], 1);
  auto full = Typed("bi_3core");
  full["F0-1.useAB"] = 2;
  full["F0-1.useBA"] = 1;
  EXPECT_TRUE(RowsFeasible(a_, rows_, full));
  full["F0-1.useBA"] = 2;
  EXPECT_FALSE(RowsFeasible(a_, rows_, full));
}

TEST_F(CableRows, UnidirectionalPicksExactlyOneDirection) {
  auto ab = Typed("uni_2core");
  ab["F0-1.allowAB"] = 1;
  EXPECT_EQ(RowsRange(a_, rows_, ab, "F0-1.allowBA")[1], 0);
  auto both = Typed("uni_2core");
  both["F0-1.useAB"] = 1;
  both["F0-1.useBA"] = 1;
  EXPECT_FALSE(RowsFeasible(a_, rows_, both));
  auto two = Typed("uni_2core");
  two["F0-1.useBA"] = 2;
  EXPECT_TRUE(RowsFeasible(a_, rows_, two));
}

TEST(Objective, EmptyNetworkCostsNothing) {
  ReferenceBackend backend;
  const OptimizeResult r =
      Optimize(MakeScenario(SwitchTypes(), 3, {"0-1", "1-2"}, {}), backend, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.topology.objective_value, 0);
  EXPECT_EQ(r.topology.CountCables(), 0);
}

TEST(Objective, MandatoryDeviceTakesTheCheapestType) {
  Scenario s = MakeScenario(SwitchTypes(), 2, {"0-1"}, {});
  s.devices[0].must_exist = true;
  ReferenceBackend backend;
  const OptimizeResult r = Optimize(s, backend, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_EQ(r.topology.objective_value, 100);
  EXPECT_EQ(r.topology.devices[0].type, 1);
}

TEST(Objective, LossyShortcutForcesADetour) {
  // The hop 1-2 only admits the 15 dB type, which no receiver survives, so
  // the optimum relays through two translucent switches: 2 * 300 for the
  // ends, 2 * 100 for the relays and three 2-core cables.
  Scenario s = MakeScenario(SwitchTypes(), 4, {"0-1", "1-3", "3-2", "1-2"}, {"A:0>2"});
  s.cables[3].allowed_types = {true, false, false};
  ReferenceBackend backend;
  const OptimizeResult r = Optimize(s, backend, {});
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_TRUE(r.report.passes());
  EXPECT_EQ(r.topology.objective_value, 890);
  EXPECT_EQ(r.topology.routes[0].edges.size(), 3u);
  const OracleResult oracle = ExhaustiveOracle(ExpandMaxTopology(s));
  EXPECT_EQ(r.topology.objective_value, oracle.objective_value);
}

}  // namespace
}  // namespace mcftopo
