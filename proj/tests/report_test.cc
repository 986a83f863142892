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

#include <gtest/gtest.h>

#include "mcftopo/report.h"
#include "test_support.h"

namespace mcftopo {
namespace {

const OptimizeResult& ModelA() {
  static const OptimizeResult r =
      testing::OptimizeReference(testing::LoadCorpus("scenario1.json"));
  return r;
}

TEST(Result, JsonRoundTrip) {
  const Scenario s = testing::LoadCorpus("scenario1.json");
  const std::string text = ResultToJson(s, ModelA());
  const StoredResult back = ParseResult(text);
  EXPECT_EQ(back.status, "optimal");
  ASSERT_TRUE(back.has_topology);
  EXPECT_EQ(back.topology.objective_value, 990);
  EXPECT_EQ(back.topology.cables.size(), ModelA().topology.cables.size());
  EXPECT_TRUE(back.report.passes());
  ASSERT_EQ(back.topology.routes.size(), 3u);
  EXPECT_EQ(back.topology.routes[1].edges.size(), ModelA().topology.routes[1].edges.size());
  // Re-auditing the stored topology gives the stored verdict.
  EXPECT_TRUE(Audit(back.topology, ExpandMaxTopology(back.scenario)).passes());
}

TEST(Result, MalformedDocumentsAreRejected) {
  EXPECT_THROW(ParseResult("[]"), ResultError);
  EXPECT_THROW(ParseResult("{\"status\": 3}"), ResultError);
  EXPECT_THROW(ParseResult("not json"), ResultError);
  EXPECT_THROW(LoadResult("/nonexistent/result.json"), ResultError);
}

TEST(Dot, IsStableAndDrawsArrowheads) {
  const MaxTopology max = ExpandMaxTopology(testing::LoadCorpus("scenario1.json"));
  const std::string dot = ExportDot(ModelA().topology, max);
  EXPECT_EQ(dot, ExportDot(ModelA().topology, max));
  EXPECT_EQ(dot.rfind("digraph topology {", 0), 0u);
  EXPECT_NE(dot.find("uni_2core"), std::string::npos);
  // Model A uses only unidirectional cables, so no edge is undirected.
  EXPECT_EQ(dot.find("dir=none"), std::string::npos);
  EXPECT_EQ(dot.back(), '\n');
}

TEST(Dot, EmptyTopologyHasNoEdges) {
  const MaxTopology max = ExpandMaxTopology(
      testing::MakeScenario(testing::SwitchTypes(), 2, {"0-1"}, {}));
  Topology t;
  for (const DeviceSlot& d : max.devices) t.devices.push_back({d.id, std::nullopt});
  const std::string dot = ExportDot(t, max);
  EXPECT_EQ(dot.find("->"), std::string::npos);
}

TEST(Trace, JsonListsEveryPoint) {
  const MaxTopology max = ExpandMaxTopology(testing::LoadCorpus("scenario1.json"));
  const PowerTrace trace = TracePower(ModelA().topology, max, "B");
  const std::string json = TraceToJson(trace);
  EXPECT_NE(json.find("\"signal\""), std::string::npos);
  EXPECT_NE(json.find("\"B\""), std::string::npos);
}

TEST(Report, ViolationsAreSerialized) {
  ValidationReport r;
  r.violations.push_back({"ports", "1", "3 cables on 2 ports"});
  const std::string json = ReportToJson(r);
  EXPECT_NE(json.find("\"passes\": false"), std::string::npos);
  EXPECT_NE(json.find("3 cables on 2 ports"), std::string::npos);
}

}  // namespace
}  // namespace mcftopo
