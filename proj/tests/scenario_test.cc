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

#include "test_support.h"

namespace mcftopo {
namespace {

using testing::LoadCorpus;
using testing::MakeScenario;
using testing::SwitchTypes;

// Minimal scenario text with one cable type and the given cable entries.
std::string Text(const std::string& cable_type, const std::string& cables) {
  return R"({
    "device_types": [{"name": "op", "ports": 2, "rx_min": -14, "rx_max": 0.5,
                      "tx_min": -5, "tx_max": 0, "cost": 1}],
    "cable_types": [)" + cable_type + R"(],
    "devices": [{"id": "X"}, {"id": "Y"}],
    "cables": [)" + cables + R"(],
    "signals": [{"id": "A", "source": "X", "target": "Y"}]
  })";
}

const char* kPlainCable = R"({"name": "c", "cores": 1, "delta": -2, "cost": 1})";

ScenarioError::Kind KindOf(const std::string& text) {
  try {
    ParseScenario(text);
  } catch (const ScenarioError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "accepted";
  return ScenarioError::Kind::kParse;
}

TEST(Scenario, LoadsModelA) {
  const Scenario s = LoadCorpus("scenario1.json");
  ASSERT_EQ(s.devices.size(), 3u);
  ASSERT_EQ(s.cables.size(), 1u);
  EXPECT_TRUE(s.auto_complete);
  EXPECT_TRUE(s.cables[0].fixed_type.has_value());
  EXPECT_TRUE(s.cables[0].must_exist);
  EXPECT_EQ(s.type_table.cable_types[*s.cables[0].fixed_type].name, "uni_2core");
  EXPECT_TRUE(s.type_table.cable_types[*s.cables[0].fixed_type].uni);
  ASSERT_TRUE(s.devices[2].fixed_type.has_value());
  EXPECT_EQ(s.type_table.device_types[*s.devices[2].fixed_type].name, "opaque");
}

TEST(Scenario, AcceptsMinimalText) {
  const Scenario s =
      ParseScenario(Text(kPlainCable, R"({"id": "F", "endpoint_a": "X", "endpoint_b": "Y"})"));
  EXPECT_EQ(s.cables.size(), 1u);
  EXPECT_FALSE(s.auto_complete);
}

TEST(Scenario, RejectsSelfLoop) {
  EXPECT_EQ(KindOf(Text(kPlainCable, R"({"id": "F", "endpoint_a": "X", "endpoint_b": "X"})")),
            ScenarioError::Kind::kSemantic);
}

TEST(Scenario, RejectsInconsistentBidirectionalCable) {
  const std::string bad =
      R"({"name": "c", "cores": 1, "delta": -2, "cost": 1, "uni": false,
          "allow_ab": true, "allow_ba": false})";
  EXPECT_EQ(KindOf(Text(bad, "")), ScenarioError::Kind::kSemantic);
}

TEST(Scenario, RejectsBrokenReferencesAndSyntax) {
  EXPECT_EQ(KindOf(Text(kPlainCable, R"({"id": "F", "endpoint_a": "X", "endpoint_b": "Q"})")),
            ScenarioError::Kind::kSemantic);
  EXPECT_EQ(KindOf(Text(kPlainCable, R"({"id": "F", "endpoint_a": "X", "endpoint_b": "Y",
                                         "fixed_type": "nope"})")),
            ScenarioError::Kind::kSemantic);
  EXPECT_EQ(KindOf(Text(kPlainCable, R"({"id": "X", "endpoint_a": "X", "endpoint_b": "Y"},
                                        {"id": "X", "endpoint_a": "Y", "endpoint_b": "X"})")),
            ScenarioError::Kind::kSemantic);
  EXPECT_EQ(KindOf("{ not json"), ScenarioError::Kind::kParse);
  EXPECT_THROW(LoadScenario("/nonexistent/file.json"), ScenarioError);
}

TEST(Scenario, ParallelCablesAreLegal) {
  const Scenario s = ParseScenario(Text(kPlainCable,
                                        R"({"id": "F1", "endpoint_a": "X", "endpoint_b": "Y"},
                                           {"id": "F2", "endpoint_a": "Y", "endpoint_b": "X"})"));
  EXPECT_EQ(ExpandMaxTopology(s).cables.size(), 2u);
}

TEST(Scenario, DirectionalityTableIsExhaustive) {
  int legal = 0;
  for (bool uni : {false, true}) {
    for (bool ab : {false, true}) {
      for (bool ba : {false, true}) {
        const bool expected = uni ? (ab || ba) : (ab && ba);
        EXPECT_EQ(IsLegalDirectionality(uni, ab, ba), expected) << uni << ab << ba;
        legal += expected;
      }
    }
  }
  EXPECT_EQ(legal, 4);
}

TEST(TypeTable, SwitchCatalogueIsConsistent) {
  EXPECT_TRUE(ValidateTypeTable(SwitchTypes()).empty());
  EXPECT_TRUE(ValidateTypeTable(SwitchTypes(true)).empty());
}

TEST(TypeTable, TranslucentWithReceiverBoundIsFlagged) {
  TypeTable tt = SwitchTypes();
  tt.device_types[1].rx_min = -14;
  EXPECT_EQ(ValidateTypeTable(tt).size(), 1u);
}

TEST(TypeTable, InvertedTransmitRangeIsFlagged) {
  TypeTable tt = SwitchTypes();
  tt.device_types[0].tx_min = 1;
  tt.device_types[0].tx_max = 0;
  EXPECT_EQ(ValidateTypeTable(tt).size(), 1u);
}

TEST(TypeTable, OpaqueWithInternalAttenuationIsFlagged) {
  TypeTable tt = SwitchTypes();
  tt.device_types[0].delta = -1;
  EXPECT_EQ(ValidateTypeTable(tt).size(), 1u);
}

TEST(MaxTopology, ModelBKeepsDeclaredCables) {
  EXPECT_EQ(ExpandMaxTopology(LoadCorpus("scenario2.json")).cables.size(), 5u);
}

TEST(MaxTopology, FreeInterconnectionIsFullMesh) {
  const MaxTopology max = ExpandMaxTopology(LoadCorpus("scenario5.json"));
  EXPECT_EQ(max.cables.size(), 10u);
  for (size_t j = 0; j < max.cables.size(); ++j) {
    EXPECT_LT(max.cable_a[j], max.cable_b[j]);
  }
}

TEST(MaxTopology, SingleDeviceHasNoCandidates) {
  Scenario s = MakeScenario(SwitchTypes(), 1, {}, {});
  s.auto_complete = true;
  EXPECT_TRUE(ExpandMaxTopology(s).cables.empty());
}

TEST(MaxTopology, ModelACompletesTheTriangle) {
  const MaxTopology max = ExpandMaxTopology(LoadCorpus("scenario1.json"));
  ASSERT_EQ(max.cables.size(), 3u);
  EXPECT_EQ(max.cables[0].id, "0-1");
}

TEST(MaxTopology, ExpansionIsIdempotent) {
  Scenario s = LoadCorpus("scenario5.json");
  const MaxTopology once = ExpandMaxTopology(s);
  s.cables = once.cables;
  const MaxTopology twice = ExpandMaxTopology(s);
  ASSERT_EQ(twice.cables.size(), once.cables.size());
  for (size_t j = 0; j < once.cables.size(); ++j) {
    EXPECT_EQ(twice.cables[j].id, once.cables[j].id);
  }
}

TEST(ElementProperties, OpaqueSwitch) {
  const std::vector<double> v = {1, 0};
  EXPECT_EQ(ElementProperties(SwitchTypes(), ElementKind::kDevice, v),
            (std::vector<double>{4, 0, -14, 0.5, -5, 0, 0, 300}));
}

TEST(ElementProperties, ThreeCoreCable) {
  const std::vector<double> v = {0, 0, 1};
  EXPECT_EQ(ElementProperties(SwitchTypes(), ElementKind::kCable, v),
            (std::vector<double>{3, -2, 50, 0, 1, 1}));
}

TEST(ElementProperties, AbsentElementIsAllZero) {
  const std::vector<double> v = {0, 0};
  EXPECT_EQ(ElementProperties(SwitchTypes(), ElementKind::kDevice, v),
            std::vector<double>(kDevicePropertyCount, 0.0));
}

TEST(ElementProperties, IsLinear) {
  const TypeTable tt = SwitchTypes();
  const std::vector<double> u = {1, 0, 0}, w = {0, 1, 1};
  const double alpha = 2.5, beta = -0.75;
  std::vector<double> mix(3);
  for (int t = 0; t < 3; ++t) mix[t] = alpha * u[t] + beta * w[t];
  const auto pu = ElementProperties(tt, ElementKind::kCable, u);
  const auto pw = ElementProperties(tt, ElementKind::kCable, w);
  const auto pm = ElementProperties(tt, ElementKind::kCable, mix);
  for (size_t p = 0; p < pm.size(); ++p) {
    EXPECT_NEAR(pm[p], alpha * pu[p] + beta * pw[p], 1e-12);
  }
}

TEST(Scenario, JsonRoundTrip) {
  const Scenario s = LoadCorpus("ife.json");
  const Scenario back = ParseScenario(ScenarioToJson(s));
  EXPECT_EQ(ScenarioToJson(back), ScenarioToJson(s));
  EXPECT_EQ(back.signals.size(), 48u);
}

}  // namespace
}  // namespace mcftopo
