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

// Randomized micro-instances: the MILP optimum must equal brute force.

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "test_support.h"

namespace mcftopo {
namespace {

constexpr int kInstances = 50;
constexpr double kTol = 1e-6;

void ExpectDormantZero(const BuildArtifacts& a, const std::vector<double>& x) {
  const ColumnIndex& c = a.columns;
  const MaxTopology& t = a.topology;
  for (size_t i = 0; i < t.signals.size(); ++i) {
    for (size_t j = 0; j < t.cables.size(); ++j) {
      if (std::round(x[c.on_ab[i][j]]) == 0) {
        EXPECT_NEAR(x[c.power_ab[i][j]], 0.0, kTol);
      }
      if (std::round(x[c.on_ba[i][j]]) == 0) {
        EXPECT_NEAR(x[c.power_ba[i][j]], 0.0, kTol);
      }
    }
    for (size_t k = 0; k < t.devices.size(); ++k) {
      if (std::round(x[c.does_tx[i][k]]) == 0) {
        EXPECT_NEAR(x[c.tx[i][k]], 0.0, kTol);
      }
      if (std::round(x[c.does_rx[i][k]]) == 0) {
        EXPECT_NEAR(x[c.rx[i][k]], 0.0, kTol);
      }
    }
  }
}

void ExpectCoresAndDirections(const Topology& topo, const TypeTable& tt) {
  for (const DecodedCable& cable : topo.cables) {
    if (!cable.type) {
      EXPECT_EQ(cable.use_ab + cable.use_ba, 0) << cable.id;
      continue;
    }
    const CableType& type = tt.cable_types[*cable.type];
    EXPECT_LE(cable.use_ab + cable.use_ba, type.cores) << cable.id;
    if (!type.allow_ab) {
      EXPECT_EQ(cable.use_ab, 0) << cable.id;
    }
    if (!type.allow_ba) {
      EXPECT_EQ(cable.use_ba, 0) << cable.id;
    }
    if (type.uni) {
      EXPECT_TRUE(cable.use_ab == 0 || cable.use_ba == 0) << cable.id;
    }
  }
}

void ExpectSimplePaths(const Topology& topo, const MaxTopology& max) {
  for (size_t i = 0; i < max.signals.size(); ++i) {
    const SignalRoute& route = topo.routes[i];
    std::string at = max.signals[i].source;
    std::set<std::string> seen = {at};
    for (const PathEdge& e : route.edges) {
      const DecodedCable* c = topo.FindCable(e.cable);
      ASSERT_NE(c, nullptr);
      const std::string& from = e.direction == Direction::kAB ? c->endpoint_a : c->endpoint_b;
      const std::string& to = e.direction == Direction::kAB ? c->endpoint_b : c->endpoint_a;
      EXPECT_EQ(from, at) << route.signal;
      EXPECT_TRUE(seen.insert(to).second) << route.signal << " revisits " << to;
      at = to;
    }
    EXPECT_EQ(at, max.signals[i].target) << route.signal;
  }
}

TEST(Property, RandomMicroInstancesMatchExhaustiveSearch) {
  int feasible = 0;
  int routed = 0;
  for (int seed = 1; seed <= kInstances; ++seed) {
    SCOPED_TRACE("seed " + std::to_string(seed));
    const Scenario scenario = RandomMicroScenario(seed);
    const MaxTopology max = ExpandMaxTopology(scenario);
    const OracleResult oracle = ExhaustiveOracle(max);
    const BuildArtifacts artifacts = Build(max);
    ReferenceBackend backend;
    const OptimizeResult r = OptimizeArtifacts(artifacts, backend, {});
    ASSERT_EQ(r.status == SolveStatus::kOptimal, oracle.feasible)
        << "MILP " << ToString(r.status);
    if (!oracle.feasible) {
      EXPECT_EQ(r.status, SolveStatus::kInfeasible);
      continue;
    }
    ++feasible;
    routed += max.signals.empty() ? 0 : 1;
    EXPECT_NEAR(r.topology.objective_value, oracle.objective_value, kTol);
    EXPECT_TRUE(r.report.passes())
        << r.report.violations.front().rule << " " << r.report.violations.front().detail;
    EXPECT_TRUE(Audit(oracle.topology, max).passes());
    ExpectDormantZero(artifacts, r.values);
    ExpectCoresAndDirections(r.topology, max.type_table);
    ExpectSimplePaths(r.topology, max);
  }
  // The generator must produce a useful mix.
  EXPECT_GE(feasible, 20);
  EXPECT_GE(routed, 15);
  EXPECT_LE(feasible, kInstances - 5);
}

}  // namespace
}  // namespace mcftopo
