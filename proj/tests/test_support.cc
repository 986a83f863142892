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

#include "test_support.h"

#include <algorithm>
#include <stdexcept>

namespace mcftopo::testing {

std::string CorpusPath(const std::string& file) {
  return std::string(MCFTOPO_CORPUS_DIR) + "/" + file;
}

Scenario LoadCorpus(const std::string& file) { return LoadScenario(CorpusPath(file)); }

TypeTable SwitchTypes(bool model_a) {
  TypeTable tt;
  DeviceType opaque;
  opaque.name = "opaque";
  opaque.ports = 4;
  opaque.rx_min = -14;
  opaque.rx_max = 0.5;
  opaque.tx_min = -5;
  opaque.tx_max = 0;
  opaque.cost = 300;
  DeviceType translucent;
  translucent.name = "translucent";
  translucent.ports = 2;
  translucent.delta = -0.5;
  translucent.translucent = true;
  translucent.cost = 100;
  tt.device_types = {opaque, translucent};
  CableType one{"bi_1core", 1, -15, 1, false, true, true};
  CableType two{"bi_2core", 2, -2, 30, false, true, true};
  CableType three{"bi_3core", 3, -2, 50, false, true, true};
  if (model_a) {
    CableType uni{"uni_2core", 2, -2, 30, true, true, true};
    tt.cable_types = {uni, three};
  } else {
    tt.cable_types = {one, two, three};
  }
  return tt;
}

Scenario MakeScenario(const TypeTable& types, int devices,
                      const std::vector<std::string>& cables,
                      const std::vector<std::string>& signals) {
  Scenario s;
  s.name = "fixture";
  s.type_table = types;
  for (int k = 0; k < devices; ++k) {
    DeviceSlot d;
    d.id = std::to_string(k);
    d.allowed_types.assign(types.device_types.size(), true);
    s.devices.push_back(d);
  }
  for (const std::string& c : cables) {
    const auto dash = c.find('-');
    CableSlot slot;
    slot.id = c;
    slot.endpoint_a = c.substr(0, dash);
    slot.endpoint_b = c.substr(dash + 1);
    slot.allowed_types.assign(types.cable_types.size(), true);
    s.cables.push_back(slot);
  }
  for (const std::string& sig : signals) {
    const auto colon = sig.find(':');
    const auto arrow = sig.find('>');
    s.signals.push_back({sig.substr(0, colon), sig.substr(colon + 1, arrow - colon - 1),
                         sig.substr(arrow + 1)});
  }
  ValidateScenario(s);
  return s;
}

bool HighsAvailable() { return HighsBackend().Available(); }

OptimizeResult OptimizeReference(const Scenario& scenario, double time_limit) {
  ReferenceBackend backend;
  SolverParams params;
  params.time_limit = time_limit;
  return Optimize(scenario, backend, params);
}

std::vector<int> TaggedRows(const BuildArtifacts& a, const std::vector<std::string>& tags,
                            const std::string& element) {
  std::vector<int> rows;
  for (size_t r = 0; r < a.trace.size(); ++r) {
    if (a.trace[r].element != element) continue;
    if (std::find(tags.begin(), tags.end(), a.trace[r].tag) != tags.end()) {
      rows.push_back(static_cast<int>(r));
    }
  }
  return rows;
}

namespace {

MilpProblem Subproblem(const BuildArtifacts& a, const std::vector<int>& rows,
                       const std::map<std::string, double>& pins) {
  const MilpProblem& p = a.problem;
  MilpProblem sub;
  for (int j = 0; j < p.num_columns(); ++j) {
    sub.AddColumn(p.kind(j), p.lower(j), p.upper(j), p.name(j));
  }
  for (const auto& [name, value] : pins) {
    sub.SetBounds(a.registry.Column(name), value, value);
  }
  for (int r : rows) {
    const Row& row = p.row(r);
    sub.AddRow(row.terms, row.relation, row.rhs);
  }
  return sub;
}

}  // namespace

bool RowsFeasible(const BuildArtifacts& a, const std::vector<int>& rows,
                  const std::map<std::string, double>& pins) {
  if (rows.empty()) throw std::logic_error("no rows selected");
  const MilpSolution s = BranchAndBoundSolve(Subproblem(a, rows, pins), {});
  return s.HasPoint();
}

std::vector<double> RowsRange(const BuildArtifacts& a, const std::vector<int>& rows,
                              const std::map<std::string, double>& pins,
                              const std::string& probe) {
  MilpProblem sub = Subproblem(a, rows, pins);
  sub.SetObjective(a.registry.Column(probe), 1.0);
  const MilpSolution low = BranchAndBoundSolve(sub, {});
  if (!low.HasPoint()) return {};
  sub.SetSense(ObjectiveSense::kMaximize);
  const MilpSolution high = BranchAndBoundSolve(sub, {});
  return {low.objective_value, high.objective_value};
}

}  // namespace mcftopo::testing
