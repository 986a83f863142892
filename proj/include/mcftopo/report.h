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

// Result files and graph export.
//
// A result file is a JSON document holding the scenario it was computed
// from, so validate, trace and export-dot work on it without re-solving:
//
//   { "scenario": {...}, "status": "optimal", "objective": 990,
//     "topology": { "devices": [...], "cables": [...], "routes": [...] },
//     "report": { "passes": true, "violations": [] },
//     "traces": [...], "stats": {...} }
//
// Types are referenced by name. Power values in traces are dBm; an idle
// translucent output is written as 0, which means "no light", not 1 mW.

#ifndef MCFTOPO_REPORT_H_
#define MCFTOPO_REPORT_H_

#include <stdexcept>
#include <string>

#include "mcftopo/decode.h"
#include "mcftopo/pipeline.h"
#include "mcftopo/scenario.h"

namespace mcftopo {

class ResultError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StoredResult {
  Scenario scenario;
  std::string status;
  bool has_topology = false;
  Topology topology;
  ValidationReport report;
  RunStats stats;
};

std::string ResultToJson(const Scenario& scenario, const OptimizeResult& result);
// Throws ResultError for malformed documents and ScenarioError for a bad
// embedded scenario.
StoredResult ParseResult(const std::string& text);
StoredResult LoadResult(const std::string& path);

std::string ReportToJson(const ValidationReport& report);
std::string TraceToJson(const PowerTrace& trace);

// Graphviz digraph of the existing devices and cables. Nodes are filled by
// type, edges carry type, core usage and the letters of the signals they
// carry; unidirectional cables get one arrowhead per used direction.
// Output depends only on the arguments and is stable across runs.
std::string ExportDot(const Topology& topology, const MaxTopology& max);

}  // namespace mcftopo

#endif  // MCFTOPO_REPORT_H_
