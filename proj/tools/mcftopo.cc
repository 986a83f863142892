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

// mcftopo command line.
//
// Exit codes:
//   0  success (optimal or within-gap result, audit passes, corpus green)
//   1  audit violations or corpus mismatches
//   2  unreadable or invalid input (scenario, result or expectation file)
//   3  scenario infeasible
//   4  solver or decode failure
//   5  time limit reached without a feasible point
//   64 command line usage error

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mcftopo/builder.h"
#include "mcftopo/pipeline.h"
#include "mcftopo/report.h"
#include "mcftopo/scenario.h"
#include "mcftopo/solver.h"

namespace {

using namespace mcftopo;
using json = nlohmann::json;

enum Exit : int {
  kOk = 0,
  kFailed = 1,
  kInput = 2,
  kInfeasible = 3,
  kSolver = 4,
  kTimeout = 5,
  kUsage = 64,
};

struct RunConfig {
  std::string scenario;
  std::string result;
  std::string out;
  std::string lp;
  std::string signal;
  std::string backend;
  std::string corpus_dir = MCFTOPO_CORPUS_DIR;
  std::string expectations;
  bool with_ife = false;
  SolverParams params;
};

void WriteOutput(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

int ExitForStatus(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
    case SolveStatus::kFeasibleGap: return kOk;
    case SolveStatus::kInfeasible: return kInfeasible;
    case SolveStatus::kTimeout: return kTimeout;
    case SolveStatus::kUnbounded: return kSolver;
  }
  return kSolver;
}

std::string Summary(const OptimizeResult& r, const TypeTable& tt) {
  std::ostringstream s;
  s << "status " << ToString(r.status);
  if (r.has_topology) {
    s << ", objective " << r.topology.objective_value << ", "
      << r.topology.CountDevices(tt, false) << " opaque and "
      << r.topology.CountDevices(tt, true) << " translucent devices, "
      << r.topology.CountCables() << " cables, audit "
      << (r.report.passes() ? "passes" : "FAILS");
  }
  const RunStats& st = r.stats;
  s << "\n" << st.rows << " rows, " << st.binaries << " binary, " << st.integers
    << " integer, " << st.continuous << " continuous columns; backend " << st.backend
    << ", " << st.wall_seconds << " s, gap " << st.gap;
  return s.str();
}

int CmdOptimize(const RunConfig& cfg) {
  const Scenario scenario = LoadScenario(cfg.scenario);
  if (!cfg.lp.empty()) {
    const BuildArtifacts a = Build(ExpandMaxTopology(scenario));
    std::ofstream lp(cfg.lp);
    WriteLpFormat(a.problem, lp);
  }
  auto backend = MakeBackend(cfg.backend);
  const OptimizeResult r = Optimize(scenario, *backend, cfg.params);
  WriteOutput(cfg.out, ResultToJson(scenario, r));
  std::cerr << Summary(r, scenario.type_table) << "\n";
  for (const Violation& v : r.report.violations) {
    std::cerr << "  " << v.rule << " " << v.element << ": " << v.detail << "\n";
  }
  const int code = ExitForStatus(r.status);
  if (code != kOk) return code;
  return r.report.passes() ? kOk : kFailed;
}

int CmdValidate(const RunConfig& cfg) {
  StoredResult stored = LoadResult(cfg.result);
  if (!cfg.scenario.empty()) stored.scenario = LoadScenario(cfg.scenario);
  if (!stored.has_topology) {
    std::cerr << "result has no topology (status " << stored.status << ")\n";
    return kInput;
  }
  const ValidationReport report =
      Audit(stored.topology, ExpandMaxTopology(stored.scenario));
  WriteOutput(cfg.out, ReportToJson(report));
  return report.passes() ? kOk : kFailed;
}

int CmdTrace(const RunConfig& cfg) {
  const StoredResult stored = LoadResult(cfg.result);
  if (!stored.has_topology) {
    std::cerr << "result has no topology (status " << stored.status << ")\n";
    return kInput;
  }
  const MaxTopology max = ExpandMaxTopology(stored.scenario);
  json traces = json::array();
  for (const SignalRoute& r : stored.topology.routes) {
    if (!cfg.signal.empty() && r.signal != cfg.signal) continue;
    traces.push_back(json::parse(TraceToJson(TracePower(stored.topology, max, r.signal))));
  }
  if (!cfg.signal.empty() && traces.empty()) {
    std::cerr << "signal '" << cfg.signal << "' is not routed in the result\n";
    return kInput;
  }
  WriteOutput(cfg.out, traces.dump(2));
  return kOk;
}

int CmdExportDot(const RunConfig& cfg) {
  const StoredResult stored = LoadResult(cfg.result);
  const MaxTopology max = ExpandMaxTopology(stored.scenario);
  Topology topo = stored.topology;
  if (!stored.has_topology) {
    // Nothing solved: show the mandatory devices that carry a fixed type.
    for (const DeviceSlot& d : max.devices) topo.devices.push_back({d.id, d.fixed_type});
  }
  WriteOutput(cfg.out, ExportDot(topo, max));
  return kOk;
}

// Corpus -----------------------------------------------------------------

struct Expectation {
  json spec;
  std::string name;
  std::string file;
  bool ife = false;
};

std::vector<Expectation> LoadExpectations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResultError("cannot open expectation file '" + path + "'");
  std::vector<Expectation> out;
  try {
    const json root = json::parse(in);
    for (const json& e : root.at("scenarios")) {
      Expectation x;
      x.spec = e;
      x.name = e.at("name").get<std::string>();
      x.file = e.at("file").get<std::string>();
      x.ife = e.value("ife", false);
      if (e.contains("objective")) (void)e.at("objective").get<double>();
      out.push_back(std::move(x));
    }
  } catch (const json::exception& e) {
    throw ResultError(std::string("malformed expectation file: ") + e.what());
  }
  return out;
}

std::vector<std::string> CheckExpectation(const json& spec, const OptimizeResult& r,
                                          const TypeTable& tt, double gap) {
  std::vector<std::string> failures;
  if (!r.has_topology) {
    failures.push_back("no solution (status " + std::string(ToString(r.status)) + ")");
    return failures;
  }
  const Topology& topo = r.topology;
  if (!r.report.passes()) {
    failures.push_back("audit: " + r.report.violations.front().rule + " " +
                       r.report.violations.front().element);
  }
  if (spec.contains("objective")) {
    const double want = spec["objective"].get<double>();
    const double tol = std::max(1e-6, gap * std::abs(want));
    if (std::abs(topo.objective_value - want) > tol) {
      std::ostringstream s;
      s << "objective " << topo.objective_value << " != " << want;
      failures.push_back(s.str());
    }
  }
  const json device_counts = spec.value("device_type_counts", json::object());
  for (const auto& [name, count] : device_counts.items()) {
    int n = 0;
    for (const DecodedDevice& d : topo.devices) {
      n += d.type && tt.device_types[*d.type].name == name ? 1 : 0;
    }
    if (n != count.get<int>()) {
      failures.push_back(name + " devices " + std::to_string(n) + " != " + count.dump());
    }
  }
  const json cable_counts = spec.value("cable_type_counts", json::object());
  for (const auto& [name, count] : cable_counts.items()) {
    int n = 0;
    for (const DecodedCable& c : topo.cables) {
      n += c.type && tt.cable_types[*c.type].name == name ? 1 : 0;
    }
    if (n != count.get<int>()) {
      failures.push_back(name + " cables " + std::to_string(n) + " != " + count.dump());
    }
  }
  const json device_types = spec.value("device_types", json::object());
  for (const auto& [id, name] : device_types.items()) {
    const DecodedDevice* d = topo.FindDevice(id);
    const std::string got = d && d->type ? tt.device_types[*d->type].name : "none";
    if (got != name.get<std::string>()) failures.push_back("device " + id + " is " + got);
  }
  const json excluded = spec.value("path_cable_types_excluded", json::array());
  for (const json& name : excluded) {
    for (const SignalRoute& route : topo.routes) {
      for (const PathEdge& e : route.edges) {
        const DecodedCable* c = topo.FindCable(e.cable);
        if (c && c->type && tt.cable_types[*c->type].name == name.get<std::string>()) {
          failures.push_back("signal " + route.signal + " uses " + name.get<std::string>());
        }
      }
    }
  }
  if (spec.contains("unassigned_devices")) {
    int n = 0;
    for (const DecodedDevice& d : topo.devices) n += d.type ? 0 : 1;
    if (n != spec["unassigned_devices"].get<int>()) {
      failures.push_back("unassigned devices " + std::to_string(n));
    }
  }
  return failures;
}

int CmdCorpus(const RunConfig& cfg) {
  const std::string path = cfg.expectations.empty()
                               ? cfg.corpus_dir + "/expectations.json"
                               : cfg.expectations;
  const std::vector<Expectation> expectations = LoadExpectations(path);
  int failed = 0;
  int ran = 0;
  std::printf("%-12s %-8s %12s %10s  %s\n", "scenario", "result", "objective", "seconds",
              "notes");
  for (const Expectation& e : expectations) {
    if (e.ife && !cfg.with_ife) continue;
    ++ran;
    SolverParams params = cfg.params;
    params.rel_gap = std::max(params.rel_gap, e.spec.value("gap", 0.0));
    const std::string backend_id =
        cfg.backend.empty() ? e.spec.value("backend", "") : cfg.backend;
    std::vector<std::string> failures;
    OptimizeResult r;
    try {
      const Scenario scenario = LoadScenario(cfg.corpus_dir + "/" + e.file);
      auto backend = MakeBackend(backend_id);
      r = Optimize(scenario, *backend, params);
      failures = CheckExpectation(e.spec, r, scenario.type_table, params.rel_gap);
    } catch (const std::exception& ex) {
      failures.push_back(ex.what());
    }
    std::string notes;
    for (const std::string& f : failures) notes += (notes.empty() ? "" : "; ") + f;
    std::printf("%-12s %-8s %12.6g %10.2f  %s\n", e.name.c_str(),
                failures.empty() ? "pass" : "FAIL",
                r.has_topology ? r.topology.objective_value : NAN,
                r.stats.wall_seconds, notes.c_str());
    std::fflush(stdout);
    failed += failures.empty() ? 0 : 1;
  }
  std::printf("%d/%d pass\n", ran - failed, ran);
  return failed == 0 ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical multi-core fiber topology synthesis"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_solver_flags = [&cfg](CLI::App* cmd) {
    cmd->add_option("--backend", cfg.backend, "reference or highs ($MCFTOPO_BACKEND)");
    cmd->add_option("--time-limit", cfg.params.time_limit, "seconds")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--gap", cfg.params.rel_gap, "relative optimality gap in [0, 1)")
        ->check(CLI::Range(0.0, 0.999999));
    cmd->add_option("--seed", cfg.params.seed, "solver seed");
    cmd->add_option("--threads", cfg.params.threads, "solver threads")
        ->check(CLI::PositiveNumber);
  };

  auto* optimize = app.add_subcommand("optimize", "solve a scenario");
  optimize->add_option("--scenario", cfg.scenario, "scenario file")->required();
  optimize->add_option("--out", cfg.out, "result file (stdout when omitted)");
  optimize->add_option("--lp", cfg.lp, "also write the model in LP format");
  add_solver_flags(optimize);

  auto* validate = app.add_subcommand("validate", "re-audit a stored result");
  validate->add_option("--result", cfg.result, "result file")->required();
  validate->add_option("--scenario", cfg.scenario, "audit against this scenario instead");
  validate->add_option("--out", cfg.out, "report file");

  auto* trace = app.add_subcommand("trace", "power traces of a stored result");
  trace->add_option("--result", cfg.result, "result file")->required();
  trace->add_option("--signal", cfg.signal, "only this signal");
  trace->add_option("--out", cfg.out, "trace file");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering of a stored result");
  dot->add_option("--result", cfg.result, "result file")->required();
  dot->add_option("--out", cfg.out, "DOT file");

  auto* corpus = app.add_subcommand("corpus", "run the bundled scenarios");
  corpus->add_option("--corpus-dir", cfg.corpus_dir, "directory of the corpus");
  corpus->add_option("--expectations", cfg.expectations, "expectation file");
  corpus->add_flag("--with-ife", cfg.with_ife, "include the IFE scenario");
  add_solver_flags(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*optimize) return CmdOptimize(cfg);
    if (*validate) return CmdValidate(cfg);
    if (*trace) return CmdTrace(cfg);
    if (*dot) return CmdExportDot(cfg);
    if (*corpus) return CmdCorpus(cfg);
  } catch (const ScenarioError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ResultError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const BuildError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const DecodeError& e) {
    std::cerr << "decode failure (signal " << e.signal() << "): " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
  return kUsage;
}
