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

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "mcftopo/solver.h"

#ifndef MCFTOPO_DEFAULT_PYTHON
#define MCFTOPO_DEFAULT_PYTHON "python3"
#endif
#ifndef MCFTOPO_DEFAULT_BRIDGE
#define MCFTOPO_DEFAULT_BRIDGE "tools/highs_bridge.py"
#endif

namespace mcftopo {
namespace {

namespace fs = std::filesystem;

std::string FromEnv(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

// Scratch directory removed on scope exit.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("mcftopo-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string ReadAll(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SolveStatus ParseStatus(const std::string& s, const MilpProblem& problem) {
  if (s == "optimal") return SolveStatus::kOptimal;
  if (s == "feasible_gap") return SolveStatus::kFeasibleGap;
  if (s == "infeasible") return SolveStatus::kInfeasible;
  if (s == "unbounded") return SolveStatus::kUnbounded;
  if (s == "timeout") return SolveStatus::kTimeout;
  if (s == "unbounded_or_infeasible") {
    // With every column boxed the problem cannot be unbounded.
    for (int j = 0; j < problem.num_columns(); ++j) {
      if (!std::isfinite(problem.lower(j)) || !std::isfinite(problem.upper(j))) {
        throw SolverError("HiGHS could not distinguish infeasible from unbounded");
      }
    }
    return SolveStatus::kInfeasible;
  }
  throw SolverError("HiGHS bridge reported status '" + s + "'");
}

}  // namespace

HighsBackend::HighsBackend(std::string python, std::string bridge)
    : python_(python.empty() ? FromEnv("MCFTOPO_PYTHON", MCFTOPO_DEFAULT_PYTHON)
                             : std::move(python)),
      bridge_(bridge.empty()
                  ? FromEnv("MCFTOPO_HIGHS_BRIDGE", MCFTOPO_DEFAULT_BRIDGE)
                  : std::move(bridge)) {}

bool HighsBackend::Available() const {
  const std::string cmd = Quote(python_) + " " + Quote(bridge_) +
                          " --probe >/dev/null 2>&1";
  return std::system(cmd.c_str()) == 0;
}

MilpSolution HighsBackend::Solve(const MilpProblem& problem,
                                 const SolverParams& params) {
  const auto start = std::chrono::steady_clock::now();
  ScratchDir dir;
  const fs::path model = dir.path() / "model.lp";
  const fs::path result_path = dir.path() / "result.json";
  const fs::path log = dir.path() / "stderr.txt";
  {
    std::ofstream out(model);
    WriteLpFormat(problem, out);
    if (!out) throw SolverError("cannot write " + model.string());
  }
  std::ostringstream cmd;
  cmd << Quote(python_) << ' ' << Quote(bridge_) << ' ' << Quote(model.string())
      << ' ' << Quote(result_path.string()) << " --time-limit "
      << params.time_limit << " --gap " << params.rel_gap << " --seed "
      << params.seed << " --threads " << params.threads << " 2>"
      << Quote(log.string());
  const int rc = std::system(cmd.str().c_str());
  if (rc != 0) {
    throw SolverError("HiGHS bridge failed (exit " + std::to_string(rc) +
                      "): " + ReadAll(log));
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadAll(result_path));
  } catch (const nlohmann::json::exception& e) {
    throw SolverError(std::string("unreadable HiGHS bridge output: ") + e.what());
  }

  MilpSolution solution;
  solution.status = ParseStatus(doc.at("status").get<std::string>(), problem);
  solution.nodes = doc.value("nodes", 0L);
  solution.lp_iterations = doc.value("iterations", 0L);
  if (doc.contains("gap") && doc["gap"].is_number()) {
    solution.gap = doc["gap"].get<double>();
  }
  if (solution.HasPoint()) {
    const auto& values = doc.at("values");
    solution.values.assign(problem.num_columns(), 0.0);
    for (int j = 0; j < problem.num_columns(); ++j) {
      const std::string name = LpColumnName(problem, j);
      auto it = values.find(name);
      // Columns that appear in no row or objective may be dropped by the
      // reader; they keep the bound closest to zero.
      if (it == values.end()) {
        solution.values[j] = std::clamp(0.0, problem.lower(j), problem.upper(j));
      } else {
        solution.values[j] = it->get<double>();
      }
      if (problem.IsIntegral(j)) solution.values[j] = std::round(solution.values[j]);
    }
    solution.objective_value = EvaluateObjective(problem, solution.values);
  }
  solution.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start).count();
  return solution;
}

}  // namespace mcftopo
