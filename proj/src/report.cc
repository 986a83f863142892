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

#include "mcftopo/report.h"

#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mcftopo {

namespace {

using json = nlohmann::json;

const char* kPalette[] = {"lightblue", "orange",  "palegreen", "gold",
                          "plum",      "salmon",  "khaki",     "lightgray"};

std::string DirectionName(Direction d) { return d == Direction::kAB ? "AB" : "BA"; }

Direction ParseDirection(const std::string& s) {
  if (s == "AB") return Direction::kAB;
  if (s == "BA") return Direction::kBA;
  throw ResultError("unknown direction '" + s + "'");
}

std::string StepName(TraceStep s) {
  switch (s) {
    case TraceStep::kTransmit: return "transmit";
    case TraceStep::kCable: return "cable";
    case TraceStep::kDevice: return "device";
  }
  return "";
}

json ReportTree(const ValidationReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"rule", v.rule}, {"element", v.element}, {"detail", v.detail}});
  }
  return {{"passes", report.passes()}, {"violations", violations}};
}

json TraceTree(const PowerTrace& trace) {
  json points = json::array();
  for (const TracePoint& p : trace.points) {
    points.push_back({{"step", StepName(p.step)}, {"element", p.element}, {"power", p.power}});
  }
  return {{"signal", trace.signal}, {"points", points}};
}

json TopologyTree(const Topology& topo, const TypeTable& tt) {
  json devices = json::array();
  for (const DecodedDevice& d : topo.devices) {
    json e = {{"id", d.id}, {"type", nullptr}};
    if (d.type) e["type"] = tt.device_types[*d.type].name;
    devices.push_back(e);
  }
  json cables = json::array();
  for (const DecodedCable& c : topo.cables) {
    json e = {{"id", c.id},         {"endpoint_a", c.endpoint_a},
              {"endpoint_b", c.endpoint_b}, {"type", nullptr},
              {"use_ab", c.use_ab}, {"use_ba", c.use_ba}};
    if (c.type) e["type"] = tt.cable_types[*c.type].name;
    cables.push_back(e);
  }
  json routes = json::array();
  for (const SignalRoute& r : topo.routes) {
    json edges = json::array();
    for (const PathEdge& e : r.edges) {
      edges.push_back({{"cable", e.cable}, {"direction", DirectionName(e.direction)}});
    }
    json transmit = json::array();
    for (const TransmitPower& t : r.transmit) {
      transmit.push_back({{"device", t.device}, {"power", t.power}});
    }
    routes.push_back({{"signal", r.signal}, {"edges", edges}, {"transmit", transmit}});
  }
  return {{"devices", devices},
          {"cables", cables},
          {"routes", routes},
          {"objective", topo.objective_value}};
}

std::optional<int> TypeByName(const json& v, const TypeTable& tt, ElementKind kind) {
  if (v.is_null()) return std::nullopt;
  const std::string name = v.get<std::string>();
  auto t = kind == ElementKind::kDevice ? tt.FindDeviceType(name) : tt.FindCableType(name);
  if (!t) throw ResultError("unknown type '" + name + "' in result");
  return t;
}

Topology ParseTopology(const json& j, const TypeTable& tt) {
  Topology topo;
  for (const json& d : j.at("devices")) {
    topo.devices.push_back(
        {d.at("id").get<std::string>(), TypeByName(d.at("type"), tt, ElementKind::kDevice)});
  }
  for (const json& c : j.at("cables")) {
    DecodedCable cable;
    cable.id = c.at("id").get<std::string>();
    cable.endpoint_a = c.at("endpoint_a").get<std::string>();
    cable.endpoint_b = c.at("endpoint_b").get<std::string>();
    cable.type = TypeByName(c.at("type"), tt, ElementKind::kCable);
    cable.use_ab = c.at("use_ab").get<int>();
    cable.use_ba = c.at("use_ba").get<int>();
    topo.cables.push_back(cable);
  }
  for (const json& r : j.at("routes")) {
    SignalRoute route;
    route.signal = r.at("signal").get<std::string>();
    for (const json& e : r.at("edges")) {
      route.edges.push_back({e.at("cable").get<std::string>(),
                             ParseDirection(e.at("direction").get<std::string>())});
    }
    for (const json& t : r.value("transmit", json::array())) {
      route.transmit.push_back({t.at("device").get<std::string>(), t.at("power").get<double>()});
    }
    topo.routes.push_back(std::move(route));
  }
  topo.objective_value = j.value("objective", 0.0);
  return topo;
}

// Labels may carry \n line breaks, so backslashes pass through.
std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ReportToJson(const ValidationReport& report) {
  return ReportTree(report).dump(2);
}

std::string TraceToJson(const PowerTrace& trace) { return TraceTree(trace).dump(2); }

std::string ResultToJson(const Scenario& scenario, const OptimizeResult& result) {
  json root;
  root["scenario"] = json::parse(ScenarioToJson(scenario));
  root["status"] = std::string(ToString(result.status));
  root["has_topology"] = result.has_topology;
  const RunStats& s = result.stats;
  root["stats"] = {{"backend", s.backend},
                   {"rows", s.rows},
                   {"binaries", s.binaries},
                   {"integers", s.integers},
                   {"continuous", s.continuous},
                   {"p_lim", s.p_lim},
                   {"build_seconds", s.build_seconds},
                   {"solve_seconds", s.solve_seconds},
                   {"wall_seconds", s.wall_seconds},
                   {"gap", s.gap},
                   {"nodes", s.nodes},
                   {"lp_iterations", s.lp_iterations},
                   {"cycles_removed", s.cycles_removed}};
  if (result.has_topology) {
    const MaxTopology max = ExpandMaxTopology(scenario);
    root["objective"] = result.topology.objective_value;
    root["topology"] = TopologyTree(result.topology, scenario.type_table);
    root["report"] = ReportTree(result.report);
    json traces = json::array();
    for (const SignalRoute& r : result.topology.routes) {
      traces.push_back(TraceTree(TracePower(result.topology, max, r.signal)));
    }
    root["traces"] = traces;
  }
  return root.dump(2);
}

StoredResult ParseResult(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ResultError(std::string("malformed result file: ") + e.what());
  }
  StoredResult out;
  try {
    out.scenario = ParseScenario(root.at("scenario").dump());
    out.status = root.at("status").get<std::string>();
    out.has_topology = root.value("has_topology", false);
    const json& s = root.value("stats", json::object());
    out.stats.backend = s.value("backend", "");
    out.stats.rows = s.value("rows", 0);
    out.stats.binaries = s.value("binaries", 0);
    out.stats.integers = s.value("integers", 0);
    out.stats.continuous = s.value("continuous", 0);
    out.stats.p_lim = s.value("p_lim", 0.0);
    out.stats.wall_seconds = s.value("wall_seconds", 0.0);
    out.stats.gap = s.value("gap", 0.0);
    if (out.has_topology) {
      out.topology = ParseTopology(root.at("topology"), out.scenario.type_table);
      for (const json& v : root.at("report").at("violations")) {
        out.report.violations.push_back({v.at("rule").get<std::string>(),
                                         v.at("element").get<std::string>(),
                                         v.at("detail").get<std::string>()});
      }
    }
  } catch (const json::exception& e) {
    throw ResultError(std::string("malformed result file: ") + e.what());
  }
  return out;
}

StoredResult LoadResult(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResultError("cannot open result file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseResult(buffer.str());
}

std::string ExportDot(const Topology& topo, const MaxTopology& max) {
  const TypeTable& tt = max.type_table;
  std::map<std::string, std::vector<std::string>> letters;  // cable -> signals
  for (const SignalRoute& r : topo.routes) {
    for (const PathEdge& e : r.edges) letters[e.cable].push_back(r.signal);
  }
  std::ostringstream out;
  out << "digraph topology {\n";
  out << "  node [shape=box, style=filled];\n";
  for (const DecodedDevice& d : topo.devices) {
    if (!d.type) continue;
    const DeviceType& type = tt.device_types[*d.type];
    out << "  " << Quote(d.id) << " [label=" << Quote(d.id + "\\n" + type.name)
        << ", fillcolor=" << kPalette[*d.type % 8]
        << (type.translucent ? ", shape=ellipse" : "") << "];\n";
  }
  for (const DecodedCable& c : topo.cables) {
    if (!c.type) continue;
    const CableType& type = tt.cable_types[*c.type];
    std::string label = type.name + "\\n" + std::to_string(c.use_ab + c.use_ba) + "/" +
                        std::to_string(type.cores) + " cores";
    const auto it = letters.find(c.id);
    if (it != letters.end()) {
      label += "\\n";
      for (size_t k = 0; k < it->second.size(); ++k) {
        label += (k ? "," : "") + it->second[k];
      }
    }
    std::string dir;
    if (!type.uni) {
      dir = "none";
    } else {
      // Arrowheads follow the directions actually used, or the permitted
      // directions when the cable carries nothing.
      const bool ab = c.use_ab > 0 || (c.use_ab + c.use_ba == 0 && type.allow_ab);
      const bool ba = c.use_ba > 0 || (c.use_ab + c.use_ba == 0 && type.allow_ba);
      dir = ab && ba ? "both" : ab ? "forward" : ba ? "back" : "none";
    }
    out << "  " << Quote(c.endpoint_a) << " -> " << Quote(c.endpoint_b)
        << " [label=" << Quote(label) << ", dir=" << dir << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mcftopo
