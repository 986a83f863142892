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

#include "mcftopo/decode.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

namespace mcftopo {

namespace {

constexpr double kIntegralTol = 1e-6;

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int RoundIntegral(std::span<const double> values, const MilpProblem& problem,
                  int column) {
  const double v = values[column];
  const double r = std::round(v);
  if (std::abs(v - r) > kIntegralTol) {
    throw DecodeError("", "column '" + problem.name(column) +
                              "' is not integral (" + Fmt(v) + ")");
  }
  return static_cast<int>(r);
}

std::optional<int> AssignedType(std::span<const double> values,
                                const MilpProblem& problem,
                                const std::vector<int>& columns,
                                const std::string& id) {
  std::optional<int> type;
  for (size_t t = 0; t < columns.size(); ++t) {
    if (RoundIntegral(values, problem, columns[t]) == 1) {
      if (type) throw DecodeError("", "slot '" + id + "' has several types");
      type = static_cast<int>(t);
    }
  }
  return type;
}

// Cable indices and directions of the path of signal i, following the
// rounded indicators from the source.
std::vector<std::pair<int, Direction>> FollowPath(
    std::span<const double> values, const BuildArtifacts& a, int i) {
  const MaxTopology& t = a.topology;
  const ColumnIndex& c = a.columns;
  const std::string& sid = t.signals[i].id;
  const int target = t.signal_target[i];
  int current = t.signal_source[i];
  std::vector<bool> seen(t.devices.size(), false);
  seen[current] = true;
  std::vector<std::pair<int, Direction>> path;
  while (current != target) {
    std::vector<std::pair<int, Direction>> out;
    for (int j : t.CablesStartingAt(current)) {
      if (RoundIntegral(values, a.problem, c.on_ab[i][j]) == 1) {
        out.emplace_back(j, Direction::kAB);
      }
    }
    for (int j : t.CablesEndingAt(current)) {
      if (RoundIntegral(values, a.problem, c.on_ba[i][j]) == 1) {
        out.emplace_back(j, Direction::kBA);
      }
    }
    if (out.size() != 1) {
      throw DecodeError(sid, "signal '" + sid + "': " +
                                 std::to_string(out.size()) +
                                 " outgoing edges at device '" +
                                 t.devices[current].id + "'");
    }
    const auto [j, dir] = out.front();
    const int next = dir == Direction::kAB ? t.cable_b[j] : t.cable_a[j];
    if (seen[next]) {
      throw DecodeError(sid, "signal '" + sid + "' revisits device '" +
                                 t.devices[next].id + "'");
    }
    seen[next] = true;
    path.push_back(out.front());
    current = next;
  }
  return path;
}

}  // namespace

const DecodedDevice* Topology::FindDevice(const std::string& id) const {
  for (const auto& d : devices) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

const DecodedCable* Topology::FindCable(const std::string& id) const {
  for (const auto& c : cables) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

const SignalRoute* Topology::FindRoute(const std::string& signal) const {
  for (const auto& r : routes) {
    if (r.signal == signal) return &r;
  }
  return nullptr;
}

int Topology::CountDevices(const TypeTable& table, bool translucent) const {
  int n = 0;
  for (const auto& d : devices) {
    if (d.type && table.device_types[*d.type].translucent == translucent) ++n;
  }
  return n;
}

int Topology::CountCables() const {
  return static_cast<int>(std::count_if(
      cables.begin(), cables.end(), [](const DecodedCable& c) { return c.type.has_value(); }));
}

Topology Decode(std::span<const double> values, const BuildArtifacts& a) {
  const MaxTopology& t = a.topology;
  const ColumnIndex& c = a.columns;
  const MilpProblem& p = a.problem;
  if (static_cast<int>(values.size()) != p.num_columns()) {
    throw DecodeError("", "value vector does not match the problem");
  }
  for (int j = 0; j < p.num_columns(); ++j) {
    if (p.IsIntegral(j)) RoundIntegral(values, p, j);
  }
  Topology topo;
  for (size_t k = 0; k < t.devices.size(); ++k) {
    topo.devices.push_back(
        {t.devices[k].id, AssignedType(values, p, c.device_type[k], t.devices[k].id)});
  }
  for (size_t j = 0; j < t.cables.size(); ++j) {
    DecodedCable cable;
    cable.id = t.cables[j].id;
    cable.endpoint_a = t.cables[j].endpoint_a;
    cable.endpoint_b = t.cables[j].endpoint_b;
    cable.type = AssignedType(values, p, c.cable_type[j], cable.id);
    cable.use_ab = RoundIntegral(values, p, c.use_ab[j]);
    cable.use_ba = RoundIntegral(values, p, c.use_ba[j]);
    topo.cables.push_back(cable);
  }
  const TypeTable& tt = t.type_table;
  for (size_t i = 0; i < t.signals.size(); ++i) {
    SignalRoute route;
    route.signal = t.signals[i].id;
    int current = t.signal_source[i];
    for (const auto& [j, dir] : FollowPath(values, a, static_cast<int>(i))) {
      const auto& type = topo.devices[current].type;
      if (type && !tt.device_types[*type].translucent) {
        route.transmit.push_back(
            {t.devices[current].id, values[c.transmit[i][current]]});
      }
      route.edges.push_back({t.cables[j].id, dir});
      current = dir == Direction::kAB ? t.cable_b[j] : t.cable_a[j];
    }
    topo.routes.push_back(std::move(route));
  }
  // Integral columns enter the objective at their rounded values.
  std::vector<double> rounded(values.begin(), values.end());
  for (int j = 0; j < p.num_columns(); ++j) {
    if (p.IsIntegral(j)) rounded[j] = std::round(rounded[j]);
  }
  topo.objective_value = EvaluateObjective(p, rounded);
  return topo;
}

int RemoveDetachedCycles(std::vector<double>& values, const BuildArtifacts& a) {
  const MaxTopology& t = a.topology;
  const ColumnIndex& c = a.columns;
  const TypeTable& tt = t.type_table;
  for (int j = 0; j < a.problem.num_columns(); ++j) {
    if (a.problem.IsIntegral(j)) values[j] = RoundIntegral(values, a.problem, j);
  }
  const int nd = static_cast<int>(t.devices.size());
  const int nf = static_cast<int>(t.cables.size());
  std::vector<bool> translucent(nd, false);
  for (int k = 0; k < nd; ++k) {
    for (size_t ty = 0; ty < tt.device_types.size(); ++ty) {
      if (values[c.device_type[k][ty]] == 1.0 && tt.device_types[ty].translucent) {
        translucent[k] = true;
      }
    }
  }
  int cleared = 0;
  for (size_t i = 0; i < t.signals.size(); ++i) {
    const auto path = FollowPath(values, a, static_cast<int>(i));
    std::vector<char> keep_ab(nf, 0), keep_ba(nf, 0);
    for (const auto& [j, dir] : path) (dir == Direction::kAB ? keep_ab : keep_ba)[j] = 1;
    for (int j = 0; j < nf; ++j) {
      for (auto [col, keep] : {std::pair{c.on_ab[i][j], keep_ab[j]},
                               std::pair{c.on_ba[i][j], keep_ba[j]}}) {
        if (!keep && values[col] == 1.0) {
          values[col] = 0.0;
          ++cleared;
        }
      }
    }
    for (int k = 0; k < nd; ++k) {
      values[c.does_tx[i][k]] = 0.0;
      values[c.does_rx[i][k]] = 0.0;
    }
    for (const auto& [j, dir] : path) {
      const int from = dir == Direction::kAB ? t.cable_a[j] : t.cable_b[j];
      const int to = dir == Direction::kAB ? t.cable_b[j] : t.cable_a[j];
      values[c.does_tx[i][from]] = 1.0;
      values[c.does_rx[i][to]] = 1.0;
    }
    for (int k = 0; k < nd; ++k) {
      values[c.opaque_rx[i][k]] =
          values[c.does_rx[i][k]] == 1.0 && !translucent[k] ? 1.0 : 0.0;
    }
  }
  for (int j = 0; j < nf; ++j) {
    double ab = 0.0;
    double ba = 0.0;
    for (size_t i = 0; i < t.signals.size(); ++i) {
      ab += values[c.on_ab[i][j]];
      ba += values[c.on_ba[i][j]];
    }
    values[c.use_ab[j]] = ab;
    values[c.use_ba[j]] = ba;
  }
  return cleared;
}

namespace {

// A route resolved against the max topology.
struct Walk {
  std::vector<int> devices;  // source .. target
  std::vector<int> cables;
  std::vector<Direction> directions;
};

// Transmit power for a segment with total attenuation `sum` ending at an
// opaque receiver: the given value when there is one, otherwise the lowest
// admissible power that reaches the receiver's sensitivity.
double ChooseTransmit(const DeviceType& tx, const DeviceType& rx, double sum,
                      const std::optional<double>& given) {
  if (given) return *given;
  const double wanted = std::max(tx.tx_min, rx.rx_min - sum);
  return std::min(wanted, tx.tx_max);
}

std::optional<double> GivenTransmit(const SignalRoute& route,
                                    const std::string& device) {
  for (const auto& tp : route.transmit) {
    if (tp.device == device) return tp.power;
  }
  return std::nullopt;
}

}  // namespace

ValidationReport Audit(const Topology& topology, const MaxTopology& max) {
  ValidationReport report;
  auto flag = [&report](std::string rule, std::string element, std::string detail) {
    report.violations.push_back({std::move(rule), std::move(element), std::move(detail)});
  };
  const TypeTable& tt = max.type_table;
  const int nd = static_cast<int>(max.devices.size());
  const int nf = static_cast<int>(max.cables.size());

  std::vector<std::optional<int>> dtype(nd);
  for (const auto& d : topology.devices) {
    const int k = max.DeviceIndex(d.id);
    if (k < 0) {
      flag("mask", d.id, "unknown device slot");
      continue;
    }
    if (d.type && (*d.type < 0 ||
                   *d.type >= static_cast<int>(tt.device_types.size()))) {
      flag("mask", d.id, "unknown device type");
      continue;
    }
    dtype[k] = d.type;
  }
  std::vector<std::optional<int>> ctype(nf);
  for (const auto& cb : topology.cables) {
    const int j = max.CableIndex(cb.id);
    if (j < 0) {
      flag("mask", cb.id, "unknown cable slot");
      continue;
    }
    if (cb.type && (*cb.type < 0 ||
                    *cb.type >= static_cast<int>(tt.cable_types.size()))) {
      flag("mask", cb.id, "unknown cable type");
      continue;
    }
    ctype[j] = cb.type;
  }

  for (int k = 0; k < nd; ++k) {
    const DeviceSlot& slot = max.devices[k];
    if (dtype[k]) {
      if (!slot.allowed_types[*dtype[k]]) {
        flag("mask", slot.id, "type '" + tt.device_types[*dtype[k]].name + "' is not allowed");
      }
      if (slot.fixed_type && *slot.fixed_type != *dtype[k]) {
        flag("mask", slot.id, "fixed type not kept");
      }
    } else if (slot.must_exist) {
      flag("existence", slot.id, "required device is missing");
    }
  }
  for (int j = 0; j < nf; ++j) {
    const CableSlot& slot = max.cables[j];
    if (ctype[j]) {
      if (!slot.allowed_types[*ctype[j]]) {
        flag("mask", slot.id, "type '" + tt.cable_types[*ctype[j]].name + "' is not allowed");
      }
      if (slot.fixed_type && *slot.fixed_type != *ctype[j]) {
        flag("mask", slot.id, "fixed type not kept");
      }
      for (int k : {max.cable_a[j], max.cable_b[j]}) {
        if (!dtype[k]) {
          flag("existence", slot.id, "endpoint '" + max.devices[k].id + "' does not exist");
        }
      }
    } else if (slot.must_exist) {
      flag("existence", slot.id, "required cable is missing");
    }
  }
  for (int k = 0; k < nd; ++k) {
    int degree = 0;
    for (int j : max.IncidentCables(k)) degree += ctype[j] ? 1 : 0;
    const int ports = dtype[k] ? tt.device_types[*dtype[k]].ports : 0;
    if (degree > ports) {
      flag("ports", max.devices[k].id,
           std::to_string(degree) + " cables on " + std::to_string(ports) + " ports");
    }
  }

  std::vector<int> load_ab(nf, 0), load_ba(nf, 0);
  for (size_t i = 0; i < max.signals.size(); ++i) {
    const Signal& sig = max.signals[i];
    const SignalRoute* route = topology.FindRoute(sig.id);
    if (!route) {
      flag("path", sig.id, "signal is not routed");
      continue;
    }
    for (int k : {max.signal_source[i], max.signal_target[i]}) {
      if (!dtype[k] || tt.device_types[*dtype[k]].translucent) {
        flag("endpoint", sig.id, "endpoint '" + max.devices[k].id + "' is not an opaque device");
      }
    }
    Walk walk;
    walk.devices.push_back(max.signal_source[i]);
    bool broken = route->edges.empty();
    if (broken) flag("path", sig.id, "signal is not routed");
    std::vector<bool> seen(nd, false);
    seen[max.signal_source[i]] = true;
    for (const PathEdge& e : route->edges) {
      const int j = max.CableIndex(e.cable);
      if (j < 0) {
        flag("path", sig.id, "unknown cable '" + e.cable + "'");
        broken = true;
        break;
      }
      const int from = e.direction == Direction::kAB ? max.cable_a[j] : max.cable_b[j];
      const int to = e.direction == Direction::kAB ? max.cable_b[j] : max.cable_a[j];
      if (from != walk.devices.back()) {
        flag("path", sig.id, "edge '" + e.cable + "' does not continue the path");
        broken = true;
        break;
      }
      if (seen[to]) {
        flag("path", sig.id, "device '" + max.devices[to].id + "' visited twice");
        broken = true;
        break;
      }
      if (!ctype[j]) {
        flag("path", sig.id, "cable '" + e.cable + "' does not exist");
        broken = true;
        break;
      }
      seen[to] = true;
      walk.devices.push_back(to);
      walk.cables.push_back(j);
      walk.directions.push_back(e.direction);
      (e.direction == Direction::kAB ? load_ab : load_ba)[j] += 1;
    }
    if (!broken && walk.devices.back() != max.signal_target[i]) {
      flag("path", sig.id, "path does not end at the target");
      broken = true;
    }
    if (broken) continue;

    // Link budget, one segment per opaque transmitter.
    size_t pos = 0;
    while (pos + 1 < walk.devices.size()) {
      const int tx_dev = walk.devices[pos];
      if (!dtype[tx_dev]) break;  // reported by the existence checks
      double sum = 0.0;
      size_t end = pos;
      for (;;) {
        sum += tt.cable_types[*ctype[walk.cables[end]]].delta;
        ++end;
        const int dev = walk.devices[end];
        if (!dtype[dev]) break;
        const DeviceType& type = tt.device_types[*dtype[dev]];
        if (!type.translucent || end + 1 == walk.devices.size()) break;
        sum += type.delta;
      }
      const int rx_dev = walk.devices[end];
      if (!dtype[rx_dev]) break;
      const DeviceType& txt = tt.device_types[*dtype[tx_dev]];
      const DeviceType& rxt = tt.device_types[*dtype[rx_dev]];
      if (txt.translucent || rxt.translucent) break;  // endpoint rule
      const auto given = GivenTransmit(*route, max.devices[tx_dev].id);
      const double tx = ChooseTransmit(txt, rxt, sum, given);
      if (tx < txt.tx_min - 1e-9 || tx > txt.tx_max + 1e-9) {
        flag("link_budget", sig.id,
             "transmit power " + Fmt(tx) + " dBm at '" + max.devices[tx_dev].id +
                 "' outside [" + Fmt(txt.tx_min) + ", " + Fmt(txt.tx_max) + "]");
      }
      const double rx = tx + sum;
      if (rx < rxt.rx_min - 1e-9) {
        flag("link_budget", sig.id,
             "Rx = " + Fmt(rx) + " dBm < " + Fmt(rxt.rx_min) + " dBm at '" +
                 max.devices[rx_dev].id + "'");
      } else if (rx > rxt.rx_max + 1e-9) {
        flag("link_budget", sig.id,
             "Rx = " + Fmt(rx) + " dBm > " + Fmt(rxt.rx_max) + " dBm at '" +
                 max.devices[rx_dev].id + "'");
      }
      pos = end;
    }
  }

  for (int j = 0; j < nf; ++j) {
    if (!ctype[j]) continue;
    const CableType& type = tt.cable_types[*ctype[j]];
    const std::string& id = max.cables[j].id;
    if (load_ab[j] + load_ba[j] > type.cores) {
      flag("cores", id, std::to_string(load_ab[j] + load_ba[j]) + " signals on " +
                            std::to_string(type.cores) + " cores");
    }
    if (!IsLegalDirectionality(type.uni, type.allow_ab, type.allow_ba)) {
      flag("direction", id, "type has an illegal direction setting");
    }
    if (load_ab[j] > 0 && !type.allow_ab) flag("direction", id, "A->B not permitted");
    if (load_ba[j] > 0 && !type.allow_ba) flag("direction", id, "B->A not permitted");
    if (type.uni && load_ab[j] > 0 && load_ba[j] > 0) {
      flag("direction", id, "unidirectional cable used both ways");
    }
  }
  return report;
}

PowerTrace TracePower(const Topology& topology, const MaxTopology& max,
                      const std::string& signal) {
  const SignalRoute* route = topology.FindRoute(signal);
  const int i = max.SignalIndex(signal);
  if (!route || i < 0 || route->edges.empty()) {
    throw DecodeError(signal, "signal '" + signal + "' is not routed");
  }
  const TypeTable& tt = max.type_table;
  auto device_type = [&](int k) -> const DeviceType& {
    const DecodedDevice* d = topology.FindDevice(max.devices[k].id);
    if (!d || !d->type) {
      throw DecodeError(signal, "device '" + max.devices[k].id + "' on the path does not exist");
    }
    return tt.device_types[*d->type];
  };
  auto cable_type = [&](int j) -> const CableType& {
    const DecodedCable* c = topology.FindCable(max.cables[j].id);
    if (!c || !c->type) {
      throw DecodeError(signal, "cable '" + max.cables[j].id + "' on the path does not exist");
    }
    return tt.cable_types[*c->type];
  };

  std::vector<int> devices{max.signal_source[i]};
  std::vector<int> cables;
  for (const PathEdge& e : route->edges) {
    const int j = max.CableIndex(e.cable);
    if (j < 0) throw DecodeError(signal, "unknown cable '" + e.cable + "'");
    cables.push_back(j);
    devices.push_back(e.direction == Direction::kAB ? max.cable_b[j] : max.cable_a[j]);
  }

  PowerTrace trace;
  trace.signal = signal;
  double power = 0.0;
  for (size_t pos = 0; pos < cables.size(); ++pos) {
    const int dev = devices[pos];
    const DeviceType& here = device_type(dev);
    if (pos == 0 || !here.translucent) {
      // Segment attenuation up to the next opaque device, for the default
      // transmit choice.
      double sum = 0.0;
      size_t end = pos;
      for (;;) {
        sum += cable_type(cables[end]).delta;
        ++end;
        const DeviceType& t = device_type(devices[end]);
        if (!t.translucent || end + 1 == devices.size()) break;
        sum += t.delta;
      }
      power = ChooseTransmit(here, device_type(devices[end]), sum,
                             GivenTransmit(*route, max.devices[dev].id));
      trace.points.push_back({TraceStep::kTransmit, max.devices[dev].id, power});
    } else {
      power += here.delta;
      trace.points.push_back({TraceStep::kDevice, max.devices[dev].id, power});
    }
    power += cable_type(cables[pos]).delta;
    trace.points.push_back({TraceStep::kCable, max.cables[cables[pos]].id, power});
  }
  return trace;
}

}  // namespace mcftopo
