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

#include "mcftopo/builder.h"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mcftopo {

PowerLimit ComputePowerLimit(const TypeTable& table, int device_count) {
  if (device_count < 2) {
    throw BuildError("power limit needs at least two devices");
  }
  constexpr ElementKind kDev = ElementKind::kDevice;
  constexpr ElementKind kCab = ElementKind::kCable;
  auto abs_extreme = [&table](ElementKind kind, int min_prop, int max_prop) {
    return std::max(std::abs(table.MinProperty(kind, min_prop)),
                    std::abs(table.MaxProperty(kind, max_prop)));
  };
  const int delta_dev = static_cast<int>(DeviceProperty::kDelta);
  const int delta_fib = static_cast<int>(CableProperty::kDelta);

  PowerLimit p;
  p.p_tx = abs_extreme(kDev, static_cast<int>(DeviceProperty::kTxMin),
                       static_cast<int>(DeviceProperty::kTxMax));
  p.p_rx = abs_extreme(kDev, static_cast<int>(DeviceProperty::kRxMin),
                       static_cast<int>(DeviceProperty::kRxMax));
  p.p_delta_dev = abs_extreme(kDev, delta_dev, delta_dev);
  p.p_delta_fib = abs_extreme(kCab, delta_fib, delta_fib);
  p.p_lim = p.p_tx + (device_count - 2) * p.p_delta_dev +
            (device_count - 1) * p.p_delta_fib + p.p_rx;
  return p;
}

namespace {

// Linear expression with a constant part, used to assemble rows.
struct Expr {
  std::vector<Term> terms;
  double constant = 0.0;

  Expr& Add(int column, double coefficient) {
    if (coefficient != 0.0) terms.push_back({column, coefficient});
    return *this;
  }
  Expr& Add(const Expr& other, double scale = 1.0) {
    for (const Term& t : other.terms) Add(t.column, t.coefficient * scale);
    constant += other.constant * scale;
    return *this;
  }
  Expr& Constant(double c) {
    constant += c;
    return *this;
  }
};

// Merges duplicate columns so rows stay canonical.
std::vector<Term> Collect(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.column < b.column; });
  std::vector<Term> out;
  for (const Term& t : terms) {
    if (!out.empty() && out.back().column == t.column) {
      out.back().coefficient += t.coefficient;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coefficient == 0.0; });
  return out;
}

void Emit(BuildArtifacts& a, const Expr& expr, Relation rel, double rhs,
          std::string tag, std::string element) {
  a.problem.AddRow(Collect(expr.terms), rel, rhs - expr.constant);
  a.trace.push_back({std::move(tag), std::move(element)});
}

// Property expression sum_t tau_{p,t} x_{e,t} of one element.
Expr PropertyExpr(const BuildArtifacts& a, ElementKind kind, int slot,
                  int property) {
  const TypeTable& tt = a.topology.type_table;
  const auto& cols = kind == ElementKind::kDevice ? a.columns.device_type[slot]
                                                  : a.columns.cable_type[slot];
  Expr e;
  for (int t = 0; t < tt.TypeCount(kind); ++t) {
    e.Add(cols[t], tt.Entry(kind, property, t));
  }
  return e;
}

Expr DeviceProp(const BuildArtifacts& a, int device, DeviceProperty p) {
  return PropertyExpr(a, ElementKind::kDevice, device, static_cast<int>(p));
}

Expr CableProp(const BuildArtifacts& a, int cable, CableProperty p) {
  return PropertyExpr(a, ElementKind::kCable, cable, static_cast<int>(p));
}

// Sum of the type vector: 1 when the element exists, 0 otherwise.
Expr Existence(const BuildArtifacts& a, ElementKind kind, int slot) {
  const auto& cols = kind == ElementKind::kDevice ? a.columns.device_type[slot]
                                                  : a.columns.cable_type[slot];
  Expr e;
  for (int c : cols) e.Add(c, 1.0);
  return e;
}

// quantity == target whenever the indicator expression equals 1:
//   -M (1 - ind) <= quantity - target <= M (1 - ind)
void BindWhenOn(BuildArtifacts& a, const Expr& quantity, const Expr& target,
                const Expr& indicator, const std::string& tag,
                const std::string& element) {
  const double m = a.power.p_lim;
  Expr diff = quantity;
  diff.Add(target, -1.0);
  Expr upper = diff;
  upper.Add(indicator, m);
  Emit(a, upper, Relation::kLessEqual, m, tag, element);
  Expr lower = diff;
  lower.Add(indicator, -m);
  Emit(a, lower, Relation::kGreaterEqual, -m, tag, element);
}

// quantity == target whenever the indicator expression equals 0:
//   -M ind <= quantity - target <= M ind
void BindWhenOff(BuildArtifacts& a, const Expr& quantity, const Expr& target,
                 const Expr& indicator, const std::string& tag,
                 const std::string& element) {
  const double m = a.power.p_lim;
  Expr diff = quantity;
  diff.Add(target, -1.0);
  Expr upper = diff;
  upper.Add(indicator, -m);
  Emit(a, upper, Relation::kLessEqual, 0.0, tag, element);
  Expr lower = diff;
  lower.Add(indicator, m);
  Emit(a, lower, Relation::kGreaterEqual, 0.0, tag, element);
}

Expr Var(int column) { return Expr().Add(column, 1.0); }

std::string SignalElement(const MaxTopology& t, int signal, const std::string& what) {
  return "S" + t.signals[signal].id + "/" + what;
}

}  // namespace

MaxTopology RestrictSignalEndpoints(MaxTopology topology) {
  const TypeTable& tt = topology.type_table;
  for (size_t i = 0; i < topology.signals.size(); ++i) {
    for (int k : {topology.signal_source[i], topology.signal_target[i]}) {
      DeviceSlot& slot = topology.devices[k];
      if (slot.fixed_type && tt.device_types[*slot.fixed_type].translucent) {
        throw BuildError("device '" + slot.id + "' terminates signal '" +
                         topology.signals[i].id +
                         "' but is fixed to a translucent type");
      }
      for (size_t t = 0; t < tt.device_types.size(); ++t) {
        if (tt.device_types[t].translucent) slot.allowed_types[t] = false;
      }
    }
  }
  return topology;
}

void RegisterVariables(BuildArtifacts& a) {
  const MaxTopology& topo = a.topology;
  const TypeTable& tt = topo.type_table;
  const int nd = static_cast<int>(topo.devices.size());
  const int nf = static_cast<int>(topo.cables.size());
  const int ns = static_cast<int>(topo.signals.size());
  const double max_cores =
      tt.MaxProperty(ElementKind::kCable, static_cast<int>(CableProperty::kCores));
  const double lim = a.power.p_lim;
  ColumnIndex& c = a.columns;
  auto add = [&a](const std::string& name, VarKind kind, double lo, double hi) {
    return a.registry.Add(a.problem, name, kind, lo, hi);
  };

  c.device_type.assign(nd, {});
  for (int k = 0; k < nd; ++k) {
    for (const DeviceType& type : tt.device_types) {
      c.device_type[k].push_back(add("D" + topo.devices[k].id + ".T." + type.name,
                                     VarKind::kBinary, 0, 1));
    }
  }
  c.cable_type.assign(nf, {});
  for (int j = 0; j < nf; ++j) {
    for (const CableType& type : tt.cable_types) {
      c.cable_type[j].push_back(add("F" + topo.cables[j].id + ".T." + type.name,
                                    VarKind::kBinary, 0, 1));
    }
  }
  c.use_ab.resize(nf);
  c.use_ba.resize(nf);
  c.allow_ab.resize(nf);
  c.allow_ba.resize(nf);
  for (int j = 0; j < nf; ++j) {
    const std::string f = "F" + topo.cables[j].id;
    c.use_ab[j] = add(f + ".useAB", VarKind::kInteger, 0, max_cores);
    c.use_ba[j] = add(f + ".useBA", VarKind::kInteger, 0, max_cores);
    c.allow_ab[j] = add(f + ".allowAB", VarKind::kBinary, 0, 1);
    c.allow_ba[j] = add(f + ".allowBA", VarKind::kBinary, 0, 1);
  }
  auto table = [ns](std::vector<std::vector<int>>& t, int n) {
    t.assign(ns, std::vector<int>(n, -1));
  };
  table(c.on_ab, nf);
  table(c.on_ba, nf);
  table(c.power_ab, nf);
  table(c.power_ba, nf);
  table(c.does_rx, nd);
  table(c.does_tx, nd);
  table(c.opaque_rx, nd);
  table(c.rx, nd);
  table(c.transmit, nd);
  table(c.tx_avail, nd);
  table(c.tx, nd);
  for (int i = 0; i < ns; ++i) {
    const std::string s = "S" + topo.signals[i].id;
    for (int j = 0; j < nf; ++j) {
      const std::string f = s + ".F" + topo.cables[j].id;
      c.on_ab[i][j] = add(f + ".AB", VarKind::kBinary, 0, 1);
      c.on_ba[i][j] = add(f + ".BA", VarKind::kBinary, 0, 1);
    }
    for (int k = 0; k < nd; ++k) {
      const std::string d = s + ".D" + topo.devices[k].id;
      c.does_rx[i][k] = add(d + ".doesRx", VarKind::kBinary, 0, 1);
      c.does_tx[i][k] = add(d + ".doesTx", VarKind::kBinary, 0, 1);
      c.opaque_rx[i][k] = add(d + ".opaqueRx", VarKind::kBinary, 0, 1);
    }
    for (int k = 0; k < nd; ++k) {
      const std::string d = s + ".D" + topo.devices[k].id;
      c.rx[i][k] = add(d + ".Rx", VarKind::kContinuous, -lim, lim);
      c.transmit[i][k] = add(d + ".transmit", VarKind::kContinuous, -lim, lim);
      c.tx_avail[i][k] = add(d + ".TxAvail", VarKind::kContinuous, -lim, lim);
      c.tx[i][k] = add(d + ".Tx", VarKind::kContinuous, -lim, lim);
    }
    for (int j = 0; j < nf; ++j) {
      const std::string f = s + ".F" + topo.cables[j].id;
      c.power_ab[i][j] = add(f + ".powerAB", VarKind::kContinuous, -lim, lim);
      c.power_ba[i][j] = add(f + ".powerBA", VarKind::kContinuous, -lim, lim);
    }
  }
}

void EncodeTypeAssignment(BuildArtifacts& a, ElementKind kind, int slot) {
  const bool is_device = kind == ElementKind::kDevice;
  const std::string& id =
      is_device ? a.topology.devices[slot].id : a.topology.cables[slot].id;
  const std::vector<bool>& mask = is_device
                                      ? a.topology.devices[slot].allowed_types
                                      : a.topology.cables[slot].allowed_types;
  const std::optional<int> fixed = is_device
                                       ? a.topology.devices[slot].fixed_type
                                       : a.topology.cables[slot].fixed_type;
  const bool must_exist = is_device ? a.topology.devices[slot].must_exist
                                    : a.topology.cables[slot].must_exist;
  const auto& cols = is_device ? a.columns.device_type[slot]
                               : a.columns.cable_type[slot];
  if (fixed && !mask.at(*fixed)) {
    throw BuildError("slot '" + id + "': type mask excludes the fixed type");
  }
  const Expr exists = Existence(a, kind, slot);
  if (must_exist || fixed) {
    Emit(a, exists, Relation::kEqual, 1.0, "type.exists", id);
  } else {
    Emit(a, exists, Relation::kLessEqual, 1.0, "type.at_most_one", id);
  }
  for (size_t t = 0; t < cols.size(); ++t) {
    if (!mask[t]) Emit(a, Var(cols[t]), Relation::kEqual, 0.0, "type.forbidden", id);
  }
  if (fixed) Emit(a, Var(cols[*fixed]), Relation::kEqual, 1.0, "type.fixed", id);
}

void EncodePortLimits(BuildArtifacts& a, int device) {
  Expr lhs;
  for (int j : a.topology.IncidentCables(device)) {
    lhs.Add(Existence(a, ElementKind::kCable, j));
  }
  lhs.Add(DeviceProp(a, device, DeviceProperty::kPorts), -1.0);
  Emit(a, lhs, Relation::kLessEqual, 0.0, "ports", a.topology.devices[device].id);
}

void EncodeDirectionAndCores(BuildArtifacts& a, int cable) {
  const ColumnIndex& c = a.columns;
  const std::string& id = a.topology.cables[cable].id;
  const double max_cores = a.topology.type_table.MaxProperty(
      ElementKind::kCable, static_cast<int>(CableProperty::kCores));

  Expr cores = Var(c.use_ab[cable]);
  cores.Add(c.use_ba[cable], 1.0);
  cores.Add(CableProp(a, cable, CableProperty::kCores), -1.0);
  Emit(a, cores, Relation::kLessEqual, 0.0, "cable.cores", id);

  Expr ab = Var(c.allow_ab[cable]);
  ab.Add(CableProp(a, cable, CableProperty::kAllowAB), -1.0);
  Emit(a, ab, Relation::kLessEqual, 0.0, "cable.allow_ab", id);
  Expr ba = Var(c.allow_ba[cable]);
  ba.Add(CableProp(a, cable, CableProperty::kAllowBA), -1.0);
  Emit(a, ba, Relation::kLessEqual, 0.0, "cable.allow_ba", id);

  // allowAB + allowBA = 2 * exists - uni
  Expr direction = Var(c.allow_ab[cable]);
  direction.Add(c.allow_ba[cable], 1.0);
  direction.Add(Existence(a, ElementKind::kCable, cable), -2.0);
  direction.Add(CableProp(a, cable, CableProperty::kUnidirectional), 1.0);
  Emit(a, direction, Relation::kEqual, 0.0, "cable.direction", id);

  Expr lim_ab = Var(c.use_ab[cable]);
  lim_ab.Add(c.allow_ab[cable], -max_cores);
  Emit(a, lim_ab, Relation::kLessEqual, 0.0, "cable.use_ab_limit", id);
  Expr lim_ba = Var(c.use_ba[cable]);
  lim_ba.Add(c.allow_ba[cable], -max_cores);
  Emit(a, lim_ba, Relation::kLessEqual, 0.0, "cable.use_ba_limit", id);
}

void EncodeRouting(BuildArtifacts& a, int signal) {
  const MaxTopology& topo = a.topology;
  const TypeTable& tt = topo.type_table;
  const ColumnIndex& c = a.columns;
  const int source = topo.signal_source[signal];
  const int target = topo.signal_target[signal];
  for (int k : {source, target}) {
    for (size_t t = 0; t < tt.device_types.size(); ++t) {
      if (tt.device_types[t].translucent && topo.devices[k].allowed_types[t]) {
        throw BuildError("signal '" + topo.signals[signal].id +
                         "': endpoint '" + topo.devices[k].id +
                         "' admits a translucent type");
      }
    }
  }
  const std::string sid = "S" + topo.signals[signal].id;
  Emit(a, Var(c.does_tx[signal][source]), Relation::kEqual, 1.0, "route.source_tx", sid);
  Emit(a, Var(c.does_rx[signal][source]), Relation::kEqual, 0.0, "route.source_rx", sid);
  Emit(a, Var(c.does_tx[signal][target]), Relation::kEqual, 0.0, "route.target_tx", sid);
  Emit(a, Var(c.does_rx[signal][target]), Relation::kEqual, 1.0, "route.target_rx", sid);

  const int nd = static_cast<int>(topo.devices.size());
  for (int k = 0; k < nd; ++k) {
    const std::string element = SignalElement(topo, signal, "D" + topo.devices[k].id);
    if (k != source && k != target) {
      Expr pass = Var(c.does_tx[signal][k]);
      pass.Add(c.does_rx[signal][k], -1.0);
      Emit(a, pass, Relation::kEqual, 0.0, "route.intermediate", element);
    }
    // Transmitting: AB on cables leaving k as A, BA on cables ending at k.
    Expr out = Var(c.does_tx[signal][k]);
    for (int j : topo.CablesStartingAt(k)) out.Add(c.on_ab[signal][j], -1.0);
    for (int j : topo.CablesEndingAt(k)) out.Add(c.on_ba[signal][j], -1.0);
    Emit(a, out, Relation::kEqual, 0.0, "route.tx_coupling", element);
    Expr in = Var(c.does_rx[signal][k]);
    for (int j : topo.CablesStartingAt(k)) in.Add(c.on_ba[signal][j], -1.0);
    for (int j : topo.CablesEndingAt(k)) in.Add(c.on_ab[signal][j], -1.0);
    Emit(a, in, Relation::kEqual, 0.0, "route.rx_coupling", element);
  }
}

void EncodeSignalCoreCoupling(BuildArtifacts& a, int cable) {
  const ColumnIndex& c = a.columns;
  const std::string& id = a.topology.cables[cable].id;
  Expr ab = Var(c.use_ab[cable]);
  Expr ba = Var(c.use_ba[cable]);
  for (size_t i = 0; i < a.topology.signals.size(); ++i) {
    ab.Add(c.on_ab[i][cable], -1.0);
    ba.Add(c.on_ba[i][cable], -1.0);
  }
  Emit(a, ab, Relation::kEqual, 0.0, "route.core_count_ab", id);
  Emit(a, ba, Relation::kEqual, 0.0, "route.core_count_ba", id);
}

void EncodeCableAttenuation(BuildArtifacts& a, int signal, int cable) {
  const MaxTopology& topo = a.topology;
  const ColumnIndex& c = a.columns;
  const std::string element = SignalElement(topo, signal, "F" + topo.cables[cable].id);
  const Expr delta = CableProp(a, cable, CableProperty::kDelta);
  const int dev_a = topo.cable_a[cable];
  const int dev_b = topo.cable_b[cable];

  // On: power at the far end = sender Tx + cable attenuation.
  Expr target_ab = Var(c.tx[signal][dev_a]);
  target_ab.Add(delta);
  BindWhenOn(a, Var(c.power_ab[signal][cable]), target_ab,
             Var(c.on_ab[signal][cable]), "power.cable_ab_on", element);
  BindWhenOff(a, Var(c.power_ab[signal][cable]), Expr(),
              Var(c.on_ab[signal][cable]), "power.cable_ab_off", element);

  Expr target_ba = Var(c.tx[signal][dev_b]);
  target_ba.Add(delta);
  BindWhenOn(a, Var(c.power_ba[signal][cable]), target_ba,
             Var(c.on_ba[signal][cable]), "power.cable_ba_on", element);
  BindWhenOff(a, Var(c.power_ba[signal][cable]), Expr(),
              Var(c.on_ba[signal][cable]), "power.cable_ba_off", element);
}

void EncodeDeviceAttenuation(BuildArtifacts& a, int signal, int device) {
  const MaxTopology& topo = a.topology;
  const ColumnIndex& c = a.columns;
  const std::string element = SignalElement(topo, signal, "D" + topo.devices[device].id);
  const double m = a.power.p_lim;
  const int rx = c.rx[signal][device];
  const int opaque_rx = c.opaque_rx[signal][device];
  const int does_rx = c.does_rx[signal][device];
  const Expr trans = DeviceProp(a, device, DeviceProperty::kTranslucent);

  // Received power: sum of far-end powers of the cables pointing here.
  Expr sum = Var(rx);
  for (int j : topo.CablesEndingAt(device)) sum.Add(c.power_ab[signal][j], -1.0);
  for (int j : topo.CablesStartingAt(device)) sum.Add(c.power_ba[signal][j], -1.0);
  Emit(a, sum, Relation::kEqual, 0.0, "power.rx_sum", element);

  // opaqueRx = doesRx AND NOT trans
  Expr and1 = Var(opaque_rx);
  and1.Add(does_rx, -1.0);
  Emit(a, and1, Relation::kLessEqual, 0.0, "power.opaque_rx_and", element);
  Expr and2 = Var(opaque_rx);
  and2.Add(trans);
  Emit(a, and2, Relation::kLessEqual, 1.0, "power.opaque_rx_and", element);
  Expr and3 = Var(opaque_rx);
  and3.Add(trans);
  and3.Add(does_rx, -1.0);
  Emit(a, and3, Relation::kGreaterEqual, 0.0, "power.opaque_rx_and", element);

  // Receiver dynamic range, enforced only for opaque receivers.
  Expr over = Var(rx);
  over.Add(DeviceProp(a, device, DeviceProperty::kRxMax), -1.0);
  over.Add(opaque_rx, m);
  Emit(a, over, Relation::kLessEqual, m, "power.rx_max", element);
  Expr under = Var(rx);
  under.terms[0].coefficient = -1.0;
  under.Add(DeviceProp(a, device, DeviceProperty::kRxMin));
  under.Add(opaque_rx, m);
  Emit(a, under, Relation::kLessEqual, m, "power.rx_min", element);

  // Available output: Rx + delta through a translucent device, the chosen
  // transmit power otherwise.
  Expr passthrough = Var(rx);
  passthrough.Add(DeviceProp(a, device, DeviceProperty::kDelta));
  BindWhenOn(a, Var(c.tx_avail[signal][device]), passthrough, trans,
             "power.tx_avail_translucent", element);
  BindWhenOff(a, Var(c.tx_avail[signal][device]), Var(c.transmit[signal][device]),
              trans, "power.tx_avail_opaque", element);

  Expr lo = Var(c.transmit[signal][device]);
  lo.Add(DeviceProp(a, device, DeviceProperty::kTxMin), -1.0);
  Emit(a, lo, Relation::kGreaterEqual, 0.0, "power.transmit_min", element);
  Expr hi = Var(c.transmit[signal][device]);
  hi.Add(DeviceProp(a, device, DeviceProperty::kTxMax), -1.0);
  Emit(a, hi, Relation::kLessEqual, 0.0, "power.transmit_max", element);

  // Used output: TxAvail while transmitting, 0 otherwise.
  BindWhenOn(a, Var(c.tx[signal][device]), Var(c.tx_avail[signal][device]),
             Var(c.does_tx[signal][device]), "power.tx_on", element);
  BindWhenOff(a, Var(c.tx[signal][device]), Expr(),
              Var(c.does_tx[signal][device]), "power.tx_off", element);
}

void EncodeObjective(BuildArtifacts& a) {
  const TypeTable& tt = a.topology.type_table;
  for (size_t k = 0; k < a.columns.device_type.size(); ++k) {
    for (size_t t = 0; t < tt.device_types.size(); ++t) {
      a.problem.SetObjective(a.columns.device_type[k][t], tt.device_types[t].cost);
    }
  }
  for (size_t j = 0; j < a.columns.cable_type.size(); ++j) {
    for (size_t t = 0; t < tt.cable_types.size(); ++t) {
      a.problem.SetObjective(a.columns.cable_type[j][t], tt.cable_types[t].cost);
    }
  }
  a.problem.SetSense(ObjectiveSense::kMinimize);
}

BuildArtifacts Build(const MaxTopology& topology) {
  BuildArtifacts a;
  a.topology = RestrictSignalEndpoints(topology);
  const MaxTopology& topo = a.topology;
  const int nd = static_cast<int>(topo.devices.size());
  const int nf = static_cast<int>(topo.cables.size());
  const int ns = static_cast<int>(topo.signals.size());
  // A network with fewer than two devices has no paths; the two-device bound
  // still covers every single-device power value.
  a.power = ComputePowerLimit(topo.type_table, std::max(nd, 2));

  RegisterVariables(a);
  for (int k = 0; k < nd; ++k) EncodeTypeAssignment(a, ElementKind::kDevice, k);
  for (int j = 0; j < nf; ++j) EncodeTypeAssignment(a, ElementKind::kCable, j);
  for (int k = 0; k < nd; ++k) EncodePortLimits(a, k);
  for (int j = 0; j < nf; ++j) EncodeDirectionAndCores(a, j);
  for (int i = 0; i < ns; ++i) EncodeRouting(a, i);
  for (int j = 0; j < nf; ++j) EncodeSignalCoreCoupling(a, j);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nf; ++j) EncodeCableAttenuation(a, i, j);
    for (int k = 0; k < nd; ++k) EncodeDeviceAttenuation(a, i, k);
  }
  EncodeObjective(a);
  return a;
}

void WriteTrace(const BuildArtifacts& a, std::ostream& out) {
  for (size_t r = 0; r < a.trace.size(); ++r) {
    out << r << '\t' << a.trace[r].tag << '\t' << a.trace[r].element << '\n';
  }
}

}  // namespace mcftopo
