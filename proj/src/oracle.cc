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

// Brute-force optimizer. Enumerates one simple path per signal, then the
// types of every element that can matter. Elements outside that set are left
// out: with nonnegative costs, an unused optional cable or an isolated
// optional device never lowers the cost and never helps feasibility, and an
// unused mandatory cable is best given its cheapest admissible type.

#include <algorithm>
#include <limits>
#include <random>

#include "mcftopo/decode.h"

namespace mcftopo {

namespace {

struct Edge {
  int cable;
  Direction direction;
};

using Path = std::vector<Edge>;

void EnumeratePaths(const MaxTopology& max, int current, int target,
                    std::vector<bool>& seen, Path& prefix,
                    std::vector<Path>& out) {
  if (current == target) {
    out.push_back(prefix);
    return;
  }
  for (size_t j = 0; j < max.cables.size(); ++j) {
    int next = -1;
    Direction dir = Direction::kAB;
    if (max.cable_a[j] == current) {
      next = max.cable_b[j];
    } else if (max.cable_b[j] == current) {
      next = max.cable_a[j];
      dir = Direction::kBA;
    } else {
      continue;
    }
    if (seen[next]) continue;
    seen[next] = true;
    prefix.push_back({static_cast<int>(j), dir});
    EnumeratePaths(max, next, target, seen, prefix, out);
    prefix.pop_back();
    seen[next] = false;
  }
}

class Search {
 public:
  Search(const MaxTopology& max) : max_(max), tt_(max.type_table) {
    nd_ = static_cast<int>(max.devices.size());
    nf_ = static_cast<int>(max.cables.size());
    ns_ = static_cast<int>(max.signals.size());
    paths_.resize(ns_);
    for (int i = 0; i < ns_; ++i) {
      std::vector<bool> seen(nd_, false);
      seen[max.signal_source[i]] = true;
      Path prefix;
      EnumeratePaths(max, max.signal_source[i], max.signal_target[i], seen,
                     prefix, paths_[i]);
    }
    choice_.assign(ns_, 0);
    device_type_.assign(nd_, -1);
    cable_type_.assign(nf_, -1);
  }

  OracleResult Run() {
    ChoosePaths(0);
    return std::move(result_);
  }

 private:
  void ChoosePaths(int i) {
    if (i == ns_) {
      EvaluateRouting();
      return;
    }
    for (size_t p = 0; p < paths_[i].size(); ++p) {
      choice_[i] = static_cast<int>(p);
      ChoosePaths(i + 1);
    }
  }

  void EvaluateRouting() {
    load_ab_.assign(nf_, 0);
    load_ba_.assign(nf_, 0);
    visited_.assign(nd_, false);
    endpoint_.assign(nd_, false);
    for (int i = 0; i < ns_; ++i) {
      visited_[max_.signal_source[i]] = true;
      endpoint_[max_.signal_source[i]] = true;
      endpoint_[max_.signal_target[i]] = true;
      for (const Edge& e : paths_[i][choice_[i]]) {
        (e.direction == Direction::kAB ? load_ab_ : load_ba_)[e.cable] += 1;
        visited_[max_.cable_a[e.cable]] = true;
        visited_[max_.cable_b[e.cable]] = true;
      }
    }
    cable_order_.clear();
    for (int j = 0; j < nf_; ++j) {
      cable_type_[j] = -1;
      if (load_ab_[j] + load_ba_[j] > 0) {
        cable_order_.push_back(j);
      } else if (max_.cables[j].must_exist) {
        const int t = CheapestCableType(j);
        if (t < 0) return;
        cable_type_[j] = t;
      }
    }
    ChooseCables(0, FixedCableCost());
  }

  int CheapestCableType(int j) const {
    int best = -1;
    for (size_t t = 0; t < tt_.cable_types.size(); ++t) {
      if (!max_.cables[j].allowed_types[t]) continue;
      if (best < 0 || tt_.cable_types[t].cost < tt_.cable_types[best].cost) {
        best = static_cast<int>(t);
      }
    }
    return best;
  }

  double FixedCableCost() const {
    double cost = 0.0;
    for (int j = 0; j < nf_; ++j) {
      if (cable_type_[j] >= 0) cost += tt_.cable_types[cable_type_[j]].cost;
    }
    return cost;
  }

  bool CableTypeFits(int j, int t) const {
    const CableType& type = tt_.cable_types[t];
    if (!max_.cables[j].allowed_types[t]) return false;
    if (load_ab_[j] + load_ba_[j] > type.cores) return false;
    if (load_ab_[j] > 0 && !type.allow_ab) return false;
    if (load_ba_[j] > 0 && !type.allow_ba) return false;
    if (type.uni && load_ab_[j] > 0 && load_ba_[j] > 0) return false;
    return true;
  }

  void ChooseCables(size_t pos, double cost) {
    if (cost >= best_cost_) return;
    if (pos == cable_order_.size()) {
      relevant_.assign(nd_, false);
      for (int k = 0; k < nd_; ++k) {
        relevant_[k] = visited_[k] || max_.devices[k].must_exist;
      }
      for (int j = 0; j < nf_; ++j) {
        if (cable_type_[j] < 0) continue;
        relevant_[max_.cable_a[j]] = true;
        relevant_[max_.cable_b[j]] = true;
      }
      ChooseDevices(0, cost);
      return;
    }
    const int j = cable_order_[pos];
    for (size_t t = 0; t < tt_.cable_types.size(); ++t) {
      if (!CableTypeFits(j, static_cast<int>(t))) continue;
      cable_type_[j] = static_cast<int>(t);
      ChooseCables(pos + 1, cost + tt_.cable_types[t].cost);
    }
    cable_type_[j] = -1;
  }

  int Degree(int k) const {
    int d = 0;
    for (int j : max_.IncidentCables(k)) d += cable_type_[j] >= 0 ? 1 : 0;
    return d;
  }

  void ChooseDevices(int k, double cost) {
    if (cost >= best_cost_) return;
    if (k == nd_) {
      Leaf(cost);
      return;
    }
    if (!relevant_[k]) {
      device_type_[k] = -1;
      ChooseDevices(k + 1, cost);
      return;
    }
    const DeviceSlot& slot = max_.devices[k];
    const int degree = Degree(k);
    for (size_t t = 0; t < tt_.device_types.size(); ++t) {
      const DeviceType& type = tt_.device_types[t];
      if (!slot.allowed_types[t]) continue;
      if (endpoint_[k] && type.translucent) continue;
      if (type.ports < degree) continue;
      device_type_[k] = static_cast<int>(t);
      ChooseDevices(k + 1, cost + type.cost);
    }
    device_type_[k] = -1;
  }

  Topology Materialize() const {
    Topology topo;
    for (int k = 0; k < nd_; ++k) {
      DecodedDevice d{max_.devices[k].id, std::nullopt};
      if (device_type_[k] >= 0) d.type = device_type_[k];
      topo.devices.push_back(d);
    }
    for (int j = 0; j < nf_; ++j) {
      DecodedCable c;
      c.id = max_.cables[j].id;
      c.endpoint_a = max_.cables[j].endpoint_a;
      c.endpoint_b = max_.cables[j].endpoint_b;
      if (cable_type_[j] >= 0) c.type = cable_type_[j];
      c.use_ab = load_ab_[j];
      c.use_ba = load_ba_[j];
      topo.cables.push_back(c);
    }
    for (int i = 0; i < ns_; ++i) {
      SignalRoute route;
      route.signal = max_.signals[i].id;
      for (const Edge& e : paths_[i][choice_[i]]) {
        route.edges.push_back({max_.cables[e.cable].id, e.direction});
      }
      topo.routes.push_back(std::move(route));
    }
    return topo;
  }

  void Leaf(double cost) {
    ++result_.candidates;
    Topology topo = Materialize();
    // The audit picks the lowest sufficient transmit power per segment, which
    // is feasible whenever any admissible power is.
    if (!Audit(topo, max_).passes()) return;
    for (auto& route : topo.routes) {
      const PowerTrace trace = TracePower(topo, max_, route.signal);
      for (const TracePoint& p : trace.points) {
        if (p.step == TraceStep::kTransmit) route.transmit.push_back({p.element, p.power});
      }
    }
    topo.objective_value = cost;
    best_cost_ = cost;
    result_.feasible = true;
    result_.objective_value = cost;
    result_.topology = std::move(topo);
  }

  const MaxTopology& max_;
  const TypeTable& tt_;
  int nd_ = 0, nf_ = 0, ns_ = 0;
  std::vector<std::vector<Path>> paths_;
  std::vector<int> choice_;
  std::vector<int> load_ab_, load_ba_;
  std::vector<bool> visited_, endpoint_, relevant_;
  std::vector<int> cable_order_;
  std::vector<int> device_type_, cable_type_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  OracleResult result_;
};

}  // namespace

OracleResult ExhaustiveOracle(const MaxTopology& max, const OracleLimits& limits) {
  const TypeTable& tt = max.type_table;
  if (static_cast<int>(max.devices.size()) > limits.devices ||
      static_cast<int>(max.cables.size()) > limits.cables ||
      static_cast<int>(max.signals.size()) > limits.signals ||
      static_cast<int>(tt.device_types.size()) > limits.types ||
      static_cast<int>(tt.cable_types.size()) > limits.types) {
    throw OracleLimitError("instance exceeds the enumeration limits");
  }
  for (size_t i = 0; i < max.signals.size(); ++i) {
    for (int k : {max.signal_source[i], max.signal_target[i]}) {
      const auto& fixed = max.devices[k].fixed_type;
      if (fixed && tt.device_types[*fixed].translucent) return {};
    }
  }
  return Search(max).Run();
}

Scenario RandomMicroScenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  auto chance = [&rng](double p) { return std::bernoulli_distribution(p)(rng); };
  auto pick = [&](std::initializer_list<double> options) {
    std::vector<double> v(options);
    return v[uniform(0, static_cast<int>(v.size()) - 1)];
  };

  Scenario s;
  s.name = "micro-" + std::to_string(seed);
  const int n_dtypes = uniform(1, 3);
  for (int t = 0; t < n_dtypes; ++t) {
    DeviceType d;
    d.name = "d" + std::to_string(t);
    d.cost = uniform(1, 100);
    d.translucent = t > 0 && chance(0.5);
    d.ports = d.translucent ? uniform(2, 3) : uniform(1, 4);
    if (d.translucent) {
      d.delta = pick({-0.5, 0.0, -2.0});
    } else {
      d.rx_min = pick({-14.0, -12.0, -8.0});
      d.rx_max = pick({0.5, 0.0, -2.0});
      d.tx_min = pick({-5.0, -3.0});
      d.tx_max = pick({0.0, -1.0});
    }
    s.type_table.device_types.push_back(d);
  }
  const int n_ctypes = uniform(1, 3);
  for (int t = 0; t < n_ctypes; ++t) {
    CableType c;
    c.name = "c" + std::to_string(t);
    c.cores = uniform(1, 3);
    c.delta = pick({-15.0, -2.0, -0.5, 0.0});
    c.cost = uniform(1, 100);
    switch (uniform(0, 3)) {
      case 0: c.uni = false; c.allow_ab = c.allow_ba = true; break;
      case 1: c.uni = true; c.allow_ab = c.allow_ba = true; break;
      case 2: c.uni = true; c.allow_ab = true; c.allow_ba = false; break;
      default: c.uni = true; c.allow_ab = false; c.allow_ba = true; break;
    }
    s.type_table.cable_types.push_back(c);
  }

  const int nd = uniform(2, 4);
  for (int k = 0; k < nd; ++k) {
    DeviceSlot d;
    d.id = std::to_string(k);
    d.allowed_types.assign(n_dtypes, true);
    for (int t = 1; t < n_dtypes; ++t) {
      if (chance(0.15)) d.allowed_types[t] = false;
    }
    d.must_exist = chance(0.2);
    if (chance(0.1)) {
      d.fixed_type = 0;
      d.must_exist = true;
      d.allowed_types.assign(n_dtypes, false);
      d.allowed_types[0] = true;
    }
    s.devices.push_back(d);
  }
  if (nd <= 3 && chance(0.3)) {
    s.auto_complete = true;
  } else {
    const int nc = uniform(1, 5);
    for (int j = 0; j < nc; ++j) {
      const int a = uniform(0, nd - 1);
      int b = uniform(0, nd - 2);
      if (b >= a) ++b;
      CableSlot c;
      c.id = "f" + std::to_string(j);
      c.endpoint_a = std::to_string(a);
      c.endpoint_b = std::to_string(b);
      c.allowed_types.assign(n_ctypes, true);
      for (int t = 1; t < n_ctypes; ++t) {
        if (chance(0.15)) c.allowed_types[t] = false;
      }
      c.must_exist = chance(0.15);
      if (chance(0.1)) {
        const int t = uniform(0, n_ctypes - 1);
        c.fixed_type = t;
        c.must_exist = true;
        c.allowed_types.assign(n_ctypes, false);
        c.allowed_types[t] = true;
      }
      s.cables.push_back(c);
    }
  }
  const int ns = uniform(0, 3);
  for (int i = 0; i < ns; ++i) {
    const int a = uniform(0, nd - 1);
    int b = uniform(0, nd - 2);
    if (b >= a) ++b;
    s.signals.push_back({std::string(1, static_cast<char>('A' + i)),
                         std::to_string(a), std::to_string(b)});
  }
  return s;
}

}  // namespace mcftopo
