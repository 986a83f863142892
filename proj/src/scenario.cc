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

#include "mcftopo/scenario.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace mcftopo {

using nlohmann::json;

double DeviceType::Property(DeviceProperty p) const {
  switch (p) {
    case DeviceProperty::kPorts: return ports;
    case DeviceProperty::kDelta: return delta;
    case DeviceProperty::kRxMin: return rx_min;
    case DeviceProperty::kRxMax: return rx_max;
    case DeviceProperty::kTxMin: return tx_min;
    case DeviceProperty::kTxMax: return tx_max;
    case DeviceProperty::kTranslucent: return translucent ? 1.0 : 0.0;
    case DeviceProperty::kCost: return cost;
  }
  return 0.0;
}

double CableType::Property(CableProperty p) const {
  switch (p) {
    case CableProperty::kCores: return cores;
    case CableProperty::kDelta: return delta;
    case CableProperty::kCost: return cost;
    case CableProperty::kUnidirectional: return uni ? 1.0 : 0.0;
    case CableProperty::kAllowAB: return allow_ab ? 1.0 : 0.0;
    case CableProperty::kAllowBA: return allow_ba ? 1.0 : 0.0;
  }
  return 0.0;
}

int TypeTable::TypeCount(ElementKind kind) const {
  return kind == ElementKind::kDevice ? static_cast<int>(device_types.size())
                                      : static_cast<int>(cable_types.size());
}

int TypeTable::PropertyCount(ElementKind kind) const {
  return kind == ElementKind::kDevice ? kDevicePropertyCount
                                      : kCablePropertyCount;
}

double TypeTable::Entry(ElementKind kind, int property, int type) const {
  if (kind == ElementKind::kDevice) {
    return device_types.at(type).Property(
        static_cast<DeviceProperty>(property));
  }
  return cable_types.at(type).Property(static_cast<CableProperty>(property));
}

double TypeTable::MaxProperty(ElementKind kind, int property) const {
  const int n = TypeCount(kind);
  if (n == 0) return 0.0;
  double best = Entry(kind, property, 0);
  for (int t = 1; t < n; ++t) best = std::max(best, Entry(kind, property, t));
  return best;
}

double TypeTable::MinProperty(ElementKind kind, int property) const {
  const int n = TypeCount(kind);
  if (n == 0) return 0.0;
  double best = Entry(kind, property, 0);
  for (int t = 1; t < n; ++t) best = std::min(best, Entry(kind, property, t));
  return best;
}

std::optional<int> TypeTable::FindDeviceType(const std::string& name) const {
  for (size_t t = 0; t < device_types.size(); ++t) {
    if (device_types[t].name == name) return static_cast<int>(t);
  }
  return std::nullopt;
}

std::optional<int> TypeTable::FindCableType(const std::string& name) const {
  for (size_t t = 0; t < cable_types.size(); ++t) {
    if (cable_types[t].name == name) return static_cast<int>(t);
  }
  return std::nullopt;
}

int MaxTopology::DeviceIndex(const std::string& id) const {
  auto it = device_index_.find(id);
  return it == device_index_.end() ? -1 : it->second;
}

int MaxTopology::CableIndex(const std::string& id) const {
  auto it = cable_index_.find(id);
  return it == cable_index_.end() ? -1 : it->second;
}

int MaxTopology::SignalIndex(const std::string& id) const {
  auto it = signal_index_.find(id);
  return it == signal_index_.end() ? -1 : it->second;
}

std::vector<int> MaxTopology::IncidentCables(int device) const {
  std::vector<int> out = starting_at_[device];
  out.insert(out.end(), ending_at_[device].begin(), ending_at_[device].end());
  std::sort(out.begin(), out.end());
  return out;
}

void MaxTopology::Reindex() {
  device_index_.clear();
  cable_index_.clear();
  signal_index_.clear();
  for (size_t i = 0; i < devices.size(); ++i) device_index_[devices[i].id] = i;
  for (size_t i = 0; i < cables.size(); ++i) cable_index_[cables[i].id] = i;
  for (size_t i = 0; i < signals.size(); ++i) signal_index_[signals[i].id] = i;

  cable_a.assign(cables.size(), -1);
  cable_b.assign(cables.size(), -1);
  starting_at_.assign(devices.size(), {});
  ending_at_.assign(devices.size(), {});
  for (size_t j = 0; j < cables.size(); ++j) {
    cable_a[j] = DeviceIndex(cables[j].endpoint_a);
    cable_b[j] = DeviceIndex(cables[j].endpoint_b);
    if (cable_a[j] < 0 || cable_b[j] < 0) {
      throw ScenarioError(ScenarioError::Kind::kSemantic,
                          "cable '" + cables[j].id + "' has unknown endpoint");
    }
    starting_at_[cable_a[j]].push_back(static_cast<int>(j));
    ending_at_[cable_b[j]].push_back(static_cast<int>(j));
  }
  signal_source.assign(signals.size(), -1);
  signal_target.assign(signals.size(), -1);
  for (size_t i = 0; i < signals.size(); ++i) {
    signal_source[i] = DeviceIndex(signals[i].source);
    signal_target[i] = DeviceIndex(signals[i].target);
    if (signal_source[i] < 0 || signal_target[i] < 0) {
      throw ScenarioError(ScenarioError::Kind::kSemantic,
                          "signal '" + signals[i].id + "' has unknown endpoint");
    }
  }
}

bool IsLegalDirectionality(bool uni, bool allow_ab, bool allow_ba) {
  if (!allow_ab && !allow_ba) return false;
  if (!uni) return allow_ab && allow_ba;
  return true;
}

std::vector<TypeViolation> ValidateTypeTable(const TypeTable& table) {
  std::vector<TypeViolation> out;
  auto add = [&out](ElementKind kind, int type, std::string rule,
                    std::string detail) {
    out.push_back({kind, type, std::move(rule), std::move(detail)});
  };
  for (size_t t = 0; t < table.device_types.size(); ++t) {
    const DeviceType& d = table.device_types[t];
    const int ti = static_cast<int>(t);
    if (d.ports < 0) {
      add(ElementKind::kDevice, ti, "ports", d.name + ": negative port count");
    }
    if (d.cost < 0) {
      add(ElementKind::kDevice, ti, "cost", d.name + ": negative cost");
    }
    if (!d.translucent && d.delta != 0.0) {
      add(ElementKind::kDevice, ti, "opaque_delta",
          d.name + ": opaque type must have zero internal attenuation");
    }
    if (d.translucent && (d.rx_min != 0.0 || d.rx_max != 0.0 ||
                          d.tx_min != 0.0 || d.tx_max != 0.0)) {
      add(ElementKind::kDevice, ti, "translucent_power",
          d.name + ": translucent type must have zero Rx/Tx bounds");
    }
    if (d.rx_min > d.rx_max) {
      add(ElementKind::kDevice, ti, "rx_order", d.name + ": rx_min > rx_max");
    }
    if (d.tx_min > d.tx_max) {
      add(ElementKind::kDevice, ti, "tx_order", d.name + ": tx_min > tx_max");
    }
  }
  for (size_t t = 0; t < table.cable_types.size(); ++t) {
    const CableType& c = table.cable_types[t];
    const int ti = static_cast<int>(t);
    if (c.cores < 1) {
      add(ElementKind::kCable, ti, "cores", c.name + ": needs at least 1 core");
    }
    if (c.cost < 0) {
      add(ElementKind::kCable, ti, "cost", c.name + ": negative cost");
    }
    if (!IsLegalDirectionality(c.uni, c.allow_ab, c.allow_ba)) {
      add(ElementKind::kCable, ti, "directionality",
          c.name + ": illegal (uni, allow_ab, allow_ba) combination");
    }
  }
  return out;
}

namespace {

[[noreturn]] void Semantic(const std::string& what) {
  throw ScenarioError(ScenarioError::Kind::kSemantic, what);
}

void CheckSlotMask(const std::string& id, const std::vector<bool>& mask,
                   size_t type_count, const std::optional<int>& fixed,
                   bool must_exist) {
  if (mask.size() != type_count) {
    Semantic("slot '" + id + "': type mask size mismatch");
  }
  if (fixed) {
    if (*fixed < 0 || static_cast<size_t>(*fixed) >= type_count) {
      Semantic("slot '" + id + "': fixed type out of range");
    }
    if (!must_exist) Semantic("slot '" + id + "': fixed type requires existence");
    for (size_t t = 0; t < mask.size(); ++t) {
      if (mask[t] != (static_cast<int>(t) == *fixed)) {
        Semantic("slot '" + id + "': mask must select exactly the fixed type");
      }
    }
  }
}

}  // namespace

void ValidateScenario(const Scenario& s) {
  auto violations = ValidateTypeTable(s.type_table);
  if (!violations.empty()) Semantic(violations.front().detail);

  std::set<std::string> device_ids;
  for (const DeviceSlot& d : s.devices) {
    if (d.id.empty()) Semantic("device with empty id");
    if (!device_ids.insert(d.id).second) Semantic("duplicate device id '" + d.id + "'");
    CheckSlotMask(d.id, d.allowed_types, s.type_table.device_types.size(),
                  d.fixed_type, d.must_exist);
  }
  std::set<std::string> cable_ids;
  for (const CableSlot& c : s.cables) {
    if (c.id.empty()) Semantic("cable with empty id");
    if (!cable_ids.insert(c.id).second) Semantic("duplicate cable id '" + c.id + "'");
    if (!device_ids.count(c.endpoint_a) || !device_ids.count(c.endpoint_b)) {
      Semantic("cable '" + c.id + "' references an unknown device");
    }
    if (c.endpoint_a == c.endpoint_b) {
      Semantic("cable '" + c.id + "' connects device '" + c.endpoint_a +
               "' to itself");
    }
    CheckSlotMask(c.id, c.allowed_types, s.type_table.cable_types.size(),
                  c.fixed_type, c.must_exist);
  }
  std::set<std::string> signal_ids;
  for (const Signal& sig : s.signals) {
    if (sig.id.empty()) Semantic("signal with empty id");
    if (!signal_ids.insert(sig.id).second) Semantic("duplicate signal id '" + sig.id + "'");
    if (!device_ids.count(sig.source) || !device_ids.count(sig.target)) {
      Semantic("signal '" + sig.id + "' references an unknown device");
    }
    if (sig.source == sig.target) {
      Semantic("signal '" + sig.id + "' has identical source and target");
    }
  }
}

namespace {

template <typename T>
T Get(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->get<T>();
}

std::vector<bool> ReadMask(const json& j, const std::string& id,
                           size_t type_count,
                           const std::optional<int>& fixed,
                           const std::function<std::optional<int>(
                               const std::string&)>& find) {
  std::vector<bool> mask(type_count, true);
  if (auto it = j.find("allowed_types"); it != j.end()) {
    std::fill(mask.begin(), mask.end(), false);
    for (const auto& name : *it) {
      auto t = find(name.get<std::string>());
      if (!t) Semantic("slot '" + id + "': unknown type '" + name.get<std::string>() + "'");
      mask[*t] = true;
    }
  }
  if (auto it = j.find("forbidden_types"); it != j.end()) {
    for (const auto& name : *it) {
      auto t = find(name.get<std::string>());
      if (!t) Semantic("slot '" + id + "': unknown type '" + name.get<std::string>() + "'");
      mask[*t] = false;
    }
  }
  if (fixed) {
    if (!mask[*fixed]) {
      Semantic("slot '" + id + "': mask excludes the fixed type");
    }
    std::fill(mask.begin(), mask.end(), false);
    mask[*fixed] = true;
  }
  return mask;
}

Scenario FromJson(const json& root) {
  Scenario s;
  s.name = Get<std::string>(root, "name", "");
  for (const auto& jt : root.at("device_types")) {
    DeviceType d;
    d.name = jt.at("name").get<std::string>();
    d.ports = Get<int>(jt, "ports", 0);
    d.delta = Get<double>(jt, "delta", 0.0);
    d.rx_min = Get<double>(jt, "rx_min", 0.0);
    d.rx_max = Get<double>(jt, "rx_max", 0.0);
    d.tx_min = Get<double>(jt, "tx_min", 0.0);
    d.tx_max = Get<double>(jt, "tx_max", 0.0);
    d.translucent = Get<bool>(jt, "translucent", false);
    d.cost = Get<double>(jt, "cost", 0.0);
    s.type_table.device_types.push_back(std::move(d));
  }
  for (const auto& jt : root.at("cable_types")) {
    CableType c;
    c.name = jt.at("name").get<std::string>();
    c.cores = Get<int>(jt, "cores", 1);
    c.delta = Get<double>(jt, "delta", 0.0);
    c.cost = Get<double>(jt, "cost", 0.0);
    c.uni = Get<bool>(jt, "uni", false);
    c.allow_ab = Get<bool>(jt, "allow_ab", true);
    c.allow_ba = Get<bool>(jt, "allow_ba", true);
    s.type_table.cable_types.push_back(std::move(c));
  }
  const TypeTable& tt = s.type_table;
  auto find_device = [&tt](const std::string& n) { return tt.FindDeviceType(n); };
  auto find_cable = [&tt](const std::string& n) { return tt.FindCableType(n); };

  for (const auto& jd : root.at("devices")) {
    DeviceSlot d;
    d.id = jd.at("id").get<std::string>();
    if (auto it = jd.find("fixed_type"); it != jd.end() && !it->is_null()) {
      d.fixed_type = find_device(it->get<std::string>());
      if (!d.fixed_type) Semantic("device '" + d.id + "': unknown type '" + it->get<std::string>() + "'");
    }
    d.must_exist = Get<bool>(jd, "must_exist", d.fixed_type.has_value());
    d.allowed_types = ReadMask(jd, d.id, tt.device_types.size(), d.fixed_type,
                               find_device);
    s.devices.push_back(std::move(d));
  }
  if (auto it = root.find("cables"); it != root.end()) {
    for (const auto& jc : *it) {
      CableSlot c;
      c.id = jc.at("id").get<std::string>();
      c.endpoint_a = jc.at("endpoint_a").get<std::string>();
      c.endpoint_b = jc.at("endpoint_b").get<std::string>();
      if (auto ft = jc.find("fixed_type"); ft != jc.end() && !ft->is_null()) {
        c.fixed_type = find_cable(ft->get<std::string>());
        if (!c.fixed_type) Semantic("cable '" + c.id + "': unknown type '" + ft->get<std::string>() + "'");
      }
      c.must_exist = Get<bool>(jc, "must_exist", c.fixed_type.has_value());
      c.allowed_types = ReadMask(jc, c.id, tt.cable_types.size(), c.fixed_type,
                                 find_cable);
      s.cables.push_back(std::move(c));
    }
  }
  if (auto it = root.find("signals"); it != root.end()) {
    for (const auto& js : *it) {
      Signal sig;
      sig.id = js.at("id").get<std::string>();
      sig.source = js.at("source").get<std::string>();
      sig.target = js.at("target").get<std::string>();
      s.signals.push_back(std::move(sig));
    }
  }
  if (auto it = root.find("options"); it != root.end()) {
    s.auto_complete = Get<bool>(*it, "auto_complete", false);
    const std::string objective = Get<std::string>(*it, "objective", "cost");
    if (objective != "cost") Semantic("unsupported objective '" + objective + "'");
  }
  return s;
}

}  // namespace

Scenario ParseScenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(ScenarioError::Kind::kParse, e.what());
  }
  Scenario s;
  try {
    s = FromJson(root);
  } catch (const json::exception& e) {
    throw ScenarioError(ScenarioError::Kind::kParse,
                        std::string("malformed scenario: ") + e.what());
  }
  ValidateScenario(s);
  return s;
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError(ScenarioError::Kind::kParse, "cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str());
}

std::string ScenarioToJson(const Scenario& s) {
  const TypeTable& tt = s.type_table;
  json root;
  root["name"] = s.name;
  root["device_types"] = json::array();
  for (const DeviceType& d : tt.device_types) {
    root["device_types"].push_back({{"name", d.name},
                                    {"ports", d.ports},
                                    {"delta", d.delta},
                                    {"rx_min", d.rx_min},
                                    {"rx_max", d.rx_max},
                                    {"tx_min", d.tx_min},
                                    {"tx_max", d.tx_max},
                                    {"translucent", d.translucent},
                                    {"cost", d.cost}});
  }
  root["cable_types"] = json::array();
  for (const CableType& c : tt.cable_types) {
    root["cable_types"].push_back({{"name", c.name},
                                   {"cores", c.cores},
                                   {"delta", c.delta},
                                   {"cost", c.cost},
                                   {"uni", c.uni},
                                   {"allow_ab", c.allow_ab},
                                   {"allow_ba", c.allow_ba}});
  }
  auto mask_names = [](const std::vector<bool>& mask, auto name_of) {
    json names = json::array();
    for (size_t t = 0; t < mask.size(); ++t) {
      if (mask[t]) names.push_back(name_of(t));
    }
    return names;
  };
  root["devices"] = json::array();
  for (const DeviceSlot& d : s.devices) {
    json jd = {{"id", d.id}, {"must_exist", d.must_exist}};
    if (d.fixed_type) jd["fixed_type"] = tt.device_types[*d.fixed_type].name;
    jd["allowed_types"] = mask_names(
        d.allowed_types, [&tt](size_t t) { return tt.device_types[t].name; });
    root["devices"].push_back(std::move(jd));
  }
  root["cables"] = json::array();
  for (const CableSlot& c : s.cables) {
    json jc = {{"id", c.id},
               {"endpoint_a", c.endpoint_a},
               {"endpoint_b", c.endpoint_b},
               {"must_exist", c.must_exist}};
    if (c.fixed_type) jc["fixed_type"] = tt.cable_types[*c.fixed_type].name;
    jc["allowed_types"] = mask_names(
        c.allowed_types, [&tt](size_t t) { return tt.cable_types[t].name; });
    root["cables"].push_back(std::move(jc));
  }
  root["signals"] = json::array();
  for (const Signal& sig : s.signals) {
    root["signals"].push_back(
        {{"id", sig.id}, {"source", sig.source}, {"target", sig.target}});
  }
  root["options"] = {{"auto_complete", s.auto_complete}, {"objective", "cost"}};
  return root.dump(2);
}

MaxTopology ExpandMaxTopology(const Scenario& s) {
  MaxTopology topo;
  topo.type_table = s.type_table;
  topo.devices = s.devices;
  topo.cables = s.cables;
  topo.signals = s.signals;
  topo.Reindex();
  if (s.auto_complete) {
    const size_t n = topo.devices.size();
    std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
    for (size_t j = 0; j < topo.cables.size(); ++j) {
      linked[topo.cable_a[j]][topo.cable_b[j]] = true;
      linked[topo.cable_b[j]][topo.cable_a[j]] = true;
    }
    std::set<std::string> used_ids;
    for (const CableSlot& c : topo.cables) used_ids.insert(c.id);
    const size_t cable_types = s.type_table.cable_types.size();
    for (size_t a = 0; a < n; ++a) {
      for (size_t b = a + 1; b < n; ++b) {
        if (linked[a][b]) continue;
        CableSlot c;
        c.id = topo.devices[a].id + "-" + topo.devices[b].id;
        while (used_ids.count(c.id)) c.id += "'";
        used_ids.insert(c.id);
        c.endpoint_a = topo.devices[a].id;
        c.endpoint_b = topo.devices[b].id;
        c.allowed_types.assign(cable_types, true);
        topo.cables.push_back(std::move(c));
      }
    }
    topo.Reindex();
  }
  return topo;
}

std::vector<double> ElementProperties(const TypeTable& table, ElementKind kind,
                                      std::span<const double> type_vector) {
  const int types = table.TypeCount(kind);
  const int props = table.PropertyCount(kind);
  if (static_cast<int>(type_vector.size()) != types) {
    throw std::invalid_argument("type vector length does not match type count");
  }
  std::vector<double> out(props, 0.0);
  for (int p = 0; p < props; ++p) {
    for (int t = 0; t < types; ++t) {
      if (type_vector[t] != 0.0) out[p] += table.Entry(kind, p, t) * type_vector[t];
    }
  }
  return out;
}

}  // namespace mcftopo
