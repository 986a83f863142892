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

// Domain model of an optical multi-core fiber network design problem: the
// device and cable type catalogues, the installation space (device slots and
// candidate cable routes) and the signals that have to be routed.

#ifndef MCFTOPO_SCENARIO_H_
#define MCFTOPO_SCENARIO_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcftopo {

// Device properties, in the row order of the device property matrix.
enum class DeviceProperty : int {
  kPorts = 0,
  kDelta,
  kRxMin,
  kRxMax,
  kTxMin,
  kTxMax,
  kTranslucent,
  kCost,
};
inline constexpr int kDevicePropertyCount = 8;

// Cable properties, in the row order of the cable property matrix.
enum class CableProperty : int {
  kCores = 0,
  kDelta,
  kCost,
  kUnidirectional,
  kAllowAB,
  kAllowBA,
};
inline constexpr int kCablePropertyCount = 6;

enum class ElementKind { kDevice, kCable };

struct DeviceType {
  std::string name;
  int ports = 0;
  double delta = 0.0;  // dB, internal attenuation (translucent only)
  double rx_min = 0.0;  // dBm
  double rx_max = 0.0;
  double tx_min = 0.0;
  double tx_max = 0.0;
  bool translucent = false;
  double cost = 0.0;

  double Property(DeviceProperty p) const;
};

struct CableType {
  std::string name;
  int cores = 1;
  double delta = 0.0;  // dB, end to end including connectors
  double cost = 0.0;
  bool uni = false;
  bool allow_ab = true;
  bool allow_ba = true;

  double Property(CableProperty p) const;
};

// Constant type catalogues. Column t of each property matrix is type t.
struct TypeTable {
  std::vector<DeviceType> device_types;
  std::vector<CableType> cable_types;

  int TypeCount(ElementKind kind) const;
  int PropertyCount(ElementKind kind) const;
  // Entry (property, type) of the property matrix of `kind`.
  double Entry(ElementKind kind, int property, int type) const;
  // Extrema of one property across all types of a class. Zero when the
  // class has no types.
  double MaxProperty(ElementKind kind, int property) const;
  double MinProperty(ElementKind kind, int property) const;

  std::optional<int> FindDeviceType(const std::string& name) const;
  std::optional<int> FindCableType(const std::string& name) const;
};

struct DeviceSlot {
  std::string id;
  std::optional<int> fixed_type;
  std::vector<bool> allowed_types;  // one entry per device type
  bool must_exist = false;
};

struct CableSlot {
  std::string id;
  std::string endpoint_a;
  std::string endpoint_b;
  std::optional<int> fixed_type;
  std::vector<bool> allowed_types;  // one entry per cable type
  bool must_exist = false;
};

struct Signal {
  std::string id;
  std::string source;
  std::string target;
};

enum class Objective { kCost };

struct Scenario {
  std::string name;
  TypeTable type_table;
  std::vector<DeviceSlot> devices;
  std::vector<CableSlot> cables;
  std::vector<Signal> signals;
  bool auto_complete = false;
  Objective objective = Objective::kCost;
};

// A scenario with every candidate cable materialized and all id references
// resolved to indices. Cable endpoints are device indices.
struct MaxTopology {
  TypeTable type_table;
  std::vector<DeviceSlot> devices;
  std::vector<CableSlot> cables;
  std::vector<Signal> signals;
  std::vector<int> cable_a;  // device index of endpoint A per cable
  std::vector<int> cable_b;
  std::vector<int> signal_source;  // device index per signal
  std::vector<int> signal_target;

  int DeviceIndex(const std::string& id) const;  // -1 when unknown
  int CableIndex(const std::string& id) const;
  int SignalIndex(const std::string& id) const;
  // Cables with the given device as endpoint A, resp. endpoint B.
  const std::vector<int>& CablesStartingAt(int device) const {
    return starting_at_[device];
  }
  const std::vector<int>& CablesEndingAt(int device) const {
    return ending_at_[device];
  }
  // All cables touching the device, in cable order.
  std::vector<int> IncidentCables(int device) const;

  // Rebuilds the index maps; call after editing the slot lists.
  void Reindex();

 private:
  std::unordered_map<std::string, int> device_index_;
  std::unordered_map<std::string, int> cable_index_;
  std::unordered_map<std::string, int> signal_index_;
  std::vector<std::vector<int>> starting_at_;
  std::vector<std::vector<int>> ending_at_;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Kind { kParse, kSemantic };
  ScenarioError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct TypeViolation {
  ElementKind kind;
  int type = 0;
  std::string rule;  // "opaque_delta", "translucent_power", "rx_order", ...
  std::string detail;
};

// Returns every broken consistency rule of the type catalogues. Empty iff
// all device and cable types are consistent.
std::vector<TypeViolation> ValidateTypeTable(const TypeTable& table);

// True for the four legal (uni, allow_ab, allow_ba) combinations.
bool IsLegalDirectionality(bool uni, bool allow_ab, bool allow_ba);

// Checks ids, references, masks and the type table. Throws
// ScenarioError(kSemantic) on the first problem found.
void ValidateScenario(const Scenario& scenario);

Scenario ParseScenario(const std::string& text);
Scenario LoadScenario(const std::string& path);
std::string ScenarioToJson(const Scenario& scenario);

// Adds one candidate cable for each unordered device pair that has none when
// `auto_complete` is set. Generated slots take the earlier declared device as
// endpoint A and are appended after the declared ones in pair order.
MaxTopology ExpandMaxTopology(const Scenario& scenario);

// Property matrix times type vector. A zero type vector yields all zeros.
std::vector<double> ElementProperties(const TypeTable& table, ElementKind kind,
                                      std::span<const double> type_vector);

}  // namespace mcftopo

#endif  // MCFTOPO_SCENARIO_H_
