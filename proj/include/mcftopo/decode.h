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

// From solver output back to a network: decoding, an audit that re-derives
// every rule with its own arithmetic, signal power traces and a brute-force
// reference optimizer for tiny instances.

#ifndef MCFTOPO_DECODE_H_
#define MCFTOPO_DECODE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcftopo/builder.h"
#include "mcftopo/scenario.h"

namespace mcftopo {

enum class Direction { kAB, kBA };

struct DecodedDevice {
  std::string id;
  std::optional<int> type;  // absent when the slot is unused
};

struct DecodedCable {
  std::string id;
  std::string endpoint_a;
  std::string endpoint_b;
  std::optional<int> type;
  int use_ab = 0;
  int use_ba = 0;
};

struct PathEdge {
  std::string cable;
  Direction direction = Direction::kAB;
};

struct TransmitPower {
  std::string device;
  double power = 0.0;  // dBm
};

struct SignalRoute {
  std::string signal;
  std::vector<PathEdge> edges;
  // Power chosen by each opaque transmitter on the path, in path order.
  // May be empty; the audit then picks the most favourable admissible value.
  std::vector<TransmitPower> transmit;
};

struct Topology {
  std::vector<DecodedDevice> devices;  // slot order of the max topology
  std::vector<DecodedCable> cables;
  std::vector<SignalRoute> routes;  // signal order
  double objective_value = 0.0;

  const DecodedDevice* FindDevice(const std::string& id) const;
  const DecodedCable* FindCable(const std::string& id) const;
  const SignalRoute* FindRoute(const std::string& signal) const;
  int CountDevices(const TypeTable& table, bool translucent) const;
  int CountCables() const;
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& signal, const std::string& what)
      : std::runtime_error(what), signal_(signal) {}
  const std::string& signal() const { return signal_; }

 private:
  std::string signal_;
};

// Rounds integral columns (each must lie within 1e-6 of an integer) and
// follows the direction indicators of every signal from its source. Throws
// DecodeError on fractional values or a broken path. Indicators that are set
// but not reachable from the source (detached cycles) are ignored here; see
// RemoveDetachedCycles.
Topology Decode(std::span<const double> values, const BuildArtifacts& artifacts);

// Clears direction indicators that are not on the source-to-target path of
// their signal and repairs the dependent integral columns (doesRx, doesTx,
// opaqueRx, core counts). Such cycles carry no traffic and cost nothing, so
// the objective is unchanged; the continuous columns must be re-solved
// afterwards. Returns the number of indicators cleared.
int RemoveDetachedCycles(std::vector<double>& values,
                         const BuildArtifacts& artifacts);

struct Violation {
  std::string rule;  // mask, existence, ports, cores, direction, path,
                     // endpoint, link_budget
  std::string element;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool passes() const { return violations.empty(); }
};

// Checks a topology against the max topology without any solver data.
ValidationReport Audit(const Topology& topology, const MaxTopology& max);

enum class TraceStep { kTransmit, kCable, kDevice };

struct TracePoint {
  TraceStep step = TraceStep::kTransmit;
  std::string element;  // device or cable id
  double power = 0.0;   // dBm after the step
};

struct PowerTrace {
  std::string signal;
  std::vector<TracePoint> points;
};

// Piecewise power curve of one routed signal: transmit power at the source,
// then one point per cable and per translucent device, with a new transmit
// point at each opaque device on the way. Throws DecodeError when the signal
// has no route.
PowerTrace TracePower(const Topology& topology, const MaxTopology& max,
                      const std::string& signal);

struct OracleLimits {
  int devices = 5;
  int cables = 5;
  int signals = 3;
  int types = 3;
};

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  bool feasible = false;
  Topology topology;
  double objective_value = 0.0;
  long candidates = 0;  // complete assignments audited
};

// Minimum-cost topology by enumeration of simple paths, directions and type
// assignments. Throws OracleLimitError outside `limits`.
OracleResult ExhaustiveOracle(const MaxTopology& max,
                              const OracleLimits& limits = {});

// Small random scenario inside the default oracle limits.
Scenario RandomMicroScenario(std::uint64_t seed);

}  // namespace mcftopo

#endif  // MCFTOPO_DECODE_H_
