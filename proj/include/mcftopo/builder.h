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

// Compiles a maximum topology into a MilpProblem. Each constraint family has
// its own encoder; every emitted row carries a trace tag naming the family
// and the element it was generated for.
//
// Power bookkeeping uses dB/dBm throughout so attenuation is additive. All
// conditional power relations are Big-M rows with the network power bound
// P_lim as M:
//   quantity must equal an expression when indicator v = 1:
//       |quantity - expression| <= P_lim * (1 - v)
//   quantity must vanish when indicator v = 0:
//       |quantity| <= P_lim * v
// A dormant signal therefore has power 0 on every element it does not use.
// Translucent output "0 dBm" when idle is a sentinel for "no light", not
// 1 mW.

#ifndef MCFTOPO_BUILDER_H_
#define MCFTOPO_BUILDER_H_

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcftopo/milp.h"
#include "mcftopo/scenario.h"

namespace mcftopo {

struct PowerLimit {
  double p_lim = 0.0;
  double p_tx = 0.0;         // largest |transmit bound| over device types
  double p_rx = 0.0;         // largest |receive bound| over device types
  double p_delta_dev = 0.0;  // largest |internal attenuation| over devices
  double p_delta_fib = 0.0;  // largest |attenuation| over cable types
};

class BuildError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worst-case absolute power over any simple path of a fully connected network
// with `device_count` devices. Throws BuildError when device_count < 2.
PowerLimit ComputePowerLimit(const TypeTable& table, int device_count);

// Column indices of every semantic variable, laid out for direct lookup.
// Per-signal tables are indexed [signal][element].
struct ColumnIndex {
  std::vector<std::vector<int>> device_type;  // [device][type]
  std::vector<std::vector<int>> cable_type;   // [cable][type]
  std::vector<int> use_ab, use_ba;            // integer, per cable
  std::vector<int> allow_ab, allow_ba;        // binary, per cable
  std::vector<std::vector<int>> on_ab, on_ba;  // binary, [signal][cable]
  std::vector<std::vector<int>> does_rx, does_tx;  // binary, [signal][device]
  std::vector<std::vector<int>> opaque_rx;         // binary, [signal][device]
  std::vector<std::vector<int>> rx, transmit, tx_avail, tx;  // continuous
  std::vector<std::vector<int>> power_ab, power_ba;  // continuous [signal][cable]
};

struct RowTrace {
  std::string tag;      // constraint family, e.g. "cable.cores"
  std::string element;  // slot or signal/slot id the row was emitted for
};

struct BuildArtifacts {
  MilpProblem problem;
  VariableRegistry registry;
  ColumnIndex columns;
  std::vector<RowTrace> trace;  // one entry per row
  PowerLimit power;
  // The topology the problem was built from, with endpoint masks narrowed to
  // opaque device types.
  MaxTopology topology;
};

// Low-level entry points. `RegisterVariables` must run first; the encoders
// append rows for one element each and may be called in any order.
void RegisterVariables(BuildArtifacts& artifacts);
void EncodeTypeAssignment(BuildArtifacts& artifacts, ElementKind kind,
                          int slot);
void EncodePortLimits(BuildArtifacts& artifacts, int device);
void EncodeDirectionAndCores(BuildArtifacts& artifacts, int cable);
void EncodeRouting(BuildArtifacts& artifacts, int signal);
void EncodeSignalCoreCoupling(BuildArtifacts& artifacts, int cable);
void EncodeCableAttenuation(BuildArtifacts& artifacts, int signal, int cable);
void EncodeDeviceAttenuation(BuildArtifacts& artifacts, int signal,
                             int device);
void EncodeObjective(BuildArtifacts& artifacts);

// Restricts the device slots at signal endpoints to opaque types. Throws
// BuildError when a fixed endpoint type is translucent.
MaxTopology RestrictSignalEndpoints(MaxTopology topology);

// Full compilation of a maximum topology.
BuildArtifacts Build(const MaxTopology& topology);

// One line per row: "row_id<TAB>tag<TAB>element".
void WriteTrace(const BuildArtifacts& artifacts, std::ostream& out);

}  // namespace mcftopo

#endif  // MCFTOPO_BUILDER_H_
