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

#ifndef MCFTOPO_TESTS_TEST_SUPPORT_H_
#define MCFTOPO_TESTS_TEST_SUPPORT_H_

#include <map>
#include <string>
#include <vector>

#include "mcftopo/builder.h"
#include "mcftopo/decode.h"
#include "mcftopo/milp.h"
#include "mcftopo/pipeline.h"
#include "mcftopo/scenario.h"
#include "mcftopo/solver.h"

namespace mcftopo::testing {

std::string CorpusPath(const std::string& file);
Scenario LoadCorpus(const std::string& file);

// Type catalogue of the two validation models: opaque/translucent switches
// and the three cable types (1-core -15 dB, 2-core and 3-core -2 dB).
// `model_a` swaps in the unidirectional 2-core cable of the first model.
TypeTable SwitchTypes(bool model_a = false);

// Scenario from a compact description. Cables are "a-b" pairs, signals
// "id:src>dst".
Scenario MakeScenario(const TypeTable& types, int devices,
                      const std::vector<std::string>& cables,
                      const std::vector<std::string>& signals);

bool HighsAvailable();

// Reference-backend optimum of a scenario.
OptimizeResult OptimizeReference(const Scenario& scenario, double time_limit = 120);

// Rows whose trace tag is in `tags` and whose element equals `element`.
std::vector<int> TaggedRows(const BuildArtifacts& a, const std::vector<std::string>& tags,
                            const std::string& element);

// Whether the given rows admit a point after pinning columns by name. Columns
// not pinned keep their bounds and kinds. Solved exactly with the reference
// backend.
bool RowsFeasible(const BuildArtifacts& a, const std::vector<int>& rows,
                  const std::map<std::string, double>& pins);

// Column values of an optimal point of the rows under the pins, or empty when
// infeasible; `probe` is minimized then maximized, returning {min, max}.
std::vector<double> RowsRange(const BuildArtifacts& a, const std::vector<int>& rows,
                              const std::map<std::string, double>& pins,
                              const std::string& probe);

}  // namespace mcftopo::testing

#endif  // MCFTOPO_TESTS_TEST_SUPPORT_H_
