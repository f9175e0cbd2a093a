// Copyright 2026 The MIRAGE Transpiler Authors
//
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

#pragma once

#include <vector>

#include "mirage/circuit.hpp"
#include "mirage/types.hpp"

namespace mirage {

inline constexpr int kMaxSimQubits = 10;

/// Dense unitary of the whole circuit. Qubit 0 is the least significant
/// bit of the basis-state index.
MatX simulate(const CircuitDag& dag);

/// Permutation matrix sending qubit i to qubit perm[i].
MatX permutation_matrix(const std::vector<int>& perm);

/// True iff P(perm) * u equals v up to one global phase, entrywise within
/// tol; the phase is fixed on v's largest-magnitude entry.
bool equivalent(const MatX& u, const MatX& v, const std::vector<int>& perm,
                double tol);

/// Copy of `dag` on `num_qubits` wires with qubit q renamed to map[q].
CircuitDag relabel(const CircuitDag& dag, const std::vector<int>& map, int num_qubits);

/// Checks a routed circuit against its logical source: the source placed by
/// the initial layout, followed by the permutation taking every virtual
/// qubit from its initial to its final physical position.
bool routing_equivalent(const CircuitDag& logical, const CircuitDag& routed,
                        const std::vector<int>& initial_v2p,
                        const std::vector<int>& final_v2p, double tol);

}  // namespace mirage
