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

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "mirage/types.hpp"

namespace mirage {

/// Named gates known to the IR. Two-qubit matrices index the pair state as
/// bit(qubits[0]) + 2 * bit(qubits[1]); controlled gates control on qubits[0].
struct GateInfo {
  std::string_view name;
  int qubits;
  int params;
};

std::optional<GateInfo> lookup_gate(std::string_view name);

/// Fractional iSWAP gates are spelled "iswap_root<N>"; returns N or 0.
int iswap_root_index(std::string_view name);

Mat2 gate_matrix_1q(std::string_view name, std::span<const double> params);
Mat4 gate_matrix_2q(std::string_view name, std::span<const double> params);

}  // namespace mirage
