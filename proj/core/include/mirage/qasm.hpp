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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mirage/basis.hpp"
#include "mirage/circuit.hpp"
#include "mirage/score.hpp"

namespace mirage {

struct QasmRegister {
  std::string name;
  int size = 0;
  /// First global index of the register.
  int offset = 0;
};

struct QasmStatement {
  enum class Kind { Gate, Barrier, Measure };
  Kind kind = Kind::Gate;
  std::string name;
  std::vector<double> params;
  /// Global qubit indices.
  std::vector<int> qubits;
  /// Payload of a `// @unitary` block.
  std::optional<Mat4> unitary;
  std::size_t line = 0;
};

/// Flattened OpenQASM 2 program: user gate definitions are already inlined
/// and register operands broadcast to single-qubit statements.
struct QasmProgram {
  std::vector<QasmRegister> qregs;
  std::vector<QasmRegister> cregs;
  std::vector<QasmStatement> statements;

  [[nodiscard]] int num_qubits() const;
};

QasmProgram parse_qasm(std::string_view text);
QasmProgram parse_qasm_file(const std::filesystem::path& path);

/// Strips barriers and measurements and unrolls 3Q gates.
CircuitDag lower(const QasmProgram& program);

struct SerializeOptions {
  /// Expand every 2Q node into basis applications and u3 layers.
  bool synth = false;
  /// Picks k per block when the node carries no cost annotation.
  const CostLookup* lookup = nullptr;
  OptimizerSettings settings{};
  /// Blocks below this synthesis fidelity raise OptimizerDiverged.
  double min_fidelity = 1.0 - 1e-9;
};

/// Without synth, 2Q unitary blocks are written as `// @unitary` comments
/// carrying the 16 complex entries; parse_qasm reads them back.
std::string serialize_qasm(const CircuitDag& dag, const BasisGateSpec& basis,
                           const SerializeOptions& options = {});

/// Name the serializer uses for a basis gate, e.g. "sqiswap".
std::string basis_gate_name(const BasisGateSpec& basis);

}  // namespace mirage
