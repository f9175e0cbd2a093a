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

#include "mirage/gates.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "mirage/ansatz.hpp"
#include "mirage/errors.hpp"
#include "mirage/weyl.hpp"

namespace mirage {

namespace {

constexpr std::array<GateInfo, 34> kGates{{
    {"id", 1, 0},     {"x", 1, 0},       {"y", 1, 0},     {"z", 1, 0},
    {"h", 1, 0},      {"s", 1, 0},       {"sdg", 1, 0},   {"t", 1, 0},
    {"tdg", 1, 0},    {"sx", 1, 0},      {"sxdg", 1, 0},  {"rx", 1, 1},
    {"ry", 1, 1},     {"rz", 1, 1},      {"p", 1, 1},     {"u1", 1, 1},
    {"u2", 1, 2},     {"u3", 1, 3},      {"u", 1, 3},     {"cx", 2, 0},
    {"cy", 2, 0},     {"cz", 2, 0},      {"ch", 2, 0},    {"cp", 2, 1},
    {"cu1", 2, 1},    {"crz", 2, 1},     {"rzz", 2, 1},   {"rxx", 2, 1},
    {"swap", 2, 0},   {"iswap", 2, 0},   {"sqiswap", 2, 0}, {"ccx", 3, 0},
    {"cswap", 3, 0},  {"unitary", 2, 0},
}};

const Complex kI{0.0, 1.0};

Mat2 diag2(Complex a, Complex b) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Mat4 controlled(const Mat2& g) {
  // Control is pair bit 0, target pair bit 1.
  Mat4 m = Mat4::Identity();
  m(1, 1) = g(0, 0);
  m(1, 3) = g(0, 1);
  m(3, 1) = g(1, 0);
  m(3, 3) = g(1, 1);
  return m;
}

void expect_params(std::string_view name, std::span<const double> params,
                   std::size_t n) {
  if (params.size() != n)
    throw Error(ErrorCode::UnsupportedGate,
                std::string(name) + " expects " + std::to_string(n) + " parameters");
}

}  // namespace

int iswap_root_index(std::string_view name) {
  constexpr std::string_view prefix = "iswap_root";
  if (name.substr(0, prefix.size()) != prefix || name.size() == prefix.size())
    return 0;
  int n = 0;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  const auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr != last || n < 1) return 0;
  return n;
}

std::optional<GateInfo> lookup_gate(std::string_view name) {
  for (const GateInfo& g : kGates)
    if (g.name == name) return g;
  if (iswap_root_index(name) > 0) return GateInfo{name, 2, 0};
  return std::nullopt;
}

Mat2 gate_matrix_1q(std::string_view name, std::span<const double> params) {
  const auto info = lookup_gate(name);
  if (!info || info->qubits != 1)
    throw Error(ErrorCode::UnsupportedGate, "not a 1Q gate: " + std::string(name));
  expect_params(name, params, static_cast<std::size_t>(info->params));
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 m;
  if (name == "id") return Mat2::Identity();
  if (name == "x") {
    m << 0, 1, 1, 0;
    return m;
  }
  if (name == "y") {
    m << 0, -kI, kI, 0;
    return m;
  }
  if (name == "z") return diag2(1, -1);
  if (name == "h") {
    m << r, r, r, -r;
    return m;
  }
  if (name == "s") return diag2(1, kI);
  if (name == "sdg") return diag2(1, -kI);
  if (name == "t") return diag2(1, std::polar(1.0, kQuarterPi));
  if (name == "tdg") return diag2(1, std::polar(1.0, -kQuarterPi));
  if (name == "sx" || name == "sxdg") {
    const Complex a = name == "sx" ? Complex(0.5, 0.5) : Complex(0.5, -0.5);
    const Complex b = std::conj(a);
    m << a, b, b, a;
    return m;
  }
  if (name == "rx") {
    const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
    m << c, -kI * s, -kI * s, c;
    return m;
  }
  if (name == "ry") {
    const double c = std::cos(params[0] / 2), s = std::sin(params[0] / 2);
    m << c, -s, s, c;
    return m;
  }
  if (name == "rz") return diag2(std::polar(1.0, -params[0] / 2), std::polar(1.0, params[0] / 2));
  if (name == "p" || name == "u1") return diag2(1, std::polar(1.0, params[0]));
  if (name == "u2") return u3(kHalfPi, params[0], params[1]);
  return u3(params[0], params[1], params[2]);
}

Mat4 gate_matrix_2q(std::string_view name, std::span<const double> params) {
  const auto info = lookup_gate(name);
  if (!info || info->qubits != 2 || name == "unitary")
    throw Error(ErrorCode::UnsupportedGate, "not a named 2Q gate: " + std::string(name));
  expect_params(name, params, static_cast<std::size_t>(info->params));
  if (name == "cx") return gates::cnot();
  if (name == "cy") return controlled(gate_matrix_1q("y", {}));
  if (name == "cz") return controlled(gate_matrix_1q("z", {}));
  if (name == "ch") return controlled(gate_matrix_1q("h", {}));
  if (name == "cp" || name == "cu1") return controlled(gate_matrix_1q("p", params));
  if (name == "crz") return controlled(gate_matrix_1q("rz", params));
  if (name == "swap") return gates::swap();
  if (name == "iswap") return gates::iswap();
  if (name == "sqiswap") return gates::iswap_root(2);
  if (const int n = iswap_root_index(name); n > 0) return gates::iswap_root(n);
  const double half = params[0] / 2.0;
  if (name == "rzz") {
    Mat4 m = Mat4::Zero();
    m(0, 0) = m(3, 3) = std::polar(1.0, -half);
    m(1, 1) = m(2, 2) = std::polar(1.0, half);
    return m;
  }
  // rxx
  Mat4 m = Mat4::Identity() * std::cos(half);
  for (int i = 0; i < 4; ++i) m(i, 3 - i) = -kI * std::sin(half);
  return m;
}

}  // namespace mirage
