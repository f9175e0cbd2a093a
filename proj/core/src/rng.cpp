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

#include "mirage/rng.hpp"

#include <cmath>

#include "mirage/errors.hpp"

namespace mirage {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index) noexcept {
  return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

// std::normal_distribution is implementation-defined; Box-Muller keeps the
// sample streams identical across standard libraries.
double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonUnitaryInput: return "NonUnitaryInput";
    case ErrorCode::OutOfChamber: return "OutOfChamber";
    case ErrorCode::CoverageIncomplete: return "CoverageIncomplete";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::OptimizerDiverged: return "OptimizerDiverged";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedGate: return "UnsupportedGate";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::BadEdgeList: return "BadEdgeList";
    case ErrorCode::RoutingStuck: return "RoutingStuck";
    case ErrorCode::TooManyQubits: return "TooManyQubits";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SidecarMismatch: return "SidecarMismatch";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column,
                         const std::string& msg)
    : Error(ErrorCode::SyntaxError, "line " + std::to_string(line) +
                                        ", column " + std::to_string(column) +
                                        ": " + msg),
      line_(line),
      column_(column) {}

}  // namespace mirage
