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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mirage {

enum class ErrorCode {
  NonUnitaryInput,
  OutOfChamber,
  CoverageIncomplete,
  NegativeCost,
  OptimizerDiverged,
  SyntaxError,
  UnsupportedGate,
  IndexOutOfRange,
  DisconnectedGraph,
  BadEdgeList,
  RoutingStuck,
  TooManyQubits,
  DimensionMismatch,
  SidecarMismatch,
  Usage,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base class for every error raised by the library. The code is stable and
/// is what the CLI writes into machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& msg);

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace mirage
