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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mirage/basis.hpp"
#include "mirage/coverage.hpp"

namespace mirage::cli {

using nlohmann::json;

inline constexpr int kReportVersion = 1;

struct CommonOptions {
  int jobs = 1;
  /// Coverage sidecars live here; empty means $MIRAGE_CACHE_DIR or
  /// ./.mirage-cache.
  std::filesystem::path cache_dir;
  std::uint64_t coverage_samples = 100000;
  std::uint64_t coverage_seed = 1;
};

struct TranspileOptions {
  std::filesystem::path input;
  std::string topology = "line:4";
  std::string basis = "sqiswap";
  std::string mode = "mirage";
  std::string metric = "depth";
  int trials = 20;
  std::string aggression = "mixed";
  std::uint64_t seed = 0;
  double kappa = 1.0;
  std::filesystem::path emit_qasm;
  bool synth = true;
  bool verify = false;
  CommonOptions common;
};

struct ScoreOptions {
  std::string basis = "sqiswap";
  std::uint64_t samples = 100000;
  bool mirror = false;
  bool approx = false;
  std::uint64_t seed = 0;
  CommonOptions common;
};

struct CoverageOptions {
  std::string basis = "sqiswap";
  int k = 2;
  bool mirror = false;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  CommonOptions common;
};

struct BenchOptions {
  std::filesystem::path suite;
  std::string topology = "grid:3x3";
  /// Comma-separated; each entry is a mode optionally suffixed with
  /// ":depth" or ":swaps".
  std::string modes = "sabre,mirage";
  std::uint64_t seed = 0;
  int seeds = 5;
  int trials = 20;
  double kappa = 1.0;
  std::string basis = "sqiswap";
  CommonOptions common;
};

/// Sidecar-backed coverage set, built on first use.
std::shared_ptr<const CoverageSet> coverage_for(const BasisGateSpec& basis, bool mirror,
                                                const CommonOptions& common);

json cmd_transpile(const TranspileOptions& options);
json cmd_score(const ScoreOptions& options);
json cmd_coverage(const CoverageOptions& options);
json cmd_bench(const BenchOptions& options);

/// Writes through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Report with wall-clock fields removed, for reproducibility checks.
json strip_timing(json report);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace mirage::cli
