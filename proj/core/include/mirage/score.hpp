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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mirage/basis.hpp"
#include "mirage/coverage.hpp"
#include "mirage/weyl.hpp"

namespace mirage {

/// Exponential decay in gate duration, anchored at 99% for one iSWAP.
struct FidelityModel {
  double lambda = 0.010050335853501;  // -ln(0.99)

  [[nodiscard]] double circuit_fidelity(double cost) const;
};

/// exp(-lambda * cost) with the default model; throws NegativeCost.
double circuit_fidelity(double cost);

struct HaarScoreReport {
  std::string basis;
  std::string mode;
  double score = 0.0;
  double avg_fidelity = 0.0;
  std::uint64_t samples = 0;
  double std_error = 0.0;
};

HaarScoreReport haar_score_exact(const CoverageSet& cs, std::uint64_t samples,
                                 std::uint64_t seed, int jobs = 1);

struct OptimizerSettings {
  int restarts = 8;
  int evals_per_restart = 2000;
  double ftol = 1e-10;
  std::uint64_t seed = 0x6d697261ULL;
};

struct RegionFit {
  double cost = 0.0;
  /// Decomposition fidelity times circuit fidelity.
  double total_fidelity = 0.0;
  double decomposition_fidelity = 0.0;
};

/// Best average gate fidelity reachable by the k-application template,
/// with the outer 1Q layers optimised in closed form and the interior
/// layers numerically. Throws OptimizerDiverged below the 0.25 baseline.
double best_template_fidelity(const BasisGateSpec& basis, int k,
                              const Unitary2Q& target,
                              const OptimizerSettings& settings = {},
                              double stop_at = 2.0);

/// Returns k * unit_cost when the fitted template clears `fid_threshold`
/// in total fidelity, else nullopt (including on divergence).
std::optional<RegionFit> optimize_in_region(const BasisGateSpec& basis, int k,
                                            const Unitary2Q& target,
                                            double fid_threshold,
                                            const OptimizerSettings& settings = {});

/// Largest class overlap |Tr(A^dag B)|/4 between `p` and any point of the
/// piece (searched over the piece, not over gates).
double max_overlap_in_region(const ConvexRegion& region, const WeylPoint& p);

HaarScoreReport haar_score_approx(const CoverageSet& cs, std::uint64_t samples,
                                  std::uint64_t seed, int jobs = 1,
                                  const OptimizerSettings& settings = {});

struct SynthesisResult {
  /// 2(k+1) u3 angle triples, layer by layer, qubit 0 before qubit 1.
  std::vector<std::array<double, 3>> angles;
  double fidelity = 0.0;
};

SynthesisResult synthesize(const Unitary2Q& target, const BasisGateSpec& basis,
                           int k, const OptimizerSettings& settings = {});

/// Real orthogonal factors in the magic basis: B^dag U' B = left diag(d) right
/// where U' is U scaled to unit determinant; both factors have det +1.
struct MagicKak {
  Mat4 left;
  Eigen::Vector4cd diag;
  Mat4 right;
};
MagicKak magic_kak(const Mat4& u);

}  // namespace mirage
