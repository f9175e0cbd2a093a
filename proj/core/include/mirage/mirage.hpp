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
#include <string_view>
#include <vector>

#include "mirage/coverage.hpp"
#include "mirage/sabre.hpp"

namespace mirage {

/// Mirror acceptance policy: 0 never, 1 strictly cheaper, 2 no worse,
/// 3 always.
enum class AggressionLevel : int { Never = 0, Strict = 1, Equal = 2, Always = 3 };

AggressionLevel aggression_from_int(int level);

bool accept_mirror(double cost_current, double cost_trial, AggressionLevel aggression);

enum class RoutingMode { Sabre, Mirage, VSwap };

RoutingMode parse_routing_mode(std::string_view text);
std::string_view to_string(RoutingMode mode);

enum class TrialMetric { Depth, Swaps };

TrialMetric parse_trial_metric(std::string_view text);
std::string_view to_string(TrialMetric metric);

struct MirrorCosts {
  double current = 0.0;
  double trial = 0.0;
};

/// Routing heuristic (without decay) plus kappa times the decomposition
/// cost, for the node as is and for its mirror with the pair exchanged.
MirrorCosts mirror_cost_pair(const CircuitDag& dag, int node, const Layout& layout,
                             const std::vector<int>& front,
                             const std::vector<int>& extended, const CouplingMap& cm,
                             const CostLookup& lookup, double kappa = 1.0,
                             double extended_weight = 0.5);

struct MirageOptions {
  AggressionLevel aggression = AggressionLevel::Strict;
  double kappa = 1.0;
};

/// SABRE routing with the mirror decision made on every committed 2Q gate.
RoutedResult mirage_route(const CircuitDag& dag, const CouplingMap& cm, const Layout& layout,
                          const SabreParams& params, const CostLookup& lookup,
                          const MirageOptions& options, Rng& rng);

struct TrialPlan {
  int total_trials = 20;
  std::array<double, 4> mix{0.05, 0.45, 0.45, 0.05};
  TrialMetric metric = TrialMetric::Depth;

  /// All trials at a single level.
  static TrialPlan fixed(int total, AggressionLevel level, TrialMetric metric);

  /// Per-level trial counts, largest-remainder rounded.
  [[nodiscard]] std::array<int, 4> counts() const;
  /// Level assigned to trial t (levels fill trials in ascending order).
  [[nodiscard]] AggressionLevel level_of(int trial) const;
};

struct TrialOptions {
  RoutingMode mode = RoutingMode::Mirage;
  double kappa = 1.0;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct TrialSummary {
  int trial = 0;
  int aggression = 0;
  CostMetrics metrics;
  double mirror_acceptance_rate = 0.0;
};

/// Independent seeded trials (layout trial, then routing at the trial's
/// level); returns the argmin of the plan's metric, lowest trial on ties.
/// `lookup` must be the standard (not mirror-extended) coverage set.
RoutedResult run_trials(const CircuitDag& dag, const CouplingMap& cm, const TrialPlan& plan,
                        const SabreParams& params, const CostLookup& lookup,
                        const TrialOptions& options,
                        std::vector<TrialSummary>* summaries = nullptr);

}  // namespace mirage
