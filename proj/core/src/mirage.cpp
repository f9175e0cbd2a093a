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

#include "mirage/mirage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mirage/errors.hpp"
#include "mirage/parallel.hpp"

namespace mirage {

AggressionLevel aggression_from_int(int level) {
  if (level < 0 || level > 3)
    throw Error(ErrorCode::Usage, "aggression level must be 0..3, got " + std::to_string(level));
  return static_cast<AggressionLevel>(level);
}

bool accept_mirror(double cost_current, double cost_trial, AggressionLevel aggression) {
  switch (aggression) {
    case AggressionLevel::Never:
      return false;
    case AggressionLevel::Strict:
      return cost_trial < cost_current;
    case AggressionLevel::Equal:
      return cost_trial <= cost_current;
    case AggressionLevel::Always:
      return true;
  }
  return false;
}

RoutingMode parse_routing_mode(std::string_view text) {
  if (text == "sabre") return RoutingMode::Sabre;
  if (text == "mirage") return RoutingMode::Mirage;
  if (text == "vswap") return RoutingMode::VSwap;
  throw Error(ErrorCode::Usage, "unknown mode '" + std::string(text) + "'");
}

std::string_view to_string(RoutingMode mode) {
  switch (mode) {
    case RoutingMode::Sabre:
      return "sabre";
    case RoutingMode::Mirage:
      return "mirage";
    case RoutingMode::VSwap:
      return "vswap";
  }
  return "?";
}

TrialMetric parse_trial_metric(std::string_view text) {
  if (text == "depth") return TrialMetric::Depth;
  if (text == "swaps") return TrialMetric::Swaps;
  throw Error(ErrorCode::Usage, "unknown metric '" + std::string(text) + "'");
}

std::string_view to_string(TrialMetric metric) {
  return metric == TrialMetric::Depth ? "depth" : "swaps";
}

MirrorCosts mirror_cost_pair(const CircuitDag& dag, int node, const Layout& layout,
                             const std::vector<int>& front,
                             const std::vector<int>& extended, const CouplingMap& cm,
                             const CostLookup& lookup, double kappa, double extended_weight) {
  const GateNode& n = dag.node(node);
  if (n.arity() != 2) throw Error(ErrorCode::DimensionMismatch, "mirror of a 1Q gate");
  const WeylPoint p = n.weyl();
  Layout exchanged = layout;
  exchanged.swap_physical(layout.physical(n.qubits[0]), layout.physical(n.qubits[1]));
  MirrorCosts out;
  out.current = routing_heuristic(dag, layout, front, extended, cm, extended_weight) +
                kappa * lookup(p).cost;
  out.trial = routing_heuristic(dag, exchanged, front, extended, cm, extended_weight) +
              kappa * lookup(mirror_coordinates(p)).cost;
  return out;
}

RoutedResult mirage_route(const CircuitDag& dag, const CouplingMap& cm, const Layout& layout,
                          const SabreParams& params, const CostLookup& lookup,
                          const MirageOptions& options, Rng& rng) {
  const MirrorHook hook = [&](const CommitContext& ctx) {
    const MirrorCosts c =
        mirror_cost_pair(ctx.dag, ctx.node, ctx.layout, ctx.front, ctx.extended, ctx.cm, lookup,
                         options.kappa, ctx.params.extended_set_weight);
    return accept_mirror(c.current, c.trial, options.aggression);
  };
  RoutedResult r = route_with_hook(dag, cm, layout, params, rng, hook);
  r.aggression = static_cast<int>(options.aggression);
  return r;
}

TrialPlan TrialPlan::fixed(int total, AggressionLevel level, TrialMetric metric) {
  TrialPlan plan;
  plan.total_trials = total;
  plan.mix = {0.0, 0.0, 0.0, 0.0};
  plan.mix[static_cast<std::size_t>(level)] = 1.0;
  plan.metric = metric;
  return plan;
}

std::array<int, 4> TrialPlan::counts() const {
  const double sum = std::accumulate(mix.begin(), mix.end(), 0.0);
  if (total_trials < 1 || !(sum > 0.0) ||
      std::any_of(mix.begin(), mix.end(), [](double f) { return f < 0.0; }))
    throw Error(ErrorCode::Usage, "invalid trial plan");
  std::array<int, 4> out{};
  std::array<double, 4> remainder{};
  int assigned = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double exact = total_trials * mix[i] / sum;
    out[i] = static_cast<int>(std::floor(exact));
    remainder[i] = exact - out[i];
    assigned += out[i];
  }
  std::array<std::size_t, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < total_trials; ++i, ++assigned) ++out[order[i % 4]];
  return out;
}

AggressionLevel TrialPlan::level_of(int trial) const {
  const std::array<int, 4> c = counts();
  int upto = 0;
  for (int level = 0; level < 4; ++level) {
    upto += c[static_cast<std::size_t>(level)];
    if (trial < upto) return static_cast<AggressionLevel>(level);
  }
  throw Error(ErrorCode::IndexOutOfRange, "trial index beyond plan");
}

RoutedResult run_trials(const CircuitDag& dag, const CouplingMap& cm, const TrialPlan& plan,
                        const SabreParams& params, const CostLookup& lookup,
                        const TrialOptions& options,
                        std::vector<TrialSummary>* summaries) {
  const int total = plan.total_trials;
  (void)plan.counts();  // validates
  const CircuitDag reversed = dag.reversed();
  std::vector<RoutedResult> results(static_cast<std::size_t>(total));
  parallel_for(results.size(), options.jobs, [&](std::size_t t) {
    Rng rng = make_rng(options.seed, /*stream=*/11, t);
    const Layout layout = layout_trial(dag, reversed, cm, params, rng);
    RoutedResult r;
    switch (options.mode) {
      case RoutingMode::Sabre:
        r = route(dag, cm, layout, params, rng);
        break;
      case RoutingMode::Mirage:
        r = mirage_route(dag, cm, layout, params, lookup,
                         {plan.level_of(static_cast<int>(t)), options.kappa}, rng);
        break;
      case RoutingMode::VSwap:
        r = mirage_route(dag, cm, layout, params, lookup, {AggressionLevel::Strict, 0.0}, rng);
        break;
    }
    CoordinateCache cache;
    attach_metrics(r, lookup, &cache);
    r.seed = options.seed;
    r.trial = static_cast<int>(t);
    results[t] = std::move(r);
  });
  auto score = [&](const RoutedResult& r) {
    return plan.metric == TrialMetric::Depth ? r.metrics.pulse_depth
                                             : static_cast<double>(r.metrics.swap_count);
  };
  if (summaries) {
    summaries->clear();
    for (const auto& r : results)
      summaries->push_back({r.trial, r.aggression, r.metrics, r.mirror_acceptance_rate});
  }
  std::size_t best = 0;
  for (std::size_t t = 1; t < results.size(); ++t)
    if (score(results[t]) < score(results[best])) best = t;
  return std::move(results[best]);
}

}  // namespace mirage
