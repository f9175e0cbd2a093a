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
#include <functional>
#include <vector>

#include "mirage/circuit.hpp"
#include "mirage/coverage.hpp"
#include "mirage/rng.hpp"
#include "mirage/topology.hpp"

namespace mirage {

/// Bijection between virtual and physical qubits. Virtual indices beyond
/// the circuit's width are idle ancillas.
class Layout {
 public:
  Layout() = default;
  static Layout identity(int n);
  static Layout random(int n, Rng& rng);
  static Layout from_virtual_to_physical(std::vector<int> v2p);

  [[nodiscard]] int size() const { return static_cast<int>(v2p_.size()); }
  [[nodiscard]] int physical(int v) const { return v2p_[static_cast<std::size_t>(v)]; }
  [[nodiscard]] int virtual_at(int p) const { return p2v_[static_cast<std::size_t>(p)]; }
  [[nodiscard]] const std::vector<int>& virtual_to_physical() const { return v2p_; }
  /// Exchanges whatever virtual qubits sit on physical p and q.
  void swap_physical(int p, int q);

  friend bool operator==(const Layout&, const Layout&) = default;

 private:
  std::vector<int> v2p_;
  std::vector<int> p2v_;
};

struct SabreParams {
  int extended_set_size = 20;
  double extended_set_weight = 0.5;
  double decay_rate = 0.001;
  int decay_reset_interval = 5;
  int layout_trials = 20;
  int layout_passes = 4;
  int routing_trials = 20;
};

struct RoutedResult {
  /// Routed circuit on physical qubits (re-consolidated once metrics are
  /// attached).
  CircuitDag mapped;
  Layout initial;
  Layout final;
  CostMetrics metrics;
  std::size_t swaps_inserted = 0;
  std::size_t mirrors_evaluated = 0;
  std::size_t mirrors_accepted = 0;
  double mirror_acceptance_rate = 0.0;
  std::uint64_t seed = 0;
  int aggression = 0;
  int trial = 0;
};

/// Hook run on every committed 2Q gate; returns true to commit the mirror
/// (SWAP . U) and exchange the pair in the layout instead.
struct CommitContext {
  const CircuitDag& dag;
  int node;
  const Layout& layout;
  const std::vector<int>& front;
  const std::vector<int>& extended;
  const CouplingMap& cm;
  const SabreParams& params;
};
using MirrorHook = std::function<bool(const CommitContext&)>;

/// Lookahead window of up to params.extended_set_size 2Q successors of
/// the front layer, in breadth-first order.
std::vector<int> extended_set(const CircuitDag& dag, const std::vector<int>& front,
                              const std::vector<char>& resolved, int limit);

/// Front-layer mean distance plus weighted mean lookahead distance.
double routing_heuristic(const CircuitDag& dag, const Layout& layout,
                         const std::vector<int>& front, const std::vector<int>& extended,
                         const CouplingMap& cm, double extended_weight);

RoutedResult route(const CircuitDag& dag, const CouplingMap& cm, const Layout& layout,
                   const SabreParams& params, Rng& rng);

RoutedResult route_with_hook(const CircuitDag& dag, const CouplingMap& cm,
                             const Layout& layout, const SabreParams& params, Rng& rng,
                             const MirrorHook& hook);

/// Re-consolidates the mapped circuit and fills in metrics.
void attach_metrics(RoutedResult& result, const CostLookup& lookup,
                    CoordinateCache* cache = nullptr);

using LayoutMetric = std::function<double(const RoutedResult&)>;

/// One layout trial: random start, then params.layout_passes forward and
/// reverse routing passes carrying the final layout along.
Layout layout_trial(const CircuitDag& dag, const CircuitDag& reversed,
                    const CouplingMap& cm, const SabreParams& params, Rng& rng);

/// Best of params.layout_trials trials under `metric` (lowest wins; ties go
/// to the lower trial index).
Layout layout_search(const CircuitDag& dag, const CouplingMap& cm,
                     const SabreParams& params, Rng& rng, const LayoutMetric& metric);

}  // namespace mirage
