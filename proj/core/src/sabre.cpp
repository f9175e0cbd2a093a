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

#include "mirage/sabre.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "mirage/errors.hpp"

namespace mirage {

Layout Layout::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return from_virtual_to_physical(std::move(v));
}

Layout Layout::random(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  // Explicit Fisher-Yates: std::shuffle's draw pattern is not portable.
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
  }
  return from_virtual_to_physical(std::move(v));
}

Layout Layout::from_virtual_to_physical(std::vector<int> v2p) {
  Layout l;
  const int n = static_cast<int>(v2p.size());
  l.p2v_.assign(v2p.size(), -1);
  for (int v = 0; v < n; ++v) {
    const int p = v2p[static_cast<std::size_t>(v)];
    if (p < 0 || p >= n || l.p2v_[static_cast<std::size_t>(p)] >= 0)
      throw Error(ErrorCode::IndexOutOfRange, "layout is not a bijection");
    l.p2v_[static_cast<std::size_t>(p)] = v;
  }
  l.v2p_ = std::move(v2p);
  return l;
}

void Layout::swap_physical(int p, int q) {
  const int vp = p2v_[static_cast<std::size_t>(p)];
  const int vq = p2v_[static_cast<std::size_t>(q)];
  std::swap(p2v_[static_cast<std::size_t>(p)], p2v_[static_cast<std::size_t>(q)]);
  v2p_[static_cast<std::size_t>(vp)] = q;
  v2p_[static_cast<std::size_t>(vq)] = p;
}

std::vector<int> extended_set(const CircuitDag& dag, const std::vector<int>& front,
                              const std::vector<char>& resolved, int limit) {
  std::vector<int> out;
  std::vector<char> seen(dag.size(), 0);
  std::deque<int> queue;
  for (int f : front) {
    seen[static_cast<std::size_t>(f)] = 1;
    queue.push_back(f);
  }
  while (!queue.empty() && static_cast<int>(out.size()) < limit) {
    const int x = queue.front();
    queue.pop_front();
    for (int j = 0; j < dag.node(x).arity(); ++j) {
      const int s = dag.wire_next(x, j);
      if (s < 0 || seen[static_cast<std::size_t>(s)] || resolved[static_cast<std::size_t>(s)])
        continue;
      seen[static_cast<std::size_t>(s)] = 1;
      if (dag.node(s).arity() == 2 && static_cast<int>(out.size()) < limit) out.push_back(s);
      queue.push_back(s);
    }
  }
  return out;
}

double routing_heuristic(const CircuitDag& dag, const Layout& layout,
                         const std::vector<int>& front, const std::vector<int>& extended,
                         const CouplingMap& cm, double extended_weight) {
  auto mean_distance = [&](const std::vector<int>& nodes) {
    double sum = 0.0;
    int count = 0;
    for (int i : nodes) {
      const GateNode& n = dag.node(i);
      if (n.arity() != 2) continue;
      sum += cm.distance(layout.physical(n.qubits[0]), layout.physical(n.qubits[1]));
      ++count;
    }
    return count == 0 ? 0.0 : sum / count;
  };
  return mean_distance(front) + extended_weight * mean_distance(extended);
}

namespace {

class Router {
 public:
  Router(const CircuitDag& dag, const CouplingMap& cm, const Layout& layout,
         const SabreParams& params, Rng& rng, const MirrorHook* hook)
      : dag_(dag), cm_(cm), params_(params), rng_(rng), hook_(hook), layout_(layout) {
    const int np = cm.num_qubits();
    if (dag.num_qubits() > np)
      throw Error(ErrorCode::TooManyQubits,
                  "circuit needs " + std::to_string(dag.num_qubits()) +
                      " qubits, topology has " + std::to_string(np));
    if (layout.size() != np)
      throw Error(ErrorCode::DimensionMismatch, "layout size differs from topology size");
    result_.mapped = CircuitDag(np);
    result_.initial = layout;
    decay_.assign(static_cast<std::size_t>(np), 1.0);
    resolved_.assign(dag.size(), 0);
    waiting_.assign(dag.size(), 0);
    for (int i = 0; i < static_cast<int>(dag.size()); ++i) {
      waiting_[static_cast<std::size_t>(i)] = static_cast<int>(dag.predecessors(i).size());
      if (waiting_[static_cast<std::size_t>(i)] == 0) front_.push_back(i);
    }
  }

  RoutedResult run() {
    const int valve = 10 * std::max(1, cm_.num_qubits());
    int stalled_swaps = 0;
    int swaps_since_reset = 0;
    while (!front_.empty()) {
      if (execute_ready()) {
        stalled_swaps = 0;
        swaps_since_reset = 0;
        reset_decay();
        continue;
      }
      if (stalled_swaps >= valve) {
        force_route();
        stalled_swaps = 0;
        swaps_since_reset = 0;
        reset_decay();
        continue;
      }
      insert_best_swap();
      ++stalled_swaps;
      if (++swaps_since_reset >= params_.decay_reset_interval) {
        swaps_since_reset = 0;
        reset_decay();
      }
    }
    result_.final = layout_;
    result_.mirror_acceptance_rate =
        result_.mirrors_evaluated == 0
            ? 0.0
            : static_cast<double>(result_.mirrors_accepted) /
                  static_cast<double>(result_.mirrors_evaluated);
    return std::move(result_);
  }

 private:
  void reset_decay() { std::fill(decay_.begin(), decay_.end(), 1.0); }

  bool executable(int i) const {
    const GateNode& n = dag_.node(i);
    if (n.arity() == 1) return true;
    return cm_.is_adjacent(layout_.physical(n.qubits[0]), layout_.physical(n.qubits[1]));
  }

  bool execute_ready() {
    bool any = false;
    for (bool again = true; again;) {
      again = false;
      for (int i : front_) {
        if (executable(i)) {
          commit(i);
          any = again = true;
          break;
        }
      }
    }
    return any;
  }

  void commit(int i) {
    resolved_[static_cast<std::size_t>(i)] = 1;
    front_.erase(std::find(front_.begin(), front_.end(), i));
    for (int s : dag_.successors(i)) {
      if (--waiting_[static_cast<std::size_t>(s)] == 0) {
        front_.insert(std::upper_bound(front_.begin(), front_.end(), s), s);
      }
    }
    GateNode node = dag_.node(i);
    for (int& q : node.qubits) q = layout_.physical(q);
    bool mirror = false;
    if (node.arity() == 2 && hook_ && *hook_ && node.routing_swaps == 0) {
      const std::vector<int> ext =
          extended_set(dag_, front_, resolved_, params_.extended_set_size);
      ++result_.mirrors_evaluated;
      mirror = (*hook_)(CommitContext{dag_, i, layout_, front_, ext, cm_, params_});
    }
    if (mirror) {
      const WeylPoint p = node.weyl();
      node.block = mirror_unitary(Unitary2Q::trusted(node.matrix2q())).matrix();
      node.name = "unitary";
      node.params.clear();
      node.coord = mirror_coordinates(p);
      node.cost.reset();
      node.mirrored = true;
      ++result_.mirrors_accepted;
      const int p0 = node.qubits[0], p1 = node.qubits[1];
      result_.mapped.add(std::move(node));
      layout_.swap_physical(p0, p1);
    } else {
      result_.mapped.add(std::move(node));
    }
  }

  void apply_swap(int p, int q) {
    result_.mapped.add(GateNode::routing_swap(p, q));
    layout_.swap_physical(p, q);
    decay_[static_cast<std::size_t>(p)] += params_.decay_rate;
    decay_[static_cast<std::size_t>(q)] += params_.decay_rate;
    ++result_.swaps_inserted;
  }

  void insert_best_swap() {
    std::vector<int> candidates;
    for (int i : front_) {
      const GateNode& n = dag_.node(i);
      if (n.arity() != 2) continue;
      for (int v : n.qubits) {
        const int p = layout_.physical(v);
        for (int q : cm_.neighbors(p)) candidates.push_back(cm_.edge_index(p, q));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty())
      throw Error(ErrorCode::RoutingStuck, "no SWAP candidates touch the front layer");
    const std::vector<int> ext = extended_set(dag_, front_, resolved_, params_.extended_set_size);

    double best = std::numeric_limits<double>::infinity();
    std::vector<int> ties;
    for (int e : candidates) {
      const auto [p, q] = cm_.edges()[static_cast<std::size_t>(e)];
      Layout trial = layout_;
      trial.swap_physical(p, q);
      const double h = routing_heuristic(dag_, trial, front_, ext, cm_, params_.extended_set_weight);
      const double score =
          std::max(decay_[static_cast<std::size_t>(p)], decay_[static_cast<std::size_t>(q)]) * h;
      if (score < best - 1e-12) {
        best = score;
        ties.assign(1, e);
      } else if (score <= best + 1e-12) {
        ties.push_back(e);
      }
    }
    const int pick = ties.size() == 1
                         ? ties.front()
                         : ties[static_cast<std::size_t>(rng_() % ties.size())];
    const auto [p, q] = cm_.edges()[static_cast<std::size_t>(pick)];
    apply_swap(p, q);
  }

  // Walks the closest front gate together along a shortest path.
  void force_route() {
    int target = -1;
    int best = std::numeric_limits<int>::max();
    for (int i : front_) {
      const GateNode& n = dag_.node(i);
      if (n.arity() != 2) continue;
      const int d = cm_.distance(layout_.physical(n.qubits[0]), layout_.physical(n.qubits[1]));
      if (d < best) {
        best = d;
        target = i;
      }
    }
    if (target < 0) throw Error(ErrorCode::RoutingStuck, "stalled without a 2Q front gate");
    const GateNode& n = dag_.node(target);
    while (true) {
      const int a = layout_.physical(n.qubits[0]);
      const int b = layout_.physical(n.qubits[1]);
      const int d = cm_.distance(a, b);
      if (d <= 1) break;
      int step = -1;
      for (int q : cm_.neighbors(a))
        if (cm_.distance(q, b) == d - 1) {
          step = q;
          break;
        }
      apply_swap(a, step);
    }
  }

  const CircuitDag& dag_;
  const CouplingMap& cm_;
  const SabreParams& params_;
  Rng& rng_;
  const MirrorHook* hook_;
  Layout layout_;
  RoutedResult result_;
  std::vector<double> decay_;
  std::vector<char> resolved_;
  std::vector<int> waiting_;
  std::vector<int> front_;
};

}  // namespace

RoutedResult route(const CircuitDag& dag, const CouplingMap& cm, const Layout& layout,
                   const SabreParams& params, Rng& rng) {
  return Router(dag, cm, layout, params, rng, nullptr).run();
}

RoutedResult route_with_hook(const CircuitDag& dag, const CouplingMap& cm,
                             const Layout& layout, const SabreParams& params, Rng& rng,
                             const MirrorHook& hook) {
  return Router(dag, cm, layout, params, rng, &hook).run();
}

void attach_metrics(RoutedResult& result, const CostLookup& lookup, CoordinateCache* cache) {
  result.mapped = consolidate_blocks(result.mapped, cache);
  result.metrics = metrics(result.mapped, lookup);
}

Layout layout_trial(const CircuitDag& dag, const CircuitDag& reversed,
                    const CouplingMap& cm, const SabreParams& params, Rng& rng) {
  Layout layout = Layout::random(cm.num_qubits(), rng);
  for (int pass = 0; pass < params.layout_passes; ++pass) {
    layout = route(dag, cm, layout, params, rng).final;
    layout = route(reversed, cm, layout, params, rng).final;
  }
  return layout;
}

Layout layout_search(const CircuitDag& dag, const CouplingMap& cm,
                     const SabreParams& params, Rng& rng, const LayoutMetric& metric) {
  const CircuitDag reversed = dag.reversed();
  const std::uint64_t base = rng();
  Layout best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int t = 0; t < std::max(1, params.layout_trials); ++t) {
    Rng trial_rng = make_rng(base, /*stream=*/7, static_cast<std::uint64_t>(t));
    Layout candidate = layout_trial(dag, reversed, cm, params, trial_rng);
    const double score = metric(route(dag, cm, candidate, params, trial_rng));
    if (score < best_score) {
      best_score = score;
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace mirage
