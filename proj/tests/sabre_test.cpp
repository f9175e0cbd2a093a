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

#include <gtest/gtest.h>

#include "mirage/errors.hpp"
#include "mirage/simverify.hpp"

using namespace mirage;

namespace {

CircuitDag random_circuit(int n, int gates, Rng& rng) {
  CircuitDag dag(n);
  for (int i = 0; i < gates; ++i) {
    if (rng() % 4 == 0) {
      dag.add(GateNode::named("ry", {static_cast<int>(rng() % n)}, {uniform01(rng) * 3.0}));
      continue;
    }
    const int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    dag.add(GateNode::unitary({a, b}, haar_random_2q(rng).matrix()));
  }
  return dag;
}

void expect_adjacent(const CircuitDag& mapped, const CouplingMap& cm) {
  for (const GateNode& g : mapped.nodes())
    if (g.arity() == 2) {
      EXPECT_TRUE(cm.is_adjacent(g.qubits[0], g.qubits[1]));
    }
}

}  // namespace

TEST(Sabre, LayoutBasics) {
  Layout l = Layout::from_virtual_to_physical({2, 0, 1});
  EXPECT_EQ(l.physical(0), 2);
  EXPECT_EQ(l.virtual_at(2), 0);
  l.swap_physical(2, 1);
  EXPECT_EQ(l.physical(0), 1);
  EXPECT_EQ(l.physical(2), 2);
  EXPECT_THROW(Layout::from_virtual_to_physical({0, 0, 1}), Error);
  Rng rng = make_rng(1);
  const Layout r = Layout::random(6, rng);
  std::vector<int> seen(6, 0);
  for (int v = 0; v < 6; ++v) {
    ++seen[static_cast<std::size_t>(r.physical(v))];
    EXPECT_EQ(r.virtual_at(r.physical(v)), v);
  }
  EXPECT_EQ(seen, std::vector<int>(6, 1));
}

TEST(Sabre, AlreadyMappedCircuitNeedsNoSwaps) {
  CircuitDag dag(4);
  dag.add(GateNode::named("cx", {0, 1}));
  dag.add(GateNode::named("cx", {1, 2}));
  dag.add(GateNode::named("cx", {2, 3}));
  Rng rng = make_rng(2);
  const RoutedResult r = route(dag, CouplingMap::line(4), Layout::identity(4), SabreParams{}, rng);
  EXPECT_EQ(r.swaps_inserted, 0u);
  EXPECT_EQ(r.mapped.size(), 3u);
  EXPECT_EQ(r.final, r.initial);
}

TEST(Sabre, DistantPairGetsSwaps) {
  CircuitDag dag(4);
  dag.add(GateNode::named("cx", {0, 3}));
  Rng rng = make_rng(3);
  const CouplingMap cm = CouplingMap::line(4);
  const RoutedResult r = route(dag, cm, Layout::identity(4), SabreParams{}, rng);
  EXPECT_EQ(r.swaps_inserted, 2u);
  expect_adjacent(r.mapped, cm);
  EXPECT_TRUE(routing_equivalent(dag, r.mapped, r.initial.virtual_to_physical(),
                                 r.final.virtual_to_physical(), 1e-9));
}

TEST(Sabre, RandomCircuitsRouteCorrectly) {
  const CouplingMap maps[] = {CouplingMap::line(6), CouplingMap::ring(6), CouplingMap::grid(2, 3)};
  Rng rng = make_rng(4);
  for (int t = 0; t < 60; ++t) {
    const CouplingMap& cm = maps[t % 3];
    const int n = 2 + static_cast<int>(rng() % 5);
    const CircuitDag dag = random_circuit(n, 20, rng);
    Rng route_rng = make_rng(100, 0, static_cast<std::uint64_t>(t));
    const Layout start = Layout::random(cm.num_qubits(), route_rng);
    const RoutedResult r = route(dag, cm, start, SabreParams{}, route_rng);
    expect_adjacent(r.mapped, cm);
    EXPECT_EQ(r.initial, start);
    EXPECT_TRUE(routing_equivalent(dag, r.mapped, r.initial.virtual_to_physical(),
                                   r.final.virtual_to_physical(), 1e-9))
        << "trial " << t;
  }
}

TEST(Sabre, DeterministicForSeed) {
  Rng rng = make_rng(5);
  const CircuitDag dag = random_circuit(6, 40, rng);
  const CouplingMap cm = CouplingMap::grid(2, 3);
  auto once = [&] {
    Rng r = make_rng(9);
    return route(dag, cm, Layout::identity(6), SabreParams{}, r);
  };
  const RoutedResult a = once();
  const RoutedResult b = once();
  ASSERT_EQ(a.mapped.size(), b.mapped.size());
  for (std::size_t i = 0; i < a.mapped.size(); ++i) {
    EXPECT_EQ(a.mapped.node(static_cast<int>(i)).name, b.mapped.node(static_cast<int>(i)).name);
    EXPECT_EQ(a.mapped.node(static_cast<int>(i)).qubits, b.mapped.node(static_cast<int>(i)).qubits);
  }
  EXPECT_EQ(a.final, b.final);
}

TEST(Sabre, HookSeesOnlyCommittedTwoQubitGates) {
  CircuitDag dag(3);
  dag.add(GateNode::named("h", {0}));
  dag.add(GateNode::named("cx", {0, 2}));
  dag.add(GateNode::named("cx", {1, 2}));
  int calls = 0;
  const CouplingMap cm = CouplingMap::line(3);
  const MirrorHook hook = [&](const CommitContext& ctx) {
    ++calls;
    const GateNode& g = ctx.dag.node(ctx.node);
    EXPECT_EQ(g.arity(), 2);
    EXPECT_TRUE(ctx.cm.is_adjacent(ctx.layout.physical(g.qubits[0]), ctx.layout.physical(g.qubits[1])));
    return false;
  };
  Rng rng = make_rng(6);
  route_with_hook(dag, cm, Layout::identity(3), SabreParams{}, rng, hook);
  EXPECT_EQ(calls, 2);
}

TEST(Sabre, AcceptedMirrorsStayEquivalent) {
  Rng rng = make_rng(7);
  const CouplingMap cm = CouplingMap::line(5);
  for (int t = 0; t < 20; ++t) {
    const CircuitDag dag = random_circuit(5, 25, rng);
    Rng r = make_rng(8, 0, static_cast<std::uint64_t>(t));
    const RoutedResult res = route_with_hook(dag, cm, Layout::identity(5), SabreParams{}, r,
                                             [](const CommitContext&) { return true; });
    EXPECT_GT(res.mirrors_accepted, 0u);
    expect_adjacent(res.mapped, cm);
    EXPECT_TRUE(routing_equivalent(dag, res.mapped, res.initial.virtual_to_physical(),
                                   res.final.virtual_to_physical(), 1e-9));
  }
}

TEST(Sabre, ExtendedSetAndHeuristic) {
  CircuitDag dag(4);
  dag.add(GateNode::named("cx", {0, 1}));
  dag.add(GateNode::named("cx", {1, 2}));
  dag.add(GateNode::named("cx", {2, 3}));
  const std::vector<char> resolved(3, 0);
  const std::vector<int> front{0};
  EXPECT_EQ(extended_set(dag, front, resolved, 20), (std::vector<int>{1, 2}));
  EXPECT_EQ(extended_set(dag, front, resolved, 1), std::vector<int>{1});
  const Layout l = Layout::from_virtual_to_physical({0, 3, 1, 2});
  // Front distance 3 - 0 = 3; extended mean of (|3-1|, |1-2|) = 1.5.
  EXPECT_DOUBLE_EQ(routing_heuristic(dag, l, front, {1, 2}, CouplingMap::line(4), 0.5),
                   3.0 + 0.5 * 1.5);
}

TEST(Sabre, Errors) {
  CircuitDag dag(5);
  dag.add(GateNode::named("cx", {0, 4}));
  Rng rng = make_rng(1);
  try {
    route(dag, CouplingMap::line(4), Layout::identity(4), SabreParams{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyQubits);
  }
  CircuitDag small(3);
  small.add(GateNode::named("cx", {0, 2}));
  try {
    route(small, CouplingMap::line(4), Layout::identity(3), SabreParams{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Sabre, LayoutSearchIsReproducible) {
  Rng rng = make_rng(11);
  const CircuitDag dag = random_circuit(6, 30, rng);
  const CouplingMap cm = CouplingMap::grid(2, 3);
  SabreParams p;
  p.layout_trials = 4;
  const LayoutMetric metric = [](const RoutedResult& r) { return static_cast<double>(r.swaps_inserted); };
  Rng a = make_rng(3), b = make_rng(3);
  EXPECT_EQ(layout_search(dag, cm, p, a, metric), layout_search(dag, cm, p, b, metric));
}
