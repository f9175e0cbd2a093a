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

#include <filesystem>

#include <gtest/gtest.h>

#include "mirage/errors.hpp"
#include "mirage/qasm.hpp"
#include "mirage/simverify.hpp"

using namespace mirage;

namespace {

const CostLookup& lookup() {
  static const CostLookup l(std::make_shared<const CoverageSet>(
      build_coverage_set(BasisGateSpec::sqiswap(), 3, 100000, 1)));
  return l;
}

CircuitDag random_circuit(int n, int gates, Rng& rng) {
  CircuitDag dag(n);
  for (int i = 0; i < gates; ++i) {
    const int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % (n - 1));
    if (b >= a) ++b;
    if (rng() % 2 == 0) {
      dag.add(GateNode::named("cx", {a, b}));
    } else {
      dag.add(GateNode::unitary({a, b}, haar_random_2q(rng).matrix()));
    }
  }
  return consolidate_blocks(dag);
}

bool same_nodes(const CircuitDag& a, const CircuitDag& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const GateNode& x = a.node(static_cast<int>(i));
    const GateNode& y = b.node(static_cast<int>(i));
    if (x.name != y.name || x.qubits != y.qubits || x.params != y.params) return false;
    if (x.arity() == 2 && x.matrix2q() != y.matrix2q()) return false;
  }
  return true;
}

}  // namespace

TEST(Mirage, AcceptanceTable) {
  EXPECT_TRUE(accept_mirror(5.0, 4.0, AggressionLevel::Strict));
  EXPECT_FALSE(accept_mirror(5.0, 5.0, AggressionLevel::Strict));
  EXPECT_TRUE(accept_mirror(5.0, 5.0, AggressionLevel::Equal));
  EXPECT_FALSE(accept_mirror(5.0, 6.0, AggressionLevel::Equal));
  EXPECT_FALSE(accept_mirror(9.0, 1.0, AggressionLevel::Never));
  EXPECT_TRUE(accept_mirror(1.0, 9.0, AggressionLevel::Always));
  EXPECT_EQ(aggression_from_int(2), AggressionLevel::Equal);
  EXPECT_THROW(aggression_from_int(4), Error);
}

TEST(Mirage, ModeAndMetricNames) {
  EXPECT_EQ(parse_routing_mode("vswap"), RoutingMode::VSwap);
  EXPECT_EQ(to_string(RoutingMode::Mirage), "mirage");
  EXPECT_EQ(parse_trial_metric("swaps"), TrialMetric::Swaps);
  EXPECT_THROW(parse_routing_mode("qiskit"), Error);
}

TEST(Mirage, MirrorCostFavoursCloserSuccessors) {
  // v1, v2 sit on p1, p2; the next gates pair v1 with p3 and v2 with p0.
  CircuitDag dag(4);
  dag.add(GateNode::named("cx", {1, 2}));
  dag.add(GateNode::named("cx", {1, 3}));
  dag.add(GateNode::named("cx", {0, 2}));
  const CircuitDag c = consolidate_blocks(dag);
  const MirrorCosts m =
      mirror_cost_pair(c, 0, Layout::identity(4), {1, 2}, {}, CouplingMap::line(4), lookup());
  EXPECT_DOUBLE_EQ(m.current, 2.0 + 1.0);
  EXPECT_DOUBLE_EQ(m.trial, 1.0 + 1.0);
  EXPECT_TRUE(accept_mirror(m.current, m.trial, AggressionLevel::Strict));
}

TEST(Mirage, MirrorCostNeutralWithoutSuccessors) {
  CircuitDag dag(2);
  dag.add(GateNode::named("cx", {0, 1}));
  const MirrorCosts m = mirror_cost_pair(consolidate_blocks(dag), 0, Layout::identity(2), {}, {},
                                         CouplingMap::line(2), lookup());
  EXPECT_DOUBLE_EQ(m.current, m.trial);
  EXPECT_DOUBLE_EQ(m.current, 1.0);
}

TEST(Mirage, ControlledPhaseMirrorCostsMore) {
  CircuitDag dag(2);
  dag.add(GateNode::named("cp", {0, 1}, {1.0}));
  const MirrorCosts m = mirror_cost_pair(consolidate_blocks(dag), 0, Layout::identity(2), {}, {},
                                         CouplingMap::line(2), lookup());
  EXPECT_DOUBLE_EQ(m.current, 1.0);
  EXPECT_DOUBLE_EQ(m.trial, 1.5);
  const MirrorCosts zero = mirror_cost_pair(consolidate_blocks(dag), 0, Layout::identity(2), {},
                                            {}, CouplingMap::line(2), lookup(), 0.0);
  EXPECT_DOUBLE_EQ(zero.current, zero.trial);
}

TEST(Mirage, LevelZeroMatchesSabre) {
  Rng gen = make_rng(21);
  const CouplingMap cm = CouplingMap::grid(2, 3);
  for (int t = 0; t < 25; ++t) {
    const CircuitDag dag = random_circuit(6, 25, gen);
    Rng a = make_rng(77, 0, static_cast<std::uint64_t>(t));
    Rng b = make_rng(77, 0, static_cast<std::uint64_t>(t));
    const RoutedResult s = route(dag, cm, Layout::identity(6), SabreParams{}, a);
    const RoutedResult m = mirage_route(dag, cm, Layout::identity(6), SabreParams{}, lookup(),
                                        {AggressionLevel::Never, 1.0}, b);
    EXPECT_TRUE(same_nodes(s.mapped, m.mapped));
    EXPECT_EQ(s.final, m.final);
    EXPECT_EQ(m.mirrors_accepted, 0u);
  }
}

TEST(Mirage, EveryLevelPreservesSemantics) {
  Rng gen = make_rng(22);
  const CouplingMap maps[] = {CouplingMap::line(5), CouplingMap::ring(6), CouplingMap::grid(2, 3)};
  for (int t = 0; t < 40; ++t) {
    const CouplingMap& cm = maps[t % 3];
    const int n = 2 + static_cast<int>(gen() % (cm.num_qubits() - 1));
    const CircuitDag dag = random_circuit(n, 20, gen);
    for (int level = 0; level < 4; ++level) {
      Rng rng = make_rng(5, static_cast<std::uint64_t>(level), static_cast<std::uint64_t>(t));
      const Layout start = Layout::random(cm.num_qubits(), rng);
      RoutedResult r = mirage_route(dag, cm, start, SabreParams{}, lookup(),
                                    {aggression_from_int(level), 1.0}, rng);
      EXPECT_EQ(r.aggression, level);
      EXPECT_LE(r.mirrors_accepted, r.mirrors_evaluated);
      if (r.mirrors_evaluated > 0) {
        EXPECT_DOUBLE_EQ(r.mirror_acceptance_rate,
                         static_cast<double>(r.mirrors_accepted) / static_cast<double>(r.mirrors_evaluated));
      }
      attach_metrics(r, lookup());
      for (const GateNode& g : r.mapped.nodes())
        if (g.arity() == 2) {
      EXPECT_TRUE(cm.is_adjacent(g.qubits[0], g.qubits[1]));
    }
      EXPECT_TRUE(routing_equivalent(dag, r.mapped, r.initial.virtual_to_physical(),
                                     r.final.virtual_to_physical(), 1e-9))
          << "trial " << t << " level " << level;
      const CostMetrics again = metrics(r.mapped, lookup());
      EXPECT_DOUBLE_EQ(again.pulse_depth, r.metrics.pulse_depth);
    }
  }
}

TEST(Mirage, TrialPlanCounts) {
  TrialPlan plan;
  EXPECT_EQ(plan.counts(), (std::array<int, 4>{1, 9, 9, 1}));
  EXPECT_EQ(plan.level_of(0), AggressionLevel::Never);
  EXPECT_EQ(plan.level_of(1), AggressionLevel::Strict);
  EXPECT_EQ(plan.level_of(10), AggressionLevel::Equal);
  EXPECT_EQ(plan.level_of(19), AggressionLevel::Always);
  for (int total = 1; total < 50; ++total) {
    plan.total_trials = total;
    const auto c = plan.counts();
    EXPECT_EQ(c[0] + c[1] + c[2] + c[3], total);
  }
  const TrialPlan f = TrialPlan::fixed(7, AggressionLevel::Equal, TrialMetric::Swaps);
  EXPECT_EQ(f.counts(), (std::array<int, 4>{0, 0, 7, 0}));
}

TEST(Mirage, RunTrialsDeterministicAcrossJobs) {
  Rng gen = make_rng(23);
  const CircuitDag dag = random_circuit(6, 30, gen);
  const CouplingMap cm = CouplingMap::grid(2, 3);
  TrialPlan plan;
  plan.total_trials = 8;
  std::vector<TrialSummary> s1, s2;
  const RoutedResult a = run_trials(dag, cm, plan, SabreParams{}, lookup(),
                                    {RoutingMode::Mirage, 1.0, 4, 1}, &s1);
  const RoutedResult b = run_trials(dag, cm, plan, SabreParams{}, lookup(),
                                    {RoutingMode::Mirage, 1.0, 4, 3}, &s2);
  EXPECT_TRUE(same_nodes(a.mapped, b.mapped));
  EXPECT_EQ(a.trial, b.trial);
  ASSERT_EQ(s1.size(), 8u);
  for (std::size_t i = 0; i < s1.size(); ++i)
    EXPECT_EQ(s1[i].metrics.pulse_depth, s2[i].metrics.pulse_depth);
  for (const TrialSummary& s : s1) EXPECT_GE(s.metrics.pulse_depth, a.metrics.pulse_depth);
}

TEST(Mirage, TwoLocalAnchor) {
  const CircuitDag dag = consolidate_blocks(clean_input(lower(parse_qasm_file(
      std::filesystem::path(MIRAGE_TEST_DATA_DIR) / "bench/twolocal-4.qasm"))));
  const CouplingMap cm = CouplingMap::line(4);
  const RoutedResult m = run_trials(dag, cm, TrialPlan{}, SabreParams{}, lookup(),
                                    {RoutingMode::Mirage, 1.0, 7, 1});
  EXPECT_EQ(m.metrics.swap_count, 0u);
  EXPECT_LE(m.metrics.pulse_depth, 5.0 + 1e-9);
  const RoutedResult s = run_trials(dag, cm, TrialPlan{}, SabreParams{}, lookup(),
                                    {RoutingMode::Sabre, 1.0, 7, 1});
  EXPECT_GE(s.metrics.swap_count, 1u);
  EXPECT_GE(s.metrics.pulse_depth, m.metrics.pulse_depth);
}
