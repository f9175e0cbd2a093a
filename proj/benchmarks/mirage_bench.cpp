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

#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "mirage/coverage.hpp"
#include "mirage/mirage.hpp"
#include "mirage/qasm.hpp"
#include "mirage/sabre.hpp"
#include "mirage/topology.hpp"
#include "mirage/weyl.hpp"

namespace {

using namespace mirage;

std::shared_ptr<const CoverageSet> sqiswap_coverage() {
  static const auto cs = std::make_shared<const CoverageSet>(
      build_coverage_set(BasisGateSpec::niswap(2), default_max_k(2), 20000, 1));
  return cs;
}

CircuitDag load_bench(const std::string& name) {
  const auto path = std::string(MIRAGE_BENCH_DATA_DIR) + "/bench/" + name;
  return clean_input(unroll_3q(lower(parse_qasm_file(path))));
}

void BM_CanonicalCoordinates(benchmark::State& state) {
  Rng rng = make_rng(1);
  const Unitary2Q u = haar_random_2q(rng);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_coordinates(u));
}
BENCHMARK(BM_CanonicalCoordinates);

void BM_MinCostUncached(benchmark::State& state) {
  const auto cs = sqiswap_coverage();
  Rng rng = make_rng(2);
  const WeylPoint p = canonical_coordinates(haar_random_2q(rng));
  for (auto _ : state) benchmark::DoNotOptimize(min_cost(*cs, p));
}
BENCHMARK(BM_MinCostUncached);

void BM_MinCostCached(benchmark::State& state) {
  const CostLookup lookup(sqiswap_coverage());
  Rng rng = make_rng(3);
  const WeylPoint p = canonical_coordinates(haar_random_2q(rng));
  for (auto _ : state) benchmark::DoNotOptimize(lookup(p));
}
BENCHMARK(BM_MinCostCached);

void BM_SabreRoute(benchmark::State& state) {
  const CircuitDag dag = load_bench("qft-8.qasm");
  const CouplingMap cm = CouplingMap::grid(3, 3);
  const SabreParams params;
  for (auto _ : state) {
    Rng rng = make_rng(4);
    const Layout layout = Layout::random(cm.num_qubits(), rng);
    benchmark::DoNotOptimize(route(dag, cm, layout, params, rng));
  }
}
BENCHMARK(BM_SabreRoute)->Unit(benchmark::kMillisecond);

void BM_MirageRoute(benchmark::State& state) {
  const CircuitDag dag = load_bench("qft-8.qasm");
  const CouplingMap cm = CouplingMap::grid(3, 3);
  const CostLookup lookup(sqiswap_coverage());
  const SabreParams params;
  MirageOptions options;
  options.aggression = aggression_from_int(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Rng rng = make_rng(5);
    const Layout layout = Layout::random(cm.num_qubits(), rng);
    benchmark::DoNotOptimize(mirage_route(dag, cm, layout, params, lookup, options, rng));
  }
}
BENCHMARK(BM_MirageRoute)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
