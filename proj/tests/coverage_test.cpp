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

#include "mirage/coverage.hpp"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "mirage/errors.hpp"

using namespace mirage;

namespace {

const CoverageSet& sqiswap_set() {
  static const CoverageSet cs = build_coverage_set(BasisGateSpec::sqiswap(), 3, 20000, 1);
  return cs;
}

const CoverageSet& sqiswap_mirror_set() {
  static const CoverageSet cs = mirror_extend(sqiswap_set());
  return cs;
}

WeylPoint random_chamber_point(Rng& rng) {
  while (true) {
    const WeylPoint p{uniform01(rng) * kHalfPi, uniform01(rng) * kQuarterPi,
                      uniform01(rng) * kQuarterPi};
    if (p.in_chamber(0.0)) return p;
  }
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mirage_cov_" + name);
}

}  // namespace

TEST(Coverage, UnitCosts) {
  EXPECT_DOUBLE_EQ(BasisGateSpec::niswap(1).unit_cost(), 1.0);
  EXPECT_DOUBLE_EQ(BasisGateSpec::sqiswap().unit_cost(), 0.5);
  EXPECT_EQ(default_max_k(2), 3);
}

TEST(Coverage, EntriesSortedWithCosts) {
  const CoverageSet& cs = sqiswap_set();
  ASSERT_EQ(cs.entries.size(), 4u);
  for (std::size_t k = 0; k < cs.entries.size(); ++k) {
    EXPECT_EQ(cs.entries[k].k, static_cast<int>(k));
    EXPECT_DOUBLE_EQ(cs.entries[k].cost, 0.5 * static_cast<double>(k));
  }
}

TEST(Coverage, AnchorMemberships) {
  const CoverageSet& cs = sqiswap_set();
  const auto& e = cs.entries;
  EXPECT_TRUE(contains(e[0], anchors::kIdentity));
  EXPECT_FALSE(contains(e[0], anchors::kCnot));
  EXPECT_TRUE(contains(e[1], anchors::kSqrtIswap));
  EXPECT_FALSE(contains(e[1], anchors::kCnot));
  EXPECT_TRUE(contains(e[2], anchors::kCnot));
  EXPECT_TRUE(contains(e[2], anchors::kIswap));
  EXPECT_FALSE(contains(e[2], anchors::kSwap));
  EXPECT_TRUE(contains(e[3], anchors::kSwap));
  // Outside the chamber.
  for (const auto& entry : e) EXPECT_FALSE(contains(entry, {1.0, 1.0, 0.9}));
}

TEST(Coverage, HullVerticesAreMembers) {
  for (const auto& entry : sqiswap_set().entries)
    for (const auto& r : entry.regions)
      for (const auto& v : r.vertices) EXPECT_TRUE(contains(entry, {v[0], v[1], v[2]}, 1e-6));
}

TEST(Coverage, MinCostAnchors) {
  const CoverageSet& cs = sqiswap_set();
  EXPECT_EQ(min_cost(cs, anchors::kCnot), (CostEntry{2, 1.0}));
  EXPECT_EQ(min_cost(cs, anchors::kSwap), (CostEntry{3, 1.5}));
  EXPECT_EQ(min_cost(cs, anchors::kIdentity), (CostEntry{0, 0.0}));
  EXPECT_EQ(min_cost(sqiswap_mirror_set(), anchors::kSwap), (CostEntry{0, 0.0}));
  EXPECT_EQ(min_cost(sqiswap_mirror_set(), anchors::kCnot), (CostEntry{2, 1.0}));
}

TEST(Coverage, NestingAndVolumes) {
  const CoverageSet& cs = sqiswap_set();
  double prev = -1.0;
  for (const auto& entry : cs.entries) {
    Rng rng = make_rng(9);
    const double v = haar_volume(entry, 5000, rng).fraction;
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_DOUBLE_EQ(prev, 1.0);
  Rng a = make_rng(10), b = make_rng(10);
  EXPECT_LE(haar_volume(cs.entries[2], 5000, a).fraction,
            haar_volume(sqiswap_mirror_set().entries[2], 5000, b).fraction);
}

TEST(Coverage, MirrorExtensionConsistency) {
  const CoverageSet& std_set = sqiswap_set();
  const CoverageSet& ext = sqiswap_mirror_set();
  ASSERT_TRUE(ext.mirror_extended);
  Rng rng = make_rng(11);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const WeylPoint p = random_chamber_point(rng);
    for (std::size_t k = 0; k < ext.entries.size(); ++k) {
      const bool direct = contains(ext.entries[k], p);
      const bool via = contains(std_set.entries[k], p) ||
                       contains(std_set.entries[k], mirror_coordinates(p));
      if (direct != via) ++mismatches;
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(Coverage, CacheTransparency) {
  auto cs = std::make_shared<const CoverageSet>(sqiswap_set());
  const CostLookup cached(cs);
  const CostLookup uncached(cs, 1 << 20, /*enabled=*/false);
  Rng rng = make_rng(12);
  std::vector<WeylPoint> pool;
  for (int i = 0; i < 200; ++i) pool.push_back(random_chamber_point(rng));
  for (int i = 0; i < 20000; ++i) {
    const WeylPoint p = pool[static_cast<std::size_t>(rng() % pool.size())];
    ASSERT_EQ(cached(p), uncached(p));
    ASSERT_EQ(cached(p), min_cost(*cs, p));
  }
  EXPECT_GT(cached.stats().hit_rate(), 0.5);
  EXPECT_EQ(uncached.stats().hits, 0u);
}

TEST(Coverage, SidecarRoundTrip) {
  const auto path = temp_path("roundtrip.bin");
  save_coverage(sqiswap_mirror_set(), path);
  const CoverageSet loaded = load_coverage(path);
  EXPECT_EQ(loaded.basis, sqiswap_mirror_set().basis);
  EXPECT_TRUE(loaded.mirror_extended);
  EXPECT_EQ(loaded.seed, 1u);
  EXPECT_EQ(loaded.samples_per_k, 20000u);
  Rng rng = make_rng(13);
  for (int i = 0; i < 2000; ++i) {
    const WeylPoint p = random_chamber_point(rng);
    EXPECT_EQ(min_cost(loaded, p), min_cost(sqiswap_mirror_set(), p));
  }
  std::filesystem::remove(path);
}

TEST(Coverage, SidecarRejectsGarbage) {
  const auto path = temp_path("garbage.bin");
  {
    std::ofstream out(path, std::ios::binary);
    out << "not a sidecar";
  }
  try {
    load_coverage(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SidecarMismatch);
  }
  // load_or_build replaces a stale file.
  const CoverageSet cs = load_or_build_coverage(path, BasisGateSpec::sqiswap(), false, 2000, 4);
  EXPECT_EQ(cs.samples_per_k, 2000u);
  EXPECT_EQ(load_coverage(path).seed, 4u);
  std::filesystem::remove(path);
}

TEST(Coverage, IncompleteBuildRaises) {
  try {
    build_coverage_set(BasisGateSpec::sqiswap(), 2, 2000, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoverageIncomplete);
  }
}
