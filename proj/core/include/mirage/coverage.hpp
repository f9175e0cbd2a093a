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
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "mirage/basis.hpp"
#include "mirage/hull.hpp"
#include "mirage/rng.hpp"
#include "mirage/weyl.hpp"

namespace mirage {

struct ConvexRegion {
  std::vector<Halfspace> halfspaces;
  std::vector<Point3> vertices;
  /// Which side of the a = pi/4 fold the piece lives on; selects the
  /// affine branch used when mirroring it.
  bool upper = false;
  /// True for pieces produced by mirror_extend.
  bool mirrored = false;

  [[nodiscard]] bool contains(const Point3& x, double tol) const {
    return hull_contains(halfspaces, x, tol);
  }
};

struct CircuitPolytope {
  int k = 0;
  double cost = 0.0;
  /// Union over all pieces; includes every piece of the previous entry.
  std::vector<ConvexRegion> regions;
  /// Index of the first piece not inherited from the previous entry.
  std::size_t first_new = 0;
};

/// Membership with slack `tol`; on the c = 0 face both base-edge
/// representatives (a, b, 0) and (pi/2 - a, b, 0) are tried.
bool contains(const CircuitPolytope& p, const WeylPoint& point,
              double tol = kMembershipTol);

struct CoverageSet {
  BasisGateSpec basis;
  std::vector<CircuitPolytope> entries;
  bool mirror_extended = false;
  std::uint64_t seed = 0;
  std::uint64_t samples_per_k = 0;
};

/// Smallest k whose sampled region is expected to span the chamber.
int default_max_k(int n);

CoverageSet build_coverage_set(const BasisGateSpec& basis, int max_k,
                               std::uint64_t samples_per_k, std::uint64_t seed,
                               int completeness_probes = 10000);

CoverageSet mirror_extend(const CoverageSet& cs);

struct CostEntry {
  int k = 0;
  double cost = 0.0;
  friend bool operator==(const CostEntry&, const CostEntry&) = default;
};

/// First entry (ascending cost) containing the point; for mirror-extended
/// sets this is the cheaper of the point and its mirror. Uncached.
CostEntry min_cost(const CoverageSet& cs, const WeylPoint& point);

struct VolumeEstimate {
  double fraction = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

VolumeEstimate haar_volume(const CircuitPolytope& p, std::uint64_t samples,
                           Rng& rng);

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;

  [[nodiscard]] double hit_rate() const {
    const auto total = hits + misses;
    return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
  }
};

/// min_cost behind a thread-safe LRU cache keyed by coordinates quantised
/// to 1e-8 rad.
class CostLookup {
 public:
  explicit CostLookup(std::shared_ptr<const CoverageSet> cs,
                      std::size_t capacity = std::size_t{1} << 20,
                      bool enabled = true);

  CostEntry operator()(const WeylPoint& point) const;

  [[nodiscard]] const CoverageSet& coverage() const { return *cs_; }
  [[nodiscard]] std::shared_ptr<const CoverageSet> shared() const { return cs_; }
  [[nodiscard]] CacheStats stats() const;
  void clear() const;

 private:
  struct Key {
    std::int64_t a, b, c;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  using Item = std::pair<Key, CostEntry>;

  std::shared_ptr<const CoverageSet> cs_;
  std::size_t capacity_;
  bool enabled_;
  mutable std::mutex mu_;
  mutable std::list<Item> order_;
  mutable std::unordered_map<Key, std::list<Item>::iterator, KeyHash> index_;
  mutable CacheStats stats_;
};

/// Versioned binary sidecar; see sidecar.cpp for the layout.
inline constexpr std::uint32_t kSidecarVersion = 2;

void save_coverage(const CoverageSet& cs, const std::filesystem::path& path);
CoverageSet load_coverage(const std::filesystem::path& path);

/// Loads a sidecar when its header matches the request, otherwise builds
/// (and mirror-extends if asked) and rewrites the file.
CoverageSet load_or_build_coverage(const std::filesystem::path& path,
                                   const BasisGateSpec& basis, bool mirror,
                                   std::uint64_t samples_per_k,
                                   std::uint64_t seed);

}  // namespace mirage
