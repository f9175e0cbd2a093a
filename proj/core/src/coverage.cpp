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

#include <algorithm>
#include <cmath>

#include "mirage/ansatz.hpp"
#include "mirage/errors.hpp"
#include "mirage/optimizer.hpp"

namespace mirage {

namespace {

// Points this close to the fold are assigned to both branches.
constexpr double kFoldSlack = 1e-12;
constexpr double kBaseFace = 1e-9;
// Caps the exhaustive (vertex x Weyl move) sweep per level.
constexpr std::size_t kMaxSweepVertices = 2048;

Mat2 rz(double t) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, -t / 2.0);
  m(1, 1) = std::polar(1.0, t / 2.0);
  return m;
}

// exp(i (x X + y Y + z Z))
Mat2 pauli_exp(double x, double y, double z) {
  const double r = std::sqrt(x * x + y * y + z * z);
  const Complex i(0.0, 1.0);
  Mat2 m = Mat2::Identity() * std::cos(r);
  if (r > 0.0) {
    const double s = std::sin(r) / r;
    m(0, 0) += i * s * z;
    m(1, 1) -= i * s * z;
    m(0, 1) += i * s * Complex(x, -y);
    m(1, 0) += i * s * Complex(x, y);
  }
  return m;
}

// Mixture of generic and Weyl-aligned locals: the aligned ones land the
// product on polytope faces and vertices, which plain Haar draws almost
// never reach.
Mat4 sample_local(Rng& rng) {
  const double r = uniform01(rng);
  if (r < 0.4) return local_pair(haar_random_1q(rng), haar_random_1q(rng));
  const auto& weyl = weyl_group_locals();
  const Mat4& w = weyl[static_cast<std::size_t>(uniform01(rng) * weyl.size()) %
                       weyl.size()];
  if (r < 0.6) return w;
  if (r < 0.8) {
    const double t0 = uniform01(rng) * 4.0 * kPi;
    const double t1 = uniform01(rng) * 4.0 * kPi;
    return w * local_pair(rz(t0), rz(t1));
  }
  constexpr double kJitter = 0.05;
  std::array<double, 6> g{};
  for (double& v : g) v = kJitter * standard_normal(rng);
  return w * local_pair(pauli_exp(g[0], g[1], g[2]), pauli_exp(g[3], g[4], g[5]));
}

/// Ansatz instances steered toward the chamber corners. Random sampling
/// rarely lands near the faces, so the hulls would otherwise fall short of
/// the corners by roughly the sample spacing. Every returned point is the
/// coordinate of an actual k-layer circuit.
std::vector<Point3> corner_samples(const BasisGateSpec& basis, int k, Rng& rng) {
  const Ansatz ansatz(basis, k);
  const int dim = ansatz.num_interior_params();
  std::vector<Point3> out;
  if (dim == 0) return out;
  constexpr int kRestarts = 4;
  constexpr int kPolish = 3;
  constexpr double kReached = 1e-10;
  NelderMeadOptions opts;
  opts.max_evals = 200 * dim;
  opts.ftol = 1e-15;
  opts.target = kReached;
  for (const WeylPoint& corner :
       {anchors::kIdentity, anchors::kCnot, anchors::kIswap, anchors::kSwap}) {
    // Base-face corners also appear as (pi/2 - a, b, 0).
    const Point3 direct = corner.as_array();
    const Point3 folded{kHalfPi - corner.a, corner.b, corner.c};
    auto distance = [&](std::span<const double> x) {
      const Point3 q =
          canonical_coordinates(Unitary2Q::trusted(ansatz.interior(x))).as_array();
      double d0 = 0.0, d1 = 0.0;
      for (int j = 0; j < 3; ++j) {
        d0 += (q[j] - direct[j]) * (q[j] - direct[j]);
        d1 += (q[j] - folded[j]) * (q[j] - folded[j]);
      }
      return std::sqrt(corner.c == 0.0 ? std::min(d0, d1) : d0);
    };
    OptimizeResult best;
    for (int r = 0; r < kRestarts && best.value > kReached; ++r) {
      std::vector<double> x0(static_cast<std::size_t>(dim));
      for (double& x : x0) x = (2.0 * uniform01(rng) - 1.0) * kPi;
      OptimizeResult res = nelder_mead(distance, x0, opts);
      if (res.value < best.value) best = std::move(res);
    }
    // Restarting from the incumbent with a smaller simplex refines it.
    NelderMeadOptions polish = opts;
    for (int p = 0; p < kPolish && best.value > kReached; ++p) {
      polish.initial_step *= 0.1;
      OptimizeResult res = nelder_mead(distance, best.x, polish);
      if (res.value < best.value) best = std::move(res);
    }
    out.push_back(canonical_coordinates(Unitary2Q::trusted(ansatz.interior(best.x))).as_array());
  }
  return out;
}

std::vector<ConvexRegion> branch_pieces(const std::vector<Point3>& pts) {
  std::vector<Point3> lower, upper;
  for (const Point3& p : pts) {
    if (p[0] <= kQuarterPi + kFoldSlack) lower.push_back(p);
    if (p[0] >= kQuarterPi - kFoldSlack) upper.push_back(p);
    // On the base face (a, b, 0) ~ (pi/2 - a, b, 0); the image lands in the
    // opposite half.
    if (p[2] < kBaseFace) {
      const Point3 image{kHalfPi - p[0], p[1], p[2]};
      if (image[0] >= kQuarterPi - kFoldSlack) upper.push_back(image);
      if (image[0] <= kQuarterPi + kFoldSlack) lower.push_back(image);
    }
  }
  std::vector<ConvexRegion> out;
  for (int side = 0; side < 2; ++side) {
    const auto& cloud = side == 0 ? lower : upper;
    if (cloud.empty()) continue;
    Hull h = convex_hull(cloud);
    ConvexRegion r;
    r.halfspaces = std::move(h.halfspaces);
    r.vertices = std::move(h.vertices);
    r.upper = side == 1;
    out.push_back(std::move(r));
  }
  return out;
}

bool region_contains(const ConvexRegion& r, const WeylPoint& p, double tol) {
  if (r.contains(p.as_array(), tol)) return true;
  return p.c <= tol && r.contains({kHalfPi - p.a, p.b, p.c}, tol);
}

bool contains_from(const CircuitPolytope& p, const WeylPoint& point,
                   std::size_t first, double tol) {
  for (std::size_t i = first; i < p.regions.size(); ++i)
    if (region_contains(p.regions[i], point, tol)) return true;
  return false;
}

}  // namespace

bool contains(const CircuitPolytope& p, const WeylPoint& point, double tol) {
  return contains_from(p, point, 0, tol);
}

int default_max_k(int n) { return std::max(3, (3 * n + 1) / 2); }

CoverageSet build_coverage_set(const BasisGateSpec& basis, int max_k,
                               std::uint64_t samples_per_k, std::uint64_t seed,
                               int completeness_probes) {
  if (max_k < 0) throw Error(ErrorCode::Usage, "max_k must be >= 0");
  CoverageSet cs;
  cs.basis = basis;
  cs.seed = seed;
  cs.samples_per_k = samples_per_k;

  Rng rng = make_rng(seed, /*stream=*/1);
  const Ansatz step(basis, 1);
  const auto& weyl = weyl_group_locals();

  std::vector<Point3> prev_points{{0.0, 0.0, 0.0}};
  std::vector<Point3> prev_vertices{{0.0, 0.0, 0.0}};

  CircuitPolytope zero;
  zero.k = 0;
  zero.cost = 0.0;
  zero.regions = branch_pieces(prev_points);
  cs.entries.push_back(zero);

  for (int k = 1; k <= max_k; ++k) {
    std::vector<Point3> sweep = prev_vertices;
    if (sweep.size() > kMaxSweepVertices) {
      std::shuffle(sweep.begin(), sweep.end(), rng);
      sweep.resize(kMaxSweepVertices);
    }
    std::vector<Point3> points;
    points.reserve(samples_per_k + sweep.size() * weyl.size());
    auto push = [&](const Mat4& u) {
      points.push_back(canonical_coordinates(Unitary2Q::trusted(u)).as_array());
    };
    auto gate_of = [](const Point3& x) {
      return canonical_gate(canonicalize(x[0], x[1], x[2])).matrix();
    };
    for (const Point3& v : sweep) {
      const Mat4 g = gate_of(v);
      for (const Mat4& w : weyl) push(step.extend(w, g));
    }
    const std::uint64_t from_vertices =
        std::min<std::uint64_t>(samples_per_k, 8 * prev_vertices.size());
    for (std::uint64_t i = 0; i < samples_per_k; ++i) {
      const Point3& x =
          i < from_vertices
              ? prev_vertices[i % prev_vertices.size()]
              : prev_points[static_cast<std::size_t>(uniform01(rng) *
                                                     prev_points.size()) %
                            prev_points.size()];
      push(step.extend(sample_local(rng), gate_of(x)));
    }

    Rng corner_rng = make_rng(seed, /*stream=*/5, static_cast<std::uint64_t>(k));
    for (const Point3& c : corner_samples(basis, k, corner_rng)) points.push_back(c);

    CircuitPolytope entry;
    entry.k = k;
    entry.cost = k * basis.unit_cost();
    entry.regions = cs.entries.back().regions;
    entry.first_new = entry.regions.size();
    std::vector<ConvexRegion> fresh = branch_pieces(points);
    prev_vertices.clear();
    for (const ConvexRegion& r : fresh)
      for (const Point3& v : r.vertices) {
        const WeylPoint c = canonicalize(v[0], v[1], v[2]);
        prev_vertices.push_back(c.as_array());
      }
    for (ConvexRegion& r : fresh) entry.regions.push_back(std::move(r));
    cs.entries.push_back(std::move(entry));
    prev_points = std::move(points);
  }

  if (completeness_probes > 0) {
    Rng probe = make_rng(seed, /*stream=*/2);
    int missed = 0;
    for (int i = 0; i < completeness_probes; ++i) {
      const WeylPoint p = canonical_coordinates(haar_random_2q(probe));
      if (!contains(cs.entries.back(), p)) ++missed;
    }
    if (missed > 0) {
      throw Error(ErrorCode::CoverageIncomplete,
                  "region at k=" + std::to_string(max_k) + " misses " +
                      std::to_string(missed) + " of " +
                      std::to_string(completeness_probes) + " Haar probes");
    }
  }
  return cs;
}

CoverageSet mirror_extend(const CoverageSet& cs) {
  if (cs.mirror_extended) return cs;
  CoverageSet out = cs;
  out.mirror_extended = true;
  for (CircuitPolytope& entry : out.entries) {
    std::vector<ConvexRegion> extended;
    for (const ConvexRegion& r : entry.regions) {
      extended.push_back(r);
      std::vector<Point3> image;
      image.reserve(r.vertices.size());
      for (const Point3& v : r.vertices) image.push_back(mirror_branch(v, !r.upper));
      Hull h = convex_hull(image);
      ConvexRegion m;
      m.halfspaces = std::move(h.halfspaces);
      m.vertices = std::move(h.vertices);
      m.upper = !r.upper;
      m.mirrored = true;
      extended.push_back(std::move(m));
    }
    // Every piece is followed by its image, so inherited pieces stay first.
    entry.regions = std::move(extended);
    entry.first_new *= 2;
  }
  return out;
}

CostEntry min_cost(const CoverageSet& cs, const WeylPoint& point) {
  for (const CircuitPolytope& entry : cs.entries) {
    if (contains_from(entry, point, entry.first_new, kMembershipTol))
      return {entry.k, entry.cost};
  }
  const CircuitPolytope& last = cs.entries.back();
  return {last.k, last.cost};
}

VolumeEstimate haar_volume(const CircuitPolytope& p, std::uint64_t samples,
                           Rng& rng) {
  VolumeEstimate v;
  v.samples = samples;
  if (samples == 0) return v;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < samples; ++i)
    if (contains(p, canonical_coordinates(haar_random_2q(rng)))) ++hits;
  const double f = static_cast<double>(hits) / static_cast<double>(samples);
  v.fraction = f;
  v.std_error = std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  return v;
}

std::size_t CostLookup::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = static_cast<std::uint64_t>(k.a) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(k.b) + 0x7F4A7C159E3779B9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(k.c) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

CostLookup::CostLookup(std::shared_ptr<const CoverageSet> cs,
                       std::size_t capacity, bool enabled)
    : cs_(std::move(cs)), capacity_(std::max<std::size_t>(1, capacity)),
      enabled_(enabled) {}

CostEntry CostLookup::operator()(const WeylPoint& point) const {
  if (!enabled_) return min_cost(*cs_, point);
  constexpr double kQuantum = 1e-8;
  const Key key{std::llround(point.a / kQuantum), std::llround(point.b / kQuantum),
                std::llround(point.c / kQuantum)};
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = index_.find(key);
    if (it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      ++stats_.hits;
      return it->second->second;
    }
    ++stats_.misses;
  }
  // Computed outside the lock; a racing insert of the same key is harmless.
  const CostEntry value = min_cost(*cs_, point);
  std::lock_guard<std::mutex> lock(mu_);
  const auto it = index_.find(key);
  if (it != index_.end()) {
    it->second->second = value;
    order_.splice(order_.begin(), order_, it->second);
    return value;
  }
  order_.emplace_front(key, value);
  index_.emplace(key, order_.begin());
  if (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
  return value;
}

CacheStats CostLookup::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

void CostLookup::clear() const {
  std::lock_guard<std::mutex> lock(mu_);
  order_.clear();
  index_.clear();
  stats_ = {};
}

}  // namespace mirage
