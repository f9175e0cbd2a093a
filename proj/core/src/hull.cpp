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

#include "mirage/hull.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace mirage {

namespace {

using Vec3 = Eigen::Vector3d;

Vec3 to_vec(const Point3& p) { return {p[0], p[1], p[2]}; }
Point3 to_point(const Vec3& v) { return {v[0], v[1], v[2]}; }

// Points closer than this to a facet plane count as on the hull.
constexpr double kPlaneEps = 1e-11;
constexpr double kSnap = 1e-9;

void pin_direction(const Vec3& dir, const Vec3& centroid, double extent,
                   std::vector<Halfspace>& out) {
  const double mid = dir.dot(centroid);
  out.push_back({to_point(dir), mid + extent});
  out.push_back({to_point(-dir), -mid + extent});
}

double cross2(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
              const Eigen::Vector2d& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

struct Face {
  std::array<int, 3> v{};
  Vec3 normal;
  double offset = 0.0;
  std::vector<int> outside;
  bool alive = true;

  [[nodiscard]] double distance(const Vec3& p) const {
    return normal.dot(p) - offset;
  }
};

class QuickHull {
 public:
  explicit QuickHull(const std::vector<Vec3>& pts) : pts_(pts) {}

  bool run(const std::array<int, 4>& simplex) {
    const Vec3 inner = (pts_[simplex[0]] + pts_[simplex[1]] +
                        pts_[simplex[2]] + pts_[simplex[3]]) / 4.0;
    const int tri[4][3] = {{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {0, 2, 3}};
    for (const auto& t : tri) {
      int a = simplex[t[0]], b = simplex[t[1]], c = simplex[t[2]];
      Face f = make_face(a, b, c);
      if (f.distance(inner) > 0.0) {
        std::swap(b, c);
        f = make_face(a, b, c);
      }
      add_face(std::move(f));
    }
    std::vector<int> all(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i) all[i] = static_cast<int>(i);
    for (int s : simplex) all[s] = -1;
    std::vector<int> fresh{0, 1, 2, 3};
    assign(all, fresh);

    std::vector<int> stack{0, 1, 2, 3};
    while (!stack.empty()) {
      const int fi = stack.back();
      stack.pop_back();
      if (!faces_[fi].alive || faces_[fi].outside.empty()) continue;
      const int eye = farthest(faces_[fi]);
      if (!add_point(fi, eye, stack)) return false;
    }
    return true;
  }

  [[nodiscard]] const std::vector<Face>& faces() const { return faces_; }

 private:
  static std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }

  Face make_face(int a, int b, int c) const {
    Face f;
    f.v = {a, b, c};
    Vec3 n = (pts_[b] - pts_[a]).cross(pts_[c] - pts_[a]);
    const double len = n.norm();
    f.normal = len > 0.0 ? Vec3(n / len) : Vec3::Zero();
    f.offset = f.normal.dot(pts_[a]);
    return f;
  }

  int add_face(Face f) {
    const int id = static_cast<int>(faces_.size());
    for (int e = 0; e < 3; ++e) edges_[edge_key(f.v[e], f.v[(e + 1) % 3])] = id;
    faces_.push_back(std::move(f));
    return id;
  }

  int farthest(const Face& f) const {
    int best = f.outside.front();
    double dist = -1.0;
    for (int p : f.outside) {
      const double d = f.distance(pts_[p]);
      if (d > dist) {
        dist = d;
        best = p;
      }
    }
    return best;
  }

  void assign(const std::vector<int>& candidates, const std::vector<int>& to) {
    for (int p : candidates) {
      if (p < 0) continue;
      int best = -1;
      double dist = kPlaneEps;
      for (int fi : to) {
        const double d = faces_[fi].distance(pts_[p]);
        if (d > dist) {
          dist = d;
          best = fi;
        }
      }
      if (best >= 0) faces_[best].outside.push_back(p);
    }
  }

  bool add_point(int start, int eye, std::vector<int>& stack) {
    const Vec3& pe = pts_[eye];
    std::vector<int> visible{start};
    std::vector<char> mark(faces_.size(), 0);
    mark[start] = 1;
    std::vector<std::pair<int, int>> horizon;
    for (std::size_t i = 0; i < visible.size(); ++i) {
      const Face& f = faces_[visible[i]];
      for (int e = 0; e < 3; ++e) {
        const int a = f.v[e], b = f.v[(e + 1) % 3];
        const auto it = edges_.find(edge_key(b, a));
        if (it == edges_.end()) return false;
        const int nb = it->second;
        if (mark[nb] == 1) continue;
        if (mark[nb] == 0 && faces_[nb].distance(pe) > kPlaneEps) {
          mark[nb] = 1;
          visible.push_back(nb);
        } else {
          mark[nb] = 2;
          horizon.emplace_back(a, b);
        }
      }
    }
    std::vector<int> orphans;
    for (int fi : visible) {
      Face& f = faces_[fi];
      f.alive = false;
      for (int e = 0; e < 3; ++e) edges_.erase(edge_key(f.v[e], f.v[(e + 1) % 3]));
      for (int p : f.outside)
        if (p != eye) orphans.push_back(p);
      f.outside.clear();
      f.outside.shrink_to_fit();
    }
    std::vector<int> fresh;
    fresh.reserve(horizon.size());
    for (const auto& [a, b] : horizon) fresh.push_back(add_face(make_face(a, b, eye)));
    assign(orphans, fresh);
    for (int fi : fresh)
      if (!faces_[fi].outside.empty()) stack.push_back(fi);
    return true;
  }

  const std::vector<Vec3>& pts_;
  std::vector<Face> faces_;
  std::unordered_map<std::uint64_t, int> edges_;
};

std::vector<Halfspace> merge_halfspaces(std::vector<Halfspace> hs) {
  std::sort(hs.begin(), hs.end(), [](const Halfspace& x, const Halfspace& y) {
    return x.normal < y.normal;
  });
  std::vector<Halfspace> out;
  for (const Halfspace& h : hs) {
    bool merged = false;
    // Coplanar facets sort next to each other; scan a short window back.
    for (std::size_t j = out.size(); j-- > 0 && out.size() - j <= 8;) {
      Halfspace& o = out[j];
      const double dn = std::abs(o.normal[0] - h.normal[0]) +
                        std::abs(o.normal[1] - h.normal[1]) +
                        std::abs(o.normal[2] - h.normal[2]);
      if (dn < 1e-10 && std::abs(o.offset - h.offset) < 1e-10) {
        o.offset = std::max(o.offset, h.offset);
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(h);
  }
  return out;
}

Hull hull_2d(const std::vector<Vec3>& pts, const Vec3& centroid, const Vec3& u,
             const Vec3& v, const Vec3& normal, double thickness) {
  Hull out;
  out.dimension = 2;
  pin_direction(normal, centroid, thickness, out.halfspaces);
  std::vector<std::pair<Eigen::Vector2d, int>> proj(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 d = pts[i] - centroid;
    proj[i] = {{d.dot(u), d.dot(v)}, static_cast<int>(i)};
  }
  std::sort(proj.begin(), proj.end(), [](const auto& x, const auto& y) {
    return x.first.x() < y.first.x() ||
           (x.first.x() == y.first.x() && x.first.y() < y.first.y());
  });
  // Andrew's monotone chain; drops collinear points.
  std::vector<std::pair<Eigen::Vector2d, int>> chain(2 * proj.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    while (k >= 2 && cross2(chain[k - 2].first, chain[k - 1].first,
                            proj[i].first) <= 1e-14)
      --k;
    chain[k++] = proj[i];
  }
  for (std::size_t i = proj.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross2(chain[k - 2].first, chain[k - 1].first,
                             proj[i].first) <= 1e-14)
      --k;
    chain[k++] = proj[i];
  }
  chain.resize(k > 1 ? k - 1 : k);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Eigen::Vector2d& a = chain[i].first;
    const Eigen::Vector2d& b = chain[(i + 1) % chain.size()].first;
    Eigen::Vector2d n2(b.y() - a.y(), a.x() - b.x());
    const double len = n2.norm();
    if (len == 0.0) continue;
    n2 /= len;
    const Vec3 n3 = n2.x() * u + n2.y() * v;
    out.halfspaces.push_back({to_point(n3), n3.dot(pts[chain[i].second])});
    out.vertices.push_back(to_point(pts[chain[i].second]));
  }
  return out;
}

}  // namespace

bool hull_contains(const std::vector<Halfspace>& halfspaces, const Point3& x,
                   double tol) {
  for (const Halfspace& h : halfspaces)
    if (h.violation(x) > tol) return false;
  return !halfspaces.empty();
}

Hull convex_hull(const std::vector<Point3>& points, double flat_tol) {
  Hull out;
  if (points.empty()) return out;
  // Snapping to a fine grid merges near-duplicates, whose facets would
  // otherwise carry meaningless normals.
  std::vector<Point3> snapped;
  snapped.reserve(points.size());
  for (const Point3& p : points) {
    Point3 q;
    for (int j = 0; j < 3; ++j) q[j] = std::round(p[j] / kSnap) * kSnap;
    snapped.push_back(q);
  }
  std::sort(snapped.begin(), snapped.end());
  snapped.erase(std::unique(snapped.begin(), snapped.end()), snapped.end());
  std::vector<Vec3> pts;
  pts.reserve(snapped.size());
  for (const Point3& p : snapped) pts.push_back(to_vec(p));

  Vec3 centroid = Vec3::Zero();
  for (const Vec3& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const Vec3& p : pts) cov += (p - centroid) * (p - centroid).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  const Eigen::Matrix3d axes = eig.eigenvectors();

  std::array<double, 3> lo{}, hi{};
  for (int j = 0; j < 3; ++j) {
    lo[j] = hi[j] = 0.0;
    for (const Vec3& p : pts) {
      const double t = axes.col(j).dot(p - centroid);
      lo[j] = std::min(lo[j], t);
      hi[j] = std::max(hi[j], t);
    }
  }
  auto extent = [&](int j) { return std::max(-lo[j], hi[j]); };
  // Eigenvalues ascend, so thin directions come first.
  int flat = 0;
  while (flat < 3 && hi[flat] - lo[flat] <= flat_tol) ++flat;

  if (flat == 3) {
    out.dimension = 0;
    for (int j = 0; j < 3; ++j)
      pin_direction(axes.col(j), centroid, extent(j), out.halfspaces);
    out.vertices.push_back(to_point(centroid));
    return out;
  }
  if (flat == 2) {
    out.dimension = 1;
    for (int j = 0; j < 2; ++j)
      pin_direction(axes.col(j), centroid, extent(j), out.halfspaces);
    const Vec3 dir = axes.col(2);
    const double mid = dir.dot(centroid);
    out.halfspaces.push_back({to_point(dir), mid + hi[2]});
    out.halfspaces.push_back({to_point(-dir), -(mid + lo[2])});
    out.vertices.push_back(to_point(centroid + lo[2] * dir));
    out.vertices.push_back(to_point(centroid + hi[2] * dir));
    return out;
  }
  if (flat == 1) {
    return hull_2d(pts, centroid, axes.col(1), axes.col(2), axes.col(0),
                   extent(0));
  }

  // Initial simplex from axis extremes.
  std::array<int, 6> ext{};
  for (int j = 0; j < 3; ++j) {
    int mn = 0, mx = 0;
    for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
      if (pts[i][j] < pts[mn][j]) mn = i;
      if (pts[i][j] > pts[mx][j]) mx = i;
    }
    ext[2 * j] = mn;
    ext[2 * j + 1] = mx;
  }
  int i0 = ext[0], i1 = ext[1];
  double best = -1.0;
  for (int x : ext)
    for (int y : ext) {
      const double d = (pts[x] - pts[y]).squaredNorm();
      if (d > best) {
        best = d;
        i0 = x;
        i1 = y;
      }
    }
  const Vec3 line = (pts[i1] - pts[i0]).normalized();
  int i2 = i0;
  best = -1.0;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const Vec3 d = pts[i] - pts[i0];
    const double dist = (d - d.dot(line) * line).squaredNorm();
    if (dist > best) {
      best = dist;
      i2 = i;
    }
  }
  const Vec3 plane = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = i0;
  best = -1.0;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double dist = std::abs(plane.dot(pts[i] - pts[i0]));
    if (dist > best) {
      best = dist;
      i3 = i;
    }
  }
  QuickHull qh(pts);
  if (!qh.run({i0, i1, i2, i3})) {
    throw std::runtime_error("convex_hull: facet graph lost an edge");
  }
  out.dimension = 3;
  std::vector<char> used(pts.size(), 0);
  for (const Face& f : qh.faces()) {
    if (!f.alive) continue;
    out.halfspaces.push_back({to_point(f.normal), f.offset});
    for (int v : f.v) used[v] = 1;
  }
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (used[i]) out.vertices.push_back(snapped[i]);
  out.halfspaces = merge_halfspaces(std::move(out.halfspaces));
  return out;
}

}  // namespace mirage
