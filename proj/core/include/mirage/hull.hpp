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

#include <array>
#include <vector>

namespace mirage {

using Point3 = std::array<double, 3>;

/// normal . x <= offset
struct Halfspace {
  Point3 normal{};
  double offset = 0.0;

  [[nodiscard]] double violation(const Point3& x) const {
    return normal[0] * x[0] + normal[1] * x[1] + normal[2] * x[2] - offset;
  }
};

struct Hull {
  std::vector<Halfspace> halfspaces;
  std::vector<Point3> vertices;
  /// Affine dimension of the input cloud (0..3); -1 for an empty input.
  int dimension = -1;
};

/// Convex hull of a 3-D point cloud as a halfspace list. Flat clouds
/// (points, segments, polygons) are handled by pinning the thin directions
/// with a pair of opposing halfspaces each, so membership tests stay uniform.
Hull convex_hull(const std::vector<Point3>& points, double flat_tol = 1e-9);

bool hull_contains(const std::vector<Halfspace>& halfspaces, const Point3& x,
                   double tol);

}  // namespace mirage
