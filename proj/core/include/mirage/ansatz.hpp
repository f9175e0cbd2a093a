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

#include <span>
#include <utility>
#include <vector>

#include "mirage/basis.hpp"
#include "mirage/types.hpp"

namespace mirage {

/// u3(theta, phi, lambda) in the OpenQASM convention.
Mat2 u3(double theta, double phi, double lambda);

/// Euler angles (theta, phi, lambda) with u3(angles) equal to `u` up to phase.
std::array<double, 3> u3_angles(const Mat2& u);

/// Factor a local 4x4 gate into (first, second) with
/// local_pair(first, second) equal to `m` up to global phase.
std::pair<Mat2, Mat2> split_local(const Mat4& m);

/// The 96 local gates (C x C)(P x I) that realise Weyl-group moves
/// (coordinate permutations, pairwise sign flips, pi/2 shifts).
const std::vector<Mat4>& weyl_group_locals();

/// Interleaved basis-gate template L_k B L_{k-1} ... B L_0 with
/// L_j = u3 (x) u3. Six parameters per layer, qubit 0's angles first.
class Ansatz {
 public:
  Ansatz(const BasisGateSpec& basis, int k);

  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int num_params() const { return 6 * (k_ + 1); }
  /// Parameters of the k-1 layers strictly between basis applications.
  [[nodiscard]] int num_interior_params() const {
    return k_ > 0 ? 6 * (k_ - 1) : 0;
  }

  [[nodiscard]] Mat4 evaluate(std::span<const double> params) const;
  /// B L_{k-1} B ... L_1 B; identity for k = 0.
  [[nodiscard]] Mat4 interior(std::span<const double> params) const;
  /// One more application: B * local * inner.
  [[nodiscard]] Mat4 extend(const Mat4& local, const Mat4& inner) const;

  [[nodiscard]] static Mat4 layer(std::span<const double> six);

 private:
  Mat4 basis_;
  int k_;
};

}  // namespace mirage
