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

#include "mirage/rng.hpp"
#include "mirage/types.hpp"

namespace mirage {

/// Canonical coordinates (a, b, c) of a two-qubit local-equivalence class, in
/// radians, for the representative exp(i(a XX + b YY + c ZZ)).
///
/// The chamber is the tetrahedron with vertices (0,0,0), (pi/2,0,0),
/// (pi/4,pi/4,0) and (pi/4,pi/4,pi/4). On the base face c = 0 the points
/// (a,b,0) and (pi/2-a,b,0) name the same class; canonicalization picks
/// a <= pi/4 there. CNOT sits at (pi/4,0,0), iSWAP at (pi/4,pi/4,0) and SWAP at
/// (pi/4,pi/4,pi/4).
struct WeylPoint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  [[nodiscard]] std::array<double, 3> as_array() const { return {a, b, c}; }
  [[nodiscard]] bool in_chamber(double slack = 1e-12) const;
  friend bool operator==(const WeylPoint&, const WeylPoint&) = default;
};

namespace anchors {
inline constexpr WeylPoint kIdentity{0.0, 0.0, 0.0};
inline constexpr WeylPoint kCnot{kQuarterPi, 0.0, 0.0};
inline constexpr WeylPoint kIswap{kQuarterPi, kQuarterPi, 0.0};
inline constexpr WeylPoint kSwap{kQuarterPi, kQuarterPi, kQuarterPi};
inline constexpr WeylPoint kSqrtIswap{kPi / 8.0, kPi / 8.0, 0.0};
}  // namespace anchors

/// A 4x4 unitary. Construction through from_matrix() validates U^dagger U = I
/// to kUnitarityTol in Frobenius norm.
class Unitary2Q {
 public:
  Unitary2Q() : m_(Mat4::Identity()) {}

  static Unitary2Q from_matrix(const Mat4& m, double tol = kUnitarityTol);
  /// Skips the unitarity check; for products of already-validated unitaries.
  static Unitary2Q trusted(const Mat4& m) { return Unitary2Q(m); }

  [[nodiscard]] const Mat4& matrix() const noexcept { return m_; }
  [[nodiscard]] Unitary2Q adjoint() const { return Unitary2Q(m_.adjoint()); }

  friend Unitary2Q operator*(const Unitary2Q& x, const Unitary2Q& y) {
    return Unitary2Q(x.m_ * y.m_);
  }

 private:
  explicit Unitary2Q(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

[[nodiscard]] bool is_unitary(const MatX& m, double tol = kUnitarityTol);

/// Haar-distributed element of U(4): Ginibre matrix, QR, phase-fixed R diagonal.
Unitary2Q haar_random_2q(Rng& rng);
/// Haar-distributed element of U(2).
Mat2 haar_random_1q(Rng& rng);

/// Basis in which local gates are real orthogonal and XX, YY, ZZ diagonal.
const Mat4& magic_basis();

/// Applies Weyl-group moves (permutations, paired sign flips, shifts by pi/2)
/// until the point lies in the chamber.
WeylPoint canonicalize(double a, double b, double c);

/// Throws NonUnitaryInput on a matrix that fails the unitarity check.
WeylPoint canonical_coordinates(const Mat4& u);
WeylPoint canonical_coordinates(const Unitary2Q& u);

/// exp(i(a XX + b YY + c ZZ)). Throws OutOfChamber.
Unitary2Q canonical_gate(const WeylPoint& p);

/// Coordinates of SWAP * U given the coordinates of U. Throws OutOfChamber.
WeylPoint mirror_coordinates(const WeylPoint& p);

/// The same piecewise map without re-canonicalization, applied with a fixed
/// branch (lower: a <= pi/4). Affine on each branch; the coverage module uses it
/// to map whole convex pieces.
std::array<double, 3> mirror_branch(const std::array<double, 3>& p,
                                    bool lower_branch);

/// SWAP * U: U followed by a SWAP of its output wires.
Unitary2Q mirror_unitary(const Unitary2Q& u);

/// Max-abs coordinate difference, treating the two representatives of a point
/// on the c = 0 face as equal.
double coordinate_distance(const WeylPoint& p, const WeylPoint& q);

bool local_equivalent(const Unitary2Q& u, const Unitary2Q& v,
                      double tol = kCoordTol);

/// Average gate fidelity (|Tr(U^dagger V)|^2 + 4) / 20.
double gate_fidelity(const Mat4& u, const Mat4& v);
double gate_fidelity(const Unitary2Q& u, const Unitary2Q& v);

/// |Tr(C(p)^dagger K1 C(q) K2)| / 4 maximized over local K1, K2, evaluated in
/// closed form over Weyl images of q. Used to bound how well a class can be
/// approximated by another.
double max_class_overlap(const WeylPoint& p, const std::array<double, 3>& q);

namespace gates {
Mat4 cnot();  // control on pair bit 0
Mat4 swap();
Mat4 iswap();
/// iSWAP^(1/n) = exp(i pi/(4n) (XX + YY)).
Mat4 iswap_root(int n);
}  // namespace gates

}  // namespace mirage
