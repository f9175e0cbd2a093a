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

#include "mirage/weyl.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>

#include "mirage/errors.hpp"

namespace mirage {

namespace {

constexpr double kSnap = 1e-13;
// Below this c the two base-face representatives are identified.
constexpr double kFoldTol = 1e-10;

const Complex kI{0.0, 1.0};

struct CartanDiagonals {
  Eigen::Vector4d xx, yy, zz;
};

// XX, YY and ZZ are simultaneously diagonal in the magic basis.
const CartanDiagonals& cartan_diagonals() {
  static const CartanDiagonals d = [] {
    Mat2 x, y, z;
    x << 0, 1, 1, 0;
    y << 0, -kI, kI, 0;
    z << 1, 0, 0, -1;
    const Mat4& b = magic_basis();
    CartanDiagonals out;
    const Mat4 dx = b.adjoint() * local_pair(x, x) * b;
    const Mat4 dy = b.adjoint() * local_pair(y, y) * b;
    const Mat4 dz = b.adjoint() * local_pair(z, z) * b;
    for (int i = 0; i < 4; ++i) {
      out.xx[i] = dx(i, i).real();
      out.yy[i] = dy(i, i).real();
      out.zz[i] = dz(i, i).real();
    }
    return out;
  }();
  return d;
}

double wrap_quarter_period(double x) {
  x = std::fmod(x, kHalfPi);
  if (x < 0.0) x += kHalfPi;
  if (x < kSnap || kHalfPi - x < kSnap) x = 0.0;
  return x;
}

}  // namespace

const Mat4& magic_basis() {
  static const Mat4 b = [] {
    Mat4 m;
    const double s = 1.0 / std::sqrt(2.0);
    m << s, 0, 0, kI * s,  //
        0, kI * s, s, 0,   //
        0, kI * s, -s, 0,  //
        s, 0, 0, -kI * s;
    return m;
  }();
  return b;
}

bool WeylPoint::in_chamber(double slack) const {
  return c >= -slack && b >= c - slack && a >= b - slack &&
         a + b <= kHalfPi + slack;
}

bool is_unitary(const MatX& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const MatX id = MatX::Identity(m.rows(), m.cols());
  return (m.adjoint() * m - id).norm() <= tol;
}

Unitary2Q Unitary2Q::from_matrix(const Mat4& m, double tol) {
  if (!is_unitary(m, tol)) {
    throw Error(ErrorCode::NonUnitaryInput,
                "matrix is not unitary within tolerance");
  }
  return Unitary2Q(m);
}

namespace {

template <int N>
Eigen::Matrix<Complex, N, N> haar_unitary(Rng& rng) {
  Eigen::Matrix<Complex, N, N> g;
  const double s = 1.0 / std::sqrt(2.0);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c)
      g(r, c) = Complex(standard_normal(rng) * s, standard_normal(rng) * s);
  Eigen::HouseholderQR<Eigen::Matrix<Complex, N, N>> qr(g);
  Eigen::Matrix<Complex, N, N> q = qr.householderQ();
  const Eigen::Matrix<Complex, N, N> r = qr.matrixQR();
  for (int i = 0; i < N; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

Unitary2Q haar_random_2q(Rng& rng) {
  return Unitary2Q::trusted(haar_unitary<4>(rng));
}

Mat2 haar_random_1q(Rng& rng) { return haar_unitary<2>(rng); }

WeylPoint canonicalize(double a, double b, double c) {
  std::array<double, 3> v{a, b, c};
  for (int iter = 0; iter < 64; ++iter) {
    for (double& x : v) x = wrap_quarter_period(x);
    std::sort(v.begin(), v.end(), std::greater<>());
    if (v[0] + v[1] > kHalfPi + kSnap) {
      // Negate the two largest, shift both by pi/2.
      v = {kHalfPi - v[1], kHalfPi - v[0], v[2]};
      continue;
    }
    break;
  }
  if (v[2] < kFoldTol && v[0] > kQuarterPi) {
    v[0] = kHalfPi - v[0];
    std::sort(v.begin(), v.end(), std::greater<>());
  }
  return {v[0], v[1], v[2]};
}

WeylPoint canonical_coordinates(const Unitary2Q& u) {
  const Mat4& m = u.matrix();
  const Complex det = m.determinant();
  const Mat4 special = m * std::pow(det, -0.25);
  const Mat4& b = magic_basis();
  const Mat4 up = b.adjoint() * special * b;
  const Mat4 gram = up.transpose() * up;
  Eigen::ComplexEigenSolver<Mat4> solver(gram, /*computeEigenvectors=*/false);
  const auto& ev = solver.eigenvalues();
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) lambda[i] = std::arg(ev[i]) / 2.0;
  lambda[3] = -(lambda[0] + lambda[1] + lambda[2]);
  const double a = (lambda[0] + lambda[1]) / 2.0;
  const double bb = (lambda[1] + lambda[3]) / 2.0;
  const double c = (lambda[0] + lambda[3]) / 2.0;
  return canonicalize(a, bb, c);
}

WeylPoint canonical_coordinates(const Mat4& u) {
  return canonical_coordinates(Unitary2Q::from_matrix(u));
}

Unitary2Q canonical_gate(const WeylPoint& p) {
  if (!p.in_chamber(kCoordTol)) {
    throw Error(ErrorCode::OutOfChamber, "point lies outside the Weyl chamber");
  }
  const CartanDiagonals& d = cartan_diagonals();
  Eigen::Vector4cd phases;
  for (int i = 0; i < 4; ++i) {
    phases[i] = std::exp(kI * (p.a * d.xx[i] + p.b * d.yy[i] + p.c * d.zz[i]));
  }
  const Mat4& b = magic_basis();
  return Unitary2Q::trusted(b * phases.asDiagonal() * b.adjoint());
}

std::array<double, 3> mirror_branch(const std::array<double, 3>& p,
                                    bool lower_branch) {
  const auto [a, b, c] = p;
  if (lower_branch) return {kQuarterPi + c, kQuarterPi - b, kQuarterPi - a};
  return {kQuarterPi - c, kQuarterPi - b, a - kQuarterPi};
}

WeylPoint mirror_coordinates(const WeylPoint& p) {
  if (!p.in_chamber(kCoordTol)) {
    throw Error(ErrorCode::OutOfChamber, "point lies outside the Weyl chamber");
  }
  const auto m = mirror_branch(p.as_array(), p.a <= kQuarterPi);
  return canonicalize(m[0], m[1], m[2]);
}

Unitary2Q mirror_unitary(const Unitary2Q& u) {
  // Row permutation is exact: no rounding is introduced.
  Mat4 out = u.matrix();
  out.row(1).swap(out.row(2));
  return Unitary2Q::trusted(out);
}

double coordinate_distance(const WeylPoint& p, const WeylPoint& q) {
  auto dist = [](const WeylPoint& x, const WeylPoint& y) {
    return std::max({std::abs(x.a - y.a), std::abs(x.b - y.b),
                     std::abs(x.c - y.c)});
  };
  double best = dist(p, q);
  const WeylPoint pf{kHalfPi - p.a, p.b, p.c};
  const WeylPoint qf{kHalfPi - q.a, q.b, q.c};
  // Only the c ~ 0 representatives are interchangeable.
  if (p.c < 1e-6) best = std::min(best, dist(pf, q));
  if (q.c < 1e-6) best = std::min(best, dist(p, qf));
  return best;
}

bool local_equivalent(const Unitary2Q& u, const Unitary2Q& v, double tol) {
  return coordinate_distance(canonical_coordinates(u),
                             canonical_coordinates(v)) < tol;
}

double gate_fidelity(const Mat4& u, const Mat4& v) {
  const double tr = std::abs((u.adjoint() * v).trace());
  return std::min(1.0, (tr * tr + 4.0) / 20.0);
}

double gate_fidelity(const Unitary2Q& u, const Unitary2Q& v) {
  return gate_fidelity(u.matrix(), v.matrix());
}

double max_class_overlap(const WeylPoint& p, const std::array<double, 3>& q) {
  const std::array<double, 3> pa = p.as_array();
  // cs[i][j][s]: cos/sin of p_i - (+-)q_j.
  double cosv[3][3][2];
  double sinv[3][3][2];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int s = 0; s < 2; ++s) {
        const double d = pa[i] - (s == 0 ? q[j] : -q[j]);
        cosv[i][j][s] = std::cos(d);
        sinv[i][j][s] = std::sin(d);
      }
  static constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static constexpr int kSigns[4][3] = {
      {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
  double best = 0.0;
  for (const auto& perm : kPerms) {
    for (const auto& sg : kSigns) {
      double c[3], s[3];
      for (int i = 0; i < 3; ++i) {
        c[i] = cosv[i][perm[i]][sg[i]];
        s[i] = sinv[i][perm[i]][sg[i]];
      }
      for (int shift = 0; shift < 8; ++shift) {
        double cc = 1.0, ss = 1.0;
        for (int i = 0; i < 3; ++i) {
          // A pi/2 shift maps (cos, sin) to (sin, -cos).
          if (shift & (1 << i)) {
            cc *= s[i];
            ss *= -c[i];
          } else {
            cc *= c[i];
            ss *= s[i];
          }
        }
        best = std::max(best, std::sqrt(cc * cc + ss * ss));
      }
    }
  }
  return best;
}

namespace gates {

Mat4 cnot() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(2, 2) = 1;
  m(1, 3) = 1;
  m(3, 1) = 1;
  return m;
}

Mat4 swap() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return m;
}

Mat4 iswap() { return iswap_root(1); }

Mat4 iswap_root(int n) {
  const double t = kHalfPi / n;
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1;
  m(3, 3) = 1;
  m(1, 1) = std::cos(t);
  m(2, 2) = std::cos(t);
  m(1, 2) = kI * std::sin(t);
  m(2, 1) = kI * std::sin(t);
  return m;
}

}  // namespace gates

}  // namespace mirage
