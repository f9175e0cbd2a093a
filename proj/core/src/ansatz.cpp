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

#include "mirage/ansatz.hpp"

#include <cmath>
#include <map>

#include "mirage/errors.hpp"

namespace mirage {

BasisGateSpec BasisGateSpec::niswap(int n) {
  if (n < 1) throw Error(ErrorCode::Usage, "basis fraction must be positive");
  if (n == 1) return {"iswap", 1};
  if (n == 2) return {"sqiswap", 2};
  return {"niswap:" + std::to_string(n), n};
}

BasisGateSpec BasisGateSpec::parse(std::string_view text) {
  if (text == "sqiswap") return niswap(2);
  if (text == "iswap") return niswap(1);
  constexpr std::string_view prefix = "niswap:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string digits(text.substr(prefix.size()));
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && !digits.empty() && n >= 1) return niswap(n);
  }
  throw Error(ErrorCode::Usage,
              "unknown basis '" + std::string(text) +
                  "' (expected sqiswap, iswap or niswap:N)");
}

Mat2 u3(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Mat2 m;
  m << c, -std::polar(s, lambda),  //
      std::polar(s, phi), std::polar(c, phi + lambda);
  return m;
}

std::array<double, 3> u3_angles(const Mat2& u) {
  const Mat2 v = u / std::sqrt(u.determinant());
  const Complex alpha = v(0, 0);
  const Complex beta = v(1, 0);
  const double theta = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
  const double arg_a = std::abs(alpha) > 1e-14 ? std::arg(alpha) : 0.0;
  const double arg_b = std::abs(beta) > 1e-14 ? std::arg(beta) : 0.0;
  return {theta, arg_b - arg_a, -arg_a - arg_b};
}

std::pair<Mat2, Mat2> split_local(const Mat4& m) {
  int br = 0, bc = 0;
  double best = -1.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const double n = m.block<2, 2>(2 * r, 2 * c).norm();
      if (n > best) {
        best = n;
        br = r;
        bc = c;
      }
    }
  const Mat2 first = m.block<2, 2>(2 * br, 2 * bc) * (std::sqrt(2.0) / best);
  Mat2 second;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      second(r, c) = (first.adjoint() * m.block<2, 2>(2 * r, 2 * c)).trace() / 2.0;
  return {first, second};
}

const std::vector<Mat4>& weyl_group_locals() {
  static const std::vector<Mat4> locals = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Mat2 h, s;
    h << r, r, r, -r;
    s << 1, 0, 0, Complex(0, 1);
    auto key = [](const Mat2& m) {
      int i = 0;
      while (std::abs(m.data()[i]) < 1e-9) ++i;
      const Complex ph = m.data()[i] / std::abs(m.data()[i]);
      std::array<long long, 8> k{};
      for (int j = 0; j < 4; ++j) {
        const Complex z = m.data()[j] / ph;
        k[2 * j] = std::llround(z.real() * 1e6);
        k[2 * j + 1] = std::llround(z.imag() * 1e6);
      }
      return k;
    };
    std::vector<Mat2> cliffords{Mat2::Identity()};
    std::map<std::array<long long, 8>, int> seen{{key(cliffords[0]), 0}};
    for (std::size_t i = 0; i < cliffords.size(); ++i) {
      for (const Mat2& g : {h, s}) {
        const Mat2 next = g * cliffords[i];
        if (seen.emplace(key(next), 0).second) cliffords.push_back(next);
      }
    }
    Mat2 x, y, z;
    x << 0, 1, 1, 0;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    z << 1, 0, 0, -1;
    std::vector<Mat4> out;
    for (const Mat2& c : cliffords)
      for (const Mat2& p : {Mat2(Mat2::Identity()), x, y, z})
        out.push_back(local_pair(c, c) * local_pair(p, Mat2::Identity()));
    return out;
  }();
  return locals;
}

Ansatz::Ansatz(const BasisGateSpec& basis, int k)
    : basis_(basis.matrix()), k_(k) {
  if (k < 0) throw Error(ErrorCode::Usage, "ansatz depth must be >= 0");
}

Mat4 Ansatz::layer(std::span<const double> six) {
  return local_pair(u3(six[0], six[1], six[2]), u3(six[3], six[4], six[5]));
}

Mat4 Ansatz::extend(const Mat4& local, const Mat4& inner) const {
  return basis_ * local * inner;
}

Mat4 Ansatz::evaluate(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != num_params())
    throw Error(ErrorCode::DimensionMismatch, "ansatz parameter count");
  Mat4 u = layer(params.subspan(0, 6));
  for (int j = 1; j <= k_; ++j) u = layer(params.subspan(6 * j, 6)) * basis_ * u;
  return u;
}

Mat4 Ansatz::interior(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != num_interior_params())
    throw Error(ErrorCode::DimensionMismatch, "ansatz interior parameter count");
  if (k_ == 0) return Mat4::Identity();
  Mat4 u = basis_;
  for (int j = 0; j + 1 < k_; ++j) u = extend(layer(params.subspan(6 * j, 6)), u);
  return u;
}

}  // namespace mirage
