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

#include "mirage/simverify.hpp"

#include <cmath>

#include "mirage/errors.hpp"

namespace mirage {

namespace {

void apply_1q(MatX& u, int q, const Mat2& g) {
  const Eigen::Index dim = u.rows();
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const Eigen::Index j = i | bit;
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      const Complex x0 = u(i, c), x1 = u(j, c);
      u(i, c) = g(0, 0) * x0 + g(0, 1) * x1;
      u(j, c) = g(1, 0) * x0 + g(1, 1) * x1;
    }
  }
}

void apply_2q(MatX& u, int q0, int q1, const Mat4& g) {
  const Eigen::Index dim = u.rows();
  const Eigen::Index b0 = Eigen::Index{1} << q0;
  const Eigen::Index b1 = Eigen::Index{1} << q1;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & b0) || (i & b1)) continue;
    const Eigen::Index idx[4] = {i, i | b0, i | b1, i | b0 | b1};
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      Complex x[4];
      for (int k = 0; k < 4; ++k) x[k] = u(idx[k], c);
      for (int r = 0; r < 4; ++r) {
        Complex acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += g(r, k) * x[k];
        u(idx[r], c) = acc;
      }
    }
  }
}

}  // namespace

MatX simulate(const CircuitDag& dag) {
  const int n = dag.num_qubits();
  if (n > kMaxSimQubits)
    throw Error(ErrorCode::TooManyQubits,
                std::to_string(n) + " qubits exceeds the simulator cap of " +
                    std::to_string(kMaxSimQubits));
  MatX u = MatX::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const GateNode& g : dag.nodes()) {
    if (g.arity() == 1) {
      apply_1q(u, g.qubits[0], g.matrix1q());
    } else if (g.arity() == 2) {
      apply_2q(u, g.qubits[0], g.qubits[1], g.matrix2q());
    } else {
      throw Error(ErrorCode::UnsupportedGate, "simulate needs 1Q/2Q gates, got " + g.name);
    }
  }
  return u;
}

MatX permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  MatX p = MatX::Zero(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::Index y = 0;
    for (int i = 0; i < n; ++i)
      if (x & (Eigen::Index{1} << i)) y |= Eigen::Index{1} << perm[static_cast<std::size_t>(i)];
    p(y, x) = 1.0;
  }
  return p;
}

bool equivalent(const MatX& u, const MatX& v, const std::vector<int>& perm,
                double tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols() ||
      (Eigen::Index{1} << perm.size()) != u.rows())
    throw Error(ErrorCode::DimensionMismatch, "operand dimensions disagree");
  const MatX pu = permutation_matrix(perm) * u;
  Eigen::Index r = 0, c = 0;
  v.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(pu(r, c)) == 0.0) return v.norm() == 0.0;
  const Complex phase = v(r, c) / pu(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return (pu * (phase / std::abs(phase)) - v).cwiseAbs().maxCoeff() <= tol;
}

CircuitDag relabel(const CircuitDag& dag, const std::vector<int>& map, int num_qubits) {
  CircuitDag out(num_qubits);
  for (GateNode n : dag.nodes()) {
    for (int& q : n.qubits) q = map.at(static_cast<std::size_t>(q));
    out.add(std::move(n));
  }
  return out;
}

bool routing_equivalent(const CircuitDag& logical, const CircuitDag& routed,
                        const std::vector<int>& initial_v2p,
                        const std::vector<int>& final_v2p, double tol) {
  const int n = routed.num_qubits();
  if (static_cast<int>(initial_v2p.size()) != n || static_cast<int>(final_v2p.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "layout size differs from routed width");
  std::vector<int> moved(static_cast<std::size_t>(n));
  for (std::size_t v = 0; v < initial_v2p.size(); ++v)
    moved[static_cast<std::size_t>(initial_v2p[v])] = final_v2p[v];
  return equivalent(simulate(relabel(logical, initial_v2p, n)), simulate(routed), moved, tol);
}

}  // namespace mirage
