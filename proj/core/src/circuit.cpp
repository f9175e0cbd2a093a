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

#include "mirage/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "mirage/errors.hpp"
#include "mirage/gates.hpp"

namespace mirage {

Mat2 GateNode::matrix1q() const {
  if (block1q) return *block1q;
  return gate_matrix_1q(name, params);
}

Mat4 GateNode::matrix2q() const {
  if (block) return *block;
  return gate_matrix_2q(name, params);
}

WeylPoint GateNode::weyl() const {
  if (coord) return *coord;
  return canonical_coordinates(Unitary2Q::trusted(matrix2q()));
}

GateNode GateNode::named(std::string name, std::vector<int> qubits,
                         std::vector<double> params) {
  GateNode n;
  n.name = std::move(name);
  n.qubits = std::move(qubits);
  n.params = std::move(params);
  return n;
}

GateNode GateNode::unitary(std::vector<int> qubits, const Mat4& u) {
  GateNode n;
  n.name = "unitary";
  n.qubits = std::move(qubits);
  n.block = u;
  return n;
}

GateNode GateNode::routing_swap(int p, int q) {
  GateNode n = named("swap", {p, q});
  n.coord = anchors::kSwap;
  n.routing_swaps = 1;
  return n;
}

int CircuitDag::add(GateNode node) {
  const int id = static_cast<int>(nodes_.size());
  if (node.qubits.empty())
    throw Error(ErrorCode::UnsupportedGate, "gate without operands: " + node.name);
  for (std::size_t j = 0; j < node.qubits.size(); ++j) {
    const int q = node.qubits[j];
    if (q < 0 || q >= num_qubits_)
      throw Error(ErrorCode::IndexOutOfRange,
                  "qubit " + std::to_string(q) + " out of range for " + node.name);
    for (std::size_t k = 0; k < j; ++k)
      if (node.qubits[k] == q)
        throw Error(ErrorCode::IndexOutOfRange, "repeated operand in " + node.name);
  }
  std::vector<int> prev(node.qubits.size(), -1);
  for (std::size_t j = 0; j < node.qubits.size(); ++j) {
    const int q = node.qubits[j];
    const int p = last_[static_cast<std::size_t>(q)];
    prev[j] = p;
    if (p >= 0) {
      const GateNode& pn = nodes_[static_cast<std::size_t>(p)];
      for (std::size_t k = 0; k < pn.qubits.size(); ++k)
        if (pn.qubits[k] == q) next_[static_cast<std::size_t>(p)][k] = id;
    }
    last_[static_cast<std::size_t>(q)] = id;
  }
  next_.emplace_back(node.qubits.size(), -1);
  prev_.push_back(std::move(prev));
  nodes_.push_back(std::move(node));
  return id;
}

std::vector<int> CircuitDag::predecessors(int i) const {
  std::vector<int> out;
  for (int p : prev_[static_cast<std::size_t>(i)])
    if (p >= 0 && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  return out;
}

std::vector<int> CircuitDag::successors(int i) const {
  std::vector<int> out;
  for (int s : next_[static_cast<std::size_t>(i)])
    if (s >= 0 && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

std::size_t CircuitDag::two_qubit_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const GateNode& n) { return n.arity() == 2; }));
}

CircuitDag CircuitDag::reversed() const {
  CircuitDag out(num_qubits_);
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    GateNode n = *it;
    if (n.arity() == 1) {
      n.block1q = it->matrix1q().adjoint();
      n.name = "unitary1q";
      n.params.clear();
    } else if (n.arity() == 2) {
      if (n.name != "swap") {
        n.block = it->matrix2q().adjoint();
        n.name = "unitary";
        n.params.clear();
        n.coord.reset();
      }
    } else {
      throw Error(ErrorCode::UnsupportedGate, "cannot reverse a >2Q gate");
    }
    n.cost.reset();
    out.add(std::move(n));
  }
  return out;
}

std::vector<int> front_layer(const CircuitDag& dag, const std::vector<char>& resolved) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(dag.size()); ++i) {
    if (resolved[static_cast<std::size_t>(i)]) continue;
    bool ready = true;
    for (int j = 0; j < dag.node(i).arity() && ready; ++j) {
      const int p = dag.wire_prev(i, j);
      if (p >= 0 && !resolved[static_cast<std::size_t>(p)]) ready = false;
    }
    if (ready) out.push_back(i);
  }
  return out;
}

std::size_t CoordinateCache::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::int64_t v : k) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

WeylPoint CoordinateCache::coordinates(const Mat4& u) {
  Key key{};
  for (int i = 0; i < 16; ++i) {
    key[2 * i] = std::llround(u.data()[i].real() * 1e8);
    key[2 * i + 1] = std::llround(u.data()[i].imag() * 1e8);
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    const auto it = index_.find(key);
    if (it != index_.end()) {
      ++stats_.hits;
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
    ++stats_.misses;
  }
  const WeylPoint p = canonical_coordinates(Unitary2Q::trusted(u));
  std::lock_guard<std::mutex> lock(mu_);
  if (index_.find(key) == index_.end()) {
    order_.emplace_front(key, p);
    index_.emplace(key, order_.begin());
    if (order_.size() > capacity_) {
      index_.erase(order_.back().first);
      order_.pop_back();
    }
  }
  return p;
}

CacheStats CoordinateCache::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

namespace {

struct Block {
  int q0 = -1, q1 = -1;
  std::vector<int> lead, body, trail;
  int last2q = -1;
};

Mat4 embed_into_pair(const GateNode& n, int q0, int q1) {
  if (n.arity() == 1) {
    const Mat2 g = n.matrix1q();
    return n.qubits[0] == q0 ? local_pair(g, Mat2::Identity())
                             : local_pair(Mat2::Identity(), g);
  }
  const Mat4 m = n.matrix2q();
  if (n.qubits[0] == q0 && n.qubits[1] == q1) return m;
  const Mat4 s = gates::swap();
  return s * m * s;
}

}  // namespace

CircuitDag consolidate_blocks(const CircuitDag& dag, CoordinateCache* cache) {
  const int nq = dag.num_qubits();
  std::vector<std::vector<int>> pending(static_cast<std::size_t>(nq));
  std::vector<int> open(static_cast<std::size_t>(nq), -1);
  std::vector<int> last_block(static_cast<std::size_t>(nq), -1);
  std::vector<Block> blocks;
  std::vector<int> owner(dag.size(), -1);

  auto close = [&](int b) {
    if (b < 0) return;
    for (int q : {blocks[static_cast<std::size_t>(b)].q0, blocks[static_cast<std::size_t>(b)].q1})
      if (open[static_cast<std::size_t>(q)] == b) open[static_cast<std::size_t>(q)] = -1;
  };
  auto take_pending = [&](int a, int b) {
    std::vector<int> out = pending[static_cast<std::size_t>(a)];
    out.insert(out.end(), pending[static_cast<std::size_t>(b)].begin(),
               pending[static_cast<std::size_t>(b)].end());
    pending[static_cast<std::size_t>(a)].clear();
    pending[static_cast<std::size_t>(b)].clear();
    std::sort(out.begin(), out.end());
    return out;
  };

  for (int i = 0; i < static_cast<int>(dag.size()); ++i) {
    const GateNode& n = dag.node(i);
    if (n.arity() == 1) {
      pending[static_cast<std::size_t>(n.qubits[0])].push_back(i);
      continue;
    }
    if (n.arity() != 2)
      throw Error(ErrorCode::UnsupportedGate, "consolidation needs 1Q/2Q gates, got " + n.name);
    const int a = n.qubits[0], b = n.qubits[1];
    const int oa = open[static_cast<std::size_t>(a)];
    if (oa >= 0 && oa == open[static_cast<std::size_t>(b)]) {
      Block& blk = blocks[static_cast<std::size_t>(oa)];
      for (int m : take_pending(a, b)) blk.body.push_back(m);
      blk.body.push_back(i);
      blk.last2q = i;
      continue;
    }
    close(oa);
    close(open[static_cast<std::size_t>(b)]);
    Block blk;
    blk.q0 = a;
    blk.q1 = b;
    blk.lead = take_pending(a, b);
    blk.body.push_back(i);
    blk.last2q = i;
    const int id = static_cast<int>(blocks.size());
    blocks.push_back(std::move(blk));
    open[static_cast<std::size_t>(a)] = open[static_cast<std::size_t>(b)] = id;
    last_block[static_cast<std::size_t>(a)] = last_block[static_cast<std::size_t>(b)] = id;
  }
  std::vector<char> standalone(dag.size(), 0);
  for (int q = 0; q < nq; ++q) {
    const int lb = last_block[static_cast<std::size_t>(q)];
    for (int m : pending[static_cast<std::size_t>(q)]) {
      if (lb >= 0) blocks[static_cast<std::size_t>(lb)].trail.push_back(m);
      else standalone[static_cast<std::size_t>(m)] = 1;
    }
  }
  for (std::size_t b = 0; b < blocks.size(); ++b)
    owner[static_cast<std::size_t>(blocks[b].last2q)] = static_cast<int>(b);

  CircuitDag out(nq);
  for (int i = 0; i < static_cast<int>(dag.size()); ++i) {
    if (standalone[static_cast<std::size_t>(i)]) {
      out.add(dag.node(i));
      continue;
    }
    const int b = owner[static_cast<std::size_t>(i)];
    if (b < 0) continue;
    Block& blk = blocks[static_cast<std::size_t>(b)];
    if (blk.lead.empty() && blk.trail.empty() && blk.body.size() == 1) {
      GateNode n = dag.node(blk.body.front());
      if (!n.coord) {
        const Mat4 m = n.matrix2q();
        n.coord = cache ? cache->coordinates(m) : canonical_coordinates(Unitary2Q::trusted(m));
      }
      out.add(std::move(n));
      continue;
    }
    std::vector<int> members = blk.lead;
    members.insert(members.end(), blk.body.begin(), blk.body.end());
    members.insert(members.end(), blk.trail.begin(), blk.trail.end());
    std::sort(members.begin(), members.end());
    Mat4 u = Mat4::Identity();
    Mat4 key = Mat4::Identity();
    int swaps = 0;
    bool mirrored = false;
    for (int m : members) {
      const GateNode& g = dag.node(m);
      const Mat4 e = embed_into_pair(g, blk.q0, blk.q1);
      u = e * u;
      swaps += g.routing_swaps;
      mirrored = mirrored || g.mirrored;
    }
    for (int m : blk.body) key = embed_into_pair(dag.node(m), blk.q0, blk.q1) * key;
    GateNode n = GateNode::unitary({blk.q0, blk.q1}, u);
    n.coord = cache ? cache->coordinates(key) : canonical_coordinates(Unitary2Q::trusted(key));
    n.routing_swaps = swaps;
    n.mirrored = mirrored;
    out.add(std::move(n));
  }
  return out;
}

CostMetrics metrics(const CircuitDag& dag, const CostLookup& lookup) {
  CostMetrics m;
  std::vector<double> finish(dag.size(), 0.0);
  for (int i = 0; i < static_cast<int>(dag.size()); ++i) {
    const GateNode& n = dag.node(i);
    double w = 0.0;
    if (n.arity() == 2) {
      w = n.cost ? n.cost->cost : lookup(n.weyl()).cost;
      ++m.two_q_gate_count;
    }
    m.swap_count += static_cast<std::size_t>(n.routing_swaps);
    double start = 0.0;
    for (int j = 0; j < n.arity(); ++j) {
      const int p = dag.wire_prev(i, j);
      if (p >= 0) start = std::max(start, finish[static_cast<std::size_t>(p)]);
    }
    finish[static_cast<std::size_t>(i)] = start + w;
    m.total_cost += w;
    m.pulse_depth = std::max(m.pulse_depth, finish[static_cast<std::size_t>(i)]);
  }
  return m;
}

CircuitDag unroll_3q(const CircuitDag& dag) {
  CircuitDag out(dag.num_qubits());
  auto ccx = [&](int a, int b, int c) {
    out.add(GateNode::named("h", {c}));
    out.add(GateNode::named("cx", {b, c}));
    out.add(GateNode::named("tdg", {c}));
    out.add(GateNode::named("cx", {a, c}));
    out.add(GateNode::named("t", {c}));
    out.add(GateNode::named("cx", {b, c}));
    out.add(GateNode::named("tdg", {c}));
    out.add(GateNode::named("cx", {a, c}));
    out.add(GateNode::named("t", {b}));
    out.add(GateNode::named("t", {c}));
    out.add(GateNode::named("h", {c}));
    out.add(GateNode::named("cx", {a, b}));
    out.add(GateNode::named("t", {a}));
    out.add(GateNode::named("tdg", {b}));
    out.add(GateNode::named("cx", {a, b}));
  };
  for (const GateNode& n : dag.nodes()) {
    if (n.arity() <= 2) {
      out.add(n);
      continue;
    }
    const int a = n.qubits[0], b = n.qubits[1], c = n.qubits[2];
    if (n.name == "ccx") {
      ccx(a, b, c);
    } else if (n.name == "cswap") {
      out.add(GateNode::named("cx", {c, b}));
      ccx(a, b, c);
      out.add(GateNode::named("cx", {c, b}));
    } else {
      throw Error(ErrorCode::UnsupportedGate, "no expansion for " + n.name);
    }
  }
  return out;
}

CircuitDag clean_input(const CircuitDag& dag) {
  const int nq = dag.num_qubits();
  std::vector<int> relabel(static_cast<std::size_t>(nq));
  for (int q = 0; q < nq; ++q) relabel[static_cast<std::size_t>(q)] = q;
  std::vector<char> touched(static_cast<std::size_t>(nq), 0);
  std::vector<GateNode> kept;
  for (const GateNode& src : dag.nodes()) {
    if (src.name == "id") continue;
    GateNode n = src;
    for (int& q : n.qubits) q = relabel[static_cast<std::size_t>(q)];
    if (n.name == "swap" && n.routing_swaps == 0 &&
        !touched[static_cast<std::size_t>(n.qubits[0])] &&
        !touched[static_cast<std::size_t>(n.qubits[1])]) {
      const int x = n.qubits[0], y = n.qubits[1];
      for (int& r : relabel) {
        if (r == x) r = y;
        else if (r == y) r = x;
      }
      continue;
    }
    for (int q : n.qubits) touched[static_cast<std::size_t>(q)] = 1;
    kept.push_back(std::move(n));
  }
  std::vector<char> later(static_cast<std::size_t>(nq), 0);
  std::vector<char> drop(kept.size(), 0);
  for (std::size_t i = kept.size(); i-- > 0;) {
    const GateNode& n = kept[i];
    if (n.name == "swap" && n.routing_swaps == 0 &&
        !later[static_cast<std::size_t>(n.qubits[0])] &&
        !later[static_cast<std::size_t>(n.qubits[1])]) {
      drop[i] = 1;
      continue;
    }
    for (int q : n.qubits) later[static_cast<std::size_t>(q)] = 1;
  }
  CircuitDag out(nq);
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (!drop[i]) out.add(std::move(kept[i]));
  return out;
}

}  // namespace mirage
