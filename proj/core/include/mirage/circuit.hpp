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
#include <cstdint>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mirage/coverage.hpp"
#include "mirage/types.hpp"
#include "mirage/weyl.hpp"

namespace mirage {

struct GateNode {
  /// Named gate, or "unitary" for a consolidated 2Q block.
  std::string name;
  std::vector<double> params;
  std::vector<int> qubits;
  /// Payload for "unitary" nodes, and for named nodes once inverted.
  std::optional<Mat4> block;
  std::optional<Mat2> block1q;
  std::optional<WeylPoint> coord;
  std::optional<CostEntry> cost;
  /// Routing-inserted SWAPs represented by this node (0 or 1 before
  /// consolidation; blocks sum their members).
  int routing_swaps = 0;
  /// Set on nodes whose payload was replaced by its mirror during routing.
  bool mirrored = false;

  [[nodiscard]] int arity() const { return static_cast<int>(qubits.size()); }
  [[nodiscard]] Mat2 matrix1q() const;
  [[nodiscard]] Mat4 matrix2q() const;
  /// Coordinate from the annotation when present, else extracted.
  [[nodiscard]] WeylPoint weyl() const;

  static GateNode named(std::string name, std::vector<int> qubits,
                        std::vector<double> params = {});
  static GateNode unitary(std::vector<int> qubits, const Mat4& u);
  static GateNode routing_swap(int p, int q);
};

/// Gates in a topological order with per-wire neighbour links.
class CircuitDag {
 public:
  CircuitDag() = default;
  explicit CircuitDag(int num_qubits) : num_qubits_(num_qubits), last_(num_qubits, -1) {}

  int add(GateNode node);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] bool empty() const { return nodes_.empty(); }
  [[nodiscard]] const GateNode& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] GateNode& node(int i) { return nodes_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<GateNode>& nodes() const { return nodes_; }

  /// Previous / next node on the wire of the node's j-th qubit, or -1.
  [[nodiscard]] int wire_prev(int i, int j) const { return prev_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  [[nodiscard]] int wire_next(int i, int j) const { return next_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  [[nodiscard]] std::vector<int> predecessors(int i) const;
  [[nodiscard]] std::vector<int> successors(int i) const;

  [[nodiscard]] std::size_t two_qubit_count() const;
  /// Same gates in reverse order with inverted payloads.
  [[nodiscard]] CircuitDag reversed() const;

 private:
  int num_qubits_ = 0;
  std::vector<GateNode> nodes_;
  std::vector<std::vector<int>> prev_;
  std::vector<std::vector<int>> next_;
  std::vector<int> last_;
};

/// Unresolved nodes whose wire predecessors are all resolved.
std::vector<int> front_layer(const CircuitDag& dag, const std::vector<char>& resolved);

/// Thread-safe LRU of canonical coordinates keyed by a block's interior
/// unitary quantised to 1e-8.
class CoordinateCache {
 public:
  explicit CoordinateCache(std::size_t capacity = std::size_t{1} << 20)
      : capacity_(capacity) {}

  WeylPoint coordinates(const Mat4& key_unitary);
  [[nodiscard]] CacheStats stats() const;

 private:
  using Key = std::array<std::int64_t, 32>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<std::pair<Key, WeylPoint>> order_;
  std::unordered_map<Key, std::list<std::pair<Key, WeylPoint>>::iterator, KeyHash> index_;
  CacheStats stats_;
};

/// Merges maximal same-pair runs (with their 1Q gates) into unitary blocks.
/// Requires 1Q/2Q nodes only.
CircuitDag consolidate_blocks(const CircuitDag& dag, CoordinateCache* cache = nullptr);

struct CostMetrics {
  double pulse_depth = 0.0;
  double total_cost = 0.0;
  std::size_t two_q_gate_count = 0;
  std::size_t swap_count = 0;
};

CostMetrics metrics(const CircuitDag& dag, const CostLookup& lookup);

/// Expands ccx / cswap into 1Q + CX networks; other >2Q gates are rejected.
CircuitDag unroll_3q(const CircuitDag& dag);

/// Drops identity gates and SWAPs that touch the circuit boundary
/// (a leading SWAP is removed by relabelling the wires after it).
CircuitDag clean_input(const CircuitDag& dag);

}  // namespace mirage
