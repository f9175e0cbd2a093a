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

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mirage {

/// Undirected, connected coupling graph with eager all-pairs hop distances.
class CouplingMap {
 public:
  using Edge = std::pair<int, int>;

  /// Edges keep their given order (it is the SWAP tie-break order);
  /// duplicates and reversed duplicates are dropped.
  CouplingMap(int num_qubits, const std::vector<Edge>& edges, std::string name = "custom");

  static CouplingMap line(int n);
  static CouplingMap ring(int n);
  static CouplingMap grid(int rows, int cols);
  static CouplingMap from_file(const std::filesystem::path& path);
  /// "line:N", "ring:N", "grid:RxC" or "file:PATH".
  static CouplingMap parse(std::string_view spec);

  [[nodiscard]] int num_qubits() const { return n_; }
  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<int>& neighbors(int p) const;
  [[nodiscard]] int distance(int p, int q) const;
  [[nodiscard]] bool is_adjacent(int p, int q) const;
  /// Edge index of (p, q) in either orientation, or -1.
  [[nodiscard]] int edge_index(int p, int q) const;

 private:
  void check(int p) const;

  int n_;
  std::string name_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> dist_;
  std::vector<int> edge_id_;
};

}  // namespace mirage
