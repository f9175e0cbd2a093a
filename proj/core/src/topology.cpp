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

#include "mirage/topology.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

#include "mirage/errors.hpp"

namespace mirage {

namespace {

int parse_positive(std::string_view text, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v <= 0)
    throw Error(ErrorCode::Usage,
                "bad " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

}  // namespace

CouplingMap::CouplingMap(int num_qubits, const std::vector<Edge>& edges, std::string name)
    : n_(num_qubits), name_(std::move(name)) {
  if (n_ <= 0) throw Error(ErrorCode::BadEdgeList, "coupling map needs at least one qubit");
  adj_.resize(static_cast<std::size_t>(n_));
  edge_id_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v)
      throw Error(ErrorCode::BadEdgeList,
                  "invalid coupling " + std::to_string(u) + " " + std::to_string(v));
    if (edge_id_[static_cast<std::size_t>(u * n_ + v)] >= 0) continue;
    const int id = static_cast<int>(edges_.size());
    edges_.emplace_back(std::min(u, v), std::max(u, v));
    edge_id_[static_cast<std::size_t>(u * n_ + v)] = id;
    edge_id_[static_cast<std::size_t>(v * n_ + u)] = id;
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());

  dist_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), -1);
  for (int s = 0; s < n_; ++s) {
    int* row = &dist_[static_cast<std::size_t>(s * n_)];
    std::queue<int> q;
    row[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int y : adj_[static_cast<std::size_t>(x)])
        if (row[y] < 0) {
          row[y] = row[x] + 1;
          q.push(y);
        }
    }
    for (int t = 0; t < n_; ++t)
      if (row[t] < 0)
        throw Error(ErrorCode::DisconnectedGraph,
                    "qubits " + std::to_string(s) + " and " + std::to_string(t) +
                        " are not connected");
  }
}

CouplingMap CouplingMap::line(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return CouplingMap(n, e, "line:" + std::to_string(n));
}

CouplingMap CouplingMap::ring(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  if (n > 2) e.emplace_back(n - 1, 0);
  return CouplingMap(n, e, "ring:" + std::to_string(n));
}

CouplingMap CouplingMap::grid(int rows, int cols) {
  std::vector<Edge> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int q = r * cols + c;
      if (c + 1 < cols) e.emplace_back(q, q + 1);
      if (r + 1 < rows) e.emplace_back(q, q + cols);
    }
  return CouplingMap(rows * cols, e,
                     "grid:" + std::to_string(rows) + "x" + std::to_string(cols));
}

CouplingMap CouplingMap::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read topology file " + path.string());
  std::vector<Edge> edges;
  int max_q = -1;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    long long u = 0, v = 0;
    if (!(ss >> u)) continue;
    std::string rest;
    if (!(ss >> v) || (ss >> rest) || u < 0 || v < 0 || u == v || u > 1000000 || v > 1000000)
      throw Error(ErrorCode::BadEdgeList,
                  path.string() + ":" + std::to_string(lineno) + ": expected 'u v'");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_q = std::max<int>(max_q, static_cast<int>(std::max(u, v)));
  }
  if (edges.empty()) throw Error(ErrorCode::BadEdgeList, path.string() + ": no couplings");
  return CouplingMap(max_q + 1, edges, "file:" + path.filename().string());
}

CouplingMap CouplingMap::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error(ErrorCode::Usage, "topology must look like kind:args, got '" + std::string(spec) + "'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  if (kind == "line") return line(parse_positive(arg, "line size"));
  if (kind == "ring") return ring(parse_positive(arg, "ring size"));
  if (kind == "grid") {
    const auto x = arg.find('x');
    if (x == std::string_view::npos) throw Error(ErrorCode::Usage, "grid needs RxC");
    return grid(parse_positive(arg.substr(0, x), "grid rows"),
                parse_positive(arg.substr(x + 1), "grid columns"));
  }
  if (kind == "file") return from_file(std::filesystem::path(std::string(arg)));
  throw Error(ErrorCode::Usage, "unknown topology kind '" + std::string(kind) + "'");
}

void CouplingMap::check(int p) const {
  if (p < 0 || p >= n_)
    throw Error(ErrorCode::IndexOutOfRange, "physical qubit " + std::to_string(p) + " out of range");
}

const std::vector<int>& CouplingMap::neighbors(int p) const {
  check(p);
  return adj_[static_cast<std::size_t>(p)];
}

int CouplingMap::distance(int p, int q) const {
  check(p);
  check(q);
  return dist_[static_cast<std::size_t>(p * n_ + q)];
}

bool CouplingMap::is_adjacent(int p, int q) const { return edge_index(p, q) >= 0; }

int CouplingMap::edge_index(int p, int q) const {
  check(p);
  check(q);
  return edge_id_[static_cast<std::size_t>(p * n_ + q)];
}

}  // namespace mirage
