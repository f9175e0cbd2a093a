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

#include <filesystem>
#include <fstream>
#include <queue>

#include <gtest/gtest.h>

#include "mirage/errors.hpp"

using namespace mirage;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / ("mirage_topo_" + name);
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Topology, LineDistances) {
  const CouplingMap m = CouplingMap::line(5);
  EXPECT_EQ(m.distance(0, 4), 4);
  EXPECT_EQ(m.distance(3, 1), 2);
  EXPECT_TRUE(m.is_adjacent(2, 3));
  EXPECT_FALSE(m.is_adjacent(0, 2));
  EXPECT_EQ(m.edges().size(), 4u);
  EXPECT_EQ(m.edge_index(1, 0), 0);
  EXPECT_EQ(m.edge_index(0, 2), -1);
}

TEST(Topology, RingAndGrid) {
  const CouplingMap r = CouplingMap::ring(6);
  EXPECT_EQ(r.distance(0, 3), 3);
  EXPECT_EQ(r.distance(0, 5), 1);
  const CouplingMap g = CouplingMap::grid(3, 3);
  EXPECT_EQ(g.num_qubits(), 9);
  EXPECT_EQ(g.edges().size(), 12u);
  EXPECT_EQ(g.distance(0, 8), 4);  // Manhattan distance corner to corner.
  EXPECT_EQ(g.neighbors(4).size(), 4u);
}

TEST(Topology, Parse) {
  EXPECT_EQ(CouplingMap::parse("line:4").num_qubits(), 4);
  EXPECT_EQ(CouplingMap::parse("grid:2x3").num_qubits(), 6);
  EXPECT_EQ(CouplingMap::parse("ring:5").edges().size(), 5u);
  EXPECT_THROW(CouplingMap::parse("torus:3"), Error);
  EXPECT_THROW(CouplingMap::parse("line:x"), Error);
}

TEST(Topology, FileErrors) {
  const auto ok = write_temp("ok.txt", "# square\n0 1\n1 2\n2 3\n3 0\n1 0\n");
  const CouplingMap m = CouplingMap::from_file(ok);
  EXPECT_EQ(m.num_qubits(), 4);
  EXPECT_EQ(m.edges().size(), 4u);

  const auto bad = write_temp("bad.txt", "0 1\n1 two\n");
  try {
    CouplingMap::from_file(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadEdgeList);
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
  const auto split = write_temp("split.txt", "0 1\n2 3\n");
  try {
    CouplingMap::from_file(split);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DisconnectedGraph);
  }
  EXPECT_THROW(CouplingMap(3, {{0, 0}, {1, 2}}), Error);
}

TEST(Topology, HeavyHexData) {
  const CouplingMap m =
      CouplingMap::from_file(std::filesystem::path(MIRAGE_TEST_DATA_DIR) / "topologies/heavy_hex_57.txt");
  EXPECT_EQ(m.num_qubits(), 57);
  EXPECT_EQ(m.edges().size(), 64u);
  for (int p = 0; p < m.num_qubits(); ++p) EXPECT_LE(m.neighbors(p).size(), 3u);
}

TEST(Topology, DistancesMatchBreadthFirstSearch) {
  const CouplingMap m = CouplingMap::grid(3, 4);
  for (int s = 0; s < m.num_qubits(); ++s) {
    std::vector<int> d(static_cast<std::size_t>(m.num_qubits()), -1);
    std::queue<int> q;
    d[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (const auto& [u, v] : m.edges()) {
        const int y = u == x ? v : v == x ? u : -1;
        if (y >= 0 && d[static_cast<std::size_t>(y)] < 0) {
          d[static_cast<std::size_t>(y)] = d[static_cast<std::size_t>(x)] + 1;
          q.push(y);
        }
      }
    }
    for (int t = 0; t < m.num_qubits(); ++t) EXPECT_EQ(m.distance(s, t), d[static_cast<std::size_t>(t)]);
  }
}

TEST(Topology, OutOfRange) {
  const CouplingMap m = CouplingMap::line(3);
  try {
    (void)m.distance(0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}
