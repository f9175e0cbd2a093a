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

// Sidecar layout (all integers and floats little-endian):
//   char[8]  "MIRAGECS"
//   u32      format version
//   u32      basis-name length, then the name bytes
//   i32      basis fraction n
//   u8       mirror flag
//   u64      build seed
//   u64      samples per k
//   u32      entry count; per entry:
//     i32 k, f64 cost, u32 first_new, u32 region count; per region:
//       u8 upper, u8 mirrored,
//       u32 halfspace count, then (nx, ny, nz, offset) as f64,
//       u32 vertex count, then (a, b, c) as f64.

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mirage/coverage.hpp"
#include "mirage/errors.hpp"

namespace mirage {

namespace {

constexpr char kMagic[8] = {'M', 'I', 'R', 'A', 'G', 'E', 'C', 'S'};

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

template <typename T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(bytes, bytes + sizeof(T));
  out.append(bytes, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  template <typename T>
  T get() {
    if (pos_ + sizeof(T) > data_.size())
      throw Error(ErrorCode::SidecarMismatch, "coverage sidecar is truncated");
    char bytes[sizeof(T)];
    std::memcpy(bytes, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big)
      std::reverse(bytes, bytes + sizeof(T));
    pos_ += sizeof(T);
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }

  std::string bytes(std::size_t n) {
    if (pos_ + n > data_.size())
      throw Error(ErrorCode::SidecarMismatch, "coverage sidecar is truncated");
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

void save_coverage(const CoverageSet& cs, const std::filesystem::path& path) {
  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kSidecarVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cs.basis.name.size()));
  out += cs.basis.name;
  put<std::int32_t>(out, cs.basis.n);
  put<std::uint8_t>(out, cs.mirror_extended ? 1 : 0);
  put<std::uint64_t>(out, cs.seed);
  put<std::uint64_t>(out, cs.samples_per_k);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(cs.entries.size()));
  for (const CircuitPolytope& e : cs.entries) {
    put<std::int32_t>(out, e.k);
    put<double>(out, e.cost);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(e.first_new));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(e.regions.size()));
    for (const ConvexRegion& r : e.regions) {
      put<std::uint8_t>(out, r.upper ? 1 : 0);
      put<std::uint8_t>(out, r.mirrored ? 1 : 0);
      put<std::uint32_t>(out, static_cast<std::uint32_t>(r.halfspaces.size()));
      for (const Halfspace& h : r.halfspaces) {
        for (double x : h.normal) put<double>(out, x);
        put<double>(out, h.offset);
      }
      put<std::uint32_t>(out, static_cast<std::uint32_t>(r.vertices.size()));
      for (const Point3& v : r.vertices)
        for (double x : v) put<double>(out, x);
    }
  }

  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

CoverageSet load_coverage(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  Reader in(buf.str());
  if (in.bytes(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic)))
    throw Error(ErrorCode::SidecarMismatch, "not a coverage sidecar: " + path.string());
  const auto version = in.get<std::uint32_t>();
  if (version != kSidecarVersion)
    throw Error(ErrorCode::SidecarMismatch,
                "sidecar format version " + std::to_string(version) +
                    ", expected " + std::to_string(kSidecarVersion));
  CoverageSet cs;
  cs.basis.name = in.bytes(in.get<std::uint32_t>());
  cs.basis.n = in.get<std::int32_t>();
  cs.mirror_extended = in.get<std::uint8_t>() != 0;
  cs.seed = in.get<std::uint64_t>();
  cs.samples_per_k = in.get<std::uint64_t>();
  const auto entries = in.get<std::uint32_t>();
  for (std::uint32_t i = 0; i < entries; ++i) {
    CircuitPolytope e;
    e.k = in.get<std::int32_t>();
    e.cost = in.get<double>();
    e.first_new = in.get<std::uint32_t>();
    const auto regions = in.get<std::uint32_t>();
    for (std::uint32_t j = 0; j < regions; ++j) {
      ConvexRegion r;
      r.upper = in.get<std::uint8_t>() != 0;
      r.mirrored = in.get<std::uint8_t>() != 0;
      const auto hs = in.get<std::uint32_t>();
      r.halfspaces.resize(hs);
      for (Halfspace& h : r.halfspaces) {
        for (double& x : h.normal) x = in.get<double>();
        h.offset = in.get<double>();
      }
      const auto vs = in.get<std::uint32_t>();
      r.vertices.resize(vs);
      for (Point3& v : r.vertices)
        for (double& x : v) x = in.get<double>();
      e.regions.push_back(std::move(r));
    }
    cs.entries.push_back(std::move(e));
  }
  if (cs.entries.empty())
    throw Error(ErrorCode::SidecarMismatch, "sidecar has no entries");
  return cs;
}

CoverageSet load_or_build_coverage(const std::filesystem::path& path,
                                   const BasisGateSpec& basis, bool mirror,
                                   std::uint64_t samples_per_k,
                                   std::uint64_t seed) {
  if (std::filesystem::exists(path)) {
    try {
      CoverageSet cs = load_coverage(path);
      if (cs.basis == basis && cs.mirror_extended == mirror && cs.seed == seed &&
          cs.samples_per_k == samples_per_k)
        return cs;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SidecarMismatch) throw;
    }
  }
  CoverageSet cs =
      build_coverage_set(basis, default_max_k(basis.n), samples_per_k, seed);
  if (mirror) cs = mirror_extend(cs);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  save_coverage(cs, path);
  return cs;
}

}  // namespace mirage
