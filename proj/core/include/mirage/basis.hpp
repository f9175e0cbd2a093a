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

#include <string>
#include <string_view>

#include "mirage/types.hpp"
#include "mirage/weyl.hpp"

namespace mirage {

/// Fractional iSWAP basis gate, iSWAP^(1/n). Durations are in iSWAP units.
struct BasisGateSpec {
  std::string name;
  int n = 2;

  [[nodiscard]] double unit_cost() const { return 1.0 / n; }
  [[nodiscard]] Mat4 matrix() const { return gates::iswap_root(n); }
  [[nodiscard]] WeylPoint point() const {
    return {kQuarterPi / n, kQuarterPi / n, 0.0};
  }

  static BasisGateSpec niswap(int n);
  static BasisGateSpec sqiswap() { return niswap(2); }
  /// Accepts "sqiswap", "iswap" or "niswap:N".
  static BasisGateSpec parse(std::string_view text);

  friend bool operator==(const BasisGateSpec&, const BasisGateSpec&) = default;
};

}  // namespace mirage
