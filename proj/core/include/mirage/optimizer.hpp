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

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace mirage {

using Objective = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  int max_evals = 2000;
  /// Stop once the simplex value spread drops below this.
  double ftol = 1e-10;
  /// Stop as soon as any vertex reaches this value.
  double target = -std::numeric_limits<double>::infinity();
  double initial_step = 0.5;
};

struct OptimizeResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evals = 0;
};

/// Derivative-free minimisation with dimension-adapted coefficients.
OptimizeResult nelder_mead(const Objective& f, std::vector<double> x0,
                           const NelderMeadOptions& options = {});

}  // namespace mirage
