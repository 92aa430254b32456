// Copyright 2026 The drsolve Authors
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

// Seeded random instances. Every generated instance passes validate_instance.

#pragma once

#include <cstdint>

#include "drsolve/instance.hpp"

namespace drsolve {

enum class CostKind { quad, table };

struct GenOptions {
  int n = 3;
  std::int64_t umax = 6;   // u(i) drawn from [2, umax]
  std::uint64_t seed = 0;
  CostKind kind = CostKind::quad;
  std::int64_t gamma = -1;  // negative: drawn from [0, 4]
};

/// Small instance for enumeration. Quadratic coefficients lie in [0, 5];
/// the linear ones put each station's preferred d and b inside [0, umax].
/// Table costs tabulate such a quadratic plus a per-station constant.
Instance generate_instance(const GenOptions& opt);

struct LargeGenOptions {
  int n = 50;
  std::int64_t capacity = 10000;  // D + B
  std::uint64_t seed = 0;
  std::int64_t gamma = -1;  // negative: gamma = capacity (the box never binds)
};

/// Large quad_uvw instance for the scaling solvers.
Instance generate_large_instance(const LargeGenOptions& opt);

}  // namespace drsolve
