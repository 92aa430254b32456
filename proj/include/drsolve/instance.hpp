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

#pragma once

#include <string>
#include <vector>

#include "drsolve/extended_cost.hpp"
#include "drsolve/station_cost.hpp"
#include "drsolve/vector_ops.hpp"

namespace drsolve {

/// One dock re-allocation problem.
///
/// Stations i = 0..n-1 currently hold dbar(i) open docks and bbar(i) docks
/// with a bike. A new allocation (d, b) must keep d(N) + b(N) = D + B,
/// b(N) <= B, ell <= d + b <= u, and move at most 2 * gamma docks in L1.
struct Instance {
  int n = 0;
  Cost D = 0;
  Cost B = 0;
  Cost gamma = 0;
  IntVector ell, u;
  IntVector dbar, bbar;
  std::vector<StationCost> costs;

  /// Current dock totals dbar + bbar.
  [[nodiscard]] IntVector xbar() const { return add(dbar, bbar); }

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Candidate allocation (d, b).
struct Allocation {
  IntVector d, b;

  [[nodiscard]] IntVector x() const { return add(d, b); }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// One failed instance invariant. `code` is a stable machine-readable tag,
/// `field` the offending field, `index` the station (or -1).
struct Violation {
  std::string code;
  std::string field;
  int index = -1;
  std::string message;
};

/// Violations that describe an infeasible (rather than malformed) instance:
/// capacity-bounds, total-capacity, bike-budget, bounds-order.
bool is_infeasibility(const Violation& v);

/// Checks every instance invariant, including multimodularity of tabulated
/// costs and 64-bit safety of the objective. Empty result means valid.
std::vector<Violation> validate_instance(const Instance& inst);

/// c(d, b) = sum_i c_i(d(i), b(i)); +infinity if any term is.
ExtendedCost total_cost(const Instance& inst, const Allocation& a);

/// Constraints of the relaxation (DA): capacity equality, bike budget,
/// ell <= x <= u, and the box xbar - gamma <= x <= xbar + gamma.
bool is_da_feasible(const Instance& inst, const Allocation& a);

/// (DA) plus the L1 budget ||x - xbar||_1 <= 2 gamma.
bool is_dr_feasible(const Instance& inst, const Allocation& a);

/// Per-station dock-total bounds of the (DA) box: max(ell, xbar - gamma) and
/// min(u, xbar + gamma).
IntVector da_lower(const Instance& inst);
IntVector da_upper(const Instance& inst);

}  // namespace drsolve
