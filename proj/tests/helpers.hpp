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

#include <functional>
#include <vector>

#include "drsolve/instance.hpp"
#include "drsolve/mconvex.hpp"

namespace drsolve::test {

inline StationCost tabulate(std::int64_t cap, const std::function<Cost(Cost, Cost)>& fn) {
  std::vector<std::vector<Cost>> rows;
  for (Cost d = 0; d <= cap; ++d) {
    std::vector<Cost> row;
    for (Cost b = 0; b <= cap; ++b) row.push_back(fn(d, b));
    rows.push_back(std::move(row));
  }
  return StationCost::table(rows);
}

// D = B = 2, ell = 0, u = 4, dbar = bbar = (1, 1),
// c1 = (d - 2)^2 + (b - 2)^2 (table), c2 = d^2 + b^2.
inline Instance two_station(Cost gamma) {
  Instance inst;
  inst.n = 2;
  inst.D = 2;
  inst.B = 2;
  inst.gamma = gamma;
  inst.ell = {0, 0};
  inst.u = {4, 4};
  inst.dbar = {1, 1};
  inst.bbar = {1, 1};
  inst.costs.push_back(tabulate(4, [](Cost d, Cost b) { return (d - 2) * (d - 2) + (b - 2) * (b - 2); }));
  inst.costs.push_back(StationCost::quad({1, 0, 1, 0, 0, 0}));
  return inst;
}

// f(x) = (x1 - 4)^2 on {x1 + x2 = 4, 0 <= x <= 4}.
inline MConvexOracle shifted_square() {
  return MConvexOracle(4, {0, 0}, {4, 4}, {0, 4}, [](IntSpan x) -> ExtendedCost {
    if (x[0] + x[1] != 4) return ExtendedCost::infinity();
    return (x[0] - 4) * (x[0] - 4);
  });
}

}  // namespace drsolve::test
