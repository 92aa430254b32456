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

#include <cstdint>
#include <cstdlib>
#include <iosfwd>
#include <numeric>
#include <span>
#include <vector>

namespace drsolve {

/// Integer point in Z^n (dock counts, bike counts, dock totals).
using IntVector = std::vector<std::int64_t>;
using IntSpan = std::span<const std::int64_t>;

/// x(N)
inline std::int64_t sum(IntSpan x) { return std::accumulate(x.begin(), x.end(), std::int64_t{0}); }

inline std::int64_t l1_distance(IntSpan x, IntSpan y) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += std::llabs(x[i] - y[i]);
  return d;
}

inline std::int64_t linf_distance(IntSpan x, IntSpan y) {
  std::int64_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max<std::int64_t>(d, std::llabs(x[i] - y[i]));
  return d;
}

/// supp+(x - y)
inline std::vector<int> supp_plus(IntSpan x, IntSpan y) {
  std::vector<int> s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) s.push_back(static_cast<int>(i));
  return s;
}

/// supp-(x - y)
inline std::vector<int> supp_minus(IntSpan x, IntSpan y) {
  std::vector<int> s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < y[i]) s.push_back(static_cast<int>(i));
  return s;
}

inline IntVector add(IntSpan x, IntSpan y) {
  IntVector r(x.begin(), x.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

/// x + chi_to - chi_from
inline IntVector exchanged(IntSpan x, int to, int from) {
  IntVector r(x.begin(), x.end());
  ++r[static_cast<std::size_t>(to)];
  --r[static_cast<std::size_t>(from)];
  return r;
}

std::ostream& print_vector(std::ostream& os, IntSpan x);

}  // namespace drsolve
