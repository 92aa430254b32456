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
#include <optional>
#include <variant>
#include <vector>

#include "drsolve/extended_cost.hpp"

namespace drsolve {

/// Tabulated station cost: values over 0 <= d <= max_d, 0 <= b <= max_b.
struct TableCost {
  std::int64_t max_d = 0;
  std::int64_t max_b = 0;
  std::vector<Cost> values;  // row-major, values[d * (max_b + 1) + b]

  [[nodiscard]] Cost at(std::int64_t d, std::int64_t b) const {
    return values[static_cast<std::size_t>(d * (max_b + 1) + b)];
  }
  friend bool operator==(const TableCost&, const TableCost&) = default;
};

/// c(d, b) = u(d) + v(b) + w(d + b) with convex integer quadratics
/// u(t) = u2 t^2 + u1 t (likewise v, w). Defined on all of Z^2_+.
struct QuadUvwCost {
  Cost u2 = 0, u1 = 0;
  Cost v2 = 0, v1 = 0;
  Cost w2 = 0, w1 = 0;
  friend bool operator==(const QuadUvwCost&, const QuadUvwCost&) = default;
};

/// Per-station dissatisfaction c_i(d, b); expected to be multimodular.
class StationCost {
 public:
  StationCost() = default;
  explicit StationCost(TableCost t) : rep_(std::move(t)) {}
  explicit StationCost(QuadUvwCost q) : rep_(q) {}

  /// Builds a table from rows indexed by d, columns by b. Rows must be equal
  /// length and nonempty; throws std::invalid_argument otherwise.
  static StationCost table(const std::vector<std::vector<Cost>>& rows);
  static StationCost quad(QuadUvwCost q) { return StationCost(q); }

  /// c(d, b) inside the domain, +infinity outside. Throws CostOverflow when a
  /// closed-form value leaves the int64 range.
  [[nodiscard]] ExtendedCost eval(std::int64_t d, std::int64_t b) const;

  [[nodiscard]] bool is_table() const { return std::holds_alternative<TableCost>(rep_); }
  [[nodiscard]] const TableCost* as_table() const { return std::get_if<TableCost>(&rep_); }
  [[nodiscard]] const QuadUvwCost* as_quad() const { return std::get_if<QuadUvwCost>(&rep_); }

  /// True if every (d, b) in [0, max_d] x [0, max_b] is in the domain.
  [[nodiscard]] bool covers(std::int64_t max_d, std::int64_t max_b) const;

  /// Upper bound on |c(d, b)| over [0, cap]^2, saturated at INT64_MAX.
  [[nodiscard]] Cost magnitude_bound(std::int64_t cap) const;

  friend bool operator==(const StationCost&, const StationCost&) = default;

 private:
  std::variant<TableCost, QuadUvwCost> rep_;
};

/// First failing point of the multimodularity scan. `inequality` is 1, 2 or 3
/// in the usual order:
///   1: phi(e+1,z+1) - phi(e+1,z) >= phi(e,z+1) - phi(e,z)    (e, z >= 0)
///   2: phi(e-1,z+1) - phi(e-1,z) >= phi(e,z) - phi(e,z-1)    (e, z >= 1)
///   3: phi(e+1,z-1) - phi(e,z-1) >= phi(e,z) - phi(e-1,z)    (e, z >= 1)
struct MultimodularViolation {
  std::int64_t eta = 0;
  std::int64_t zeta = 0;
  int inequality = 0;
  friend bool operator==(const MultimodularViolation&, const MultimodularViolation&) = default;
};

/// Exhaustive scan of the three inequalities at every lattice point whose
/// stencil fits in [0, max_d] x [0, max_b]. Points are scanned with eta outer,
/// zeta inner, and inequalities 1..3 at each point.
std::optional<MultimodularViolation> check_multimodular(const StationCost& c,
                                                        std::int64_t max_d,
                                                        std::int64_t max_b);

}  // namespace drsolve
