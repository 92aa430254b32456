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
#include <stdexcept>
#include <string>

namespace drsolve {

/// The problem has no feasible point (e.g. the L1 budget is below sigma).
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed its point budget.
class EnumerationLimitExceeded : public std::runtime_error {
 public:
  EnumerationLimitExceeded(std::uint64_t needed, std::uint64_t limit)
      : std::runtime_error("enumeration needs " + std::to_string(needed) +
                           " points, limit is " + std::to_string(limit)),
        needed_(needed),
        limit_(limit) {}
  [[nodiscard]] std::uint64_t needed() const { return needed_; }
  [[nodiscard]] std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t needed_;
  std::uint64_t limit_;
};

/// Budget for brute-force enumeration. DRSOLVE_ENUM_GUARD overrides the
/// default through from_env().
struct EnumGuard {
  static constexpr std::uint64_t kDefaultMaxPoints = 1'000'000;
  std::uint64_t max_points = kDefaultMaxPoints;

  void require(std::uint64_t points) const {
    if (points > max_points) throw EnumerationLimitExceeded(points, max_points);
  }

  static EnumGuard from_env();
};

}  // namespace drsolve
