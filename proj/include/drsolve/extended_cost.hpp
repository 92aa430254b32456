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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace drsolve {

/// Exact objective values. All costs are 64-bit integers.
using Cost = std::int64_t;

/// Thrown whenever exact cost arithmetic would leave the 64-bit range.
class CostOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

[[nodiscard]] inline Cost checked_add(Cost a, Cost b) {
  Cost r;
  if (__builtin_add_overflow(a, b, &r)) throw CostOverflow("cost addition overflows int64");
  return r;
}

[[nodiscard]] inline Cost checked_sub(Cost a, Cost b) {
  Cost r;
  if (__builtin_sub_overflow(a, b, &r)) throw CostOverflow("cost subtraction overflows int64");
  return r;
}

[[nodiscard]] inline Cost checked_mul(Cost a, Cost b) {
  Cost r;
  if (__builtin_mul_overflow(a, b, &r)) throw CostOverflow("cost multiplication overflows int64");
  return r;
}

/// A cost value or +infinity (outside the effective domain).
///
/// +infinity absorbs addition and orders after every finite value. Finite
/// arithmetic is checked; overflow throws CostOverflow instead of wrapping.
class ExtendedCost {
 public:
  constexpr ExtendedCost() = default;
  constexpr ExtendedCost(Cost v) : value_(v) {}  // NOLINT: implicit by design of the algebra

  static constexpr ExtendedCost infinity() {
    ExtendedCost c;
    c.infinite_ = true;
    return c;
  }

  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }
  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }

  /// Finite value; throws std::logic_error on +infinity.
  [[nodiscard]] Cost value() const {
    if (infinite_) throw std::logic_error("value() of an infinite cost");
    return value_;
  }

  friend ExtendedCost operator+(ExtendedCost a, ExtendedCost b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return ExtendedCost(checked_add(a.value_, b.value_));
  }
  ExtendedCost& operator+=(ExtendedCost o) { return *this = *this + o; }

  /// a - b for finite b. inf - finite = inf; anything - inf is a logic error.
  friend ExtendedCost operator-(ExtendedCost a, ExtendedCost b) {
    if (b.infinite_) throw std::logic_error("subtracting an infinite cost");
    if (a.infinite_) return infinity();
    return ExtendedCost(checked_sub(a.value_, b.value_));
  }

  friend constexpr bool operator==(ExtendedCost a, ExtendedCost b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::strong_ordering operator<=>(ExtendedCost a, ExtendedCost b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }

  [[nodiscard]] std::string to_string() const;

 private:
  Cost value_ = 0;
  bool infinite_ = false;
};

std::ostream& operator<<(std::ostream& os, ExtendedCost c);

/// Lexicographic pair (primary, secondary).
///
/// With primary = f and secondary = an L1 distance this is f + eps * dist for
/// an infinitesimal eps; with primary = dist and secondary = f it is
/// Upsilon * dist + f for an unbounded Upsilon. Both are exact.
struct LexCost {
  ExtendedCost primary;
  std::int64_t secondary = 0;

  friend LexCost operator+(LexCost a, LexCost b) {
    return {a.primary + b.primary, checked_add(a.secondary, b.secondary)};
  }
  friend bool operator==(const LexCost&, const LexCost&) = default;
  friend std::strong_ordering operator<=>(const LexCost& a, const LexCost& b) {
    if (auto c = a.primary <=> b.primary; c != 0) return c;
    return a.secondary <=> b.secondary;
  }
};

std::ostream& operator<<(std::ostream& os, const LexCost& c);

}  // namespace drsolve
