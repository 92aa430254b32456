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

// Simple resource allocation: the best bike split b for fixed dock totals x,
// and the marginal-cost heaps that let a neighbour move of (d, b) be priced
// in O(log n).

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "drsolve/extended_cost.hpp"
#include "drsolve/instance.hpp"
#include "drsolve/vector_ops.hpp"

namespace drsolve {

/// One station of an allocation problem, in real units.
struct StationSpec {
  const StationCost* cost = nullptr;
  std::int64_t x_lo = 0;    // lower bound on d + b
  std::int64_t x_hi = 0;    // upper bound on d + b
  std::int64_t center = 0;  // reference dock total for distance tie-breaks
};

/// Minimize sum_i c_i(d(i), b(i)) over d, b >= 0 with x_lo <= d + b <= x_hi,
/// sum(d + b) = total and sum(b) <= bike_budget. Covers (DR) without its L1
/// constraint, (DA), and the per-side subproblems of the alpha search.
struct AllocationProblem {
  std::vector<StationSpec> stations;
  std::vector<int> ids;  // instance station index of each entry
  std::int64_t total = 0;
  std::int64_t bike_budget = 0;

  [[nodiscard]] int size() const { return static_cast<int>(stations.size()); }

  /// All stations, bounds ell..u.
  static AllocationProblem dr(const Instance& inst);
  /// All stations, bounds intersected with xbar +- gamma.
  static AllocationProblem da(const Instance& inst);
};

/// Scaled view of an AllocationProblem anchored at a feasible (d0, b0):
/// real d = d0 + step * d', real b = b0 + step * b'. Lattice coordinates d',
/// b' start at zero; the unit view (anchor 0, step 1) is the identity.
class Lattice {
 public:
  Lattice(AllocationProblem problem, IntVector d0, IntVector b0, std::int64_t step);
  static Lattice unit(AllocationProblem problem);

  [[nodiscard]] int size() const { return problem_.size(); }
  [[nodiscard]] std::int64_t step() const { return step_; }
  [[nodiscard]] const AllocationProblem& problem() const { return problem_; }

  [[nodiscard]] std::int64_t d_min(int i) const { return d_min_[idx(i)]; }
  [[nodiscard]] std::int64_t b_min(int i) const { return b_min_[idx(i)]; }
  [[nodiscard]] std::int64_t x_min(int i) const { return x_min_[idx(i)]; }
  [[nodiscard]] std::int64_t x_max(int i) const { return x_max_[idx(i)]; }
  /// sum(b') <= budget() in lattice units.
  [[nodiscard]] std::int64_t budget() const { return budget_; }

  [[nodiscard]] ExtendedCost cost(int i, std::int64_t d, std::int64_t b) const;
  /// Change of |real x(i) - center(i)| when lattice x(i) moves by dx.
  [[nodiscard]] std::int64_t distance_delta(int i, std::int64_t x, std::int64_t dx) const;

  [[nodiscard]] Allocation to_real(IntSpan d, IntSpan b) const;

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }
  AllocationProblem problem_;
  IntVector d0_, b0_;
  std::int64_t step_ = 1;
  IntVector d_min_, b_min_, x_min_, x_max_;
  std::int64_t budget_ = 0;
};

/// The six per-station marginal families. For station i at (d, b):
///   d_up: c(d+1,b)-c(d,b)      d_down: c(d-1,b)-c(d,b)
///   b_up: c(d,b+1)-c(d,b)      b_down: c(d,b-1)-c(d,b)
///   b_to_d: c(d+1,b-1)-c(d,b)  d_to_b: c(d-1,b+1)-c(d,b)
enum class Marginal : int { d_up = 0, d_down, b_up, b_down, b_to_d, d_to_b };
inline constexpr int kMarginalFamilies = 6;

/// A neighbour of (d, b) from one of the families N1..N6:
///   N1 (d + chi_i - chi_j, b)            N2 (d - chi_j, b + chi_i)
///   N3 (d + chi_i, b - chi_j)            N4 (d, b + chi_i - chi_j)
///   N5 (d - chi_j + chi_t, b + chi_i - chi_t)
///   N6 (d - chi_s + chi_i, b + chi_s - chi_j)
/// `k` is t (N5) or s (N6), -1 otherwise. Dock totals move by chi_i - chi_j.
struct NeighborMove {
  int family = 0;
  int i = -1, j = -1, k = -1;
  LexCost delta;
};

/// Bike assignment for fixed dock totals plus the six lazy marginal heaps.
///
/// Heap entries carry a per-station version stamp and are discarded on pop
/// once stale. A state is owned by one solver loop; copies are independent.
class SraState {
 public:
  /// Optimal b for dock totals x (greedy from the lowest bike counts).
  /// Throws Infeasible if x is outside the lattice bounds.
  SraState(Lattice lattice, IntVector x, bool distance_tiebreak = false);
  /// State at a given lattice allocation, not necessarily bike-optimal.
  SraState(Lattice lattice, IntVector d, IntVector b, bool distance_tiebreak);

  [[nodiscard]] const Lattice& lattice() const { return lattice_; }
  [[nodiscard]] const IntVector& x() const { return x_; }
  [[nodiscard]] const IntVector& b() const { return b_; }
  [[nodiscard]] IntVector d() const;
  [[nodiscard]] std::int64_t total_b() const { return total_b_; }
  [[nodiscard]] ExtendedCost value() const { return value_; }
  [[nodiscard]] Allocation allocation() const { return lattice_.to_real(d(), b_); }

  /// Marginal of station i in a family; primary +infinity if not allowed.
  [[nodiscard]] LexCost marginal(Marginal m, int i) const;

  /// Moves bikes with x fixed (single +-1 or a transfer) while strictly
  /// improving. Ends bike-optimal. Returns the number of moves.
  std::int64_t rebalance();

  /// Cheapest neighbour over N1..N6, or nullopt when none is feasible.
  std::optional<NeighborMove> best_neighbor();
  /// Cheapest neighbour whose dock totals are x + chi_i - chi_j.
  std::optional<NeighborMove> best_neighbor_for_pair(int i, int j);
  void apply(const NeighborMove& mv);

  /// Heap-backed "best k stations" of one family, excluding some stations.
  struct Ranked {
    int station;
    LexCost key;
  };
  std::vector<Ranked> top(Marginal m, int k, std::span<const int> exclude = {});

 private:
  struct Entry {
    LexCost key;
    int station;
    std::uint64_t version;
    bool operator>(const Entry& o) const {
      if (key != o.key) return o.key < key;
      return station > o.station;
    }
  };
  using Heap = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

  void change(int i, std::int64_t dd, std::int64_t db);
  void push_station(int i);
  void rebuild_heaps();
  void greedy_fill();

  Lattice lattice_;
  IntVector x_, b_;
  std::int64_t total_b_ = 0;
  ExtendedCost value_;
  bool distance_tiebreak_ = false;
  std::vector<std::uint64_t> version_;
  std::array<Heap, kMarginalFamilies> heaps_;
};

/// Optimal bike split for dock totals x under bounds ell..u and budget B.
struct SraSolution {
  IntVector b;
  Cost value = 0;
};
SraSolution solve_sra(const Instance& inst, IntSpan x);

/// SRA state for the full instance (bounds ell..u, budget B) at dock totals x.
SraState make_sra_state(const Instance& inst, IntSpan x);

/// State for x + chi_i - chi_j from an optimal state for x, moving b inside
/// the constant-size candidate set {b, b+chi_i, b-chi_j, b+chi_i-chi_j,
/// b+chi_i-chi_t, b+chi_s-chi_j}. Ties prefer the smaller ||b_new - b||_1.
/// Throws std::invalid_argument if i == j or the move leaves the bounds.
SraState sra_incremental(const SraState& state, int i, int j);

}  // namespace drsolve
