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

#include "drsolve/sra.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "drsolve/errors.hpp"

namespace drsolve {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

struct Effect {
  std::int64_t dd, db;
};

constexpr Effect effect(Marginal m) {
  switch (m) {
    case Marginal::d_up: return {1, 0};
    case Marginal::d_down: return {-1, 0};
    case Marginal::b_up: return {0, 1};
    case Marginal::b_down: return {0, -1};
    case Marginal::b_to_d: return {1, -1};
    case Marginal::d_to_b: return {-1, 1};
  }
  return {0, 0};
}

// Roles of i, j and k in N1..N6 (index family - 1).
constexpr Marginal kRoleI[6] = {Marginal::d_up, Marginal::b_up, Marginal::d_up,
                                Marginal::b_up, Marginal::b_up, Marginal::d_up};
constexpr Marginal kRoleJ[6] = {Marginal::d_down, Marginal::d_down, Marginal::b_down,
                                Marginal::b_down, Marginal::d_down, Marginal::b_down};
constexpr Marginal kRoleK[6] = {Marginal::d_up,   Marginal::d_up,   Marginal::d_up,
                                Marginal::d_up,   Marginal::b_to_d, Marginal::d_to_b};

constexpr bool has_k(int family) { return family >= 5; }

const LexCost kInfinite{ExtendedCost::infinity(), 0};
const LexCost kZero{ExtendedCost(0), 0};

bool better_move(const NeighborMove& a, const std::optional<NeighborMove>& best) {
  if (!best) return true;
  return std::tie(a.delta, a.family, a.i, a.j, a.k) <
         std::tie(best->delta, best->family, best->i, best->j, best->k);
}

}  // namespace

// ---------------------------------------------------------------------------
// AllocationProblem / Lattice

AllocationProblem AllocationProblem::dr(const Instance& inst) {
  AllocationProblem p;
  const auto xbar = inst.xbar();
  for (int i = 0; i < inst.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    p.stations.push_back({&inst.costs[k], inst.ell[k], inst.u[k], xbar[k]});
    p.ids.push_back(i);
  }
  p.total = inst.D + inst.B;
  p.bike_budget = inst.B;
  return p;
}

AllocationProblem AllocationProblem::da(const Instance& inst) {
  AllocationProblem p = dr(inst);
  const auto lo = da_lower(inst);
  const auto hi = da_upper(inst);
  for (std::size_t k = 0; k < p.stations.size(); ++k) {
    p.stations[k].x_lo = lo[k];
    p.stations[k].x_hi = hi[k];
  }
  return p;
}

Lattice::Lattice(AllocationProblem problem, IntVector d0, IntVector b0, std::int64_t step)
    : problem_(std::move(problem)), d0_(std::move(d0)), b0_(std::move(b0)), step_(step) {
  const auto n = static_cast<std::size_t>(problem_.size());
  if (step_ < 1) throw std::invalid_argument("lattice step must be positive");
  if (d0_.size() != n || b0_.size() != n)
    throw std::invalid_argument("lattice anchor has the wrong length");
  d_min_.resize(n);
  b_min_.resize(n);
  x_min_.resize(n);
  x_max_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = problem_.stations[i];
    const auto x0 = d0_[i] + b0_[i];
    d_min_[i] = -floor_div(d0_[i], step_);
    b_min_[i] = -floor_div(b0_[i], step_);
    x_min_[i] = ceil_div(s.x_lo - x0, step_);
    x_max_[i] = floor_div(s.x_hi - x0, step_);
  }
  budget_ = floor_div(problem_.bike_budget - sum(b0_), step_);
}

Lattice Lattice::unit(AllocationProblem problem) {
  const auto n = static_cast<std::size_t>(problem.size());
  return Lattice(std::move(problem), IntVector(n, 0), IntVector(n, 0), 1);
}

ExtendedCost Lattice::cost(int i, std::int64_t d, std::int64_t b) const {
  const auto k = idx(i);
  return problem_.stations[k].cost->eval(d0_[k] + step_ * d, b0_[k] + step_ * b);
}

std::int64_t Lattice::distance_delta(int i, std::int64_t x, std::int64_t dx) const {
  const auto k = idx(i);
  const auto real = d0_[k] + b0_[k] + step_ * x - problem_.stations[k].center;
  const auto moved = real + step_ * dx;
  return (moved < 0 ? -moved : moved) - (real < 0 ? -real : real);
}

Allocation Lattice::to_real(IntSpan d, IntSpan b) const {
  Allocation a;
  a.d.resize(d.size());
  a.b.resize(b.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    a.d[i] = d0_[i] + step_ * d[i];
    a.b[i] = b0_[i] + step_ * b[i];
  }
  return a;
}

// ---------------------------------------------------------------------------
// SraState

SraState::SraState(Lattice lattice, IntVector x, bool distance_tiebreak)
    : lattice_(std::move(lattice)), x_(std::move(x)), distance_tiebreak_(distance_tiebreak) {
  const int n = lattice_.size();
  if (static_cast<int>(x_.size()) != n) throw std::invalid_argument("x has the wrong length");
  b_.resize(x_.size());
  version_.assign(x_.size(), 0);
  value_ = 0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (x_[k] < lattice_.x_min(i) || x_[k] > lattice_.x_max(i))
      throw Infeasible("dock total of station " + std::to_string(i) + " is out of bounds");
    if (x_[k] < lattice_.d_min(i) + lattice_.b_min(i))
      throw Infeasible("dock total of station " + std::to_string(i) + " is negative");
    b_[k] = lattice_.b_min(i);
    total_b_ += b_[k];
    value_ += lattice_.cost(i, x_[k] - b_[k], b_[k]);
  }
  if (total_b_ > lattice_.budget()) throw Infeasible("bike budget below the current bikes");
  rebuild_heaps();
  greedy_fill();
}

SraState::SraState(Lattice lattice, IntVector d, IntVector b, bool distance_tiebreak)
    : lattice_(std::move(lattice)), b_(std::move(b)), distance_tiebreak_(distance_tiebreak) {
  if (d.size() != b_.size() || static_cast<int>(d.size()) != lattice_.size())
    throw std::invalid_argument("allocation has the wrong length");
  x_ = add(d, b_);
  version_.assign(x_.size(), 0);
  total_b_ = sum(b_);
  value_ = 0;
  for (int i = 0; i < lattice_.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    value_ += lattice_.cost(i, d[k], b_[k]);
  }
  rebuild_heaps();
}

IntVector SraState::d() const {
  IntVector out(x_.size());
  for (std::size_t i = 0; i < x_.size(); ++i) out[i] = x_[i] - b_[i];
  return out;
}

LexCost SraState::marginal(Marginal m, int i) const {
  const auto k = static_cast<std::size_t>(i);
  const auto x = x_[k];
  const auto b = b_[k];
  const auto d = x - b;
  const auto [dd, db] = effect(m);
  const auto dx = dd + db;
  if (dx > 0 && x + dx > lattice_.x_max(i)) return kInfinite;
  if (dx < 0 && x + dx < lattice_.x_min(i)) return kInfinite;
  if (d + dd < lattice_.d_min(i) || b + db < lattice_.b_min(i)) return kInfinite;
  const ExtendedCost next = lattice_.cost(i, d + dd, b + db);
  const ExtendedCost cur = lattice_.cost(i, d, b);
  if (next.is_infinite() || cur.is_infinite()) return kInfinite;
  return {ExtendedCost(checked_sub(next.value(), cur.value())),
          distance_tiebreak_ ? lattice_.distance_delta(i, x, dx) : 0};
}

void SraState::push_station(int i) {
  const auto v = version_[static_cast<std::size_t>(i)];
  for (int m = 0; m < kMarginalFamilies; ++m) {
    const LexCost key = marginal(static_cast<Marginal>(m), i);
    if (key.primary.is_finite()) heaps_[static_cast<std::size_t>(m)].push({key, i, v});
  }
}

void SraState::rebuild_heaps() {
  for (auto& h : heaps_) h = Heap();
  for (int i = 0; i < lattice_.size(); ++i) push_station(i);
}

void SraState::change(int i, std::int64_t dd, std::int64_t db) {
  const auto k = static_cast<std::size_t>(i);
  const ExtendedCost old = lattice_.cost(i, x_[k] - b_[k], b_[k]);
  x_[k] += dd + db;
  b_[k] += db;
  total_b_ += db;
  const ExtendedCost now = lattice_.cost(i, x_[k] - b_[k], b_[k]);
  if (value_.is_finite() && old.is_finite())
    value_ = ExtendedCost(checked_sub(value_.value(), old.value())) + now;
  else
    value_ = ExtendedCost::infinity();
  ++version_[k];

  std::size_t entries = 0;
  for (const auto& h : heaps_) entries += h.size();
  if (entries > 12 * x_.size() + 64)
    rebuild_heaps();
  else
    push_station(i);
}

std::vector<SraState::Ranked> SraState::top(Marginal m, int k, std::span<const int> exclude) {
  auto& heap = heaps_[static_cast<std::size_t>(m)];
  std::vector<Entry> keep;
  std::vector<Ranked> out;
  while (!heap.empty() && static_cast<int>(out.size()) < k) {
    const Entry e = heap.top();
    heap.pop();
    if (e.version != version_[static_cast<std::size_t>(e.station)]) continue;
    keep.push_back(e);
    if (std::find(exclude.begin(), exclude.end(), e.station) != exclude.end()) continue;
    out.push_back({e.station, e.key});
  }
  for (const auto& e : keep) heap.push(e);
  return out;
}

void SraState::greedy_fill() {
  while (total_b_ < lattice_.budget()) {
    const auto best = top(Marginal::d_to_b, 1);
    if (best.empty() || !(best.front().key < kZero)) break;
    change(best.front().station, -1, 1);
  }
}

std::int64_t SraState::rebalance() {
  std::int64_t steps = 0;
  for (;;) {
    struct Candidate {
      LexCost key;
      int up = -1;    // station gaining a bike (d -> b)
      int down = -1;  // station losing a bike (b -> d)
    };
    std::optional<Candidate> best;
    auto offer = [&](const Candidate& c) {
      if (c.key < kZero && (!best || c.key < best->key)) best = c;
    };
    const auto ups = top(Marginal::d_to_b, 2);
    const auto downs = top(Marginal::b_to_d, 2);
    if (!ups.empty() && total_b_ < lattice_.budget()) offer({ups.front().key, ups.front().station, -1});
    if (!downs.empty()) offer({downs.front().key, -1, downs.front().station});
    for (const auto& u : ups)
      for (const auto& d : downs)
        if (u.station != d.station) offer({u.key + d.key, u.station, d.station});
    if (!best) break;
    if (best->up >= 0) change(best->up, -1, 1);
    if (best->down >= 0) change(best->down, 1, -1);
    ++steps;
  }
  return steps;
}

std::optional<NeighborMove> SraState::best_neighbor() {
  std::optional<NeighborMove> best;
  for (int family = 1; family <= 6; ++family) {
    const int f = family - 1;
    if (family == 2 && total_b_ + 1 > lattice_.budget()) continue;
    const int width = has_k(family) ? 3 : 2;
    const auto is = top(kRoleI[f], width);
    const auto js = top(kRoleJ[f], width);
    if (is.empty() || js.empty()) continue;
    std::vector<Ranked> ks;
    if (has_k(family)) {
      ks = top(kRoleK[f], width);
      if (ks.empty()) continue;
    }
    for (const auto& a : is) {
      for (const auto& b : js) {
        if (a.station == b.station) continue;
        const LexCost pair = a.key + b.key;
        if (!has_k(family)) {
          NeighborMove mv{family, a.station, b.station, -1, pair};
          if (better_move(mv, best)) best = mv;
          continue;
        }
        for (const auto& c : ks) {
          if (c.station == a.station || c.station == b.station) continue;
          NeighborMove mv{family, a.station, b.station, c.station, pair + c.key};
          if (better_move(mv, best)) best = mv;
        }
      }
    }
  }
  return best;
}

std::optional<NeighborMove> SraState::best_neighbor_for_pair(int i, int j) {
  std::optional<NeighborMove> best;
  const int ij[2] = {i, j};
  for (int family = 1; family <= 6; ++family) {
    const int f = family - 1;
    if (family == 2 && total_b_ + 1 > lattice_.budget()) continue;
    const LexCost ki = marginal(kRoleI[f], i);
    const LexCost kj = marginal(kRoleJ[f], j);
    if (ki.primary.is_infinite() || kj.primary.is_infinite()) continue;
    NeighborMove mv{family, i, j, -1, ki + kj};
    if (has_k(family)) {
      const auto ks = top(kRoleK[f], 1, ij);
      if (ks.empty()) continue;
      mv.k = ks.front().station;
      mv.delta = mv.delta + ks.front().key;
    }
    // Strict comparison on the delta alone keeps the earlier family on ties.
    if (!best || mv.delta < best->delta) best = mv;
  }
  return best;
}

void SraState::apply(const NeighborMove& mv) {
  const int f = mv.family - 1;
  if (f < 0 || f >= 6) throw std::invalid_argument("unknown neighbour family");
  const auto ei = effect(kRoleI[f]);
  const auto ej = effect(kRoleJ[f]);
  change(mv.i, ei.dd, ei.db);
  change(mv.j, ej.dd, ej.db);
  if (has_k(mv.family)) {
    const auto ek = effect(kRoleK[f]);
    change(mv.k, ek.dd, ek.db);
  }
}

// ---------------------------------------------------------------------------
// Free functions

SraState make_sra_state(const Instance& inst, IntSpan x) {
  return SraState(Lattice::unit(AllocationProblem::dr(inst)), IntVector(x.begin(), x.end()));
}

SraSolution solve_sra(const Instance& inst, IntSpan x) {
  SraState s = make_sra_state(inst, x);
  return {s.b(), s.value().value()};
}

SraState sra_incremental(const SraState& state, int i, int j) {
  const int n = state.lattice().size();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("sra_incremental needs two distinct stations");
  const auto& x = state.x();
  if (x[static_cast<std::size_t>(i)] + 1 > state.lattice().x_max(i) ||
      x[static_cast<std::size_t>(j)] - 1 < state.lattice().x_min(j))
    throw std::invalid_argument("x + chi_i - chi_j leaves the bounds");
  SraState next = state;
  const auto mv = next.best_neighbor_for_pair(i, j);
  if (!mv) throw std::invalid_argument("no feasible bike split for x + chi_i - chi_j");
  next.apply(*mv);
  return next;
}

}  // namespace drsolve
