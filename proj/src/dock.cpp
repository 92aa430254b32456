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

#include "drsolve/dock.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

#include "drsolve/errors.hpp"

namespace drsolve {

namespace {

const LexCost kZero{ExtendedCost(0), 0};

MConvexOracle make_oracle(const Instance& inst, std::optional<std::int64_t> level) {
  auto shared = std::make_shared<const Instance>(inst);
  auto eval = [shared](IntSpan x) -> ExtendedCost {
    try {
      return solve_sra(*shared, x).value;
    } catch (const Infeasible&) {
      return ExtendedCost::infinity();
    }
  };
  return MConvexOracle(level, da_lower(inst), da_upper(inst), inst.xbar(), std::move(eval));
}

DrTraceStep trace_step(std::int64_t k, const SraState& st, IntSpan xbar) {
  return {k, st.allocation(), st.value().value(), l1_distance(st.x(), xbar)};
}

void require_feasible_start(const AllocationProblem& p, const Allocation& a) {
  const auto n = static_cast<std::size_t>(p.size());
  if (a.d.size() != n || a.b.size() != n) throw Infeasible("start has the wrong length");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = p.stations[i];
    const auto x = a.d[i] + a.b[i];
    if (a.d[i] < 0 || a.b[i] < 0 || x < s.x_lo || x > s.x_hi)
      throw Infeasible("start violates the bounds at station " + std::to_string(i));
  }
  if (sum(a.d) + sum(a.b) != p.total) throw Infeasible("start violates the capacity equality");
  if (sum(a.b) > p.bike_budget) throw Infeasible("start violates the bike budget");
}

}  // namespace

MConvexOracle make_f_oracle(const Instance& inst) { return make_oracle(inst, inst.D + inst.B); }

MConvexOracle make_fhat_oracle(const Instance& inst) { return make_oracle(inst, std::nullopt); }

// ---------------------------------------------------------------------------
// Greedy

DrSolution solve_dr_greedy(const Instance& inst, bool fast, kernels::Execution ex) {
  const IntVector xbar = inst.xbar();
  const Lattice lattice = Lattice::unit(AllocationProblem::dr(inst));
  SraState st(lattice, xbar);

  DrSolution sol;
  sol.trace.push_back(trace_step(0, st, xbar));
  for (std::int64_t k = 1; k <= inst.gamma; ++k) {
    if (fast) {
      const auto mv = st.best_neighbor();
      if (!mv || !(mv->delta < kZero)) break;
      st.apply(*mv);
    } else {
      const IntVector& x = st.x();
      auto choice = kernels::argmin_pairs<ExtendedCost>(
          inst.n,
          [&](int i, int j) -> std::optional<ExtendedCost> {
            if (x[static_cast<std::size_t>(i)] + 1 > lattice.x_max(i) ||
                x[static_cast<std::size_t>(j)] - 1 < lattice.x_min(j))
              return std::nullopt;
            try {
              const ExtendedCost v = SraState(lattice, exchanged(x, i, j)).value();
              if (v.is_infinite()) return std::nullopt;
              return v;
            } catch (const Infeasible&) {
              return std::nullopt;
            }
          },
          ex);
      if (!choice || !(choice->key < st.value())) break;
      st = SraState(lattice, exchanged(x, choice->a, choice->b));
    }
    sol.trace.push_back(trace_step(k, st, xbar));
  }
  sol.allocation = st.allocation();
  sol.objective = st.value().value();
  sol.iterations = static_cast<std::int64_t>(sol.trace.size()) - 1;
  sol.distance = l1_distance(st.x(), xbar);
  return sol;
}

// ---------------------------------------------------------------------------
// (DA) at step lambda and proximity scaling

LatticeDescent descend_on_lattice(const AllocationProblem& problem, const Allocation& start,
                                  std::int64_t lambda) {
  if (lambda < 1) throw std::invalid_argument("lambda must be positive");
  require_feasible_start(problem, start);
  const auto n = static_cast<std::size_t>(problem.size());
  SraState st(Lattice(problem, start.d, start.b, lambda), IntVector(n, 0), IntVector(n, 0), false);

  LatticeDescent out;
  out.rebalance_steps = st.rebalance();
  for (;;) {
    const auto mv = st.best_neighbor();
    if (!mv || !(mv->delta < kZero)) break;
    st.apply(*mv);
    ++out.descent_steps;
  }
  out.allocation = st.allocation();
  out.objective = st.value().value();
  return out;
}

LatticeDescent solve_da_steepest(const Instance& inst, const Allocation& start,
                                 std::int64_t lambda) {
  return descend_on_lattice(AllocationProblem::da(inst), start, lambda);
}

std::int64_t ScalingSchedule::initial_lambda(std::int64_t total, int n) {
  return std::max<std::int64_t>(1, total / (4 * static_cast<std::int64_t>(n)));
}

ScalingSchedule ScalingSchedule::planned(std::int64_t total, int n) {
  ScalingSchedule s;
  for (std::int64_t l = initial_lambda(total, n);; l /= 2) {
    s.lambdas.push_back(l);
    if (l == 1) break;
  }
  return s;
}

ScalingResult scale_allocation(const AllocationProblem& problem, const Allocation& start) {
  ScalingResult res;
  res.allocation = start;
  for (std::int64_t lambda = ScalingSchedule::initial_lambda(problem.total, problem.size());;
       lambda /= 2) {
    LatticeDescent phase = descend_on_lattice(problem, res.allocation, lambda);
    res.allocation = std::move(phase.allocation);
    res.objective = phase.objective;
    res.schedule.lambdas.push_back(lambda);
    res.schedule.descent_steps.push_back(phase.descent_steps);
    res.schedule.rebalance_steps.push_back(phase.rebalance_steps);
    res.schedule.outputs.push_back(res.allocation);
    if (lambda == 1) break;
  }
  return res;
}

ScalingResult solve_da_scaling(const Instance& inst) {
  return scale_allocation(AllocationProblem::da(inst), Allocation{inst.dbar, inst.bbar});
}

std::pair<Allocation, std::int64_t> nearest_da_optimum(const Instance& inst,
                                                      const Allocation& optimum) {
  const AllocationProblem problem = AllocationProblem::da(inst);
  require_feasible_start(problem, optimum);
  SraState st(Lattice::unit(problem), optimum.d, optimum.b, true);
  std::int64_t steps = st.rebalance();
  for (;;) {
    const auto mv = st.best_neighbor();
    if (!mv || !(mv->delta < kZero)) break;
    st.apply(*mv);
    ++steps;
  }
  return {st.allocation(), steps};
}

// ---------------------------------------------------------------------------
// Split and alpha search

DrlSplit make_split(const Instance& inst, IntSpan x_bullet, SplitBounds bounds) {
  const IntVector xbar = inst.xbar();
  DrlSplit s;
  s.bounds = bounds;
  s.x_bullet.assign(x_bullet.begin(), x_bullet.end());
  s.P = supp_plus(x_bullet, xbar);
  for (int i = 0; i < inst.n; ++i)
    if (!std::binary_search(s.P.begin(), s.P.end(), i)) s.Q.push_back(i);

  if (bounds == SplitBounds::printed) {
    s.ell_hat = da_lower(inst);
    s.u_hat = da_upper(inst);
    return s;
  }
  s.ell_hat.resize(xbar.size());
  s.u_hat.resize(xbar.size());
  for (int i : s.P) {
    const auto k = static_cast<std::size_t>(i);
    s.ell_hat[k] = xbar[k];
    s.u_hat[k] = std::min(x_bullet[k], xbar[k] + inst.gamma);
  }
  for (int i : s.Q) {
    const auto k = static_cast<std::size_t>(i);
    s.ell_hat[k] = std::max(x_bullet[k], xbar[k] - inst.gamma);
    s.u_hat[k] = xbar[k];
  }
  return s;
}

AllocationProblem side_problem(const Instance& inst, const DrlSplit& split, Side side,
                               std::int64_t alpha) {
  const IntVector xbar = inst.xbar();
  const auto& members = side == Side::A ? split.P : split.Q;
  AllocationProblem p;
  std::int64_t level = 0;
  for (int i : members) {
    const auto k = static_cast<std::size_t>(i);
    p.stations.push_back({&inst.costs[k], split.ell_hat[k], split.u_hat[k], xbar[k]});
    p.ids.push_back(i);
    level += xbar[k];
  }
  p.total = side == Side::A ? level + inst.gamma : level - inst.gamma;
  p.bike_budget = side == Side::A ? alpha : inst.B - alpha;
  return p;
}

SideSolution solve_side(const Instance& inst, const DrlSplit& split, Side side,
                        std::int64_t alpha) {
  SideSolution out;
  out.value = ExtendedCost::infinity();
  const AllocationProblem p = side_problem(inst, split, side, alpha);
  if (p.bike_budget < 0) return out;

  // Start: x filled from the lower bounds up to the level, every dock empty.
  IntVector x(static_cast<std::size_t>(p.size()));
  std::int64_t remaining = p.total;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (p.stations[i].x_lo > p.stations[i].x_hi || p.stations[i].x_lo < 0) return out;
    x[i] = p.stations[i].x_lo;
    remaining -= x[i];
  }
  if (remaining < 0) return out;
  for (std::size_t i = 0; i < x.size() && remaining > 0; ++i) {
    const auto add_now = std::min(p.stations[i].x_hi - x[i], remaining);
    x[i] += add_now;
    remaining -= add_now;
  }
  if (remaining != 0) return out;

  ScalingResult r = scale_allocation(p, Allocation{x, IntVector(x.size(), 0)});
  out.value = r.objective;
  out.allocation = std::move(r.allocation);
  for (int ph = 0; ph < r.schedule.phases(); ++ph) out.steps += r.schedule.unit_steps(ph);
  return out;
}

ExtendedCost psi(const Instance& inst, const DrlSplit& split, Side side, std::int64_t alpha) {
  return solve_side(inst, split, side, alpha).value;
}

std::optional<ConvexSearch> minimize_convex(std::int64_t lo, std::int64_t hi,
                                            const std::function<ExtendedCost(std::int64_t)>& fn) {
  if (lo > hi) return std::nullopt;
  ConvexSearch s;
  std::map<std::int64_t, ExtendedCost> cache;
  auto value = [&](std::int64_t m) {
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    const ExtendedCost v = fn(m);
    cache.emplace(m, v);
    s.probes.emplace_back(m, v);
    return v;
  };
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (value(mid) <= value(mid + 1))
      hi = mid;
    else
      lo = mid + 1;
  }
  s.argmin = lo;
  s.value = value(lo);
  if (s.value.is_infinite()) return std::nullopt;
  return s;
}

DrSolution solve_dr_poly(const Instance& inst, const PolyOptions& opt, PolyDetails* details) {
  const IntVector xbar = inst.xbar();
  ScalingResult da = solve_da_scaling(inst);
  DrSolution sol;
  for (int ph = 0; ph < da.schedule.phases(); ++ph) sol.iterations += da.schedule.unit_steps(ph);
  Allocation bullet = da.allocation;
  if (opt.nearest) {
    auto [near, steps] = nearest_da_optimum(inst, da.allocation);
    bullet = std::move(near);
    sol.iterations += steps;
  }
  if (details) {
    details->da_optimum = bullet;
    details->schedule = da.schedule;
  }

  const IntVector xb = bullet.x();
  if (l1_distance(xb, xbar) <= 2 * inst.gamma) {
    if (details) details->bypassed = true;
    sol.allocation = bullet;
    sol.objective = total_cost(inst, bullet).value();
    sol.distance = l1_distance(xb, xbar);
    return sol;
  }

  const DrlSplit split = make_split(inst, xb, opt.bounds);
  std::map<std::int64_t, SideSolution> memo_a, memo_b;
  auto side = [&](Side s, std::int64_t alpha) -> const SideSolution& {
    auto& memo = s == Side::A ? memo_a : memo_b;
    if (auto it = memo.find(alpha); it != memo.end()) return it->second;
    return memo.emplace(alpha, solve_side(inst, split, s, alpha)).first->second;
  };

  // psi_A is finite on some [a, B] and psi_B on some [0, b]; search inside.
  const std::int64_t B = inst.B;
  if (side(Side::A, B).value.is_infinite() || side(Side::B, 0).value.is_infinite())
    throw Infeasible("split subproblem has no feasible point");
  std::int64_t lo = 0, hi = B;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (side(Side::A, mid).value.is_finite()) hi = mid; else lo = mid + 1;
  }
  const std::int64_t a = lo;
  lo = 0;
  hi = B;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (side(Side::B, mid).value.is_finite()) lo = mid; else hi = mid - 1;
  }
  const std::int64_t b = lo;

  auto search = minimize_convex(a, b, [&](std::int64_t alpha) {
    return side(Side::A, alpha).value + side(Side::B, alpha).value;
  });
  if (!search) throw Infeasible("no alpha makes both split subproblems feasible");

  const auto n = static_cast<std::size_t>(inst.n);
  sol.allocation.d.assign(n, 0);
  sol.allocation.b.assign(n, 0);
  for (Side s : {Side::A, Side::B}) {
    const SideSolution& part = side(s, search->argmin);
    const auto& members = s == Side::A ? split.P : split.Q;
    for (std::size_t k = 0; k < members.size(); ++k) {
      const auto i = static_cast<std::size_t>(members[k]);
      sol.allocation.d[i] = part.allocation.d[k];
      sol.allocation.b[i] = part.allocation.b[k];
    }
  }
  sol.objective = search->value.value();
  sol.distance = l1_distance(sol.allocation.x(), xbar);
  if (details) {
    details->split = split;
    details->alpha = search->argmin;
    details->probes = search->probes;
  }
  return sol;
}

}  // namespace drsolve
