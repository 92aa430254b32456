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

#include "drsolve/mconvex.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace drsolve {

// ---------------------------------------------------------------------------
// MConvexOracle

MConvexOracle::MConvexOracle(std::optional<std::int64_t> level, IntVector lower, IntVector upper,
                             IntVector feasible_point, EvalFn eval)
    : level_(level),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      feasible_(std::move(feasible_point)),
      eval_(std::move(eval)) {
  if (lower_.size() != upper_.size() || lower_.size() != feasible_.size() || lower_.empty())
    throw std::invalid_argument("oracle bounds and feasible point must share a positive dimension");
  if (!(*this)(feasible_).is_finite())
    throw std::invalid_argument("oracle feasible point is outside dom f");
}

bool MConvexOracle::in_box(IntSpan x) const {
  if (x.size() != lower_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower_[i] || x[i] > upper_[i]) return false;
  return true;
}

ExtendedCost MConvexOracle::operator()(IntSpan x) const {
  if (!in_box(x)) return ExtendedCost::infinity();
  if (level_ && sum(x) != *level_) return ExtendedCost::infinity();
  return eval_(x);
}

std::uint64_t MConvexOracle::box_volume() const {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (upper_[i] < lower_[i]) return 0;
    const auto extent = static_cast<std::uint64_t>(upper_[i] - lower_[i]) + 1;
    if (__builtin_mul_overflow(v, extent, &v)) return std::numeric_limits<std::uint64_t>::max();
  }
  return v;
}

// ---------------------------------------------------------------------------
// DomainTable

DomainTable::DomainTable(const MConvexOracle& f, const EnumGuard& guard, kernels::Execution ex)
    : lower_(f.lower()), upper_(f.upper()) {
  const std::uint64_t volume = f.box_volume();
  guard.require(volume);
  const std::size_t n = lower_.size();
  strides_.assign(n, 1);
  for (std::size_t i = n - 1; i > 0; --i)
    strides_[i - 1] = strides_[i] * (upper_[i] - lower_[i] + 1);

  auto decode = [&](std::int64_t idx) {
    IntVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = lower_[i] + idx / strides_[i];
      idx %= strides_[i];
    }
    return x;
  };
  dense_ = kernels::tabulate<ExtendedCost>(
      static_cast<std::int64_t>(volume), [&](std::int64_t idx) { return f(decode(idx)); }, ex);
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(volume); ++idx) {
    if (dense_[static_cast<std::size_t>(idx)].is_finite()) {
      points_.push_back(decode(idx));
      values_.push_back(dense_[static_cast<std::size_t>(idx)].value());
      point_index_.push_back(idx);
    }
  }
}

std::int64_t DomainTable::index_of(IntSpan x) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (x[i] < lower_[i] || x[i] > upper_[i]) return -1;
    idx += (x[i] - lower_[i]) * strides_[i];
  }
  return idx;
}

ExtendedCost DomainTable::value_at(IntSpan x) const {
  const auto idx = index_of(x);
  return idx < 0 ? ExtendedCost::infinity() : dense_[static_cast<std::size_t>(idx)];
}

// ---------------------------------------------------------------------------
// Exchange-axiom checkers

namespace {

std::optional<ExchangeWitness> check_exchange(const MConvexOracle& f, const EnumGuard& guard,
                                              bool allow_none) {
  const DomainTable table(f, guard);
  const auto& pts = table.points();
  const auto& vals = table.values();
  const int n = f.dimension();
  std::vector<std::int64_t> idx(pts.size());
  for (std::size_t p = 0; p < pts.size(); ++p) idx[p] = table.index_of(pts[p]);

  for (std::size_t p = 0; p < pts.size(); ++p) {
    for (std::size_t q = 0; q < pts.size(); ++q) {
      if (p == q) continue;
      const auto& x = pts[p];
      const auto& y = pts[q];
      const ExtendedCost lhs = ExtendedCost(vals[p]) + ExtendedCost(vals[q]);
      for (int i = 0; i < n; ++i) {
        if (x[i] <= y[i]) continue;
        bool ok = false;
        // Every exchange below stays inside the box: x(i) > y(i) >= lower(i)
        // and x(j) < y(j) <= upper(j).
        for (int j = 0; j < n && !ok; ++j) {
          if (x[j] >= y[j]) continue;
          const auto xi = idx[p] - table.stride(i) + table.stride(j);
          const auto yi = idx[q] + table.stride(i) - table.stride(j);
          ok = table.value_by_index(xi) + table.value_by_index(yi) <= lhs;
        }
        if (!ok && allow_none) {
          const auto xi = idx[p] - table.stride(i);
          const auto yi = idx[q] + table.stride(i);
          ok = table.value_by_index(xi) + table.value_by_index(yi) <= lhs;
        }
        if (!ok) return ExchangeWitness{x, y, i};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ExchangeWitness> check_m_exc(const MConvexOracle& f, const EnumGuard& guard) {
  return check_exchange(f, guard, false);
}

std::optional<ExchangeWitness> check_mnat_exc(const MConvexOracle& f, const EnumGuard& guard) {
  return check_exchange(f, guard, true);
}

// ---------------------------------------------------------------------------
// Descent engine

namespace {

bool infinite_key(const ExtendedCost& k) { return k.is_infinite(); }
bool infinite_key(const LexCost& k) { return k.primary.is_infinite(); }

struct Walk {
  IntVector x;
  std::vector<IntVector> path;  // points after each iteration
  Termination reason = Termination::local_optimum;
};

// Repeatedly moves to the best neighbour move(x, a, b) under `key`. With
// require_improvement the walk stops once no neighbour is strictly better;
// without it the walk always takes the best finite neighbour.
template <class Key, class KeyFn, class MoveFn>
Walk walk(IntVector x, KeyFn&& key, MoveFn&& move, bool require_improvement,
          std::int64_t max_iterations, kernels::Execution ex) {
  const int n = static_cast<int>(x.size());
  Walk w;
  Key current = key(x);
  std::int64_t iters = 0;
  for (;;) {
    if (max_iterations >= 0 && iters >= max_iterations) {
      w.reason = Termination::budget_exhausted;
      break;
    }
    auto choice = kernels::argmin_pairs<Key>(
        n,
        [&](int a, int b) -> std::optional<Key> {
          std::optional<IntVector> y = move(x, a, b);
          if (!y) return std::nullopt;
          Key k = key(*y);
          if (infinite_key(k)) return std::nullopt;
          return k;
        },
        ex);
    if (!choice || (require_improvement && !(choice->key < current))) {
      w.reason = Termination::local_optimum;
      break;
    }
    x = *move(x, choice->a, choice->b);
    current = choice->key;
    w.path.push_back(x);
    ++iters;
  }
  w.x = std::move(x);
  return w;
}

// Forward exchange x + chi_a - chi_b.
auto forward_move() {
  return [](const IntVector& x, int a, int b) -> std::optional<IntVector> {
    return exchanged(x, a, b);
  };
}

void require_center_on_level(const MConvexOracle& f, IntSpan center) {
  if (center.size() != static_cast<std::size_t>(f.dimension()))
    throw std::invalid_argument("center has the wrong dimension");
  if (f.level() && sum(center) != *f.level())
    throw std::invalid_argument("center must satisfy x(N) = level");
}

DescentTrace make_trace(const MConvexOracle& f, IntSpan center, const IntVector& start,
                        const Walk& w, std::int64_t k0, std::int64_t dk) {
  DescentTrace t;
  t.initial = {k0, start, f(start), l1_distance(start, center)};
  std::int64_t k = k0;
  for (const auto& p : w.path) {
    k += dk;
    t.steps.push_back({k, p, f(p), l1_distance(p, center)});
  }
  t.reason = w.reason;
  return t;
}

}  // namespace

DescentResult steepest_descent(const MConvexOracle& f, IntSpan x0, const DescentOptions& opt) {
  IntVector start(x0.begin(), x0.end());
  if (!f(start).is_finite()) throw Infeasible("steepest descent needs f(x0) < +infinity");
  auto w = walk<ExtendedCost>(
      start, [&](const IntVector& x) { return f(x); }, forward_move(), true, opt.max_iterations,
      opt.exec);
  DescentResult r;
  r.trace = make_trace(f, x0, start, w, 0, 1);
  r.x = w.x;
  r.value = f(r.x);
  return r;
}

LexDescentResult steepest_descent_lex(const MConvexOracle& f, IntSpan center, LexOrder order,
                                      const DescentOptions& opt) {
  require_center_on_level(f, center);
  IntVector c(center.begin(), center.end());
  auto key = [&](const IntVector& x) -> LexCost {
    const ExtendedCost v = f(x);
    if (v.is_infinite()) return {ExtendedCost::infinity(), 0};
    const auto dist = l1_distance(x, c);
    if (order == LexOrder::value_then_distance) return {v, dist};
    return {ExtendedCost(dist), v.value()};
  };
  auto w = walk<LexCost>(f.feasible_point(), key, forward_move(), true, opt.max_iterations,
                         opt.exec);
  LexDescentResult r;
  r.x = w.x;
  r.value = f(r.x);
  r.distance = l1_distance(r.x, c);
  r.iterations = static_cast<std::int64_t>(w.path.size());
  return r;
}

DescentResult steepest_descent_mml1(const MConvexOracle& f, IntSpan center, std::int64_t gamma,
                                    const DescentOptions& opt) {
  if (!f.level()) throw std::invalid_argument("the L1-constrained problem needs a level");
  const auto circ = steepest_descent_lex(f, center, LexOrder::distance_then_value, opt);
  const std::int64_t sigma = circ.half_distance();
  if (sigma > gamma)
    throw Infeasible("L1 budget 2*" + std::to_string(gamma) + " is below the distance to dom f");
  auto w = walk<ExtendedCost>(
      circ.x, [&](const IntVector& x) { return f(x); }, forward_move(), true, gamma - sigma,
      opt.exec);
  DescentResult r;
  r.trace = make_trace(f, center, circ.x, w, sigma, 1);
  r.x = w.x;
  r.value = f(r.x);
  return r;
}

DescentResult reverse_steepest_descent_mml1(const MConvexOracle& f, IntSpan center,
                                            std::int64_t gamma, const DescentOptions& opt) {
  if (!f.level()) throw std::invalid_argument("the L1-constrained problem needs a level");
  const auto circ = steepest_descent_lex(f, center, LexOrder::distance_then_value, opt);
  if (circ.half_distance() > gamma)
    throw Infeasible("L1 budget 2*" + std::to_string(gamma) + " is below the distance to dom f");
  const auto bullet = steepest_descent_lex(f, center, LexOrder::value_then_distance, opt);
  const std::int64_t tau = bullet.half_distance();
  IntVector c(center.begin(), center.end());

  // x - chi_a + chi_b with a in supp+(x - c), b in supp-(x - c).
  auto toward_center = [&](const IntVector& x, int a, int b) -> std::optional<IntVector> {
    if (x[static_cast<std::size_t>(a)] <= c[static_cast<std::size_t>(a)] ||
        x[static_cast<std::size_t>(b)] >= c[static_cast<std::size_t>(b)])
      return std::nullopt;
    return exchanged(x, b, a);
  };
  const std::int64_t steps = std::max<std::int64_t>(tau - gamma, 0);
  auto w = walk<ExtendedCost>(
      bullet.x, [&](const IntVector& x) { return f(x); }, toward_center, false, steps, opt.exec);
  DescentResult r;
  r.trace = make_trace(f, center, bullet.x, w, tau, -1);
  r.x = w.x;
  r.value = f(r.x);
  return r;
}

// ---------------------------------------------------------------------------
// mu profile

MuProfile mu_profile(const MConvexOracle& f, IntSpan center, const EnumGuard& guard) {
  if (!f.level()) throw std::invalid_argument("mu profile needs a level");
  require_center_on_level(f, center);
  const DomainTable table(f, guard);
  const auto& pts = table.points();
  const auto& vals = table.values();
  if (pts.empty()) throw Infeasible("dom f is empty");

  std::vector<std::int64_t> half(pts.size());
  std::int64_t sigma = std::numeric_limits<std::int64_t>::max();
  Cost best = std::numeric_limits<Cost>::max();
  for (std::size_t p = 0; p < pts.size(); ++p) {
    half[p] = l1_distance(pts[p], center) / 2;
    sigma = std::min(sigma, half[p]);
    best = std::min(best, vals[p]);
  }
  std::int64_t tau = std::numeric_limits<std::int64_t>::max();
  for (std::size_t p = 0; p < pts.size(); ++p)
    if (vals[p] == best) tau = std::min(tau, half[p]);

  MuProfile prof;
  prof.sigma = sigma;
  prof.tau = tau;
  for (std::int64_t k = sigma; k <= tau; ++k) {
    std::optional<std::size_t> arg;
    for (std::size_t p = 0; p < pts.size(); ++p)
      if (half[p] <= k && (!arg || vals[p] < vals[*arg])) arg = p;
    prof.mu.push_back(vals[*arg]);
    prof.witnesses.push_back(pts[*arg]);
  }
  return prof;
}

std::optional<std::string> check_mu_profile(const MuProfile& p, IntSpan center) {
  std::ostringstream os;
  for (std::int64_t k = p.sigma; k <= p.tau; ++k) {
    const auto& w = p.witnesses[static_cast<std::size_t>(k - p.sigma)];
    if (l1_distance(w, center) != 2 * k) {
      os << "witness for k=" << k << " is at distance " << l1_distance(w, center);
      return os.str();
    }
    if (k > p.sigma && !(p.at(k) < p.at(k - 1))) {
      os << "mu not strictly decreasing at k=" << k << ": " << p.at(k - 1) << " -> " << p.at(k);
      return os.str();
    }
    if (k > p.sigma && k < p.tau && p.at(k - 1) + p.at(k + 1) < 2 * p.at(k)) {
      os << "mu not convex at k=" << k;
      return os.str();
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// g-reduction

GReductionResult solve_mml1_via_g(const MConvexOracle& f, IntSpan center, std::int64_t gamma,
                                  const DescentOptions& opt) {
  if (!f.level()) throw std::invalid_argument("the L1-constrained problem needs a level");
  const auto circ = steepest_descent_lex(f, center, LexOrder::distance_then_value, opt);
  if (circ.half_distance() > gamma)
    throw Infeasible("L1 budget 2*" + std::to_string(gamma) + " is below the distance to dom f");
  const auto bullet = steepest_descent_lex(f, center, LexOrder::value_then_distance, opt);

  GReductionResult res;
  if (bullet.half_distance() <= gamma) {
    res.x = bullet.x;
    res.value = bullet.value;
    res.bypassed = true;
    return res;
  }

  const int n = f.dimension();
  const IntVector c(center.begin(), center.end());
  const IntVector& xb = bullet.x;
  res.P = supp_plus(xb, c);
  std::vector<int> Q;
  std::vector<bool> in_p(static_cast<std::size_t>(n), false);
  for (int i : res.P) in_p[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < n; ++i)
    if (!in_p[static_cast<std::size_t>(i)]) Q.push_back(i);

  res.ell_hat.resize(static_cast<std::size_t>(n));
  res.u_hat.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto s = static_cast<std::size_t>(i);
    if (in_p[s]) {
      res.ell_hat[s] = c[s];
      res.u_hat[s] = std::min(xb[s], c[s] + gamma);
    } else {
      res.ell_hat[s] = std::max(xb[s], c[s] - gamma);
      res.u_hat[s] = c[s];
    }
  }

  // Distance of x from T(y) ignoring dom f: L1 mismatch on N \ P plus the
  // L1 distance to [ell_hat, u_hat] on P. Separable convex in x.
  auto violation = [&](const IntVector& x, const IntVector& y) {
    std::int64_t v = 0;
    for (std::size_t q = 0; q < Q.size(); ++q)
      v += std::llabs(x[static_cast<std::size_t>(Q[q])] - y[q]);
    for (int i : res.P) {
      const auto s = static_cast<std::size_t>(i);
      if (x[s] < res.ell_hat[s]) v += res.ell_hat[s] - x[s];
      if (x[s] > res.u_hat[s]) v += x[s] - res.u_hat[s];
    }
    return v;
  };

  struct GValue {
    LexCost key;
    IntVector x;
  };
  std::map<IntVector, GValue> memo;
  std::mutex memo_mu;
  // (violation, f) minimized over dom f; violation 0 means g(y) = f.
  auto g = [&](const IntVector& y) -> LexCost {
    {
      std::lock_guard lock(memo_mu);
      if (auto it = memo.find(y); it != memo.end()) return it->second.key;
    }
    auto inner_key = [&](const IntVector& x) -> LexCost {
      const ExtendedCost v = f(x);
      if (v.is_infinite()) return {ExtendedCost::infinity(), 0};
      return {ExtendedCost(violation(x, y)), v.value()};
    };
    auto w = walk<LexCost>(xb, inner_key, forward_move(), true, -1, kernels::Execution::serial);
    const LexCost k = inner_key(w.x);
    std::lock_guard lock(memo_mu);
    memo.emplace(y, GValue{k, w.x});
    return k;
  };

  // Start: fill N \ P greedily from ell_hat up to y(N \ P) = level - c(P) - gamma.
  std::int64_t c_p = 0;
  for (int i : res.P) c_p += c[static_cast<std::size_t>(i)];
  std::int64_t remaining = *f.level() - (c_p + gamma);
  IntVector y0(Q.size());
  for (std::size_t q = 0; q < Q.size(); ++q) {
    y0[q] = res.ell_hat[static_cast<std::size_t>(Q[q])];
    remaining -= y0[q];
  }
  for (std::size_t q = 0; q < Q.size() && remaining > 0; ++q) {
    const auto room = res.u_hat[static_cast<std::size_t>(Q[q])] - y0[q];
    const auto add_now = std::min(room, remaining);
    y0[q] += add_now;
    remaining -= add_now;
  }
  if (remaining != 0) throw Infeasible("linear-constraint form has no box-feasible start");

  auto y_move = [&](const IntVector& y, int a, int b) -> std::optional<IntVector> {
    const auto qa = static_cast<std::size_t>(Q[static_cast<std::size_t>(a)]);
    const auto qb = static_cast<std::size_t>(Q[static_cast<std::size_t>(b)]);
    if (y[static_cast<std::size_t>(a)] + 1 > res.u_hat[qa]) return std::nullopt;
    if (y[static_cast<std::size_t>(b)] - 1 < res.ell_hat[qb]) return std::nullopt;
    return exchanged(y, a, b);
  };
  auto outer = walk<LexCost>(y0, g, y_move, true, -1, opt.exec);

  const GValue& best = memo.at(outer.x);
  if (best.key.primary != ExtendedCost(0))
    throw Infeasible("linear-constraint form is infeasible");
  res.y = outer.x;
  res.x = best.x;
  res.value = f(res.x);
  res.outer_iterations = static_cast<std::int64_t>(outer.path.size());
  res.g_evaluations = static_cast<std::int64_t>(memo.size());
  return res;
}

}  // namespace drsolve
