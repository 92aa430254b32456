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

#include "drsolve/verify.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "drsolve/dock.hpp"
#include "drsolve/sra.hpp"

namespace drsolve {

// ---------------------------------------------------------------------------
// Enumeration. Only StationCost::eval from the core is used here.

namespace {

struct Enumeration {
  const Instance* inst = nullptr;
  std::vector<int> stations;
  IntVector lo, hi;
  std::int64_t total = 0;
  std::int64_t budget = 0;
  std::optional<std::int64_t> l1_budget;  // sum |x - xbar| over `stations`
  IntVector center;

  // suffix sums for pruning
  IntVector lo_rest, hi_rest;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

// Visits every feasible (d, b) of the enumeration with its cost. The guard is
// charged the product of per-station (d, b) choices before any pruning.
void enumerate(Enumeration& e, const EnumGuard& guard,
               const std::function<void(const IntVector&, const IntVector&, Cost)>& visit) {
  const std::size_t m = e.stations.size();
  std::uint64_t points = 1;
  for (std::size_t k = 0; k < m; ++k) {
    if (e.hi[k] < e.lo[k] || e.hi[k] < 0) return;
    const auto lo = static_cast<std::uint64_t>(std::max<std::int64_t>(e.lo[k], 0));
    const auto hi = static_cast<std::uint64_t>(e.hi[k]);
    // pairs (d, b) with lo <= d + b <= hi
    const std::uint64_t count = (hi + 1) * (hi + 2) / 2 - lo * (lo + 1) / 2;
    points = saturating_mul(points, count);
  }
  guard.require(points);

  e.lo_rest.assign(m + 1, 0);
  e.hi_rest.assign(m + 1, 0);
  for (std::size_t k = m; k-- > 0;) {
    e.lo_rest[k] = e.lo_rest[k + 1] + std::max<std::int64_t>(e.lo[k], 0);
    e.hi_rest[k] = e.hi_rest[k + 1] + e.hi[k];
  }

  IntVector d(m), b(m);
  std::function<void(std::size_t, std::int64_t, std::int64_t, std::int64_t, ExtendedCost)> rec =
      [&](std::size_t k, std::int64_t xs, std::int64_t bs, std::int64_t dist, ExtendedCost cost) {
        if (k == m) {
          if (xs == e.total && cost.is_finite()) visit(d, b, cost.value());
          return;
        }
        const int st = e.stations[k];
        const auto& c = e.inst->costs[static_cast<std::size_t>(st)];
        for (std::int64_t x = std::max<std::int64_t>(e.lo[k], 0); x <= e.hi[k]; ++x) {
          const std::int64_t xs2 = xs + x;
          if (xs2 + e.lo_rest[k + 1] > e.total) break;
          if (xs2 + e.hi_rest[k + 1] < e.total) continue;
          std::int64_t dist2 = dist;
          if (e.l1_budget) {
            dist2 += std::llabs(x - e.center[k]);
            if (dist2 > *e.l1_budget) continue;
          }
          for (std::int64_t bb = 0; bb <= x && bs + bb <= e.budget; ++bb) {
            d[k] = x - bb;
            b[k] = bb;
            rec(k + 1, xs2, bs + bb, dist2, cost + c.eval(x - bb, bb));
          }
        }
      };
  rec(0, 0, 0, 0, ExtendedCost(0));
}

Enumeration full_enumeration(const Instance& inst) {
  Enumeration e;
  e.inst = &inst;
  for (int i = 0; i < inst.n; ++i) e.stations.push_back(i);
  e.total = inst.D + inst.B;
  e.budget = inst.B;
  e.center = inst.xbar();
  return e;
}

BruteForceResult collect(Enumeration& e, const EnumGuard& guard) {
  BruteForceResult r;
  bool any = false;
  enumerate(e, guard, [&](const IntVector& d, const IntVector& b, Cost v) {
    ++r.feasible;
    if (!any || v < r.objective) {
      any = true;
      r.objective = v;
      r.optima.clear();
    }
    if (v == r.objective) r.optima.push_back(Allocation{d, b});
  });
  if (!any) throw Infeasible("no feasible allocation");
  return r;
}

}  // namespace

BruteForceResult brute_force_dr(const Instance& inst, const EnumGuard& guard) {
  Enumeration e = full_enumeration(inst);
  e.lo = inst.ell;
  e.hi = inst.u;
  e.l1_budget = 2 * inst.gamma;
  return collect(e, guard);
}

BruteForceResult brute_force_da(const Instance& inst, const EnumGuard& guard) {
  Enumeration e = full_enumeration(inst);
  e.lo = IntVector(static_cast<std::size_t>(inst.n));
  e.hi = IntVector(static_cast<std::size_t>(inst.n));
  const IntVector xbar = inst.xbar();
  for (std::size_t i = 0; i < e.lo.size(); ++i) {
    e.lo[i] = std::max(inst.ell[i], xbar[i] - inst.gamma);
    e.hi[i] = std::min(inst.u[i], xbar[i] + inst.gamma);
  }
  return collect(e, guard);
}

ExtendedCost brute_force_box(const Instance& inst, const BruteBox& box, const EnumGuard& guard) {
  if (box.budget < 0) return ExtendedCost::infinity();
  Enumeration e;
  e.inst = &inst;
  e.stations = box.stations;
  e.lo = box.lo;
  e.hi = box.hi;
  e.total = box.total;
  e.budget = box.budget;
  ExtendedCost best = ExtendedCost::infinity();
  enumerate(e, guard, [&](const IntVector&, const IntVector&, Cost v) {
    if (ExtendedCost(v) < best) best = v;
  });
  return best;
}

BruteSra brute_force_sra(const Instance& inst, IntSpan x, const EnumGuard& guard) {
  const auto n = static_cast<std::size_t>(inst.n);
  if (x.size() != n) throw std::invalid_argument("x has the wrong length");
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] < 0 || x[i] < inst.ell[i] || x[i] > inst.u[i])
      throw Infeasible("dock total of station " + std::to_string(i) + " is out of bounds");
    points = saturating_mul(points, static_cast<std::uint64_t>(x[i]) + 1);
  }
  guard.require(points);

  BruteSra r;
  bool any = false;
  IntVector b(n, 0);
  std::function<void(std::size_t, std::int64_t, ExtendedCost)> rec =
      [&](std::size_t k, std::int64_t bs, ExtendedCost cost) {
        if (k == n) {
          if (cost.is_infinite()) return;
          const Cost v = cost.value();
          if (!any || v < r.value) {
            any = true;
            r.value = v;
            r.b = b;
            r.optima.clear();
          }
          if (v == r.value) r.optima.push_back(b);
          return;
        }
        for (std::int64_t bb = 0; bb <= x[k] && bs + bb <= inst.B; ++bb) {
          b[k] = bb;
          rec(k + 1, bs + bb, cost + inst.costs[k].eval(x[k] - bb, bb));
        }
        b[k] = 0;
      };
  rec(0, 0, ExtendedCost(0));
  if (!any) throw Infeasible("no feasible bike split");
  return r;
}

MConvexOracle brute_force_f_oracle(const Instance& inst, bool with_level) {
  auto shared = std::make_shared<const Instance>(inst);
  auto eval = [shared](IntSpan x) -> ExtendedCost {
    try {
      return brute_force_sra(*shared, x).value;
    } catch (const Infeasible&) {
      return ExtendedCost::infinity();
    }
  };
  IntVector lo(static_cast<std::size_t>(inst.n)), hi(static_cast<std::size_t>(inst.n));
  const IntVector xbar = inst.xbar();
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::max(inst.ell[i], xbar[i] - inst.gamma);
    hi[i] = std::min(inst.u[i], xbar[i] + inst.gamma);
  }
  std::optional<std::int64_t> level;
  if (with_level) level = inst.D + inst.B;
  return MConvexOracle(level, lo, hi, xbar, std::move(eval));
}

std::optional<Allocation> find_lambda_improvement(const Instance& inst, const Allocation& a,
                                                  std::int64_t lambda, const EnumGuard& guard) {
  const auto n = static_cast<std::size_t>(inst.n);
  std::uint64_t points = 1;
  for (std::size_t i = 0; i < n; ++i) points = saturating_mul(points, 9);
  guard.require(points);
  const ExtendedCost base = total_cost(inst, a);
  Allocation cand = a;
  const std::int64_t steps[3] = {-lambda, 0, lambda};
  std::optional<Allocation> found;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (found) return;
    if (k == n) {
      if (cand == a || !is_da_feasible(inst, cand)) return;
      if (total_cost(inst, cand) < base) found = cand;
      return;
    }
    for (std::int64_t dd : steps) {
      for (std::int64_t db : steps) {
        cand.d[k] = a.d[k] + dd;
        cand.b[k] = a.b[k] + db;
        rec(k + 1);
      }
    }
    cand.d[k] = a.d[k];
    cand.b[k] = a.b[k];
  };
  rec(0);
  return found;
}

bool in_incremental_candidates(IntSpan b, IntSpan b_new, int i, int j) {
  int pos = -1, neg = -1;
  for (std::size_t k = 0; k < b.size(); ++k) {
    const auto diff = b_new[k] - b[k];
    if (diff == 0) continue;
    if (diff == 1 && pos < 0) {
      pos = static_cast<int>(k);
    } else if (diff == -1 && neg < 0) {
      neg = static_cast<int>(k);
    } else {
      return false;
    }
  }
  if (pos < 0 && neg < 0) return true;
  if (neg < 0) return pos == i;
  if (pos < 0) return neg == j;
  return pos == i || neg == j;
}

// ---------------------------------------------------------------------------
// Reports

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

const CheckResult* SuiteReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

const std::vector<std::string>& all_checks() {
  static const std::vector<std::string> names = {
      "m-exc",     "mnat-exc",  "mu-monotone", "mu-convex",  "trajectory", "exact-tau",
      "lemma61",   "proximity", "da-optimal",  "psi-convex", "mml1",       "equivalence"};
  return names;
}

std::string format_report(const SuiteReport& r) {
  std::ostringstream os;
  for (const auto& c : r.results) {
    if (r.instance >= 0) os << "instance " << r.instance << ": ";
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) os << (c.passed ? " (" : ": ") << c.detail << (c.passed ? ")" : "");
    os << '\n';
  }
  return os.str();
}

std::string summary_json(const std::vector<SuiteReport>& reports) {
  nlohmann::ordered_json j;
  int passed = 0;
  nlohmann::ordered_json checks = nlohmann::ordered_json::object();
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    if (r.passed()) ++passed;
    for (const auto& c : r.results) {
      auto& entry = checks[c.name];
      if (entry.is_null()) entry = {{"pass", 0}, {"fail", 0}};
      entry[c.passed ? "pass" : "fail"] = entry[c.passed ? "pass" : "fail"].get<int>() + 1;
      if (!c.passed)
        failures.push_back({{"instance", r.instance}, {"check", c.name}, {"detail", c.detail}});
    }
  }
  j["instances"] = reports.size();
  j["passed"] = passed;
  j["failed"] = static_cast<int>(reports.size()) - passed;
  j["checks"] = checks;
  j["failures"] = failures;
  return j.dump(2);
}

// ---------------------------------------------------------------------------
// Theorem suite

namespace {

std::string vec_str(IntSpan x) {
  std::ostringstream os;
  print_vector(os, x);
  return os.str();
}

std::string alloc_str(const Allocation& a) { return "d=" + vec_str(a.d) + " b=" + vec_str(a.b); }

class Suite {
 public:
  Suite(const Instance& inst, const SuiteOptions& opt) : inst_(inst), opt_(opt), xbar_(inst.xbar()) {}

  CheckResult run(const std::string& name) {
    CheckResult r{name, true, {}};
    try {
      if (name == "m-exc") exchange(r, true);
      else if (name == "mnat-exc") exchange(r, false);
      else if (name == "mu-monotone") mu_monotone(r);
      else if (name == "mu-convex") mu_convex(r);
      else if (name == "trajectory") trajectory(r);
      else if (name == "exact-tau") exact_tau(r);
      else if (name == "lemma61") lemma61(r);
      else if (name == "proximity") proximity(r);
      else if (name == "da-optimal") da_optimal(r);
      else if (name == "psi-convex") psi_convex(r);
      else if (name == "mml1") mml1(r);
      else if (name == "equivalence") equivalence(r);
      else throw std::invalid_argument("unknown check: " + name);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    return r;
  }

 private:
  static void fail(CheckResult& r, const std::string& why) {
    if (!r.passed) return;
    r.passed = false;
    r.detail = why;
  }

  const MuProfile& profile() {
    if (!mu_) mu_ = mu_profile(brute_force_f_oracle(inst_, true), xbar_, opt_.guard);
    return *mu_;
  }
  const BruteForceResult& brute_dr() {
    if (!dr_) dr_ = brute_force_dr(inst_, opt_.guard);
    return *dr_;
  }
  const BruteForceResult& brute_da() {
    if (!da_) da_ = brute_force_da(inst_, opt_.guard);
    return *da_;
  }

  void exchange(CheckResult& r, bool with_level) {
    const MConvexOracle f = with_level ? make_f_oracle(inst_) : make_fhat_oracle(inst_);
    const MConvexOracle g = brute_force_f_oracle(inst_, with_level);
    const DomainTable tf(f, opt_.guard), tg(g, opt_.guard);
    if (tf.points() != tg.points() || tf.values() != tg.values())
      return fail(r, "oracle disagrees with brute-force SRA values");
    const auto w = with_level ? check_m_exc(f, opt_.guard) : check_mnat_exc(f, opt_.guard);
    if (w)
      fail(r, "x=" + vec_str(w->x) + " y=" + vec_str(w->y) + " i=" + std::to_string(w->i));
    else
      r.detail = std::to_string(tf.points().size()) + " points";
  }

  void mu_monotone(CheckResult& r) {
    const MuProfile& p = profile();
    for (std::int64_t k = p.sigma; k <= p.tau; ++k) {
      const auto& w = p.witnesses[static_cast<std::size_t>(k - p.sigma)];
      if (l1_distance(w, xbar_) != 2 * k)
        return fail(r, "witness for k=" + std::to_string(k) + " not at distance 2k");
      if (k > p.sigma && !(p.at(k) < p.at(k - 1)))
        return fail(r, "mu_" + std::to_string(k) + " = " + std::to_string(p.at(k)) +
                           " not below mu_" + std::to_string(k - 1) + " = " +
                           std::to_string(p.at(k - 1)));
    }
    r.detail = "sigma=" + std::to_string(p.sigma) + " tau=" + std::to_string(p.tau);
  }

  void mu_convex(CheckResult& r) {
    const MuProfile& p = profile();
    for (std::int64_t k = p.sigma + 1; k < p.tau; ++k)
      if (p.at(k - 1) + p.at(k + 1) < 2 * p.at(k))
        return fail(r, "mu_{k-1} + mu_{k+1} < 2 mu_k at k=" + std::to_string(k));
  }

  void trajectory(CheckResult& r) {
    const MuProfile& p = profile();
    const DrSolution g = solve_dr_greedy(inst_, true);
    const std::int64_t K = std::min(inst_.gamma, p.tau);
    if (p.sigma != 0) return fail(r, "sigma is not 0 although xbar is feasible");
    if (static_cast<std::int64_t>(g.trace.size()) < K + 1)
      return fail(r, "greedy stopped after " + std::to_string(g.trace.size() - 1) +
                         " iterations, expected " + std::to_string(K));
    for (std::int64_t k = 0; k <= K; ++k) {
      const auto& s = g.trace[static_cast<std::size_t>(k)];
      if (s.objective != p.at(k))
        return fail(r, "f(x_" + std::to_string(k) + ") = " + std::to_string(s.objective) +
                           " but mu_k = " + std::to_string(p.at(k)));
      if (s.distance != 2 * k)
        return fail(r, "||x_" + std::to_string(k) + " - xbar|| = " + std::to_string(s.distance));
    }
    r.detail = "k <= " + std::to_string(K);
  }

  void exact_tau(CheckResult& r) {
    const MuProfile& p = profile();
    const DescentResult d = steepest_descent(make_f_oracle(inst_), xbar_);
    if (d.iterations() != p.tau)
      fail(r, std::to_string(d.iterations()) + " iterations, tau = " + std::to_string(p.tau));
    else
      r.detail = "tau=" + std::to_string(p.tau);
  }

  void lemma61(CheckResult& r) {
    std::mt19937_64 rng(opt_.seed * 0x9E3779B97F4A7C15ULL + 0x1234567ULL);
    const auto n = static_cast<std::size_t>(inst_.n);
    int done = 0;
    for (int attempt = 0; done < opt_.lemma61_moves && attempt < 64 * opt_.lemma61_moves;
         ++attempt) {
      IntVector x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = std::uniform_int_distribution<std::int64_t>(inst_.ell[k], inst_.u[k])(rng);
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < inst_.n; ++i)
        for (int j = 0; j < inst_.n; ++j)
          if (i != j && x[static_cast<std::size_t>(i)] < inst_.u[static_cast<std::size_t>(i)] &&
              x[static_cast<std::size_t>(j)] > inst_.ell[static_cast<std::size_t>(j)])
            pairs.emplace_back(i, j);
      if (pairs.empty()) continue;
      const auto [i, j] =
          pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
      ++done;

      const SraState before = make_sra_state(inst_, x);
      const BruteSra bx = brute_force_sra(inst_, x, opt_.guard);
      if (before.value() != ExtendedCost(bx.value))
        return fail(r, "solve_sra at x=" + vec_str(x) + " gives " + before.value().to_string() +
                           ", brute force " + std::to_string(bx.value));
      const SraState after = sra_incremental(before, i, j);
      const IntVector x2 = exchanged(x, i, j);
      const BruteSra bx2 = brute_force_sra(inst_, x2, opt_.guard);
      std::string where = "x=" + vec_str(x) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
      if (after.x() != x2) return fail(r, where + ": wrong dock totals");
      if (after.value() != ExtendedCost(bx2.value))
        return fail(r, where + ": value " + after.value().to_string() + ", brute force " +
                           std::to_string(bx2.value));
      if (total_cost(inst_, after.allocation()) != after.value())
        return fail(r, where + ": stored value differs from c(d, b)");
      const auto& b2 = after.b();
      if (sum(b2) > inst_.B) return fail(r, where + ": bike budget exceeded");
      for (std::size_t k = 0; k < n; ++k)
        if (b2[k] < 0 || b2[k] > x2[k]) return fail(r, where + ": b outside [0, x]");
      if (!in_incremental_candidates(before.b(), b2, i, j))
        return fail(r, where + ": b_new=" + vec_str(b2) + " outside the candidate set of b=" +
                           vec_str(before.b()));
    }
    r.detail = std::to_string(done) + " moves";
  }

  void proximity(CheckResult& r) {
    const BruteForceResult& bf = brute_da();
    const std::int64_t n = inst_.n;
    std::int64_t worst = 0;
    auto check = [&](const Allocation& a, std::int64_t lambda, const std::string& what) {
      if (!r.passed) return;
      if (auto w = find_lambda_improvement(inst_, a, lambda, opt_.guard))
        return fail(r, what + " is not " + std::to_string(lambda) + "-optimal: " +
                           alloc_str(a) + " improved by " + alloc_str(*w));
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (const auto& o : bf.optima) best = std::min(best, l1_distance(o.x(), a.x()));
      worst = std::max(worst, best);
      if (best > 8 * lambda * n)
        fail(r, what + ": nearest optimum at distance " + std::to_string(best) + " > 8*" +
                    std::to_string(lambda) + "*n");
      if (lambda == 2 && best > 16 * n) fail(r, what + ": distance exceeds 16n");
    };
    for (std::int64_t lambda : opt_.proximity_lambdas) {
      const LatticeDescent d =
          solve_da_steepest(inst_, Allocation{inst_.dbar, inst_.bbar}, lambda);
      check(d.allocation, lambda, "steepest(lambda=" + std::to_string(lambda) + ")");
    }
    const ScalingSchedule s = solve_da_scaling(inst_).schedule;
    for (int p = 0; p < s.phases(); ++p) {
      const auto lambda = s.lambdas[static_cast<std::size_t>(p)];
      if (lambda >= 2) check(s.outputs[static_cast<std::size_t>(p)], lambda, "phase " + std::to_string(p + 1));
    }
    if (r.passed) r.detail = "max distance to an optimum " + std::to_string(worst);
  }

  void da_optimal(CheckResult& r) {
    const BruteForceResult& bf = brute_da();
    const ScalingResult s = solve_da_scaling(inst_);
    if (!is_da_feasible(inst_, s.allocation)) return fail(r, "scaling output infeasible");
    if (total_cost(inst_, s.allocation) != ExtendedCost(s.objective))
      return fail(r, "scaling objective differs from c(d, b)");
    if (s.objective != bf.objective)
      return fail(r, "scaling " + std::to_string(s.objective) + " vs brute force " +
                         std::to_string(bf.objective));
    const LatticeDescent d = solve_da_steepest(inst_, Allocation{inst_.dbar, inst_.bbar}, 1);
    if (d.objective != bf.objective)
      return fail(r, "steepest " + std::to_string(d.objective) + " vs brute force " +
                         std::to_string(bf.objective));
    const auto [near, steps] = nearest_da_optimum(inst_, s.allocation);
    (void)steps;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& o : bf.optima) best = std::min(best, l1_distance(o.x(), xbar_));
    if (total_cost(inst_, near) != ExtendedCost(bf.objective) ||
        l1_distance(near.x(), xbar_) != best)
      return fail(r, "nearest optimum " + alloc_str(near) + " is not a nearest (DA) optimum");
    r.detail = "objective " + std::to_string(bf.objective);
  }

  void psi_convex(CheckResult& r) {
    PolyDetails det;
    const DrSolution sol = solve_dr_poly(inst_, {}, &det);
    if (det.bypassed) {
      r.detail = "bypass: (DA) optimum inside the ball";
      return;
    }
    const DrlSplit& split = *det.split;
    const std::int64_t B = inst_.B;
    std::vector<ExtendedCost> a, b, s;
    for (std::int64_t alpha = 0; alpha <= B; ++alpha) {
      a.push_back(psi(inst_, split, Side::A, alpha));
      b.push_back(psi(inst_, split, Side::B, alpha));
      s.push_back(a.back() + b.back());
    }
    // Independent values from enumeration of each side.
    for (std::int64_t alpha = 0; alpha <= B; ++alpha) {
      for (Side side : {Side::A, Side::B}) {
        BruteBox box;
        box.stations = side == Side::A ? split.P : split.Q;
        std::int64_t level = 0;
        for (int i : box.stations) {
          const auto k = static_cast<std::size_t>(i);
          box.lo.push_back(split.ell_hat[k]);
          box.hi.push_back(split.u_hat[k]);
          level += xbar_[k];
        }
        box.total = side == Side::A ? level + inst_.gamma : level - inst_.gamma;
        box.budget = side == Side::A ? alpha : B - alpha;
        const ExtendedCost want = brute_force_box(inst_, box, opt_.guard);
        const ExtendedCost got = (side == Side::A ? a : b)[static_cast<std::size_t>(alpha)];
        if (want != got)
          return fail(r, std::string("psi_") + (side == Side::A ? "A" : "B") + "(" +
                             std::to_string(alpha) + ") = " + got.to_string() +
                             ", enumeration " + want.to_string());
      }
    }
    auto scan = [&](const std::vector<ExtendedCost>& v, bool nonincreasing,
                    const char* label) -> bool {
      for (std::size_t k = 1; k < v.size(); ++k) {
        const bool ok = nonincreasing ? !(v[k - 1] < v[k]) : !(v[k] < v[k - 1]);
        if (!ok) {
          fail(r, std::string(label) + " not monotone at alpha=" + std::to_string(k));
          return false;
        }
      }
      for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        if (v[k - 1].is_infinite() || v[k].is_infinite() || v[k + 1].is_infinite()) continue;
        if (v[k - 1].value() + v[k + 1].value() < 2 * v[k].value()) {
          fail(r, std::string(label) + " not convex at alpha=" + std::to_string(k));
          return false;
        }
      }
      return true;
    };
    if (!scan(a, true, "psi_A") || !scan(b, false, "psi_B")) return;
    const ExtendedCost grid_min = *std::min_element(s.begin(), s.end());
    if (grid_min != ExtendedCost(sol.objective))
      return fail(r, "binary search " + std::to_string(sol.objective) + " vs grid minimum " +
                         grid_min.to_string());
    r.detail = "alpha=" + std::to_string(det.alpha) + " of [0," + std::to_string(B) + "], " +
               std::to_string(det.probes.size()) + " probes";
  }

  void mml1(CheckResult& r) {
    const MConvexOracle f = make_f_oracle(inst_);
    const DescentResult fw = steepest_descent_mml1(f, xbar_, inst_.gamma);
    const DescentResult rv = reverse_steepest_descent_mml1(f, xbar_, inst_.gamma);
    const GReductionResult g = solve_mml1_via_g(f, xbar_, inst_.gamma);
    const Cost want = brute_dr().objective;
    auto check = [&](const IntVector& x, const ExtendedCost& v, const char* what) {
      if (!r.passed) return;
      if (l1_distance(x, xbar_) > 2 * inst_.gamma)
        return fail(r, std::string(what) + " leaves the L1 ball");
      if (v != ExtendedCost(want))
        fail(r, std::string(what) + " " + v.to_string() + " vs brute force " + std::to_string(want));
    };
    check(fw.x, fw.value, "forward");
    check(rv.x, rv.value, "reverse");
    check(g.x, g.value, "g-reduction");
    if (r.passed) r.detail = "objective " + std::to_string(want) + (g.bypassed ? ", g bypassed" : "");
  }

  void equivalence(CheckResult& r) {
    const Cost want = brute_dr().objective;
    const DrSolution fast = solve_dr_greedy(inst_, true);
    const DrSolution slow = solve_dr_greedy(inst_, false);
    const DrSolution poly = solve_dr_poly(inst_);
    auto check = [&](const DrSolution& s, const char* what) {
      if (!r.passed) return;
      if (!is_dr_feasible(inst_, s.allocation)) return fail(r, std::string(what) + " infeasible");
      if (total_cost(inst_, s.allocation) != ExtendedCost(s.objective))
        return fail(r, std::string(what) + " objective differs from c(d, b)");
      if (s.objective != want)
        fail(r, std::string(what) + " " + std::to_string(s.objective) + " vs brute force " +
                    std::to_string(want));
    };
    check(fast, "greedy");
    check(slow, "greedy-slow");
    check(poly, "poly");
    if (!r.passed) return;
    if (fast.trace.size() != slow.trace.size())
      return fail(r, "fast and slow greedy ran different iteration counts");
    for (std::size_t k = 0; k < fast.trace.size(); ++k)
      if (fast.trace[k].objective != slow.trace[k].objective)
        return fail(r, "fast and slow greedy differ at iteration " + std::to_string(k));
    r.detail = "objective " + std::to_string(want);
  }

  const Instance& inst_;
  const SuiteOptions& opt_;
  IntVector xbar_;
  std::optional<MuProfile> mu_;
  std::optional<BruteForceResult> dr_, da_;
};

}  // namespace

SuiteReport check_theorem_suite(const Instance& inst, const SuiteOptions& opt) {
  for (const auto& name : opt.checks)
    if (std::find(all_checks().begin(), all_checks().end(), name) == all_checks().end())
      throw std::invalid_argument("unknown check: " + name);
  Suite suite(inst, opt);
  SuiteReport report;
  for (const auto& name : opt.checks) report.results.push_back(suite.run(name));
  return report;
}

std::vector<SuiteReport> check_corpus(const std::vector<Instance>& instances,
                                      const SuiteOptions& opt, kernels::Execution ex) {
  return kernels::tabulate<SuiteReport>(
      static_cast<std::int64_t>(instances.size()),
      [&](std::int64_t i) {
        SuiteOptions local = opt;
        local.seed = opt.seed + static_cast<std::uint64_t>(i);
        SuiteReport r = check_theorem_suite(instances[static_cast<std::size_t>(i)], local);
        r.instance = static_cast<int>(i);
        return r;
      },
      ex);
}

}  // namespace drsolve
