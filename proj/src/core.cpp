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

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

#include "drsolve/errors.hpp"
#include "drsolve/extended_cost.hpp"
#include "drsolve/instance.hpp"
#include "drsolve/station_cost.hpp"
#include "drsolve/vector_ops.hpp"

namespace drsolve {

std::string ExtendedCost::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

std::ostream& operator<<(std::ostream& os, ExtendedCost c) { return os << c.to_string(); }

std::ostream& operator<<(std::ostream& os, const LexCost& c) {
  return os << '(' << c.primary << ", " << c.secondary << ')';
}

std::ostream& print_vector(std::ostream& os, IntSpan x) {
  os << '(';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  return os << ')';
}

EnumGuard EnumGuard::from_env() {
  EnumGuard g;
  if (const char* s = std::getenv("DRSOLVE_ENUM_GUARD")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) g.max_points = v;
  }
  return g;
}

// ---------------------------------------------------------------------------
// StationCost

StationCost StationCost::table(const std::vector<std::vector<Cost>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("table cost needs at least one row and column");
  TableCost t;
  t.max_d = static_cast<std::int64_t>(rows.size()) - 1;
  t.max_b = static_cast<std::int64_t>(rows.front().size()) - 1;
  t.values.reserve(rows.size() * rows.front().size());
  for (const auto& row : rows) {
    if (row.size() != rows.front().size())
      throw std::invalid_argument("table cost rows have unequal length");
    t.values.insert(t.values.end(), row.begin(), row.end());
  }
  return StationCost(std::move(t));
}

namespace {

Cost quad_term(Cost a2, Cost a1, std::int64_t t) {
  return checked_add(checked_mul(a2, checked_mul(t, t)), checked_mul(a1, t));
}

// |a2| t^2 + |a1| t in 128-bit arithmetic.
__int128 quad_bound(Cost a2, Cost a1, std::int64_t t) {
  const __int128 tt = t;
  return static_cast<__int128>(a2 < 0 ? -static_cast<__int128>(a2) : a2) * tt * tt +
         static_cast<__int128>(a1 < 0 ? -static_cast<__int128>(a1) : a1) * tt;
}

Cost saturate(__int128 v) {
  constexpr __int128 kMax = std::numeric_limits<Cost>::max();
  return v > kMax ? std::numeric_limits<Cost>::max() : static_cast<Cost>(v);
}

}  // namespace

ExtendedCost StationCost::eval(std::int64_t d, std::int64_t b) const {
  if (d < 0 || b < 0) return ExtendedCost::infinity();
  if (const auto* t = as_table()) {
    if (d > t->max_d || b > t->max_b) return ExtendedCost::infinity();
    return t->at(d, b);
  }
  const auto& q = std::get<QuadUvwCost>(rep_);
  return checked_add(checked_add(quad_term(q.u2, q.u1, d), quad_term(q.v2, q.v1, b)),
                     quad_term(q.w2, q.w1, checked_add(d, b)));
}

bool StationCost::covers(std::int64_t max_d, std::int64_t max_b) const {
  if (const auto* t = as_table()) return t->max_d >= max_d && t->max_b >= max_b;
  return true;
}

Cost StationCost::magnitude_bound(std::int64_t cap) const {
  if (const auto* t = as_table()) {
    Cost m = 0;
    for (Cost v : t->values) m = std::max<Cost>(m, v == std::numeric_limits<Cost>::min()
                                                       ? std::numeric_limits<Cost>::max()
                                                       : std::llabs(v));
    return m;
  }
  const auto& q = std::get<QuadUvwCost>(rep_);
  return saturate(quad_bound(q.u2, q.u1, cap) + quad_bound(q.v2, q.v1, cap) +
                  quad_bound(q.w2, q.w1, 2 * static_cast<__int128>(cap) > INT64_MAX
                                             ? INT64_MAX
                                             : 2 * cap));
}

std::optional<MultimodularViolation> check_multimodular(const StationCost& c, std::int64_t max_d,
                                                        std::int64_t max_b) {
  auto phi = [&](std::int64_t d, std::int64_t b) { return c.eval(d, b); };
  for (std::int64_t e = 0; e <= max_d; ++e) {
    for (std::int64_t z = 0; z <= max_b; ++z) {
      if (e + 1 <= max_d && z + 1 <= max_b) {
        if (phi(e + 1, z + 1) - phi(e + 1, z) < phi(e, z + 1) - phi(e, z)) return {{e, z, 1}};
      }
      if (e >= 1 && z >= 1 && z + 1 <= max_b) {
        if (phi(e - 1, z + 1) - phi(e - 1, z) < phi(e, z) - phi(e, z - 1)) return {{e, z, 2}};
      }
      if (e >= 1 && z >= 1 && e + 1 <= max_d) {
        if (phi(e + 1, z - 1) - phi(e, z - 1) < phi(e, z) - phi(e - 1, z)) return {{e, z, 3}};
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Instance

bool is_infeasibility(const Violation& v) {
  return v.code == "capacity-bounds" || v.code == "total-capacity" || v.code == "bike-budget" ||
         v.code == "bounds-order";
}

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  auto add_violation = [&](std::string code, std::string field, int index, std::string msg) {
    out.push_back({std::move(code), std::move(field), index, std::move(msg)});
  };

  if (inst.n < 2) add_violation("n", "n", -1, "need at least two stations");
  const auto n = static_cast<std::size_t>(std::max(inst.n, 0));
  bool shape_ok = true;
  auto check_len = [&](const char* field, std::size_t len) {
    if (len != n) {
      add_violation("shape", field, -1,
                    std::string(field) + " has length " + std::to_string(len) + ", expected " +
                        std::to_string(n));
      shape_ok = false;
    }
  };
  check_len("ell", inst.ell.size());
  check_len("u", inst.u.size());
  check_len("dbar", inst.dbar.size());
  check_len("bbar", inst.bbar.size());
  check_len("costs", inst.costs.size());
  if (inst.D < 0) add_violation("negative", "D", -1, "D must be nonnegative");
  if (inst.B < 0) add_violation("negative", "B", -1, "B must be nonnegative");
  if (inst.gamma < 0) add_violation("negative", "gamma", -1, "gamma must be nonnegative");
  if (!shape_ok) return out;

  for (std::size_t i = 0; i < n; ++i) {
    const int idx = static_cast<int>(i);
    if (inst.dbar[i] < 0) add_violation("negative", "dbar", idx, "dbar must be nonnegative");
    if (inst.bbar[i] < 0) add_violation("negative", "bbar", idx, "bbar must be nonnegative");
    if (inst.ell[i] < 0) add_violation("negative", "ell", idx, "ell must be nonnegative");
    if (inst.ell[i] > inst.u[i]) {
      add_violation("bounds-order", "ell", idx, "ell exceeds u");
      continue;
    }
    const auto x = inst.dbar[i] + inst.bbar[i];
    if (x < inst.ell[i] || x > inst.u[i])
      add_violation("capacity-bounds", "dbar+bbar", idx, "current dock total outside [ell, u]");
  }
  if (sum(inst.dbar) + sum(inst.bbar) != inst.D + inst.B)
    add_violation("total-capacity", "dbar+bbar", -1, "dbar(N) + bbar(N) must equal D + B");
  if (sum(inst.bbar) > inst.B) add_violation("bike-budget", "bbar", -1, "bbar(N) exceeds B");

  __int128 magnitude = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int idx = static_cast<int>(i);
    const auto& c = inst.costs[i];
    const auto cap = std::max<std::int64_t>(inst.u[i], 0);
    if (!c.covers(cap, cap)) {
      add_violation("cost-domain", "costs", idx, "cost table does not cover [0, u(i)]^2");
      continue;
    }
    if (const auto* q = c.as_quad()) {
      if (q->u2 < 0 || q->v2 < 0 || q->w2 < 0)
        add_violation("multimodular", "costs", idx, "quad_uvw needs nonnegative leading coefficients");
    } else if (auto v = check_multimodular(c, cap, cap)) {
      add_violation("multimodular", "costs", idx,
                    "inequality " + std::to_string(v->inequality) + " fails at (" +
                        std::to_string(v->eta) + "," + std::to_string(v->zeta) + ")");
    }
    magnitude += c.magnitude_bound(cap);
  }
  // Neighbour evaluations combine up to four differences of station costs.
  if (magnitude * 4 > std::numeric_limits<Cost>::max())
    add_violation("overflow", "costs", -1, "cost magnitudes are not 64-bit safe");
  return out;
}

ExtendedCost total_cost(const Instance& inst, const Allocation& a) {
  ExtendedCost total = 0;
  for (std::size_t i = 0; i < inst.costs.size(); ++i) total += inst.costs[i].eval(a.d[i], a.b[i]);
  return total;
}

IntVector da_lower(const Instance& inst) {
  IntVector lo(inst.ell.size());
  for (std::size_t i = 0; i < lo.size(); ++i)
    lo[i] = std::max(inst.ell[i], inst.dbar[i] + inst.bbar[i] - inst.gamma);
  return lo;
}

IntVector da_upper(const Instance& inst) {
  IntVector hi(inst.u.size());
  for (std::size_t i = 0; i < hi.size(); ++i)
    hi[i] = std::min(inst.u[i], inst.dbar[i] + inst.bbar[i] + inst.gamma);
  return hi;
}

bool is_da_feasible(const Instance& inst, const Allocation& a) {
  const auto n = static_cast<std::size_t>(inst.n);
  if (a.d.size() != n || a.b.size() != n) return false;
  const auto lo = da_lower(inst);
  const auto hi = da_upper(inst);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.d[i] < 0 || a.b[i] < 0) return false;
    const auto x = a.d[i] + a.b[i];
    if (x < lo[i] || x > hi[i]) return false;
  }
  return sum(a.d) + sum(a.b) == inst.D + inst.B && sum(a.b) <= inst.B;
}

bool is_dr_feasible(const Instance& inst, const Allocation& a) {
  return is_da_feasible(inst, a) && l1_distance(a.x(), inst.xbar()) <= 2 * inst.gamma;
}

}  // namespace drsolve
