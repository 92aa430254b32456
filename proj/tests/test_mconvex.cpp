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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "drsolve/mconvex.hpp"
#include "helpers.hpp"

using namespace drsolve;

namespace {

MConvexOracle level_oracle(std::int64_t level, IntVector lo, IntVector hi, IntVector start,
                           std::function<Cost(IntSpan)> fn) {
  return MConvexOracle(level, lo, hi, start, [=](IntSpan x) -> ExtendedCost {
    std::int64_t s = 0;
    for (auto v : x) s += v;
    if (s != level) return ExtendedCost::infinity();
    return fn(x);
  });
}

// Random separable convex function on a level set: M-convex.
MConvexOracle random_separable(std::mt19937_64& rng, int n, std::int64_t cap) {
  std::vector<std::pair<Cost, Cost>> coef;
  std::uniform_int_distribution<Cost> a(0, 4), c(-2, static_cast<Cost>(2 * cap));
  for (int i = 0; i < n; ++i) coef.emplace_back(a(rng), c(rng));
  IntVector start(static_cast<std::size_t>(n), 0);
  std::uniform_int_distribution<std::int64_t> pick(0, cap);
  std::int64_t level = 0;
  for (auto& v : start) level += (v = pick(rng));
  return level_oracle(level, IntVector(static_cast<std::size_t>(n), 0),
                      IntVector(static_cast<std::size_t>(n), cap), start, [coef](IntSpan x) {
                        Cost s = 0;
                        for (std::size_t i = 0; i < x.size(); ++i)
                          s += coef[i].first * x[i] * x[i] - coef[i].second * x[i];
                        return s;
                      });
}

}  // namespace

TEST_CASE("oracle rejects an infeasible anchor point") {
  CHECK_THROWS_AS(MConvexOracle(4, {0, 0}, {4, 4}, {1, 1},
                                [](IntSpan x) -> ExtendedCost {
                                  if (x[0] + x[1] != 4) return ExtendedCost::infinity();
                                  return 0;
                                }),
                  std::invalid_argument);
}

TEST_CASE("exchange axiom checks") {
  CHECK_FALSE(check_m_exc(level_oracle(2, {0, 0}, {2, 2}, {0, 2},
                                       [](IntSpan x) { return (x[0] - 1) * (x[0] - 1); })));

  // dom f = {(2,0),(0,2)}: exchanging reaches (1,1), outside the domain.
  const MConvexOracle holes(2, {0, 0}, {2, 2}, {2, 0}, [](IntSpan x) -> ExtendedCost {
    if ((x[0] == 2 && x[1] == 0) || (x[0] == 0 && x[1] == 2)) return 0;
    return ExtendedCost::infinity();
  });
  const auto w = check_m_exc(holes);
  REQUIRE(w);
  CHECK(w->x != w->y);

  const MConvexOracle product(std::nullopt, {0, 0}, {2, 2}, {0, 0},
                              [](IntSpan x) -> ExtendedCost { return x[0] * x[1]; });
  CHECK(check_mnat_exc(product));

  const MConvexOracle separable(std::nullopt, {0, 0, 0}, {3, 3, 3}, {0, 0, 0},
                                [](IntSpan x) -> ExtendedCost {
                                  return (x[0] - 1) * (x[0] - 1) + 2 * x[1] * x[1] +
                                         (x[2] - 3) * (x[2] - 3);
                                });
  CHECK_FALSE(check_mnat_exc(separable));

  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) CHECK_FALSE(check_m_exc(random_separable(rng, 3, 4)));
}

TEST_CASE("enumeration guard is honored") {
  const MConvexOracle wide(std::nullopt, {0, 0, 0}, {100, 100, 100}, {0, 0, 0},
                           [](IntSpan) -> ExtendedCost { return 0; });
  CHECK_THROWS_AS(check_mnat_exc(wide, EnumGuard{1000}), EnumerationLimitExceeded);
}

TEST_CASE("steepest descent") {
  const auto f = level_oracle(3, {0, 0}, {3, 3}, {0, 3},
                              [](IntSpan x) { return (x[0] - 2) * (x[0] - 2) + x[1] * x[1]; });
  const auto r = steepest_descent(f, IntVector{0, 3});
  CHECK(r.value == ExtendedCost(1));

  const auto again = steepest_descent(f, r.x);
  CHECK(again.iterations() == 0);
  CHECK(again.x == r.x);

  const auto g = test::shifted_square();
  const auto s = steepest_descent(g, IntVector{0, 4});
  CHECK(s.iterations() == 4);
  CHECK(s.value == ExtendedCost(0));
  CHECK(s.trace.steps.back().distance == 8);

  DescentOptions capped;
  capped.max_iterations = 2;
  const auto c = steepest_descent(g, IntVector{0, 4}, capped);
  CHECK(c.iterations() == 2);
  CHECK(c.trace.reason == Termination::budget_exhausted);
}

TEST_CASE("lexicographic descent finds the nearest minimizer") {
  const auto g = test::shifted_square();
  const auto r = steepest_descent_lex(g, IntVector{0, 4}, LexOrder::value_then_distance);
  CHECK(r.x == IntVector{4, 0});
  CHECK(r.half_distance() == 4);

  const auto s = steepest_descent_lex(g, IntVector{0, 4}, LexOrder::distance_then_value);
  CHECK(s.x == IntVector{0, 4});
  CHECK(s.half_distance() == 0);

  // Minimizers (2,1) and (3,0); from (3,0) the nearest is itself.
  const auto f = level_oracle(3, {0, 0}, {3, 3}, {0, 3}, [](IntSpan x) {
    return (2 * x[0] - 5) * (2 * x[0] - 5);
  });
  const auto t = steepest_descent_lex(f, IntVector{3, 0}, LexOrder::value_then_distance);
  CHECK(t.x == IntVector{3, 0});
  CHECK(t.half_distance() == 0);
}

TEST_CASE("budgeted descent, forward and reverse") {
  const auto g = test::shifted_square();
  const IntVector center{0, 4};
  const auto fwd = steepest_descent_mml1(g, center, 2);
  CHECK(fwd.x == IntVector{2, 2});
  CHECK(fwd.value == ExtendedCost(4));
  const auto rev = reverse_steepest_descent_mml1(g, center, 2);
  CHECK(rev.value == ExtendedCost(4));
  CHECK(l1_distance(rev.x, center) <= 4);

  CHECK(steepest_descent_mml1(g, center, 0).x == center);
  CHECK(reverse_steepest_descent_mml1(g, center, 0).x == center);
  CHECK(reverse_steepest_descent_mml1(g, center, 4).x == IntVector{4, 0});
  CHECK(steepest_descent_mml1(g, center, 9).value == ExtendedCost(0));
}

TEST_CASE("mu profile") {
  const auto g = test::shifted_square();
  const auto p = mu_profile(g, IntVector{0, 4});
  CHECK(p.sigma == 0);
  CHECK(p.tau == 4);
  CHECK(p.mu == std::vector<Cost>{16, 9, 4, 1, 0});
  CHECK_FALSE(check_mu_profile(p, IntVector{0, 4}));

  const auto at_min = mu_profile(g, IntVector{4, 0});
  CHECK(at_min.mu.size() == 1);

  // A profile with a flat step is rejected.
  MuProfile bad = p;
  bad.mu[2] = bad.mu[1];
  CHECK(check_mu_profile(bad, IntVector{0, 4}));
}

TEST_CASE("g-reduction matches the descents") {
  const auto g = test::shifted_square();
  const auto r = solve_mml1_via_g(g, IntVector{0, 4}, 2);
  CHECK(r.value == ExtendedCost(4));
  CHECK_FALSE(r.bypassed);
  CHECK(solve_mml1_via_g(g, IntVector{0, 4}, 4).bypassed);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    const auto f = random_separable(rng, 3, 4);
    const IntVector c = f.feasible_point();
    const auto prof = mu_profile(f, c);
    for (std::int64_t gamma = 0; gamma <= prof.tau + 1; ++gamma) {
      const Cost expect = prof.at(std::min(gamma, prof.tau));
      CHECK(steepest_descent_mml1(f, c, gamma).value == ExtendedCost(expect));
      CHECK(reverse_steepest_descent_mml1(f, c, gamma).value == ExtendedCost(expect));
      CHECK(solve_mml1_via_g(f, c, gamma).value == ExtendedCost(expect));
    }
  }
}

TEST_CASE("serial and parallel descents agree") {
  std::mt19937_64 rng(3);
  DescentOptions serial, parallel;
  serial.exec = kernels::Execution::serial;
  parallel.exec = kernels::Execution::parallel;
  for (int t = 0; t < 10; ++t) {
    const auto f = random_separable(rng, 5, 5);
    const auto a = steepest_descent(f, f.feasible_point(), serial);
    const auto b = steepest_descent(f, f.feasible_point(), parallel);
    CHECK(a.x == b.x);
    CHECK(a.iterations() == b.iterations());
  }
}

TEST_CASE("domain table enumerates the finite points") {
  const auto g = test::shifted_square();
  const DomainTable t(g);
  CHECK(t.points().size() == 5);
  CHECK(t.value_at(IntVector{1, 3}) == ExtendedCost(9));
  CHECK(t.value_at(IntVector{1, 1}).is_infinite());
  CHECK(t.index_of(IntVector{5, 0}) == -1);
}

TEST_CASE("lexicographic descent equals a scaled epsilon perturbation") {
  // f + eps * ||x - c||_1 with eps = 1 / (4 n L + 1), scaled by 4 n L + 1.
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const auto f = random_separable(rng, 3, 4);
    const IntVector c = f.feasible_point();
    std::int64_t width = 0;
    for (int i = 0; i < f.dimension(); ++i)
      width = std::max(width, f.upper()[static_cast<std::size_t>(i)] - f.lower()[static_cast<std::size_t>(i)]);
    const Cost scale = 4 * f.dimension() * width + 1;
    const MConvexOracle g(f.level(), f.lower(), f.upper(), c, [&f, c, scale](IntSpan x) {
      const ExtendedCost v = f(x);
      if (v.is_infinite()) return v;
      return ExtendedCost(scale * v.value() + l1_distance(x, c));
    });
    const auto lex = steepest_descent_lex(f, c, LexOrder::value_then_distance);
    const auto eps = steepest_descent(g, c);
    CHECK(lex.x == eps.x);
    CHECK(lex.iterations == eps.iterations());
  }
}
