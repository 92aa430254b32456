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

#include <algorithm>
#include <limits>

#include "drsolve/errors.hpp"
#include "drsolve/extended_cost.hpp"
#include "drsolve/instance.hpp"
#include "drsolve/station_cost.hpp"
#include "helpers.hpp"

using namespace drsolve;

TEST_CASE("extended cost arithmetic") {
  const auto inf = ExtendedCost::infinity();
  CHECK((ExtendedCost(3) + ExtendedCost(4)) == ExtendedCost(7));
  CHECK((inf + ExtendedCost(4)).is_infinite());
  CHECK(ExtendedCost(5) < inf);
  CHECK_FALSE(inf < inf);
  CHECK(inf == inf);
  CHECK((inf - ExtendedCost(2)).is_infinite());
  CHECK_THROWS_AS(ExtendedCost(1) - inf, std::logic_error);
  CHECK_THROWS_AS((void)inf.value(), std::logic_error);
  CHECK_THROWS_AS(ExtendedCost(std::numeric_limits<Cost>::max()) + ExtendedCost(1), CostOverflow);
}

TEST_CASE("lex cost orders primary first") {
  CHECK(LexCost{1, 9} < LexCost{2, 0});
  CHECK(LexCost{1, 0} < LexCost{1, 1});
  CHECK(LexCost{5, 0} < LexCost{ExtendedCost::infinity(), -100});
  CHECK((LexCost{1, 2} + LexCost{3, 4}) == LexCost{4, 6});
}

TEST_CASE("station cost evaluation") {
  const auto q = StationCost::quad({1, 0, 1, 0, 0, 0});
  CHECK(q.eval(2, 3) == ExtendedCost(13));
  CHECK(q.eval(-1, 0).is_infinite());
  CHECK(q.eval(0, -1).is_infinite());

  const auto t = StationCost::table({{0, 1}, {1, 2}});
  CHECK(t.eval(1, 1) == ExtendedCost(2));
  CHECK(t.eval(2, 0).is_infinite());
  CHECK(t.covers(1, 1));
  CHECK_FALSE(t.covers(2, 1));
  CHECK_THROWS_AS(StationCost::table({{0, 1}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(StationCost::table({}), std::invalid_argument);

  const auto big = StationCost::quad({std::numeric_limits<Cost>::max() / 2, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS((void)big.eval(10, 0), CostOverflow);
}

TEST_CASE("multimodularity scan") {
  using test::tabulate;
  CHECK_FALSE(check_multimodular(
      tabulate(2, [](Cost d, Cost b) { return (d - 1) * (d - 1) + (b - 1) * (b - 1); }), 2, 2));

  const auto v = check_multimodular(tabulate(2, [](Cost d, Cost b) { return d * b; }), 2, 2);
  REQUIRE(v);
  CHECK(v->inequality == 2);
  CHECK(v->eta == 1);
  CHECK(v->zeta == 1);

  // Convex u + v + w is always multimodular.
  for (Cost u2 = 0; u2 <= 2; ++u2)
    for (Cost w2 = 0; w2 <= 2; ++w2)
      CHECK_FALSE(check_multimodular(StationCost::quad({u2, -3, 1, 2, w2, -5}), 6, 6));

  // A concave w breaks it.
  CHECK(check_multimodular(StationCost::quad({0, 0, 0, 0, -1, 0}), 3, 3));
}

TEST_CASE("instance validation") {
  const Instance ok = test::two_station(1);
  CHECK(validate_instance(ok).empty());

  auto has = [](const std::vector<Violation>& vs, const std::string& code) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
  };

  Instance short_total = ok;
  short_total.dbar[0] -= 1;
  auto vs = validate_instance(short_total);
  CHECK(has(vs, "total-capacity"));
  CHECK(std::all_of(vs.begin(), vs.end(), is_infeasibility));

  Instance too_many_bikes = ok;
  too_many_bikes.bbar[0] += 1;
  too_many_bikes.dbar[1] -= 1;
  CHECK(has(validate_instance(too_many_bikes), "bike-budget"));

  Instance neg_gamma = ok;
  neg_gamma.gamma = -1;
  vs = validate_instance(neg_gamma);
  CHECK_FALSE(vs.empty());
  CHECK_FALSE(std::all_of(vs.begin(), vs.end(), is_infeasibility));

  Instance bad_cost = ok;
  bad_cost.costs[1] = test::tabulate(4, [](Cost d, Cost b) { return d * b; });
  vs = validate_instance(bad_cost);
  CHECK_FALSE(vs.empty());
  CHECK_FALSE(std::all_of(vs.begin(), vs.end(), is_infeasibility));

  Instance small_table = ok;
  small_table.costs[0] = StationCost::table({{0, 1}, {1, 2}});
  CHECK_FALSE(validate_instance(small_table).empty());

  Instance wrong_n = ok;
  wrong_n.ell.push_back(0);
  CHECK_FALSE(validate_instance(wrong_n).empty());
}

TEST_CASE("feasibility predicates and total cost") {
  const Instance inst = test::two_station(1);
  const Allocation start{inst.dbar, inst.bbar};
  CHECK(total_cost(inst, start) == ExtendedCost(2 + 2));
  CHECK(is_dr_feasible(inst, start));

  const Allocation moved{{1, 1}, {2, 0}};  // x = (3, 1)
  CHECK(is_dr_feasible(inst, moved));
  CHECK(total_cost(inst, moved) == ExtendedCost(1 + 0 + 1 + 0));

  const Allocation far{{2, 0}, {2, 0}};  // x = (4, 0): outside the box
  CHECK_FALSE(is_da_feasible(inst, far));
  CHECK_FALSE(is_dr_feasible(inst, far));

  const Allocation over_budget{{0, 1}, {3, 0}};
  CHECK_FALSE(is_da_feasible(inst, over_budget));

  CHECK(da_lower(inst) == IntVector{1, 1});
  CHECK(da_upper(inst) == IntVector{3, 3});
}

TEST_CASE("enumeration guard") {
  EnumGuard g{10};
  CHECK_NOTHROW(g.require(10));
  CHECK_THROWS_AS(g.require(11), EnumerationLimitExceeded);
}
