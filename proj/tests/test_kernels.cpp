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
#include <stdexcept>

#include "drsolve/dock.hpp"
#include "drsolve/generate.hpp"
#include "drsolve/kernels.hpp"

using namespace drsolve;
using namespace drsolve::kernels;

TEST_CASE("pair argmin: serial and parallel pick the same pair") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> val(0, 5);  // many ties
  for (int n : {1, 2, 7, 40, 130}) {
    std::vector<int> table(static_cast<std::size_t>(n * n));
    for (auto& v : table) v = val(rng);
    auto eval = [&](int a, int b) -> std::optional<int> {
      if (a == b) return std::nullopt;
      return table[static_cast<std::size_t>(a * n + b)];
    };
    const auto s = argmin_pairs_serial<int>(n, eval);
    const auto p = argmin_pairs_parallel<int>(n, eval);
    REQUIRE(s.has_value() == p.has_value());
    if (s) {
      CHECK(s->a == p->a);
      CHECK(s->b == p->b);
      CHECK(s->key == p->key);
    }
  }
}

TEST_CASE("pair argmin breaks ties by the smallest pair") {
  auto eval = [](int a, int b) -> std::optional<int> {
    if (a == b) return std::nullopt;
    return 0;
  };
  const auto r = argmin_pairs<int>(50, eval, Execution::parallel);
  REQUIRE(r);
  CHECK(r->a == 0);
  CHECK(r->b == 1);
}

TEST_CASE("tabulate: order preserved and exceptions propagate") {
  auto sq = [](std::int64_t i) { return i * i; };
  CHECK(tabulate_serial<std::int64_t>(1000, sq) == tabulate_parallel<std::int64_t>(1000, sq));
  auto boom = [](std::int64_t i) -> int {
    if (i == 500) throw std::runtime_error("boom");
    return 0;
  };
  CHECK_THROWS_AS(tabulate_parallel<int>(1000, boom), std::runtime_error);
  CHECK(tabulate<int>(0, boom, Execution::parallel).empty());
}

TEST_CASE("slow greedy is identical under both execution modes") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenOptions g;
    g.n = 4;
    g.seed = seed;
    const Instance inst = generate_instance(g);
    const auto a = solve_dr_greedy(inst, false, Execution::serial);
    const auto b = solve_dr_greedy(inst, false, Execution::parallel);
    CHECK(a.trace == b.trace);
  }
}
