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

#include "drsolve/generate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace drsolve {

namespace {

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Convex t -> a2 t^2 + a1 t with minimum near `center`.
std::pair<Cost, Cost> quadratic(std::mt19937_64& rng, std::int64_t a2_min, std::int64_t center_max,
                                std::int64_t noise) {
  const Cost a2 = draw(rng, a2_min, 5);
  const Cost center = draw(rng, 0, center_max);
  return {a2, -2 * a2 * center + draw(rng, -noise, noise)};
}

QuadUvwCost random_quad(std::mt19937_64& rng, std::int64_t a2_min, std::int64_t center_max,
                        std::int64_t noise) {
  QuadUvwCost q;
  std::tie(q.u2, q.u1) = quadratic(rng, a2_min, center_max, noise);
  std::tie(q.v2, q.v1) = quadratic(rng, a2_min, center_max, noise);
  std::tie(q.w2, q.w1) = quadratic(rng, a2_min, 2 * center_max, noise);
  return q;
}

}  // namespace

Instance generate_instance(const GenOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("n must be at least 2");
  if (opt.umax < 2) throw std::invalid_argument("umax must be at least 2");
  std::mt19937_64 rng(opt.seed);
  Instance inst;
  inst.n = opt.n;
  for (int i = 0; i < opt.n; ++i) {
    const std::int64_t u = draw(rng, 2, opt.umax);
    const std::int64_t ell = draw(rng, 0, u / 3);
    const std::int64_t x = draw(rng, ell, u);
    const std::int64_t b = draw(rng, 0, x);
    inst.u.push_back(u);
    inst.ell.push_back(ell);
    inst.bbar.push_back(b);
    inst.dbar.push_back(x - b);
  }
  const std::int64_t spare = draw(rng, 0, std::min<std::int64_t>(3, sum(inst.dbar)));
  inst.B = sum(inst.bbar) + spare;
  inst.D = sum(inst.dbar) - spare;
  inst.gamma = opt.gamma >= 0 ? opt.gamma : draw(rng, 0, 4);
  for (int i = 0; i < opt.n; ++i) {
    const QuadUvwCost q = random_quad(rng, 0, opt.umax, 3);
    if (opt.kind == CostKind::quad) {
      inst.costs.push_back(StationCost::quad(q));
      continue;
    }
    const StationCost exact = StationCost::quad(q);
    const std::int64_t cap = inst.u[static_cast<std::size_t>(i)];
    const Cost offset = draw(rng, 0, 20);
    std::vector<std::vector<Cost>> rows;
    for (std::int64_t d = 0; d <= cap; ++d) {
      std::vector<Cost> row;
      for (std::int64_t b = 0; b <= cap; ++b) row.push_back(exact.eval(d, b).value() + offset);
      rows.push_back(std::move(row));
    }
    inst.costs.push_back(StationCost::table(rows));
  }
  return inst;
}

Instance generate_large_instance(const LargeGenOptions& opt) {
  if (opt.n < 2) throw std::invalid_argument("n must be at least 2");
  if (opt.capacity < opt.n) throw std::invalid_argument("capacity must be at least n");
  std::mt19937_64 rng(opt.seed);
  Instance inst;
  inst.n = opt.n;
  const std::int64_t mean = opt.capacity / opt.n;
  IntVector x(static_cast<std::size_t>(opt.n), mean);
  x.back() += opt.capacity - mean * opt.n;
  // Shuffle docks between random stations so xbar is uneven.
  for (int r = 0; r < 4 * opt.n; ++r) {
    const auto i = static_cast<std::size_t>(draw(rng, 0, opt.n - 1));
    const auto j = static_cast<std::size_t>(draw(rng, 0, opt.n - 1));
    const std::int64_t move = draw(rng, 0, x[j] / 2);
    x[i] += move;
    x[j] -= move;
  }
  for (int i = 0; i < opt.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const std::int64_t b = draw(rng, 0, x[k] / 2);
    inst.ell.push_back(0);
    inst.u.push_back(std::max<std::int64_t>(x[k], 2 * mean));
    inst.bbar.push_back(b);
    inst.dbar.push_back(x[k] - b);
    inst.costs.push_back(StationCost::quad(random_quad(rng, 1, mean, mean)));
  }
  inst.B = sum(inst.bbar) + draw(rng, 0, mean);
  inst.D = opt.capacity - inst.B;
  inst.gamma = opt.gamma >= 0 ? opt.gamma : opt.capacity;
  return inst;
}

}  // namespace drsolve
