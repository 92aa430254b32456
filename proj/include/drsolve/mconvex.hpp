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

// Generic M-convex minimization over a black-box oracle.
//
// Exchange steps move x to x + chi_i - chi_j. Every descent picks, among the
// exchanges attaining the minimum, the lexicographically smallest (i, j).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "drsolve/errors.hpp"
#include "drsolve/extended_cost.hpp"
#include "drsolve/kernels.hpp"
#include "drsolve/vector_ops.hpp"

namespace drsolve {

/// Black-box M-convex (or, without a level, M-natural-convex) function.
///
/// The wrapper enforces the box and the level: operator() returns +infinity
/// outside [lower, upper] or off the hyperplane x(N) = level, and only calls
/// the raw evaluator inside. The raw evaluator must be reentrant.
class MConvexOracle {
 public:
  using EvalFn = std::function<ExtendedCost(IntSpan)>;

  /// `feasible_point` must lie in dom f; throws std::invalid_argument if not.
  MConvexOracle(std::optional<std::int64_t> level, IntVector lower, IntVector upper,
                IntVector feasible_point, EvalFn eval);

  [[nodiscard]] int dimension() const { return static_cast<int>(lower_.size()); }
  [[nodiscard]] const std::optional<std::int64_t>& level() const { return level_; }
  [[nodiscard]] const IntVector& lower() const { return lower_; }
  [[nodiscard]] const IntVector& upper() const { return upper_; }
  [[nodiscard]] const IntVector& feasible_point() const { return feasible_; }

  [[nodiscard]] bool in_box(IntSpan x) const;
  ExtendedCost operator()(IntSpan x) const;

  /// Number of lattice points in the box, saturated at UINT64_MAX.
  [[nodiscard]] std::uint64_t box_volume() const;

 private:
  std::optional<std::int64_t> level_;
  IntVector lower_, upper_, feasible_;
  EvalFn eval_;
};

/// Every lattice point of the oracle's box with its value, indexed densely.
class DomainTable {
 public:
  DomainTable(const MConvexOracle& f, const EnumGuard& guard = {},
              kernels::Execution ex = kernels::Execution::automatic);

  /// Points of dom f in enumeration order (last coordinate fastest).
  [[nodiscard]] const std::vector<IntVector>& points() const { return points_; }
  [[nodiscard]] const std::vector<Cost>& values() const { return values_; }
  [[nodiscard]] ExtendedCost value_at(IntSpan x) const;
  /// Dense index of x, or -1 outside the box.
  [[nodiscard]] std::int64_t index_of(IntSpan x) const;
  [[nodiscard]] ExtendedCost value_by_index(std::int64_t idx) const {
    return dense_[static_cast<std::size_t>(idx)];
  }
  [[nodiscard]] std::int64_t stride(int i) const { return strides_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const IntVector& lower() const { return lower_; }
  [[nodiscard]] const IntVector& upper() const { return upper_; }

 private:
  IntVector lower_, upper_;
  std::vector<std::int64_t> strides_;
  std::vector<ExtendedCost> dense_;
  std::vector<IntVector> points_;
  std::vector<Cost> values_;
  std::vector<std::int64_t> point_index_;
};

/// A pair (x, y) and an i in supp+(x - y) for which no admissible j exists.
struct ExchangeWitness {
  IntVector x, y;
  int i = -1;
};

/// Exhaustive check of (M-EXC). Throws EnumerationLimitExceeded when the box
/// holds more than guard.max_points points.
std::optional<ExchangeWitness> check_m_exc(const MConvexOracle& f, const EnumGuard& guard = {});

/// Exhaustive check of (M-natural-EXC): j may also be "none".
std::optional<ExchangeWitness> check_mnat_exc(const MConvexOracle& f,
                                              const EnumGuard& guard = {});

struct TraceStep {
  std::int64_t k = 0;
  IntVector x;
  ExtendedCost value;
  std::int64_t distance = 0;  // ||x - center||_1
};

enum class Termination { budget_exhausted, local_optimum };

struct DescentTrace {
  TraceStep initial;
  std::vector<TraceStep> steps;  // one per iteration
  Termination reason = Termination::local_optimum;
};

struct DescentResult {
  IntVector x;
  ExtendedCost value;
  DescentTrace trace;
  [[nodiscard]] std::int64_t iterations() const {
    return static_cast<std::int64_t>(trace.steps.size());
  }
};

struct DescentOptions {
  kernels::Execution exec = kernels::Execution::automatic;
  std::int64_t max_iterations = -1;  // negative: unlimited
};

/// Plain steepest descent from x0 until no exchange strictly improves f. The
/// trace measures distances from x0. Throws Infeasible if f(x0) = +infinity.
DescentResult steepest_descent(const MConvexOracle& f, IntSpan x0, const DescentOptions& opt = {});

enum class LexOrder {
  value_then_distance,  // nearest minimizer of f (x-bullet, tau)
  distance_then_value,  // nearest point of dom f, least f among those (x-circle, sigma)
};

struct LexDescentResult {
  IntVector x;
  ExtendedCost value;
  std::int64_t distance = 0;  // ||x - center||_1
  std::int64_t iterations = 0;
  /// distance / 2: tau or sigma depending on the order.
  [[nodiscard]] std::int64_t half_distance() const { return distance / 2; }
};

/// Steepest descent under the lexicographic order of (f, dist) or (dist, f),
/// started from the oracle's feasible point. Requires x(N) = level for the
/// center when the oracle has a level.
LexDescentResult steepest_descent_lex(const MConvexOracle& f, IntSpan center, LexOrder order,
                                      const DescentOptions& opt = {});

/// Minimizes f subject to ||x - center||_1 <= 2 gamma by steepest descent
/// from the nearest feasible point. Stops after gamma - sigma iterations or
/// when no exchange strictly improves. Throws Infeasible if sigma > gamma.
DescentResult steepest_descent_mml1(const MConvexOracle& f, IntSpan center, std::int64_t gamma,
                                    const DescentOptions& opt = {});

/// Same problem, walking from the nearest minimizer back toward the center:
/// each step is the best x - chi_i + chi_j with i in supp+(x - center),
/// j in supp-(x - center), until the distance is 2 gamma.
DescentResult reverse_steepest_descent_mml1(const MConvexOracle& f, IntSpan center,
                                            std::int64_t gamma, const DescentOptions& opt = {});

/// Optimal values mu_k of the distance-k problems for k in [sigma, tau],
/// with one optimal witness per k, computed by enumeration.
struct MuProfile {
  std::int64_t sigma = 0;
  std::int64_t tau = 0;
  std::vector<Cost> mu;             // mu[k - sigma]
  std::vector<IntVector> witnesses;  // witnesses[k - sigma]

  [[nodiscard]] Cost at(std::int64_t k) const { return mu[static_cast<std::size_t>(k - sigma)]; }
};

MuProfile mu_profile(const MConvexOracle& f, IntSpan center, const EnumGuard& guard = {});

/// Checks strict decrease, convexity, and witness distances; returns a
/// description of the first failure.
std::optional<std::string> check_mu_profile(const MuProfile& p, IntSpan center);

/// Result of the reduction to an M-convex function g on the coordinates
/// outside P = supp+(x-bullet - center).
struct GReductionResult {
  IntVector x;
  ExtendedCost value;
  bool bypassed = false;  // tau <= gamma: x-bullet returned directly
  std::vector<int> P;
  IntVector ell_hat, u_hat;
  IntVector y;  // minimizer of g, coordinates of N \ P in increasing order
  std::int64_t outer_iterations = 0;
  std::int64_t g_evaluations = 0;
};

/// Solves the L1-constrained problem through the linear-constraint form:
/// x(P) = center(P) + gamma and ell_hat <= x <= u_hat. g(y) is evaluated by
/// an inner descent over the full vector; the outer descent minimizes g.
GReductionResult solve_mml1_via_g(const MConvexOracle& f, IntSpan center, std::int64_t gamma,
                                  const DescentOptions& opt = {});

}  // namespace drsolve
