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

// Dock re-allocation solvers.
//
// (DR) minimizes c(d, b) under the capacity, budget, box and L1-move
// constraints; (DA) drops the L1 constraint but keeps the xbar +- gamma box.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "drsolve/instance.hpp"
#include "drsolve/kernels.hpp"
#include "drsolve/mconvex.hpp"
#include "drsolve/sra.hpp"

namespace drsolve {

/// f(x) = min_b c(x - b, b): level D + B, box da_lower..da_upper.
MConvexOracle make_f_oracle(const Instance& inst);
/// f-hat: as make_f_oracle without the level.
MConvexOracle make_fhat_oracle(const Instance& inst);

struct DrTraceStep {
  std::int64_t k = 0;
  Allocation allocation;
  Cost objective = 0;
  std::int64_t distance = 0;  // ||x - xbar||_1
  friend bool operator==(const DrTraceStep&, const DrTraceStep&) = default;
};

struct DrSolution {
  Allocation allocation;
  Cost objective = 0;
  /// Greedy: exchange iterations. Poly: unit moves of the (DA) solve and the
  /// nearest-optimum pass; the alpha search is reported in PolyDetails.
  std::int64_t iterations = 0;
  std::int64_t distance = 0;  // ||x - xbar||_1
  std::vector<DrTraceStep> trace;  // entry 0 is the bike-optimal start
};

/// Steepest descent from (xbar, SRA(xbar)) for at most gamma iterations,
/// stopping early at a local optimum. Fast mode prices the six neighbour
/// families with heaps; slow mode re-solves SRA for every pair (i, j).
DrSolution solve_dr_greedy(const Instance& inst, bool fast = true,
                           kernels::Execution ex = kernels::Execution::automatic);

struct LatticeDescent {
  Allocation allocation;
  Cost objective = 0;
  std::int64_t descent_steps = 0;
  std::int64_t rebalance_steps = 0;
};

/// Bike-optimizes `start` on the step-lambda lattice anchored at `start`,
/// then descends over N1..N6 at step lambda until no move improves.
/// Throws Infeasible if `start` is not (DA)-feasible for the problem.
LatticeDescent descend_on_lattice(const AllocationProblem& problem, const Allocation& start,
                                  std::int64_t lambda);

/// descend_on_lattice for the (DA) problem of `inst`. lambda = 1 yields a
/// (DA) optimum; larger lambda yields a lambda-optimal allocation.
LatticeDescent solve_da_steepest(const Instance& inst, const Allocation& start,
                                 std::int64_t lambda);

struct ScalingSchedule {
  std::vector<std::int64_t> lambdas;
  std::vector<std::int64_t> descent_steps;    // per phase
  std::vector<std::int64_t> rebalance_steps;  // per phase
  std::vector<Allocation> outputs;            // lambda-optimal result per phase

  [[nodiscard]] int phases() const { return static_cast<int>(lambdas.size()); }
  [[nodiscard]] std::int64_t unit_steps(int phase) const {
    const auto p = static_cast<std::size_t>(phase);
    return descent_steps[p] + rebalance_steps[p];
  }

  /// max(1, floor(total / (4 n)))
  static std::int64_t initial_lambda(std::int64_t total, int n);
  /// lambda_1, floor(lambda_1 / 2), ..., 1 (step counts left empty).
  static ScalingSchedule planned(std::int64_t total, int n);
};

struct ScalingResult {
  Allocation allocation;
  Cost objective = 0;
  ScalingSchedule schedule;
};

/// Proximity scaling over lambda = initial_lambda(total, n), halving to 1.
ScalingResult scale_allocation(const AllocationProblem& problem, const Allocation& start);

/// Proximity scaling for (DA) from (dbar, bbar).
ScalingResult solve_da_scaling(const Instance& inst);

/// From a (DA) optimum, the (DA) optimum nearest to xbar in L1 (lexicographic
/// descent on (c, distance)). Returns the allocation and the step count.
std::pair<Allocation, std::int64_t> nearest_da_optimum(const Instance& inst,
                                                      const Allocation& optimum);

enum class SplitBounds {
  hat,      // ell_hat..u_hat: x >= xbar on P, x <= xbar off P
  printed,  // only ell..u and xbar +- gamma
};

/// Partition by P = supp+(x_bullet - xbar) with the per-station bounds
///   on P:      ell_hat = xbar,                     u_hat = min(x_bullet, xbar + gamma)
///   off P:     ell_hat = max(x_bullet, xbar - gamma), u_hat = xbar
struct DrlSplit {
  std::vector<int> P;
  std::vector<int> Q;  // N \ P
  IntVector ell_hat, u_hat;
  IntVector x_bullet;
  SplitBounds bounds = SplitBounds::hat;
};

DrlSplit make_split(const Instance& inst, IntSpan x_bullet, SplitBounds bounds = SplitBounds::hat);

enum class Side { A, B };

/// Side A: stations P, x(P) = xbar(P) + gamma, b(P) <= alpha.
/// Side B: stations N \ P, x = xbar - gamma there, b <= B - alpha.
AllocationProblem side_problem(const Instance& inst, const DrlSplit& split, Side side,
                               std::int64_t alpha);

struct SideSolution {
  ExtendedCost value;
  Allocation allocation;  // in side_problem station order; empty if infinite
  std::int64_t steps = 0;
};

SideSolution solve_side(const Instance& inst, const DrlSplit& split, Side side,
                        std::int64_t alpha);

/// psi_A(alpha) or psi_B(alpha); +infinity when the side is infeasible.
ExtendedCost psi(const Instance& inst, const DrlSplit& split, Side side, std::int64_t alpha);

/// Smallest minimizer of a convex sequence on [lo, hi] by bisection on the
/// sign of fn(m + 1) - fn(m), caching every value. +infinity ranks above all
/// finite values, so infinite values may sit at one end of [lo, hi] but not
/// at both. Returns nullopt when the minimum found is +infinity.
struct ConvexSearch {
  std::int64_t argmin = 0;
  ExtendedCost value;
  std::vector<std::pair<std::int64_t, ExtendedCost>> probes;  // in probe order
};
std::optional<ConvexSearch> minimize_convex(std::int64_t lo, std::int64_t hi,
                                            const std::function<ExtendedCost(std::int64_t)>& fn);

struct PolyOptions {
  bool nearest = true;  // post-process the (DA) optimum to the nearest one
  SplitBounds bounds = SplitBounds::hat;
};

struct PolyDetails {
  bool bypassed = false;  // (DA) optimum already within the L1 ball
  Allocation da_optimum;
  std::optional<DrlSplit> split;
  std::int64_t alpha = -1;
  std::vector<std::pair<std::int64_t, ExtendedCost>> probes;  // psi_A + psi_B per probe
  ScalingSchedule schedule;
};

/// (DR) through the (DA) optimum, the split, and binary search over alpha.
DrSolution solve_dr_poly(const Instance& inst, const PolyOptions& opt = {},
                         PolyDetails* details = nullptr);

}  // namespace drsolve
