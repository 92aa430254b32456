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

// Brute-force oracles and theorem checks.
//
// The brute_force_* functions enumerate feasible points directly and use
// nothing but cost evaluation from the core; check_theorem_suite compares the
// solvers against them.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "drsolve/errors.hpp"
#include "drsolve/instance.hpp"
#include "drsolve/kernels.hpp"
#include "drsolve/mconvex.hpp"

namespace drsolve {

struct BruteForceResult {
  Cost objective = 0;
  std::vector<Allocation> optima;  // every optimal allocation, enumeration order
  std::uint64_t feasible = 0;      // feasible points visited
};

/// Exact (DR) optimum by enumeration. Throws Infeasible if no feasible point
/// exists and EnumerationLimitExceeded past the guard.
BruteForceResult brute_force_dr(const Instance& inst, const EnumGuard& guard = EnumGuard::from_env());
/// Exact (DA) optimum by enumeration.
BruteForceResult brute_force_da(const Instance& inst, const EnumGuard& guard = EnumGuard::from_env());

/// Per-station box, level and bike budget of a generic allocation problem:
/// lo <= d + b <= hi, sum(d + b) = total, sum(b) <= budget, d, b >= 0, for
/// the stations listed in `stations`.
struct BruteBox {
  std::vector<int> stations;
  IntVector lo, hi;  // indexed like `stations`
  std::int64_t total = 0;
  std::int64_t budget = 0;
};

/// Optimum of a BruteBox problem, or +infinity when it is infeasible.
ExtendedCost brute_force_box(const Instance& inst, const BruteBox& box,
                             const EnumGuard& guard = EnumGuard::from_env());

struct BruteSra {
  IntVector b;  // first optimum in enumeration order
  Cost value = 0;
  std::vector<IntVector> optima;
};

/// Full scan over 0 <= b <= x, b(N) <= B. Throws Infeasible if x leaves
/// [ell, u] or is negative.
BruteSra brute_force_sra(const Instance& inst, IntSpan x, const EnumGuard& guard = EnumGuard::from_env());

/// f or f-hat with values from brute_force_sra.
MConvexOracle brute_force_f_oracle(const Instance& inst, bool with_level = true);

/// Exhaustive scan of every (d', b') with d' - d, b' - b in {0, +-lambda}^n.
/// Returns an improving (DA)-feasible witness, or nullopt if `a` is
/// lambda-optimal.
std::optional<Allocation> find_lambda_improvement(const Instance& inst, const Allocation& a,
                                                  std::int64_t lambda,
                                                  const EnumGuard& guard = EnumGuard::from_env());

/// b_new - b lies in {0, chi_i, -chi_j, chi_i - chi_j} or is chi_i - chi_t or
/// chi_s - chi_j for some station t or s.
bool in_incremental_candidates(IntSpan b, IntSpan b_new, int i, int j);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // counterexample or note
};

struct SuiteReport {
  int instance = -1;
  std::vector<CheckResult> results;
  [[nodiscard]] bool passed() const;
  [[nodiscard]] const CheckResult* find(const std::string& name) const;
};

/// m-exc, mnat-exc, mu-monotone, mu-convex, trajectory, exact-tau, lemma61,
/// proximity, da-optimal, psi-convex, mml1, equivalence.
const std::vector<std::string>& all_checks();

struct SuiteOptions {
  std::vector<std::string> checks = all_checks();
  EnumGuard guard = EnumGuard::from_env();
  std::uint64_t seed = 0;        // drives the lemma61 move sample
  int lemma61_moves = 4;         // random (x, i, j) moves per instance
  std::vector<std::int64_t> proximity_lambdas = {2, 4};
};

/// Runs the selected checks on one instance. Unknown check names throw
/// std::invalid_argument. Enumeration past the guard is reported as a failed
/// check rather than thrown.
SuiteReport check_theorem_suite(const Instance& inst, const SuiteOptions& opt = {});

/// check_theorem_suite over many instances; report i belongs to instance i
/// whatever the thread schedule.
std::vector<SuiteReport> check_corpus(const std::vector<Instance>& instances,
                                      const SuiteOptions& opt = {},
                                      kernels::Execution ex = kernels::Execution::automatic);

/// One line per check: "PASS name" or "FAIL name: detail", prefixed by the
/// instance index when it is set.
std::string format_report(const SuiteReport& r);

/// {"instances": n, "passed": k, "failed": m, "checks": {name: {"pass": a,
/// "fail": b}}, "failures": [{"instance", "check", "detail"}]}
std::string summary_json(const std::vector<SuiteReport>& reports);

}  // namespace drsolve
