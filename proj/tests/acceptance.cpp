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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drsolve/cli.hpp"
#include "drsolve/dock.hpp"
#include "drsolve/generate.hpp"
#include "drsolve/io.hpp"
#include "drsolve/sra.hpp"
#include "drsolve/verify.hpp"

using namespace drsolve;

namespace {

// Pinned thresholds. Objectives are integers and compared exactly.
constexpr int kCorpusSize = 500;
constexpr std::uint64_t kCorpusSeed = 20260000;
constexpr std::int64_t kCorpusUmax = 6;
constexpr int kIncrementalMoves = 1000;
constexpr int kProximityInstances = 120;
constexpr std::int64_t kProximityUmax = 10;
constexpr std::int64_t kProximityFactor = 8;  // distance <= 8 lambda n
constexpr std::int64_t kStepSlackPerStation = 9;  // 8n + n
constexpr double kEquivalenceBudgetSeconds = 300.0;
constexpr double kScalingBudgetSeconds = 120.0;
constexpr int kLargeSeeds = 3;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Line {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<Instance> make_corpus() {
  std::vector<Instance> corpus;
  for (int k = 0; k < kCorpusSize; ++k) {
    GenOptions g;
    g.n = 2 + k % 3;
    g.umax = kCorpusUmax;
    g.seed = kCorpusSeed + static_cast<std::uint64_t>(k);
    g.kind = k % 4 == 3 ? CostKind::table : CostKind::quad;
    corpus.push_back(generate_instance(g));
  }
  return corpus;
}

// Tally of one named check over the suite reports.
struct Tally {
  int passed = 0, failed = 0;
  std::string first_failure;
};

Tally tally(const std::vector<SuiteReport>& reports, const std::string& check,
            const std::vector<bool>* include = nullptr) {
  Tally t;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (include && !(*include)[k]) continue;
    const CheckResult* c = reports[k].find(check);
    if (!c) continue;
    if (c->passed) {
      ++t.passed;
    } else {
      if (t.failed++ == 0)
        t.first_failure = "instance " + std::to_string(k) + ": " + check + ": " + c->detail;
    }
  }
  return t;
}

std::string summary(const Tally& t, const std::string& what) {
  std::string s = std::to_string(t.passed) + "/" + std::to_string(t.passed + t.failed) + " " + what;
  if (t.failed) s += "; " + t.first_failure;
  return s;
}

Line criterion1(const std::vector<Instance>& corpus) {
  const auto t0 = Clock::now();
  int ok = 0;
  std::string first;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Instance& inst = corpus[k];
    const Cost brute = brute_force_dr(inst).objective;
    const Cost fast = solve_dr_greedy(inst, true).objective;
    const Cost slow = solve_dr_greedy(inst, false).objective;
    const Cost poly = solve_dr_poly(inst).objective;
    if (fast == brute && slow == brute && poly == brute) {
      ++ok;
    } else if (first.empty()) {
      std::ostringstream os;
      os << "; instance " << k << ": brute " << brute << " fast " << fast << " slow " << slow
         << " poly " << poly;
      first = os.str();
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = ok == static_cast<int>(corpus.size()) && secs < kEquivalenceBudgetSeconds;
  char buf[96];
  std::snprintf(buf, sizeof buf, ", %.2f s (budget %.0f s)", secs, kEquivalenceBudgetSeconds);
  return {1, "oracle equivalence (DR)",
          pass, std::to_string(ok) + "/" + std::to_string(corpus.size()) + " instances" + buf + first};
}

Line criterion5() {
  std::mt19937_64 rng(kCorpusSeed ^ 0x5EED);
  int done = 0, ok = 0;
  std::string first;
  for (std::uint64_t seed = 0; done < kIncrementalMoves; ++seed) {
    GenOptions g;
    g.n = 2 + static_cast<int>(seed % 3);
    g.umax = kCorpusUmax;
    g.seed = kCorpusSeed + 100000 + seed;
    g.kind = seed % 2 ? CostKind::table : CostKind::quad;
    const Instance inst = generate_instance(g);
    const auto n = static_cast<std::size_t>(inst.n);
    for (int rep = 0; rep < 4 && done < kIncrementalMoves; ++rep) {
      IntVector x(n);
      for (std::size_t k = 0; k < n; ++k)
        x[k] = std::uniform_int_distribution<std::int64_t>(inst.ell[k], inst.u[k])(rng);
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
          if (i != j && x[static_cast<std::size_t>(i)] < inst.u[static_cast<std::size_t>(i)] &&
              x[static_cast<std::size_t>(j)] > inst.ell[static_cast<std::size_t>(j)])
            pairs.emplace_back(i, j);
      if (pairs.empty()) continue;
      const auto [i, j] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
      ++done;
      const SraState before = make_sra_state(inst, x);
      const SraState after = sra_incremental(before, i, j);
      const BruteSra oracle = brute_force_sra(inst, after.x());
      const bool good = after.value() == ExtendedCost(oracle.value) &&
                        total_cost(inst, after.allocation()) == after.value() &&
                        sum(after.b()) <= inst.B &&
                        in_incremental_candidates(before.b(), after.b(), i, j);
      if (good) {
        ++ok;
      } else if (first.empty()) {
        first = "; seed " + std::to_string(g.seed) + " move (" + std::to_string(i) + "," +
                std::to_string(j) + ") disagrees";
      }
    }
  }
  return {5, "incremental bike split", ok == done && done >= kIncrementalMoves,
          std::to_string(ok) + "/" + std::to_string(done) + " moves" + first};
}

Line criterion6() {
  int outputs = 0, ok = 0;
  std::int64_t worst = 0, worst_bound = 0;
  std::string first;
  for (int k = 0; k < kProximityInstances; ++k) {
    GenOptions g;
    g.n = 2 + k % 2;
    g.umax = kProximityUmax;
    g.seed = kCorpusSeed + 200000 + static_cast<std::uint64_t>(k);
    g.gamma = 3 + k % 8;
    const Instance inst = generate_instance(g);
    const BruteForceResult bf = brute_force_da(inst);
    const std::int64_t n = inst.n;
    auto judge = [&](const Allocation& a, std::int64_t lambda) {
      ++outputs;
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (const auto& o : bf.optima) best = std::min(best, l1_distance(o.x(), a.x()));
      const bool lambda_opt = !find_lambda_improvement(inst, a, lambda);
      const bool close = best <= kProximityFactor * lambda * n && (lambda != 2 || best <= 16 * n);
      if (lambda_opt && close) {
        ++ok;
        if (best * worst_bound >= worst * kProximityFactor * lambda * n) {
          worst = best;
          worst_bound = kProximityFactor * lambda * n;
        }
      } else if (first.empty()) {
        first = "; seed " + std::to_string(g.seed) + " lambda " + std::to_string(lambda) +
                (lambda_opt ? " distance " + std::to_string(best) : " not lambda-optimal");
      }
    };
    for (std::int64_t lambda : {2, 4})
      judge(solve_da_steepest(inst, Allocation{inst.dbar, inst.bbar}, lambda).allocation, lambda);
    const ScalingSchedule s = solve_da_scaling(inst).schedule;
    for (int p = 0; p < s.phases(); ++p)
      if (s.lambdas[static_cast<std::size_t>(p)] >= 2)
        judge(s.outputs[static_cast<std::size_t>(p)], s.lambdas[static_cast<std::size_t>(p)]);
  }
  return {6, "proximity of lambda-optimal points", ok == outputs,
          std::to_string(ok) + "/" + std::to_string(outputs) + " outputs on " +
              std::to_string(kProximityInstances) + " instances, worst distance " +
              std::to_string(worst) + " vs bound " + std::to_string(worst_bound) + first};
}

Line criterion7(const std::vector<Instance>& corpus) {
  int exact = 0;
  std::string first;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Cost got = solve_da_scaling(corpus[k]).objective;
    const Cost want = brute_force_da(corpus[k]).objective;
    if (got == want)
      ++exact;
    else if (first.empty())
      first = "; instance " + std::to_string(k) + ": " + std::to_string(got) + " vs " +
              std::to_string(want);
  }

  const auto t0 = Clock::now();
  bool bounds_ok = true;
  std::ostringstream rows;
  rows << "\n    " << cli::bench_header();
  for (std::int64_t cap : {10'000, 100'000, 1'000'000}) {
    for (int seed = 0; seed < kLargeSeeds; ++seed) {
      std::ostringstream out, err;
      const int rc = cli::run({"bench", "--family", "scaling", "--n", "50", "--capacity",
                               std::to_string(cap), "--seed", std::to_string(seed)},
                              out, err);
      std::istringstream lines(out.str());
      std::string header, row;
      std::getline(lines, header);
      std::getline(lines, row);
      rows << "\n    " << row;
      // phases, phase_bound, max_post_first_steps, step_bound are columns 7..10.
      std::vector<std::string> cols;
      std::stringstream ss(row);
      for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
      if (rc != 0 || cols.size() < 10) {
        bounds_ok = false;
        continue;
      }
      const auto phases = std::stoll(cols[6]), phase_bound = std::stoll(cols[7]);
      const auto steps = std::stoll(cols[8]), step_bound = std::stoll(cols[9]);
      if (step_bound != kStepSlackPerStation * 50) bounds_ok = false;
      if (phases > phase_bound || steps > step_bound) bounds_ok = false;
    }
  }
  const double secs = seconds_since(t0);
  char buf[96];
  std::snprintf(buf, sizeof buf, "; large runs %.2f s (budget %.0f s)", secs, kScalingBudgetSeconds);
  const bool pass = exact == static_cast<int>(corpus.size()) && bounds_ok &&
                    secs < kScalingBudgetSeconds;
  return {7, "DA scaling", pass,
          std::to_string(exact) + "/" + std::to_string(corpus.size()) + " exact" + first + buf +
              rows.str()};
}

Line criterion10(const std::vector<Instance>& corpus, const std::string& fixtures) {
  std::vector<std::string> problems;
  for (int seed : {0, 1, 7, 12345}) {
    for (const char* kind : {"quad", "table"}) {
      std::vector<std::string> args = {"gen", "--n", "3", "--seed", std::to_string(seed), "--kind", kind};
      std::ostringstream a, b, e;
      cli::run(args, a, e);
      cli::run(args, b, e);
      if (a.str() != b.str() || a.str().empty())
        problems.push_back("gen seed " + std::to_string(seed) + " not deterministic");
    }
  }
  int round_trips = 0;
  for (const auto& inst : corpus) {
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    if (back == inst && serialize_instance(back) == text) ++round_trips;
  }
  if (round_trips != static_cast<int>(corpus.size())) problems.push_back("round trip failed");

  const std::vector<std::pair<std::string, int>> expected = {
      {"two_station.json", cli::kExitOk},
      {"malformed.json", cli::kExitInvalid},
      {"missing_gamma.json", cli::kExitInvalid},
      {"bad_type.json", cli::kExitInvalid},
      {"unknown_cost_kind.json", cli::kExitInvalid},
      {"negative_gamma.json", cli::kExitInvalid},
      {"not_multimodular.json", cli::kExitInvalid},
      {"infeasible_total.json", cli::kExitInfeasible},
      {"infeasible_bikes.json", cli::kExitInfeasible},
      {"infeasible_bounds.json", cli::kExitInfeasible},
  };
  int codes_ok = 0;
  for (const auto& [file, code] : expected) {
    std::ostringstream out, err;
    const int rc = cli::run({"solve", "--input", fixtures + "/" + file}, out, err);
    if (rc == code)
      ++codes_ok;
    else
      problems.push_back(file + " exit " + std::to_string(rc) + ", want " + std::to_string(code));
  }
  {
    std::ostringstream out, err;
    const int rc = cli::run(
        {"solve", "--input", fixtures + "/too_large_for_brute.json", "--algo", "brute"}, out, err);
    if (rc == cli::kExitGuard)
      ++codes_ok;
    else
      problems.push_back("guard fixture exit " + std::to_string(rc));
  }
  std::string detail = "gen deterministic, " + std::to_string(round_trips) + "/" +
                       std::to_string(corpus.size()) + " round trips, " +
                       std::to_string(codes_ok) + "/" + std::to_string(expected.size() + 1) +
                       " exit codes";
  for (const auto& p : problems) detail += "; " + p;
  return {10, "reproducibility plumbing", problems.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string fixtures = argc > 1 ? argv[1] : DRSOLVE_FIXTURE_DIR;
  const std::vector<Instance> corpus = make_corpus();
  for (const auto& inst : corpus) {
    if (!validate_instance(inst).empty()) {
      std::cout << "FAIL corpus: generator produced an invalid instance\n";
      return 1;
    }
  }

  SuiteOptions opt;
  opt.seed = kCorpusSeed;
  opt.checks = {"m-exc", "mnat-exc", "mu-monotone", "mu-convex", "trajectory",
                "exact-tau", "psi-convex", "mml1"};
  const auto reports = check_corpus(corpus, opt);

  std::vector<bool> positive_gamma, routed;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    positive_gamma.push_back(corpus[k].gamma >= 1);
    const CheckResult* c = reports[k].find("psi-convex");
    routed.push_back(c && c->detail.rfind("bypass", 0) != 0);
  }

  std::vector<Line> lines;
  lines.push_back(criterion1(corpus));
  {
    const Tally m = tally(reports, "m-exc"), mn = tally(reports, "mnat-exc");
    lines.push_back({2, "exchange axioms of f and f-hat", m.failed == 0 && mn.failed == 0,
                     summary(m, "f pass M-EXC") + ", " + summary(mn, "f-hat pass M-nat-EXC")});
  }
  {
    const Tally t = tally(reports, "trajectory", &positive_gamma);
    const Tally mono = tally(reports, "mu-monotone"), conv = tally(reports, "mu-convex");
    lines.push_back({3, "greedy trajectory and mu profile",
                     t.failed == 0 && mono.failed == 0 && conv.failed == 0 && t.passed > 0,
                     summary(t, "trajectories (gamma >= 1)") + ", " + summary(mono, "strictly decreasing") +
                         ", " + summary(conv, "convex")});
  }
  {
    const Tally t = tally(reports, "exact-tau");
    lines.push_back({4, "exact-tau termination", t.failed == 0, summary(t, "instances")});
  }
  lines.push_back(criterion5());
  lines.push_back(criterion6());
  lines.push_back(criterion7(corpus));
  {
    const Tally t = tally(reports, "psi-convex", &routed);
    lines.push_back({8, "psi convexity", t.failed == 0 && t.passed > 0,
                     summary(t, "routed instances scanned over the full alpha grid")});
  }
  {
    const Tally t = tally(reports, "mml1");
    lines.push_back({9, "forward/reverse/g-reduction equivalence", t.failed == 0,
                     summary(t, "instances")});
  }
  lines.push_back(criterion10(corpus, fixtures));

  bool all = true;
  for (const auto& l : lines) {
    all = all && l.passed;
    std::cout << (l.passed ? "PASS" : "FAIL") << " criterion " << l.id << " (" << l.name
              << "): " << l.detail << '\n';
  }
  std::cout << (all ? "all criteria pass" : "some criteria FAIL") << '\n';
  return all ? 0 : 1;
}
