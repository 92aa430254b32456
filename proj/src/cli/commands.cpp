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

#include "drsolve/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "drsolve/dock.hpp"
#include "drsolve/errors.hpp"
#include "drsolve/generate.hpp"
#include "drsolve/verify.hpp"

namespace drsolve::cli {

namespace {

SolutionFile from_dr(const std::string& algo, const DrSolution& s, bool trace) {
  SolutionFile f;
  f.algorithm = algo;
  f.allocation = s.allocation;
  f.objective = s.objective;
  f.iterations = s.iterations;
  f.distance = s.distance;
  if (trace) f.trace = s.trace;
  return f;
}

SolutionFile from_allocation(const Instance& inst, const std::string& algo, const Allocation& a,
                             Cost objective, std::int64_t iterations) {
  SolutionFile f;
  f.algorithm = algo;
  f.allocation = a;
  f.objective = objective;
  f.iterations = iterations;
  f.distance = l1_distance(a.x(), inst.xbar());
  return f;
}

// Loads and validates; returns an exit code, or kExitOk with `inst` filled.
int load(const std::string& path, Instance& inst, std::ostream& err) {
  try {
    inst = parse_instance(read_file(path));
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  const auto violations = validate_instance(inst);
  if (violations.empty()) return kExitOk;
  bool only_infeasible = true;
  for (const auto& v : violations) {
    only_infeasible = only_infeasible && is_infeasibility(v);
    err << (is_infeasibility(v) ? "infeasible " : "invalid ") << v.code << ' ' << v.field;
    if (v.index >= 0) err << '[' << v.index << ']';
    err << ": " << v.message << '\n';
  }
  return only_infeasible ? kExitInfeasible : kExitInvalid;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// --- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string input, algo = "greedy", output;
  bool trace = false;
};

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  Instance inst;
  if (int rc = load(a.input, inst, err); rc != kExitOk) return rc;
  try {
    emit(a.output, serialize_solution(solve_with(inst, a.algo, a.trace)), out);
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const EnumerationLimitExceeded& e) {
    err << "enumeration guard: " << e.what() << '\n';
    return kExitGuard;
  } catch (const CostOverflow& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

// --- gen -----------------------------------------------------------------

struct GenArgs {
  GenOptions opt;
  std::string kind = "quad", output;
};

int cmd_gen(GenArgs a, std::ostream& out, std::ostream& err) {
  a.opt.kind = a.kind == "table" ? CostKind::table : CostKind::quad;
  try {
    emit(a.output, serialize_instance(generate_instance(a.opt)), out);
  } catch (const std::invalid_argument& e) {
    err << "invalid: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

// --- check ---------------------------------------------------------------

struct CheckArgs {
  std::string input, suite = "all", json;
  int random = 0;
  std::uint64_t seed = 0;
  int n = 0;  // 0: cycle through 2, 3, 4
  std::int64_t umax = 6;
  bool verbose = false;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  SuiteOptions opt;
  opt.seed = a.seed;
  if (a.suite != "all") opt.checks = split_list(a.suite);
  for (const auto& c : opt.checks) {
    if (std::find(all_checks().begin(), all_checks().end(), c) == all_checks().end()) {
      err << "invalid: unknown check " << c << '\n';
      return kExitInvalid;
    }
  }

  std::vector<Instance> corpus;
  if (!a.input.empty()) {
    Instance inst;
    if (int rc = load(a.input, inst, err); rc != kExitOk) return rc;
    corpus.push_back(std::move(inst));
  } else if (a.random > 0) {
    for (int k = 0; k < a.random; ++k) {
      GenOptions g;
      g.n = a.n > 0 ? a.n : 2 + k % 3;
      g.umax = a.umax;
      g.seed = a.seed + static_cast<std::uint64_t>(k);
      corpus.push_back(generate_instance(g));
    }
  } else {
    err << "invalid: check needs --input or --random\n";
    return kExitInvalid;
  }

  const auto reports = check_corpus(corpus, opt);
  std::map<std::string, std::pair<int, int>> tally;
  bool all_passed = true;
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed();
    for (const auto& c : r.results) {
      auto& t = tally[c.name];
      (c.passed ? t.first : t.second)++;
    }
    if (a.verbose || corpus.size() == 1) {
      out << format_report(r);
    } else {
      SuiteReport failed{r.instance, {}};
      for (const auto& c : r.results)
        if (!c.passed) failed.results.push_back(c);
      out << format_report(failed);
    }
  }
  for (const auto& name : opt.checks) {
    const auto& t = tally[name];
    out << "check " << name << ": " << t.first << " passed, " << t.second << " failed\n";
  }
  if (!a.json.empty()) emit(a.json, summary_json(reports) + "\n", out);
  return all_passed ? kExitOk : kExitCheckFailed;
}

// --- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string family = "scaling", csv;
  int n = 50;
  std::vector<std::int64_t> capacity = {10000};
  std::uint64_t seed = 0;
  std::int64_t gamma = -1;
};

std::int64_t ceil_log2(std::int64_t v) {
  std::int64_t k = 0;
  while ((std::int64_t{1} << k) < v) ++k;
  return k;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << bench_header() << '\n';
  for (std::int64_t cap : a.capacity) {
    LargeGenOptions g;
    g.n = a.n;
    g.capacity = cap;
    g.seed = a.seed;
    g.gamma = a.family == "greedy" && a.gamma < 0 ? a.n : a.gamma;
    Instance inst;
    try {
      inst = generate_large_instance(g);
    } catch (const std::invalid_argument& e) {
      err << "invalid: " << e.what() << '\n';
      return kExitInvalid;
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::int64_t lambda1 = 0, phases = 0, phase_bound = 0, max_post = 0, iterations = 0;
    Cost objective = 0;
    if (a.family == "scaling") {
      const ScalingResult r = solve_da_scaling(inst);
      lambda1 = r.schedule.lambdas.front();
      phases = r.schedule.phases();
      phase_bound = ceil_log2(lambda1) + 1;
      for (int p = 0; p < r.schedule.phases(); ++p) {
        iterations += r.schedule.unit_steps(p);
        if (p > 0) max_post = std::max(max_post, r.schedule.unit_steps(p));
      }
      objective = r.objective;
    } else {
      const DrSolution s = solve_dr_greedy(inst, true);
      iterations = s.iterations;
      objective = s.objective;
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    csv << a.family << ',' << a.n << ',' << cap << ',' << a.seed << ',' << inst.gamma << ','
        << lambda1 << ',' << phases << ',' << phase_bound << ',' << max_post << ','
        << (a.family == "scaling" ? 9 * static_cast<std::int64_t>(a.n) : 0) << ',' << iterations << ',' << objective << ','
        << ms << '\n';
  }
  emit(a.csv, csv.str(), out);
  return kExitOk;
}

}  // namespace

const std::vector<std::string>& algorithms() {
  static const std::vector<std::string> names = {"greedy", "greedy-slow", "poly",
                                                 "da",     "da-scaling",  "brute"};
  return names;
}

SolutionFile solve_with(const Instance& inst, const std::string& algo, bool trace) {
  if (algo == "greedy" || algo == "greedy-slow")
    return from_dr(algo, solve_dr_greedy(inst, algo == "greedy"), trace);
  if (algo == "poly") return from_dr(algo, solve_dr_poly(inst), trace);
  if (algo == "da") {
    const LatticeDescent d = solve_da_steepest(inst, Allocation{inst.dbar, inst.bbar}, 1);
    return from_allocation(inst, algo, d.allocation, d.objective,
                           d.descent_steps + d.rebalance_steps);
  }
  if (algo == "da-scaling") {
    const ScalingResult r = solve_da_scaling(inst);
    std::int64_t steps = 0;
    for (int p = 0; p < r.schedule.phases(); ++p) steps += r.schedule.unit_steps(p);
    SolutionFile f = from_allocation(inst, algo, r.allocation, r.objective, steps);
    if (trace) {
      // One entry per phase; k is the phase's lambda.
      std::vector<DrTraceStep> t;
      const IntVector xbar = inst.xbar();
      for (int p = 0; p < r.schedule.phases(); ++p) {
        const auto& a = r.schedule.outputs[static_cast<std::size_t>(p)];
        t.push_back({r.schedule.lambdas[static_cast<std::size_t>(p)], a,
                     total_cost(inst, a).value(), l1_distance(a.x(), xbar)});
      }
      f.trace = std::move(t);
    }
    return f;
  }
  if (algo == "brute") {
    const BruteForceResult r = brute_force_dr(inst);
    return from_allocation(inst, algo, r.optima.front(), r.objective,
                           static_cast<std::int64_t>(r.feasible));
  }
  throw std::invalid_argument("unknown algorithm: " + algo);
}

const std::string& bench_header() {
  static const std::string h =
      "family,n,capacity,seed,gamma,lambda1,phases,phase_bound,max_post_first_steps,step_bound,"
      "iterations,objective,wall_ms";
  return h;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"drsolve: dock re-allocation under an L1 move budget"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve an instance file");
  s->add_option("--input", solve.input, "Instance JSON")->required();
  s->add_option("--algo", solve.algo, "Algorithm")
      ->check(CLI::IsMember(algorithms()))
      ->capture_default_str();
  s->add_flag("--trace", solve.trace, "Include the per-iteration trace");
  s->add_option("--output", solve.output, "Solution JSON (default: stdout)");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random instance");
  g->add_option("--n", gen.opt.n, "Stations")->capture_default_str()->check(CLI::Range(2, 64));
  g->add_option("--umax", gen.opt.umax, "Largest u(i)")->capture_default_str();
  g->add_option("--seed", gen.opt.seed, "RNG seed")->capture_default_str();
  g->add_option("--kind", gen.kind, "Cost kind")
      ->check(CLI::IsMember({"quad", "table"}))
      ->capture_default_str();
  g->add_option("--gamma", gen.opt.gamma, "Move budget (default: random in [0, 4])");
  g->add_option("--output", gen.output, "Instance JSON (default: stdout)");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Run the theorem checks");
  auto* in = c->add_option("--input", check.input, "Instance JSON");
  c->add_option("--random", check.random, "Number of random instances")->excludes(in);
  c->add_option("--seed", check.seed, "First seed")->capture_default_str();
  c->add_option("--n", check.n, "Stations (default: cycle 2, 3, 4)");
  c->add_option("--umax", check.umax, "Largest u(i)")->capture_default_str();
  c->add_option("--suite", check.suite, "all or a comma-separated list of checks")
      ->capture_default_str();
  c->add_option("--json", check.json, "Write the JSON summary here");
  c->add_flag("--verbose", check.verbose, "Print passing checks too");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Iteration counts and timings on large instances");
  b->add_option("--family", bench.family, "Solver family")
      ->check(CLI::IsMember({"scaling", "greedy"}))
      ->capture_default_str();
  b->add_option("--n", bench.n, "Stations")->capture_default_str()->check(CLI::Range(2, 100000));
  b->add_option("--capacity", bench.capacity, "D + B, one run per value")->capture_default_str();
  b->add_option("--seed", bench.seed, "RNG seed")->capture_default_str();
  b->add_option("--gamma", bench.gamma, "Move budget (default: n for greedy, D + B for scaling)");
  b->add_option("--csv", bench.csv, "CSV output (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    if (*s) return cmd_solve(solve, out, err);
    if (*g) return cmd_gen(gen, out, err);
    if (*c) return cmd_check(check, out, err);
    if (*b) return cmd_bench(bench, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace drsolve::cli
