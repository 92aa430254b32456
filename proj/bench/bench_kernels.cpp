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

// Serial reference against OpenMP for the three parallel kernels.
// Prints CSV: kernel,size,threads,serial_ms,parallel_ms,speedup,identical

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "drsolve/dock.hpp"
#include "drsolve/generate.hpp"
#include "drsolve/kernels.hpp"
#include "drsolve/mconvex.hpp"
#include "drsolve/verify.hpp"

using namespace drsolve;
using kernels::Execution;

namespace {

template <class Fn>
double time_ms(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

void row(const char* kernel, long size, double s, double p, bool same) {
  std::printf("%s,%ld,%d,%.3f,%.3f,%.2f,%s\n", kernel, size, kernels::max_threads(), s, p,
              p > 0 ? s / p : 0.0, same ? "yes" : "no");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmark: serial reference against OpenMP"};
  int reps = 3;
  std::uint64_t seed = 0;
  app.add_option("--reps", reps, "Repetitions (best time is reported)")->capture_default_str();
  app.add_option("--seed", seed, "Instance seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::printf("kernel,size,threads,serial_ms,parallel_ms,speedup,identical\n");

  // Slow greedy: one SRA re-solve per ordered station pair per iteration.
  for (int n : {10, 20, 40}) {
    LargeGenOptions g;
    g.n = n;
    g.capacity = 40 * n;
    g.seed = seed;
    g.gamma = 10;
    const Instance inst = generate_large_instance(g);
    DrSolution a, b;
    const double s = time_ms(reps, [&] { a = solve_dr_greedy(inst, false, Execution::serial); });
    const double p = time_ms(reps, [&] { b = solve_dr_greedy(inst, false, Execution::parallel); });
    row("greedy_pairs", n, s, p, a.trace == b.trace);
  }

  // Steepest descent on an f oracle: pair argmin over exchanges.
  for (int n : {6, 10}) {
    GenOptions g;
    g.n = n;
    g.umax = 12;
    g.seed = seed;
    g.gamma = 12;
    const Instance inst = generate_instance(g);
    const MConvexOracle f = make_f_oracle(inst);
    DescentOptions so, po;
    so.exec = Execution::serial;
    po.exec = Execution::parallel;
    DescentResult a, b;
    const double s = time_ms(reps, [&] { a = steepest_descent(f, inst.xbar(), so); });
    const double p = time_ms(reps, [&] { b = steepest_descent(f, inst.xbar(), po); });
    row("descent_pairs", n, s, p, a.x == b.x && a.iterations() == b.iterations());
  }

  // Corpus checks: one suite per instance.
  for (int count : {64, 256}) {
    std::vector<Instance> corpus;
    for (int k = 0; k < count; ++k) {
      GenOptions g;
      g.n = 2 + k % 3;
      g.seed = seed + static_cast<std::uint64_t>(k);
      corpus.push_back(generate_instance(g));
    }
    std::string a, b;
    const double s = time_ms(reps, [&] { a = summary_json(check_corpus(corpus, {}, Execution::serial)); });
    const double p = time_ms(reps, [&] { b = summary_json(check_corpus(corpus, {}, Execution::parallel)); });
    row("corpus_tabulate", count, s, p, a == b);
  }
  return 0;
}
