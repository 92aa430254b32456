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

#include <filesystem>
#include <sstream>

#include "drsolve/cli.hpp"
#include "drsolve/generate.hpp"
#include "drsolve/io.hpp"
#include "helpers.hpp"

using namespace drsolve;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
  return std::string(DRSOLVE_FIXTURE_DIR) + "/" + name;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("drsolve_test_" + name)).string();
}

}  // namespace

TEST_CASE("instance json round trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenOptions g;
    g.n = 2 + static_cast<int>(seed % 3);
    g.seed = seed;
    g.kind = seed % 2 ? CostKind::table : CostKind::quad;
    const Instance inst = generate_instance(g);
    const std::string text = serialize_instance(inst);
    CHECK(parse_instance(text) == inst);
    CHECK(serialize_instance(parse_instance(text)) == text);
  }
}

TEST_CASE("solution json round trip") {
  SolutionFile s = cli::solve_with(test::two_station(1), "greedy", true);
  CHECK(parse_solution(serialize_solution(s)) == s);
  s.trace.reset();
  CHECK(parse_solution(serialize_solution(s)) == s);
}

TEST_CASE("parse errors name the field") {
  auto field_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  const std::string good = serialize_instance(test::two_station(1));
  CHECK(field_of(read_file(fixture("missing_gamma.json"))) == "gamma");
  CHECK(field_of(read_file(fixture("bad_type.json"))) == "u[1]");
  CHECK(field_of(read_file(fixture("unknown_cost_kind.json"))) == "costs[1].kind");
  CHECK(field_of("[1, 2]").empty());
  CHECK(field_of(good) == "<none>");
}

TEST_CASE("gen is seed-deterministic") {
  const auto a = run({"gen", "--n", "3", "--seed", "42"});
  const auto b = run({"gen", "--n", "3", "--seed", "42"});
  const auto c = run({"gen", "--n", "3", "--seed", "43"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(validate_instance(parse_instance(a.out)).empty());
  CHECK(run({"gen", "--n", "3", "--seed", "42", "--kind", "table"}).out != a.out);
}

TEST_CASE("solve writes every algorithm's answer") {
  const std::string in = fixture("two_station.json");
  for (const auto& algo : cli::algorithms()) {
    const auto r = run({"solve", "--input", in, "--algo", algo});
    INFO(algo, r.err);
    REQUIRE(r.code == 0);
    const auto s = parse_solution(r.out);
    CHECK(s.algorithm == algo);
    CHECK(s.objective == 2);
  }
  const auto g0 = run({"solve", "--input", fixture("two_station_gamma0.json"), "--algo", "poly"});
  CHECK(parse_solution(g0.out).objective == 4);

  const std::string out = temp_path("solution.json");
  CHECK(run({"solve", "--input", in, "--trace", "--output", out}).code == 0);
  const auto s = parse_solution(read_file(out));
  REQUIRE(s.trace);
  CHECK(s.trace->size() == 2);
  std::filesystem::remove(out);

  const auto phases = run({"solve", "--input", in, "--algo", "da-scaling", "--trace"});
  CHECK(parse_solution(phases.out).trace->size() == 1);
}

TEST_CASE("exit codes") {
  auto code = [](const std::string& file, const std::string& algo = "greedy") {
    return run({"solve", "--input", fixture(file), "--algo", algo}).code;
  };
  CHECK(code("two_station.json") == cli::kExitOk);
  CHECK(code("malformed.json") == cli::kExitInvalid);
  CHECK(code("missing_gamma.json") == cli::kExitInvalid);
  CHECK(code("bad_type.json") == cli::kExitInvalid);
  CHECK(code("unknown_cost_kind.json") == cli::kExitInvalid);
  CHECK(code("negative_gamma.json") == cli::kExitInvalid);
  CHECK(code("not_multimodular.json") == cli::kExitInvalid);
  CHECK(code("infeasible_total.json") == cli::kExitInfeasible);
  CHECK(code("infeasible_bikes.json") == cli::kExitInfeasible);
  CHECK(code("infeasible_bounds.json") == cli::kExitInfeasible);
  CHECK(code("too_large_for_brute.json", "brute") == cli::kExitGuard);
  CHECK(code("too_large_for_brute.json", "poly") == cli::kExitOk);
  CHECK(code("no_such_file.json") == cli::kExitInvalid);

  const auto missing = run({"solve", "--input", fixture("missing_gamma.json")});
  CHECK(missing.err.find("gamma") != std::string::npos);
  CHECK(run({"solve", "--input", fixture("two_station.json"), "--algo", "magic"}).code ==
        cli::kExitInvalid);
  CHECK(run({}).code == cli::kExitInvalid);
  CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("check command") {
  const auto r = run({"check", "--random", "12", "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check equivalence: 12 passed, 0 failed") != std::string::npos);

  const auto one = run({"check", "--input", fixture("two_station.json"), "--suite", "m-exc,lemma61"});
  CHECK(one.code == 0);
  CHECK(one.out.find("PASS m-exc") != std::string::npos);

  const auto bad = run({"check", "--input", fixture("not_multimodular.json")});
  CHECK(bad.code == cli::kExitInvalid);

  CHECK(run({"check", "--random", "2", "--suite", "nope"}).code == cli::kExitInvalid);
  CHECK(run({"check"}).code == cli::kExitInvalid);

  const std::string json = temp_path("summary.json");
  CHECK(run({"check", "--random", "3", "--json", json}).code == 0);
  CHECK(read_file(json).find("\"equivalence\"") != std::string::npos);
  std::filesystem::remove(json);
}

TEST_CASE("bench command") {
  const auto r = run({"bench", "--n", "10", "--capacity", "1000", "--capacity", "5000"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == cli::bench_header());
  CHECK(row1.rfind("scaling,10,1000,", 0) == 0);
  CHECK(row2.rfind("scaling,10,5000,", 0) == 0);

  const auto g = run({"bench", "--family", "greedy", "--n", "10", "--capacity", "1000"});
  CHECK(g.code == 0);
  CHECK(g.out.find("\ngreedy,10,1000,") != std::string::npos);
}
