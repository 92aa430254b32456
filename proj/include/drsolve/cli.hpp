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

// The drsolve command line: solve, gen, check, bench.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "drsolve/instance.hpp"
#include "drsolve/io.hpp"

namespace drsolve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;      // malformed or invalid input
inline constexpr int kExitInfeasible = 2;   // valid but infeasible instance
inline constexpr int kExitGuard = 3;        // enumeration budget exceeded
inline constexpr int kExitCheckFailed = 4;  // a theorem check failed

/// Algorithms accepted by `solve --algo`.
const std::vector<std::string>& algorithms();

/// Runs one algorithm. Throws Infeasible, EnumerationLimitExceeded, or
/// std::invalid_argument for an unknown name.
SolutionFile solve_with(const Instance& inst, const std::string& algorithm, bool trace);

/// CSV header of `bench`.
const std::string& bench_header();

/// Entry point with explicit streams; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace drsolve::cli
