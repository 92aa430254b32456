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

// JSON instance and solution files.
//
// Instance:
//   {"n": 2, "D": 2, "B": 2, "gamma": 1, "ell": [..], "u": [..],
//    "dbar": [..], "bbar": [..],
//    "costs": [{"kind": "table", "values": [[c(0,0), c(0,1), ..], ..]},
//              {"kind": "quad_uvw", "u": [u2, u1], "v": [v2, v1], "w": [w2, w1]}]}
// Table rows are indexed by d, columns by b.
//
// Solution:
//   {"algorithm": "greedy", "d": [..], "b": [..], "objective": 2,
//    "iterations": 1, "distance": 2,
//    "trace": [{"k": 0, "d": [..], "b": [..], "objective": 4, "distance": 0}, ..]}

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "drsolve/dock.hpp"
#include "drsolve/instance.hpp"

namespace drsolve {

/// Malformed input. `field()` is a JSON path such as "costs[1].values".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  [[nodiscard]] const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Parses an instance; shape and value checks are left to validate_instance.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

struct SolutionFile {
  std::string algorithm;
  Allocation allocation;
  Cost objective = 0;
  std::int64_t iterations = 0;
  std::int64_t distance = 0;
  std::optional<std::vector<DrTraceStep>> trace;

  friend bool operator==(const SolutionFile&, const SolutionFile&) = default;
};

SolutionFile parse_solution(std::string_view text);
std::string serialize_solution(const SolutionFile& s);

/// Whole file as a string; throws std::runtime_error when unreadable.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace drsolve
