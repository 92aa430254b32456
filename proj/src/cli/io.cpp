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

#include "drsolve/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace drsolve {

using Json = nlohmann::ordered_json;

namespace {

const Json& member(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? key : path + "." + key;
}

std::int64_t integer(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw ParseError(path, "integer out of range");
  return v.get<std::int64_t>();
}

IntVector int_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected an array of integers");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(integer(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<Cost, Cost> coeff_pair(const Json& obj, const std::string& path, const char* key) {
  const std::string p = join(path, key);
  IntVector v = int_array(member(obj, path, key), p);
  if (v.size() != 2) throw ParseError(p, "expected [quadratic, linear]");
  return {v[0], v[1]};
}

StationCost parse_cost(const Json& c, const std::string& path) {
  const Json& kind = member(c, path, "kind");
  if (!kind.is_string()) throw ParseError(join(path, "kind"), "expected a string");
  const auto k = kind.get<std::string>();
  if (k == "table") {
    const std::string p = join(path, "values");
    const Json& rows = member(c, path, "values");
    if (!rows.is_array() || rows.empty()) throw ParseError(p, "expected a nonempty array of rows");
    std::vector<std::vector<Cost>> table;
    for (std::size_t d = 0; d < rows.size(); ++d)
      table.push_back(int_array(rows[d], p + "[" + std::to_string(d) + "]"));
    try {
      return StationCost::table(table);
    } catch (const std::invalid_argument& e) {
      throw ParseError(p, e.what());
    }
  }
  if (k == "quad_uvw") {
    QuadUvwCost q;
    std::tie(q.u2, q.u1) = coeff_pair(c, path, "u");
    std::tie(q.v2, q.v1) = coeff_pair(c, path, "v");
    std::tie(q.w2, q.w1) = coeff_pair(c, path, "w");
    return StationCost::quad(q);
  }
  throw ParseError(join(path, "kind"), "unknown cost kind \"" + k + "\"");
}

Json cost_json(const StationCost& c) {
  if (const auto* t = c.as_table()) {
    Json rows = Json::array();
    for (std::int64_t d = 0; d <= t->max_d; ++d) {
      Json row = Json::array();
      for (std::int64_t b = 0; b <= t->max_b; ++b) row.push_back(t->at(d, b));
      rows.push_back(std::move(row));
    }
    return Json{{"kind", "table"}, {"values", std::move(rows)}};
  }
  const auto& q = *c.as_quad();
  return Json{{"kind", "quad_uvw"},
              {"u", {q.u2, q.u1}},
              {"v", {q.v2, q.v1}},
              {"w", {q.w2, q.w1}}};
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
}

Json step_json(const DrTraceStep& s) {
  return Json{{"k", s.k},
              {"d", s.allocation.d},
              {"b", s.allocation.b},
              {"objective", s.objective},
              {"distance", s.distance}};
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const Json j = parse_text(text);
  if (!j.is_object()) throw ParseError("", "instance must be a JSON object");
  Instance inst;
  const std::int64_t n = integer(member(j, "", "n"), "n");
  if (n < 0 || n > INT32_MAX) throw ParseError("n", "out of range");
  inst.n = static_cast<int>(n);
  inst.D = integer(member(j, "", "D"), "D");
  inst.B = integer(member(j, "", "B"), "B");
  inst.gamma = integer(member(j, "", "gamma"), "gamma");
  inst.ell = int_array(member(j, "", "ell"), "ell");
  inst.u = int_array(member(j, "", "u"), "u");
  inst.dbar = int_array(member(j, "", "dbar"), "dbar");
  inst.bbar = int_array(member(j, "", "bbar"), "bbar");
  const Json& costs = member(j, "", "costs");
  if (!costs.is_array()) throw ParseError("costs", "expected an array");
  for (std::size_t i = 0; i < costs.size(); ++i)
    inst.costs.push_back(parse_cost(costs[i], "costs[" + std::to_string(i) + "]"));
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  Json j;
  j["n"] = inst.n;
  j["D"] = inst.D;
  j["B"] = inst.B;
  j["gamma"] = inst.gamma;
  j["ell"] = inst.ell;
  j["u"] = inst.u;
  j["dbar"] = inst.dbar;
  j["bbar"] = inst.bbar;
  Json costs = Json::array();
  for (const auto& c : inst.costs) costs.push_back(cost_json(c));
  j["costs"] = std::move(costs);
  return j.dump(2) + "\n";
}

SolutionFile parse_solution(std::string_view text) {
  const Json j = parse_text(text);
  SolutionFile s;
  const Json& algo = member(j, "", "algorithm");
  if (!algo.is_string()) throw ParseError("algorithm", "expected a string");
  s.algorithm = algo.get<std::string>();
  s.allocation.d = int_array(member(j, "", "d"), "d");
  s.allocation.b = int_array(member(j, "", "b"), "b");
  s.objective = integer(member(j, "", "objective"), "objective");
  s.iterations = integer(member(j, "", "iterations"), "iterations");
  s.distance = integer(member(j, "", "distance"), "distance");
  if (auto it = j.find("trace"); it != j.end()) {
    if (!it->is_array()) throw ParseError("trace", "expected an array");
    std::vector<DrTraceStep> trace;
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string p = "trace[" + std::to_string(k) + "]";
      const Json& e = (*it)[k];
      DrTraceStep st;
      st.k = integer(member(e, p, "k"), p + ".k");
      st.allocation.d = int_array(member(e, p, "d"), p + ".d");
      st.allocation.b = int_array(member(e, p, "b"), p + ".b");
      st.objective = integer(member(e, p, "objective"), p + ".objective");
      st.distance = integer(member(e, p, "distance"), p + ".distance");
      trace.push_back(std::move(st));
    }
    s.trace = std::move(trace);
  }
  return s;
}

std::string serialize_solution(const SolutionFile& s) {
  Json j;
  j["algorithm"] = s.algorithm;
  j["d"] = s.allocation.d;
  j["b"] = s.allocation.b;
  j["objective"] = s.objective;
  j["iterations"] = s.iterations;
  j["distance"] = s.distance;
  if (s.trace) {
    Json t = Json::array();
    for (const auto& st : *s.trace) t.push_back(step_json(st));
    j["trace"] = std::move(t);
  }
  return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace drsolve
