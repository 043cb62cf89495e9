// Copyright 2026 The xorgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "xorgame/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace xorgame::io {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParse, what); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    parse_error(std::string("field \"") + key + "\": " + e.what());
  }
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error("complex numbers must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

std::vector<double> real_list(const Json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) parse_error(std::string(what) + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void check_shape(std::size_t rows, std::size_t cols, std::size_t count) {
  if (rows == 0 || cols == 0) parse_error("matrix dimensions must be positive");
  if (rows * cols != count) parse_error("matrix entry count does not match rows*cols");
}

}  // namespace

Json to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (const auto& z : m.entries()) entries.push_back(complex_to_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Json to_json(const RealMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.entries()}};
}

Json to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (const auto& z : v.entries()) out.push_back(complex_to_json(z));
  return out;
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  const auto rows = field<std::size_t>(j, "rows");
  const auto cols = field<std::size_t>(j, "cols");
  const Json& e = j.at("entries");
  if (!e.is_array()) parse_error("matrix entries must be an array");
  check_shape(rows, cols, e.size());
  std::vector<Complex> entries;
  entries.reserve(e.size());
  for (const auto& x : e) entries.push_back(complex_from_json(x));
  return ComplexMatrix(rows, cols, std::move(entries));
}

RealMatrix real_matrix_from_json(const Json& j) {
  const auto rows = field<std::size_t>(j, "rows");
  const auto cols = field<std::size_t>(j, "cols");
  if (!j.contains("entries")) parse_error("missing field \"entries\"");
  std::vector<double> entries = real_list(j.at("entries"), "matrix entries");
  check_shape(rows, cols, entries.size());
  return RealMatrix(rows, cols, std::move(entries));
}

ComplexVector complex_vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("vector must be an array of [re, im] pairs");
  ComplexVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = complex_from_json(j[i]);
  return v;
}

Json game_to_json(const XorGame& g) {
  Json out = {{"n_alice", g.n_alice()}, {"n_bob", g.n_bob()}, {"matrix", g.matrix().entries()}};
  if (g.labels()) out["labels"] = {{"alice", g.labels()->alice}, {"bob", g.labels()->bob}};
  return out;
}

XorGame game_from_json(const Json& j) {
  const auto n = field<std::size_t>(j, "n_alice");
  const auto m = field<std::size_t>(j, "n_bob");
  if (!j.contains("matrix")) parse_error("missing field \"matrix\"");
  std::vector<double> entries = real_list(j.at("matrix"), "game matrix");
  check_shape(n, m, entries.size());
  XorGame g = XorGame::from_matrix(RealMatrix(n, m, std::move(entries)));
  if (j.contains("labels")) {
    const Json& l = j.at("labels");
    g.set_labels({field<std::vector<std::string>>(l, "alice"), field<std::vector<std::string>>(l, "bob")});
  }
  return g;
}

Json strategy_to_json(const Strategy& s) {
  Json alice = Json::array(), bob = Json::array();
  for (const auto& a : s.alice) alice.push_back(to_json(a.matrix()));
  for (const auto& b : s.bob) bob.push_back(to_json(b.matrix()));
  return {{"d_A", s.d_a}, {"d_B", s.d_b}, {"alice", std::move(alice)}, {"bob", std::move(bob)},
          {"state", to_json(s.state)}};
}

Strategy strategy_from_json(const Json& j) {
  Strategy s;
  s.d_a = field<std::size_t>(j, "d_A");
  s.d_b = field<std::size_t>(j, "d_B");
  for (const char* side : {"alice", "bob"}) {
    if (!j.contains(side) || !j.at(side).is_array()) parse_error(std::string("\"") + side + "\" must be an array");
    auto& dst = side[0] == 'a' ? s.alice : s.bob;
    for (const auto& m : j.at(side)) dst.push_back(Observable::unchecked(complex_matrix_from_json(m)));
  }
  if (!j.contains("state")) parse_error("missing field \"state\"");
  s.state = complex_vector_from_json(j.at("state"));
  s.check_shape();
  return s;
}

Json solution_to_json(const SdpSolution& s) {
  return {{"primal_value", s.primal_value}, {"dual_value", s.dual_value}, {"gap", s.gap},
          {"iterations", s.iterations}, {"converged", s.converged}, {"y", s.y}, {"z", to_json(s.z)}};
}

Json relations_to_json(const RelationSystem& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) pairs.push_back({{"u", p.u}, {"v", p.v}});
  return {{"y", r.y}, {"r", r.r()}, {"pairs", std::move(pairs)}};
}

RelationSystem relations_from_json(const Json& j) {
  RelationSystem r;
  r.y = y_from_json(j);
  if (!j.contains("pairs") || !j.at("pairs").is_array()) parse_error("\"pairs\" must be an array");
  for (const auto& p : j.at("pairs")) {
    if (!p.is_object() || !p.contains("u") || !p.contains("v")) parse_error("relation pairs need \"u\" and \"v\"");
    r.pairs.push_back({real_list(p.at("u"), "u"), real_list(p.at("v"), "v")});
  }
  return r;
}

Json report_to_json(const IntertwinerReport& r) {
  return {{"t", to_json(r.t)},
          {"frob_norm", r.frob_norm},
          {"t_rank", r.t_rank},
          {"alice_residuals", r.alice_residuals},
          {"bob_residuals", r.bob_residuals},
          {"bias", r.bias},
          {"epsilon", r.epsilon},
          {"alice_bound", r.alice_bound},
          {"bob_bound", r.bob_bound},
          {"bounds_hold", r.bounds_hold}};
}

Json report_to_json(const StructureReport& r) {
  return {{"schmidt_rank", r.schmidt_rank},
          {"block_size", r.block_size},
          {"rank_divisible", r.rank_divisible},
          {"schmidt_coefficients", r.schmidt_coefficients},
          {"blocks_equal", r.blocks_equal},
          {"block_deviation", r.block_deviation},
          {"support_invariant_A", r.support_invariant_a},
          {"support_invariant_B", r.support_invariant_b},
          {"anticommute_on_support", r.anticommute_on_support},
          {"b_block_relation", r.b_block_relation},
          {"verdict", r.verdict}};
}

std::vector<double> y_from_json(const Json& j) {
  if (j.is_array()) return real_list(j, "y");
  if (j.is_object() && j.contains("y")) return real_list(j.at("y"), "y");
  parse_error("expected a y array or an object with \"y\"");
}

RealMatrix z_from_json(const Json& j) {
  if (j.is_object() && j.contains("z")) return real_matrix_from_json(j.at("z"));
  return real_matrix_from_json(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(source + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) { return parse(read_file(path), path); }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kParse, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::kParse, "failed writing " + path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex_digest(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace xorgame::io
