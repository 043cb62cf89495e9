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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "xorgame/chshn.hpp"
#include "xorgame/game.hpp"
#include "xorgame/matrix.hpp"
#include "xorgame/relations.hpp"
#include "xorgame/sdp.hpp"
#include "xorgame/strategy.hpp"

namespace xorgame::io {

using Json = nlohmann::json;

// Complex numbers are [re, im]; matrices are {"rows", "cols", "entries"} row-major.
Json to_json(const ComplexMatrix& m);
Json to_json(const RealMatrix& m);
Json to_json(const ComplexVector& v);
ComplexMatrix complex_matrix_from_json(const Json& j);
RealMatrix real_matrix_from_json(const Json& j);
ComplexVector complex_vector_from_json(const Json& j);

// {"n_alice", "n_bob", "matrix", "labels"?}; the reader enforces normalization.
Json game_to_json(const XorGame& g);
XorGame game_from_json(const Json& j);

// {"d_A", "d_B", "alice", "bob", "state"}. Observables are read unchecked.
Json strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

// {"primal_value", "dual_value", "gap", "y", "z"}.
Json solution_to_json(const SdpSolution& s);

// {"y", "pairs": [{"u", "v"}]}.
Json relations_to_json(const RelationSystem& r);
RelationSystem relations_from_json(const Json& j);

Json report_to_json(const IntertwinerReport& r);
Json report_to_json(const StructureReport& r);

// A bare array, or any object carrying "y" (relation or solution files).
std::vector<double> y_from_json(const Json& j);
// A matrix, or any object carrying "z" (solution files).
RealMatrix z_from_json(const Json& j);

std::string read_file(const std::string& path);
Json parse(std::string_view text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
// Indented dump with a trailing newline.
std::string dump(const Json& j);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

}  // namespace xorgame::io
