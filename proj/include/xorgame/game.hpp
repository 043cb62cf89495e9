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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xorgame/matrix.hpp"

namespace xorgame {

inline constexpr double kGameNormalizationTolerance = 1e-12;

struct GameLabels {
  std::vector<std::string> alice;
  std::vector<std::string> bob;
};

// An XOR game as its |S| x |T| matrix G_st = pi(s,t) V(s,t), with sum |G_st| = 1.
class XorGame {
 public:
  // Rejects a matrix whose absolute entries do not sum to 1 unless `normalize`
  // is set, in which case the matrix is divided by that sum first.
  static XorGame from_matrix(RealMatrix matrix, bool normalize = false);

  std::size_t n_alice() const noexcept { return matrix_.rows(); }
  std::size_t n_bob() const noexcept { return matrix_.cols(); }
  const RealMatrix& matrix() const noexcept { return matrix_; }
  double operator()(std::size_t s, std::size_t t) const { return matrix_(s, t); }

  const std::optional<GameLabels>& labels() const noexcept { return labels_; }
  void set_labels(GameLabels labels);

 private:
  explicit XorGame(RealMatrix matrix) : matrix_(std::move(matrix)) {}

  RealMatrix matrix_;
  std::optional<GameLabels> labels_;
};

inline XorGame new_game(RealMatrix matrix, bool normalize = false) {
  return XorGame::from_matrix(std::move(matrix), normalize);
}

// Bob's questions for CHSH(n) are ordered pairs (j, k), j != k, 1-based. Columns
// are grouped by unordered pair ascending: (1,2),(2,1),(1,3),(3,1),...,(n,n-1).
class ChshnIndex {
 public:
  explicit ChshnIndex(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  const std::pair<int, int>& pair(std::size_t column) const { return pairs_.at(column); }
  const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }
  std::size_t column(int j, int k) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

struct ChshGame {
  XorGame game;
  ChshnIndex index;
};

ChshGame chsh_game(int n);

// (1/2) [[0, G], [G^T, 0]].
RealMatrix symmetrize(const XorGame& game);

inline constexpr std::size_t kClassicalEnumerationLimit = 24;

// max over deterministic +-1 answers of sum G_st a_s b_t.
double classical_bias(const XorGame& game);

}  // namespace xorgame
