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

#include "xorgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace xorgame {

XorGame XorGame::from_matrix(RealMatrix matrix, bool normalize) {
  if (matrix.rows() == 0 || matrix.cols() == 0) {
    throw Error(ErrorKind::kDimensionMismatch, "game matrix must be non-empty");
  }
  double total = 0.0;
  for (double x : matrix.entries()) {
    if (!std::isfinite(x)) throw Error(ErrorKind::kInvalidArgument, "game matrix has a non-finite entry");
    total += std::abs(x);
  }
  if (total == 0.0) throw Error(ErrorKind::kZeroMatrix, "game matrix is identically zero");
  if (normalize) {
    matrix *= 1.0 / total;
  } else if (std::abs(total - 1.0) > kGameNormalizationTolerance) {
    throw Error(ErrorKind::kNotNormalized, "sum of |G_st| is " + std::to_string(total));
  }
  return XorGame(std::move(matrix));
}

void XorGame::set_labels(GameLabels labels) {
  if (labels.alice.size() != n_alice() || labels.bob.size() != n_bob()) {
    throw Error(ErrorKind::kDimensionMismatch, "label counts do not match the game matrix");
  }
  labels_ = std::move(labels);
}

ChshnIndex::ChshnIndex(int n) : n_(n) {
  if (n < 2) throw Error(ErrorKind::kInvalidN, "CHSH(n) needs n >= 2, got " + std::to_string(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      pairs_.emplace_back(i, j);
      pairs_.emplace_back(j, i);
    }
}

std::size_t ChshnIndex::column(int j, int k) const {
  if (j < 1 || k < 1 || j > n_ || k > n_ || j == k) {
    throw Error(ErrorKind::kIndexOutOfRange, "no Bob question (" + std::to_string(j) + "," + std::to_string(k) + ")");
  }
  const int lo = std::min(j, k), hi = std::max(j, k);
  // Unordered pairs (lo, hi) before this one: all pairs with smaller lo, then
  // those with the same lo and smaller hi.
  const int before = (lo - 1) * n_ - (lo - 1) * lo / 2 + (hi - lo - 1);
  return static_cast<std::size_t>(2 * before + (j < k ? 0 : 1));
}

ChshGame chsh_game(int n) {
  ChshnIndex index(n);
  RealMatrix g(static_cast<std::size_t>(n), index.size());
  const double c = 1.0 / (2.0 * n * (n - 1));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const std::size_t ij = index.column(i, j), ji = index.column(j, i);
      g(i - 1, ij) = c;
      g(j - 1, ij) = c;
      g(i - 1, ji) = c;
      g(j - 1, ji) = -c;
    }
  GameLabels labels;
  for (int i = 1; i <= n; ++i) labels.alice.push_back(std::to_string(i));
  for (const auto& [j, k] : index.pairs()) labels.bob.push_back(std::to_string(j) + "," + std::to_string(k));
  XorGame game = XorGame::from_matrix(std::move(g), true);
  game.set_labels(std::move(labels));
  return {std::move(game), std::move(index)};
}

RealMatrix symmetrize(const XorGame& game) {
  const std::size_t n = game.n_alice(), m = game.n_bob();
  RealMatrix out(n + m, n + m);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < m; ++t) {
      out(s, n + t) = 0.5 * game(s, t);
      out(n + t, s) = 0.5 * game(s, t);
    }
  return out;
}

double classical_bias(const XorGame& game) {
  const std::size_t n = game.n_alice(), m = game.n_bob();
  if (n + m > kClassicalEnumerationLimit) {
    throw Error(ErrorKind::kTooLarge, "classical enumeration limited to n_alice + n_bob <= 24");
  }
  // For fixed Alice answers the best Bob answer is b_t = sign(sum_s G_st a_s),
  // so the full enumeration over (a, b) collapses to one over a.
  double best = -1.0;
  std::vector<double> column_sum(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::fill(column_sum.begin(), column_sum.end(), 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      const double a = (mask >> s) & 1u ? -1.0 : 1.0;
      for (std::size_t t = 0; t < m; ++t) column_sum[t] += a * game(s, t);
    }
    double value = 0.0;
    for (double x : column_sum) value += std::abs(x);
    best = std::max(best, value);
  }
  return best;
}

}  // namespace xorgame
