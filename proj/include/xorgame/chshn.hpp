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
#include <cstdint>
#include <span>
#include <vector>

#include "xorgame/game.hpp"
#include "xorgame/matrix.hpp"
#include "xorgame/strategy.hpp"

namespace xorgame {

inline constexpr double kBoundMargin = 1e-12;
inline constexpr double kAliceBoundConstant = 12.0;
inline constexpr double kBobBoundConstant = 17.0;

// (j_1 ... j_n) in {0,1}^n with 1-based access; bit i is stored at mask bit i-1.
class BitString {
 public:
  BitString(int n, std::uint64_t mask);
  static BitString from_bits(const std::vector<int>& bits);

  int n() const noexcept { return n_; }
  std::uint64_t mask() const noexcept { return mask_; }
  int operator[](int i) const;
  BitString flipped(int i) const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  int n_;
  std::uint64_t mask_;
};

// A_1^{j_1} ... A_n^{j_n}; identity for the all-zero string.
ComplexMatrix chain_product(std::span<const Observable> obs, const BitString& j);

// A_i (A^j) = sign * A^{j xor e_i} for anti-commuting A: (-1)^{sum_{l<i} j_l}.
int insertion_sign_left(int i, const BitString& j);
// (A^j) A_k = sign * A^{j xor e_k}: (-1)^{sum_{l>k} j_l}.
int insertion_sign_right(const BitString& j, int k);

// (A~^j (x) I)|psi~> for the canonical strategy, ordered by mask.
std::vector<ComplexVector> canonical_vector_family(int n);

// T = 2^{-n/2} sum_j (A^j (x) I)|psi> <psi~| (A~^j (x) I)^dagger.
ComplexMatrix build_intertwiner(const Strategy& s, int n);

struct IntertwinerReport {
  ComplexMatrix t;
  double frob_norm = 0.0;
  std::size_t t_rank = 0;
  std::vector<double> alice_residuals;
  std::vector<double> bob_residuals;
  double bias = 0.0;
  double epsilon = 0.0;
  double alice_bound = 0.0;
  double bob_bound = 0.0;
  bool bounds_hold = false;

  double max_alice_residual() const;
  double max_bob_residual() const;
};

// epsilon = max(0, 1 - bias sqrt2), bounds 12 n^2 sqrt(eps) ||T||_F and 17 n^2 sqrt(eps) ||T||_F.
IntertwinerReport intertwiner_report(const XorGame& g, const Strategy& s, int n);

// sum_{i<j} || (A_i A_j + A_j A_i)/2 (x) I |psi> ||^2.
double anticommutation_residual(const Strategy& s, int n);

struct AbSwitch {
  int l = 0;
  double deviation = 0.0;
};

// min over l != k of || A_k (x) I |psi> - I (x) sgn(+-B_kl + B_lk) |psi> ||, + when l > k.
AbSwitch ab_switch_check(const Strategy& s, int n, int k);

struct NormalizationCheck {
  ComplexMatrix lhs_sq;
  ComplexMatrix rhs_sq;
  double identity_defect = 0.0;
  double psd_gap_mineig = 0.0;
};

// lhs = ((R+S)/sqrt2 - sgn(R+S))^2, rhs = Q (2I + Q + 2 sqrt(I+Q))^{-1} Q with
// Q = (RS+SR)/2, and the smallest eigenvalue of Q^2 - lhs.
NormalizationCheck normalization_lemma_check(const Observable& r, const Observable& s);

struct StructureReport {
  std::size_t schmidt_rank = 0;
  std::size_t block_size = 0;
  bool rank_divisible = false;
  std::vector<double> schmidt_coefficients;
  bool blocks_equal = false;
  double block_deviation = 0.0;
  double support_invariant_a = 0.0;
  double support_invariant_b = 0.0;
  double anticommute_on_support = 0.0;
  double b_block_relation = 0.0;
  bool verdict = false;
};

StructureReport verify_optimal_form(const Strategy& s, int n, double tol);

}  // namespace xorgame
