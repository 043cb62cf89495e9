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
#include <span>
#include <vector>

#include "xorgame/game.hpp"
#include "xorgame/linalg.hpp"
#include "xorgame/strategy.hpp"

namespace xorgame {

inline constexpr double kDualInfeasibleTolerance = 1e-8;
inline constexpr double kIdentityTolerance = 1e-7;

struct RelationPair {
  std::vector<double> u;  // length n_alice
  std::vector<double> v;  // length n_bob
};

// Vectors with sum u u^T = Diag(y_A), sum v v^T = Diag(y_B), sum u v^T = G/2.
struct RelationSystem {
  std::vector<double> y;
  std::vector<RelationPair> pairs;

  std::size_t r() const noexcept { return pairs.size(); }
};

// Max entrywise deviation of each of the three outer-product identities.
struct RelationDefects {
  double alice = 0.0;
  double bob = 0.0;
  double cross = 0.0;

  double max() const noexcept;
};

RelationDefects relation_defects(const XorGame& g, const RelationSystem& rel);

// y_i = 1/(2 sqrt2 n) for Alice's n questions and 1/(2 sqrt2 n(n-1)) for Bob's.
std::vector<double> chshn_dual_y(int n);

// Eigendecomposition of Diag(y) - G_sym, w = sqrt(lambda) x = [u; -v].
RelationSystem extract_relations(const XorGame& g, std::span<const double> y,
                                 double cutoff = kDefaultSchmidtCutoff);

// u_ij = |i>, v_ij = (|ij> + |ji>)/sqrt2; u_ji = |j>, v_ji = (|ij> - |ji>)/sqrt2.
RelationSystem chshn_relations_form1(int n);
// u_ij = (|i> + |j>)/sqrt2, v_ij = |ij>; u_ji = (|i> - |j>)/sqrt2, v_ji = |ji>.
RelationSystem chshn_relations_form2(int n);

// sum_k || (u_k . A) (x) I |psi> - I (x) (v_k . B) |psi> ||^2.
double residual(const Strategy& s, const RelationSystem& rel);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

// lhs = residual, rhs = sum(y) - bias.
IdentityCheck check_identity(const XorGame& g, const Strategy& s, const RelationSystem& rel);

// residual / beta.
double certify_epsilon(const XorGame& g, const Strategy& s, const RelationSystem& rel, double beta);

}  // namespace xorgame
