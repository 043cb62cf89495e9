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

#include <cmath>
#include <vector>

#include "xorgame/linalg.hpp"
#include "xorgame/matrix.hpp"
#include "xorgame/strategy.hpp"

namespace xorgame::testing {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }
inline ComplexMatrix pauli_y() { return ComplexMatrix(2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (auto& x : m.entries()) x = Complex(normal(rng), normal(rng));
  return m;
}

inline ComplexVector random_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(dim);
  for (auto& x : v.entries()) x = Complex(normal(rng), normal(rng));
  return v;
}

inline double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double anticommutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return frobenius_norm(a * b + b * a);
}

// Weighted direct sum of two strategies with the same question counts:
// observables A (+) A', state sqrt(w) psi (+) sqrt(1-w) psi' placed in the
// diagonal blocks of C^{d_A + d_A'} (x) C^{d_B + d_B'}.
inline Strategy direct_sum_strategy(const Strategy& s, const Strategy& t, double weight) {
  Strategy out;
  out.d_a = s.d_a + t.d_a;
  out.d_b = s.d_b + t.d_b;
  for (std::size_t i = 0; i < s.alice.size(); ++i)
    out.alice.push_back(Observable::unchecked(direct_sum(s.alice[i].matrix(), t.alice[i].matrix())));
  for (std::size_t i = 0; i < s.bob.size(); ++i)
    out.bob.push_back(Observable::unchecked(direct_sum(s.bob[i].matrix(), t.bob[i].matrix())));
  const ComplexMatrix ps = vec_to_matrix(s.state, s.d_a, s.d_b);
  const ComplexMatrix pt = vec_to_matrix(t.state, t.d_a, t.d_b);
  ComplexMatrix psi(out.d_a, out.d_b);
  const double ws = std::sqrt(weight), wt = std::sqrt(1.0 - weight);
  for (std::size_t i = 0; i < s.d_a; ++i)
    for (std::size_t j = 0; j < s.d_b; ++j) psi(i, j) = ws * ps(i, j);
  for (std::size_t i = 0; i < t.d_a; ++i)
    for (std::size_t j = 0; j < t.d_b; ++j) psi(s.d_a + i, s.d_b + j) = wt * pt(i, j);
  out.state = matrix_to_vec(psi);
  return out;
}

inline std::vector<Observable> random_observables(std::size_t count, std::size_t dim, Rng& rng) {
  std::vector<Observable> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_observable(dim, rng));
  return out;
}

// Canonical strategy with every observable conjugated by one local unitary per side.
inline Strategy locally_rotated(const Strategy& s, Rng& rng) {
  const ComplexMatrix u = random_unitary(s.d_a, rng);
  const ComplexMatrix v = random_unitary(s.d_b, rng);
  Strategy out = s;
  for (auto& a : out.alice) a = Observable::unchecked(u * a.matrix() * adjoint(u));
  for (auto& b : out.bob) b = Observable::unchecked(v * b.matrix() * adjoint(v));
  out.state = xorgame::apply(kron(u, v), s.state);
  return out;
}

}  // namespace xorgame::testing
