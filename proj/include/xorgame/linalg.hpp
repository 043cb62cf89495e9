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
#include <functional>
#include <vector>

#include "xorgame/matrix.hpp"

namespace xorgame {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kDefaultSchmidtCutoff = 1e-9;

// Eigenvalues ascending; column j of `vectors` is the eigenvector for values[j].
template <typename T>
struct EigenDecomposition {
  std::vector<double> values;
  Matrix<T> vectors;
};

using HermitianEig = EigenDecomposition<Complex>;
using SymmetricEig = EigenDecomposition<double>;

// Cyclic Jacobi. The input is checked against kHermitianTolerance and then
// symmetrized as (h + h^dagger)/2 before rotating.
HermitianEig hermitian_eig(const ComplexMatrix& h);
SymmetricEig symmetric_eig(const RealMatrix& h);

double min_eigenvalue(const RealMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

// V f(Lambda) V^dagger for a Hermitian h.
ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f);
RealMatrix symmetric_function(const RealMatrix& h, const std::function<double(double)>& f);

// Thin SVD a = U diag(s) V^dagger via one-sided (Hestenes) Jacobi. Singular
// values are non-increasing; U is rows x k and V is cols x k with
// k = min(rows, cols).
struct SingularValueDecomposition {
  std::vector<double> values;
  ComplexMatrix u;
  ComplexMatrix v;
};

SingularValueDecomposition svd(const ComplexMatrix& a);

// The bijection C^{d_A} (x) C^{d_B} -> Mat_{d_A x d_B}: |i>|j> -> |i><j|.
ComplexMatrix vec_to_matrix(const ComplexVector& w, std::size_t d_a, std::size_t d_b);
ComplexVector matrix_to_vec(const ComplexMatrix& m);

struct SchmidtDecomposition {
  std::vector<double> coefficients;
  std::vector<ComplexVector> left_basis;
  std::vector<ComplexVector> right_basis;

  std::size_t rank() const noexcept { return coefficients.size(); }
};

// w = sum_i c_i left_i (x) right_i, keeping only c_i > cutoff.
SchmidtDecomposition schmidt(const ComplexVector& w, std::size_t d_a, std::size_t d_b,
                             double cutoff = kDefaultSchmidtCutoff);

// Maps every eigenvalue to its sign, with sign(0) = +1.
ComplexMatrix sign_normalize(const ComplexMatrix& h);

}  // namespace xorgame
