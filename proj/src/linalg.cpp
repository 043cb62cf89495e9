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

#include "xorgame/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace xorgame {
namespace {

constexpr int kMaxJacobiSweeps = 100;

// Rotation parameter t = tan(theta) for the 2x2 real block [[a, g], [g, b]]
// with g > 0; picks the smaller root so |theta| <= pi/4.
double jacobi_tangent(double a, double b, double g) {
  const double zeta = (b - a) / (2.0 * g);
  if (std::abs(zeta) > 1e150) return 0.5 / zeta;
  const double t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  return zeta >= 0.0 ? t : -t;
}

template <typename T>
EigenDecomposition<T> jacobi_eig(const Matrix<T>& input) {
  if (!input.is_square()) throw Error(ErrorKind::kDimensionMismatch, "eigendecomposition needs a square matrix");
  const std::size_t n = input.rows();
  double defect = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) defect = std::max(defect, std::abs(input(i, j) - conj_of(input(j, i))));
  if (defect > kHermitianTolerance) {
    throw Error(ErrorKind::kNonHermitian, "max |h - h^dagger| = " + std::to_string(defect));
  }

  Matrix<T> h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = T{std::real(input(i, i))};
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = (input(i, j) + conj_of(input(j, i))) * 0.5;
      h(j, i) = conj_of(h(i, j));
    }
  }
  Matrix<T> v = Matrix<T>::identity(n);

  double scale = 0.0;
  for (const auto& x : h.entries()) scale += std::norm(x);
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < kMaxJacobiSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
    if (std::sqrt(2.0 * off) <= 1e-16 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T hpq = h(p, q);
        const double g = std::abs(hpq);
        if (g <= 1e-300 || g <= 1e-18 * scale) continue;
        const T omega = hpq / g;
        const T omega_bar = conj_of(omega);
        const double t = jacobi_tangent(std::real(h(p, p)), std::real(h(q, q)), g);
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        // h <- h J with J = [[c, s], [-s conj(w), c conj(w)]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const T hkp = h(k, p), hkq = h(k, q);
          h(k, p) = c * hkp - s * omega_bar * hkq;
          h(k, q) = s * hkp + c * omega_bar * hkq;
        }
        // h <- J^dagger h.
        for (std::size_t k = 0; k < n; ++k) {
          const T hpk = h(p, k), hqk = h(q, k);
          h(p, k) = c * hpk - s * omega * hqk;
          h(q, k) = s * hpk + c * omega * hqk;
        }
        h(p, q) = T{};
        h(q, p) = T{};
        h(p, p) = T{std::real(h(p, p))};
        h(q, q) = T{std::real(h(q, q))};
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * omega_bar * vkq;
          v(k, q) = s * vkp + c * omega_bar * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::real(h(a, a)) < std::real(h(b, b)); });
  EigenDecomposition<T> out;
  out.values.resize(n);
  out.vectors = Matrix<T>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = std::real(h(order[j], order[j]));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

template <typename T>
Matrix<T> spectral_function(const EigenDecomposition<T>& eig, const std::function<double(double)>& f) {
  const std::size_t n = eig.values.size();
  Matrix<T> out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const T vik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * conj_of(eig.vectors(j, k));
    }
  }
  return out;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& h) { return jacobi_eig(h); }
SymmetricEig symmetric_eig(const RealMatrix& h) { return jacobi_eig(h); }

double min_eigenvalue(const RealMatrix& h) {
  const auto e = symmetric_eig(h);
  return e.values.empty() ? 0.0 : e.values.front();
}

double min_eigenvalue(const ComplexMatrix& h) {
  const auto e = hermitian_eig(h);
  return e.values.empty() ? 0.0 : e.values.front();
}

ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f) {
  return spectral_function(hermitian_eig(h), f);
}

RealMatrix symmetric_function(const RealMatrix& h, const std::function<double(double)>& f) {
  return spectral_function(symmetric_eig(h), f);
}

SingularValueDecomposition svd(const ComplexMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto column_dot = [&](std::size_t p, std::size_t q) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += std::conj(w(i, p)) * w(i, q);
    return s;
  };

  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = std::real(column_dot(p, p));
        const double beta = std::real(column_dot(q, q));
        const Complex gamma = column_dot(p, q);
        const double g = std::abs(gamma);
        if (g <= 1e-300 || g <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex omega_bar = std::conj(gamma / g);
        const double t = jacobi_tangent(alpha, beta, g);
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * omega_bar * wq;
          w(i, q) = s * wp + c * omega_bar * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * omega_bar * vq;
          v(i, q) = s * vp + c * omega_bar * vq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(std::real(column_dot(j, j)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  const std::size_t k = std::min(m, n);
  SingularValueDecomposition out;
  out.values.resize(k);
  out.u = ComplexMatrix(m, k);
  out.v = ComplexMatrix(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t src = order[j];
    out.values[j] = sigma[src];
    for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    if (sigma[src] > 0.0) {
      for (std::size_t i = 0; i < m; ++i) out.u(i, j) = w(i, src) / sigma[src];
    }
  }
  return out;
}

ComplexMatrix vec_to_matrix(const ComplexVector& w, std::size_t d_a, std::size_t d_b) {
  if (w.dim() != d_a * d_b) {
    throw Error(ErrorKind::kDimensionMismatch,
                "vector of dimension " + std::to_string(w.dim()) + " is not " + std::to_string(d_a) + "x" +
                    std::to_string(d_b));
  }
  return ComplexMatrix(d_a, d_b, w.entries());
}

ComplexVector matrix_to_vec(const ComplexMatrix& m) { return ComplexVector(m.entries()); }

SchmidtDecomposition schmidt(const ComplexVector& w, std::size_t d_a, std::size_t d_b, double cutoff) {
  if (cutoff < 0.0) throw Error(ErrorKind::kInvalidArgument, "schmidt cutoff must be non-negative");
  const auto dec = svd(vec_to_matrix(w, d_a, d_b));
  SchmidtDecomposition out;
  for (std::size_t j = 0; j < dec.values.size(); ++j) {
    if (!(dec.values[j] > cutoff)) continue;
    out.coefficients.push_back(dec.values[j]);
    ComplexVector left(d_a), right(d_b);
    for (std::size_t i = 0; i < d_a; ++i) left[i] = dec.u(i, j);
    // L(u (x) v) = |u><v*|, so the right factor is the conjugated right singular vector.
    for (std::size_t i = 0; i < d_b; ++i) right[i] = std::conj(dec.v(i, j));
    out.left_basis.push_back(std::move(left));
    out.right_basis.push_back(std::move(right));
  }
  return out;
}

ComplexMatrix sign_normalize(const ComplexMatrix& h) {
  return hermitian_function(h, [](double x) { return x >= 0.0 ? 1.0 : -1.0; });
}

}  // namespace xorgame
