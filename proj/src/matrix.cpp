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

#include "xorgame/matrix.hpp"

#include <algorithm>

namespace xorgame {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNonHermitian: return "NonHermitian";
    case ErrorKind::kNonSymmetric: return "NonSymmetric";
    case ErrorKind::kNotNormalized: return "NotNormalized";
    case ErrorKind::kZeroMatrix: return "ZeroMatrix";
    case ErrorKind::kInvalidN: return "InvalidN";
    case ErrorKind::kInvalidK: return "InvalidK";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kMaxIterations: return "MaxIterations";
    case ErrorKind::kNonRealBias: return "NonRealBias";
    case ErrorKind::kNotPsd: return "NotPsd";
    case ErrorKind::kBadDiagonal: return "BadDiagonal";
    case ErrorKind::kDualInfeasible: return "DualInfeasible";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kInvalidObservable: return "InvalidObservable";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& o) {
  if (o.dim() != dim()) throw Error(ErrorKind::kDimensionMismatch, "vector dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& o) {
  if (o.dim() != dim()) throw Error(ErrorKind::kDimensionMismatch, "vector dimensions differ");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::kDimensionMismatch, "vector dimensions differ");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

ComplexVector tensor(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (auto& x : c.entries()) x = std::conj(x);
  return c;
}

ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) c.entries()[k] = a.entries()[k];
  return c;
}

RealMatrix real_part(const ComplexMatrix& a) {
  RealMatrix r(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) r.entries()[k] = a.entries()[k].real();
  return r;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double frobenius_norm(const RealMatrix& a) {
  double s = 0.0;
  for (double x : a.entries()) s += x * x;
  return std::sqrt(s);
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "frobenius_inner: shapes differ");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a.entries()[k]) * b.entries()[k];
  return s;
}

Complex trace(const ComplexMatrix& a) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "max_abs_diff: shapes differ");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "max_abs_diff: shapes differ");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

double hermiticity_defect(const ComplexMatrix& h) {
  if (!h.is_square()) throw Error(ErrorKind::kDimensionMismatch, "matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j) m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
  return m;
}

double symmetry_defect(const RealMatrix& h) {
  if (!h.is_square()) throw Error(ErrorKind::kDimensionMismatch, "matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i + 1; j < h.cols(); ++j) m = std::max(m, std::abs(h(i, j) - h(j, i)));
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t br = b.rows(), bc = b.cols();
  ComplexMatrix out(a.rows() * br, a.cols() * bc);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l) out(i * br + k, j * bc + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.dim()) throw Error(ErrorKind::kDimensionMismatch, "apply: shapes differ");
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    const auto r = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) s += r[j] * v[j];
    out[i] = s;
  }
  return out;
}

namespace kernels {
namespace {

// Below this many multiply-adds the thread fork costs more than it saves.
constexpr std::size_t kParallelThreshold = 1u << 15;

template <typename T>
void check_product_shapes(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::kDimensionMismatch, "multiply: inner dimensions differ");
}

template <typename T>
Matrix<T> multiply_serial_impl(const Matrix<T>& a, const Matrix<T>& b) {
  check_product_shapes(a, b);
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename T>
Matrix<T> multiply_parallel_impl(const Matrix<T>& a, const Matrix<T>& b) {
  check_product_shapes(a, b);
  const std::size_t rows = a.rows(), inner_dim = a.cols(), cols = b.cols();
  Matrix<T> c(rows, cols);
  const bool big = rows * inner_dim * cols >= kParallelThreshold;
  const T* pa = a.entries().data();
  const T* pb = b.entries().data();
  T* pc = c.entries().data();
#pragma omp parallel for schedule(static) if (big)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows); ++i) {
    T* ci = pc + i * cols;
    for (std::size_t k = 0; k < inner_dim; ++k) {
      const T aik = pa[i * inner_dim + k];
      const T* bk = pb + k * cols;
      for (std::size_t j = 0; j < cols; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

void check_gram_inputs(std::span<const ComplexMatrix> xs, std::span<const ComplexMatrix> ys) {
  for (const auto& x : xs)
    for (const auto& y : ys)
      if (x.rows() != y.rows() || x.cols() != y.cols())
        throw Error(ErrorKind::kDimensionMismatch, "gram_table: shapes differ");
}

}  // namespace

ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply_serial_impl(a, b);
}
ComplexMatrix multiply_parallel(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply_parallel_impl(a, b);
}
RealMatrix multiply_serial(const RealMatrix& a, const RealMatrix& b) { return multiply_serial_impl(a, b); }
RealMatrix multiply_parallel(const RealMatrix& a, const RealMatrix& b) {
  return multiply_parallel_impl(a, b);
}

ComplexMatrix gram_table_serial(std::span<const ComplexMatrix> xs, std::span<const ComplexMatrix> ys) {
  check_gram_inputs(xs, ys);
  ComplexMatrix out(xs.size(), ys.size());
  for (std::size_t s = 0; s < xs.size(); ++s)
    for (std::size_t t = 0; t < ys.size(); ++t) out(s, t) = frobenius_inner(xs[s], ys[t]);
  return out;
}

ComplexMatrix gram_table_parallel(std::span<const ComplexMatrix> xs,
                                  std::span<const ComplexMatrix> ys) {
  check_gram_inputs(xs, ys);
  const std::size_t n = xs.size(), m = ys.size();
  ComplexMatrix out(n, m);
  const std::size_t work = n * m * (xs.empty() ? 0 : xs.front().size());
#pragma omp parallel for collapse(2) schedule(static) if (work >= kParallelThreshold)
  for (std::ptrdiff_t s = 0; s < static_cast<std::ptrdiff_t>(n); ++s)
    for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(m); ++t)
      out(s, t) = frobenius_inner(xs[s], ys[t]);
  return out;
}

}  // namespace kernels
}  // namespace xorgame
