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
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "xorgame/error.hpp"

namespace xorgame {

using Complex = std::complex<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};

template <typename T>
constexpr T conj_of(const T& x) {
  if constexpr (is_complex<T>::value) {
    return std::conj(x);
  } else {
    return x;
  }
}

// Dense row-major matrix. Entries are owned; all operations are value-returning.
template <typename T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw Error(ErrorKind::kDimensionMismatch, "entry count does not match rows*cols");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static Matrix diagonal(std::span<const T> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  const std::vector<T>& entries() const noexcept { return data_; }
  std::vector<T>& entries() noexcept { return data_; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= T{-1}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorKind::kDimensionMismatch, "matrix shapes differ");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;

// A vector in C^d, typically a bipartite state in C^{d_A} (x) C^{d_B}.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t dim) : data_(dim) {}
  explicit ComplexVector(std::vector<Complex> entries) : data_(std::move(entries)) {}

  static ComplexVector basis(std::size_t dim, std::size_t i) {
    ComplexVector v(dim);
    v[i] = 1.0;
    return v;
  }

  std::size_t dim() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  const std::vector<Complex>& entries() const noexcept { return data_; }
  std::vector<Complex>& entries() noexcept { return data_; }

  double norm() const {
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
  }

  ComplexVector& operator+=(const ComplexVector& o);
  ComplexVector& operator-=(const ComplexVector& o);
  ComplexVector& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend ComplexVector operator+(ComplexVector a, const ComplexVector& b) { return a += b; }
  friend ComplexVector operator-(ComplexVector a, const ComplexVector& b) { return a -= b; }
  friend ComplexVector operator*(Complex s, ComplexVector a) { return a *= s; }

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> data_;
};

// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);
ComplexVector tensor(const ComplexVector& a, const ComplexVector& b);

// ---- shape and elementwise helpers ----

template <typename T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <typename T>
Matrix<T> adjoint(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = conj_of(a(i, j));
  return t;
}

ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexMatrix to_complex(const RealMatrix& a);
RealMatrix real_part(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_norm(const RealMatrix& a);
// Tr(a^dagger b).
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);
// max_ij |h_ij - conj(h_ji)|
double hermiticity_defect(const ComplexMatrix& h);
double symmetry_defect(const RealMatrix& h);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
// Block-diagonal direct sum diag(a, b).
ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexVector apply(const ComplexMatrix& a, const ComplexVector& v);

// ---- products: OpenMP kernel plus the serial reference it is tested against ----

namespace kernels {

ComplexMatrix multiply_serial(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply_parallel(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix multiply_serial(const RealMatrix& a, const RealMatrix& b);
RealMatrix multiply_parallel(const RealMatrix& a, const RealMatrix& b);

// Table of Tr(x_s^dagger y_t) for every pair (s, t).
ComplexMatrix gram_table_serial(std::span<const ComplexMatrix> xs, std::span<const ComplexMatrix> ys);
ComplexMatrix gram_table_parallel(std::span<const ComplexMatrix> xs,
                                  std::span<const ComplexMatrix> ys);

}  // namespace kernels

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kernels::multiply_parallel(a, b);
}
inline RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  return kernels::multiply_parallel(a, b);
}

}  // namespace xorgame
