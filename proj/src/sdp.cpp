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

#include "xorgame/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "xorgame/linalg.hpp"

namespace xorgame {
namespace {

constexpr int kPolishSweeps = 2000;

// Lower Cholesky factor, or nullopt when `a` is not numerically positive definite.
std::optional<RealMatrix> cholesky(const RealMatrix& a) {
  const std::size_t n = a.rows();
  RealMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > 0.0)) return std::nullopt;
    l(j, j) = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

RealMatrix lower_inverse(const RealMatrix& l) {
  const std::size_t n = l.rows();
  RealMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    inv(j, j) = 1.0 / l(j, j);
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = j; k < i; ++k) s -= l(i, k) * inv(k, j);
      inv(i, j) = s / l(i, i);
    }
  }
  return inv;
}

std::vector<double> cholesky_solve(const RealMatrix& l, std::vector<double> b) {
  const std::size_t n = l.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
    b[i] /= l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
    b[i] /= l(i, i);
  }
  return b;
}

void symmetrize_in_place(RealMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const double m = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = m;
      a(j, i) = m;
    }
}

double dot(const RealMatrix& a, const RealMatrix& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a.entries()[k] * b.entries()[k];
  return s;
}

RealMatrix dual_slack(std::span<const double> y, const RealMatrix& c) {
  RealMatrix z = -c;
  for (std::size_t i = 0; i < y.size(); ++i) z(i, i) += y[i];
  return z;
}

// Largest alpha in (0, 1] keeping M + alpha*D positive definite, damped by
// the fraction-to-boundary factor. `l` is the Cholesky factor of M.
double step_length(const RealMatrix& l, const RealMatrix& d) {
  const RealMatrix li = lower_inverse(l);
  RealMatrix w = li * d * transpose(li);
  symmetrize_in_place(w);
  const double lambda = min_eigenvalue(w);
  if (lambda >= 0.0) return 1.0;
  return std::min(1.0, kFractionToBoundary * (-1.0 / lambda));
}

// Block coordinate ascent on unit Gram vectors: v_i <- normalize(sum_{j != i} C_ij v_j).
// Each update cannot lower <C, V V^T>, and unit rows keep the diagonal exact.
RealMatrix polish(const RealMatrix& x, const RealMatrix& c) {
  const std::size_t n = x.rows();
  const SymmetricEig eig = symmetric_eig(x);
  RealMatrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      v(i, l) = eig.vectors(i, l) * std::sqrt(std::max(0.0, eig.values[l]));
      norm2 += v(i, l) * v(i, l);
    }
    const double norm = std::sqrt(norm2);
    for (std::size_t l = 0; l < n; ++l) v(i, l) /= norm;
  }
  const auto objective = [&] { return dot(c, v * transpose(v)); };
  double value = objective();
  std::vector<double> g(n);
  for (int sweep = 0; sweep < kPolishSweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(g.begin(), g.end(), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || c(i, j) == 0.0) continue;
        for (std::size_t l = 0; l < n; ++l) g[l] += c(i, j) * v(j, l);
      }
      double norm2 = 0.0;
      for (double t : g) norm2 += t * t;
      if (norm2 == 0.0) continue;
      const double norm = std::sqrt(norm2);
      for (std::size_t l = 0; l < n; ++l) v(i, l) = g[l] / norm;
    }
    const double next = objective();
    const bool stalled = next - value <= 1e-16 * std::max(1.0, std::abs(value));
    value = std::max(value, next);
    if (stalled) break;
  }
  RealMatrix z = v * transpose(v);
  symmetrize_in_place(z);
  for (std::size_t i = 0; i < n; ++i) z(i, i) = 1.0;
  return dot(c, z) >= dot(c, x) ? z : x;
}

SdpSolution package(const RealMatrix& x, std::vector<double> y, const RealMatrix& c, int iterations,
                    bool converged) {
  SdpSolution out;
  const SymmetricEig eig = symmetric_eig(polish(x, c));
  std::vector<double> clipped = eig.values;
  for (double& v : clipped)
    if (v < 0.0 && v >= -kFeasibilityTolerance) v = 0.0;
  RealMatrix z = eig.vectors * RealMatrix::diagonal(clipped) * transpose(eig.vectors);
  symmetrize_in_place(z);
  // Clipping moves the diagonal by at most the clipped mass; restore it exactly.
  for (std::size_t i = 0; i < z.rows(); ++i) z(i, i) = 1.0;
  out.z = std::move(z);
  out.primal_value = dot(c, out.z);
  out.dual_value = std::accumulate(y.begin(), y.end(), 0.0);
  out.gap = out.dual_value - out.primal_value;
  out.y = std::move(y);
  out.iterations = iterations;
  out.converged = converged;
  return out;
}

}  // namespace

SdpSolution solve(const RealMatrix& g_sym, double tol, int max_iterations) {
  if (g_sym.rows() != g_sym.cols() || g_sym.rows() == 0) {
    throw Error(ErrorKind::kDimensionMismatch, "SDP objective must be square and non-empty");
  }
  if (symmetry_defect(g_sym) > kHermitianTolerance) {
    throw Error(ErrorKind::kNonSymmetric, "SDP objective is not symmetric");
  }
  if (!(tol > 0.0 && tol <= 1e-2)) {
    throw Error(ErrorKind::kInvalidArgument, "tol must lie in (0, 1e-2], got " + std::to_string(tol));
  }
  if (max_iterations < 1) throw Error(ErrorKind::kInvalidArgument, "max_iterations must be positive");

  const std::size_t n = g_sym.rows();
  const RealMatrix& c = g_sym;
  RealMatrix x = RealMatrix::identity(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 1.0;
    for (std::size_t j = 0; j < n; ++j) s += std::abs(c(i, j));
    y[i] = s;
  }
  RealMatrix z = dual_slack(y, c);

  for (int it = 0; it < max_iterations; ++it) {
    const double gap = std::accumulate(y.begin(), y.end(), 0.0) - dot(c, x);
    if (gap <= tol) return package(x, std::move(y), c, it, true);

    const auto lz = cholesky(z);
    const auto lx = cholesky(x);
    if (!lz || !lx) return package(x, std::move(y), c, it, false);
    const RealMatrix lzi = lower_inverse(*lz);
    const RealMatrix zi = transpose(lzi) * lzi;

    const double mu = dot(z, x) / static_cast<double>(n);
    const double sigma = it == 0 ? 0.5 : 0.15;
    const double target = sigma * mu;

    RealMatrix schur(n, n);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) schur(i, j) = zi(i, j) * x(j, i);
      rhs[i] = target * zi(i, i) - 1.0;
    }
    symmetrize_in_place(schur);
    const auto ls = cholesky(schur);
    if (!ls) return package(x, std::move(y), c, it, false);
    const std::vector<double> dy = cholesky_solve(*ls, rhs);

    // dX = mu Z^-1 - X - Z^-1 Diag(dy) X.
    RealMatrix zi_dy = zi;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) zi_dy(i, j) *= dy[j];
    RealMatrix dx = zi * target - x - zi_dy * x;
    symmetrize_in_place(dx);
    const RealMatrix dz = RealMatrix::diagonal(std::span<const double>(dy));

    const double alpha_p = step_length(*lx, dx);
    const double alpha_d = step_length(*lz, dz);

    x += dx * alpha_p;
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha_d * dy[i];
    z = dual_slack(y, c);

    std::vector<double> scale(n);
    for (std::size_t i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(x(i, i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) *= scale[i] * scale[j];
    for (std::size_t i = 0; i < n; ++i) x(i, i) = 1.0;
  }
  const double gap = std::accumulate(y.begin(), y.end(), 0.0) - dot(c, x);
  return package(x, std::move(y), c, max_iterations, gap <= tol);
}

double quantum_bias(const XorGame& game, double tol) {
  const SdpSolution sol = solve(symmetrize(game), tol);
  if (!sol.converged) {
    throw Error(ErrorKind::kMaxIterations,
                "SDP did not reach gap " + std::to_string(tol) + " within " + std::to_string(sol.iterations) +
                    " iterations");
  }
  return sol.primal_value;
}

DualFeasibility verify_dual_feasible(std::span<const double> y, const RealMatrix& g_sym) {
  if (g_sym.rows() != g_sym.cols() || y.size() != g_sym.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "y length does not match the SDP objective");
  }
  const double lambda = min_eigenvalue(dual_slack(y, g_sym));
  return {lambda >= -kFeasibilityTolerance, lambda};
}

}  // namespace xorgame
