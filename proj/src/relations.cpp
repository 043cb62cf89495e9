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

#include "xorgame/relations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xorgame/linalg.hpp"

namespace xorgame {
namespace {

void check_dimensions(const XorGame& g, const RelationSystem& rel) {
  const std::size_t n = g.n_alice(), m = g.n_bob();
  if (rel.y.size() != n + m) throw Error(ErrorKind::kDimensionMismatch, "relation y length is not n_alice + n_bob");
  for (const auto& p : rel.pairs)
    if (p.u.size() != n || p.v.size() != m)
      throw Error(ErrorKind::kDimensionMismatch, "relation pair has wrong vector lengths");
}

std::vector<double> scaled_basis(std::size_t dim, std::size_t a, double wa, std::size_t b, double wb) {
  std::vector<double> out(dim, 0.0);
  out[a] += wa;
  out[b] += wb;
  return out;
}

RelationSystem chshn_closed_form(int n, bool second_form) {
  const ChshnIndex index(n);
  const auto nn = static_cast<std::size_t>(n);
  const std::size_t m = index.size();
  const double scale = 1.0 / std::sqrt(2.0 * std::sqrt(2.0) * n * (n - 1));
  const double h = scale / std::sqrt(2.0);

  RelationSystem rel;
  rel.y = chshn_dual_y(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const std::size_t ij = index.column(i, j), ji = index.column(j, i);
      const std::size_t ai = i - 1, aj = j - 1;
      if (!second_form) {
        rel.pairs.push_back({scaled_basis(nn, ai, scale, aj, 0.0), scaled_basis(m, ij, h, ji, h)});
        rel.pairs.push_back({scaled_basis(nn, aj, scale, ai, 0.0), scaled_basis(m, ij, h, ji, -h)});
      } else {
        rel.pairs.push_back({scaled_basis(nn, ai, h, aj, h), scaled_basis(m, ij, scale, ji, 0.0)});
        rel.pairs.push_back({scaled_basis(nn, ai, h, aj, -h), scaled_basis(m, ji, scale, ij, 0.0)});
      }
    }
  return rel;
}

// Sum_l c_l M_l over precomputed matrices.
ComplexMatrix combine(const std::vector<ComplexMatrix>& ms, const std::vector<double>& coeffs) {
  ComplexMatrix out(ms.front().rows(), ms.front().cols());
  for (std::size_t l = 0; l < ms.size(); ++l) {
    if (coeffs[l] == 0.0) continue;
    auto dst = out.entries().begin();
    for (const Complex& x : ms[l].entries()) *dst++ += coeffs[l] * x;
  }
  return out;
}

}  // namespace

double RelationDefects::max() const noexcept { return std::max({alice, bob, cross}); }

RelationDefects relation_defects(const XorGame& g, const RelationSystem& rel) {
  check_dimensions(g, rel);
  const std::size_t n = g.n_alice(), m = g.n_bob();
  RealMatrix uu(n, n), vv(m, m), uv(n, m);
  for (const auto& p : rel.pairs) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) uu(a, b) += p.u[a] * p.u[b];
      for (std::size_t t = 0; t < m; ++t) uv(a, t) += p.u[a] * p.v[t];
    }
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t t = 0; t < m; ++t) vv(s, t) += p.v[s] * p.v[t];
  }
  for (std::size_t a = 0; a < n; ++a) uu(a, a) -= rel.y[a];
  for (std::size_t s = 0; s < m; ++s) vv(s, s) -= rel.y[n + s];
  uv -= g.matrix() * 0.5;
  RelationDefects d;
  for (double x : uu.entries()) d.alice = std::max(d.alice, std::abs(x));
  for (double x : vv.entries()) d.bob = std::max(d.bob, std::abs(x));
  for (double x : uv.entries()) d.cross = std::max(d.cross, std::abs(x));
  return d;
}

std::vector<double> chshn_dual_y(int n) {
  const ChshnIndex index(n);
  std::vector<double> y(static_cast<std::size_t>(n), 1.0 / (2.0 * std::sqrt(2.0) * n));
  y.resize(y.size() + index.size(), 1.0 / (2.0 * std::sqrt(2.0) * n * (n - 1)));
  return y;
}

RelationSystem extract_relations(const XorGame& g, std::span<const double> y, double cutoff) {
  const std::size_t n = g.n_alice(), m = g.n_bob();
  if (y.size() != n + m) throw Error(ErrorKind::kDimensionMismatch, "y length is not n_alice + n_bob");
  if (!(cutoff >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "cutoff must be non-negative");
  RealMatrix slack = -symmetrize(g);
  for (std::size_t i = 0; i < y.size(); ++i) slack(i, i) += y[i];
  const SymmetricEig eig = symmetric_eig(slack);
  if (eig.values.front() < -kDualInfeasibleTolerance) {
    throw Error(ErrorKind::kDualInfeasible,
                "Diag(y) - G_sym has eigenvalue " + std::to_string(eig.values.front()));
  }
  RelationSystem rel;
  rel.y.assign(y.begin(), y.end());
  for (std::size_t k = eig.values.size(); k-- > 0;) {
    const double lambda = eig.values[k];
    if (!(lambda > cutoff)) continue;
    const double root = std::sqrt(lambda);
    RelationPair p{std::vector<double>(n), std::vector<double>(m)};
    for (std::size_t i = 0; i < n; ++i) p.u[i] = root * eig.vectors(i, k);
    for (std::size_t t = 0; t < m; ++t) p.v[t] = -root * eig.vectors(n + t, k);
    rel.pairs.push_back(std::move(p));
  }
  return rel;
}

RelationSystem chshn_relations_form1(int n) { return chshn_closed_form(n, false); }
RelationSystem chshn_relations_form2(int n) { return chshn_closed_form(n, true); }

double residual(const Strategy& s, const RelationSystem& rel) {
  s.check_shape();
  const std::size_t n = s.alice.size(), m = s.bob.size();
  if (rel.y.size() != n + m) throw Error(ErrorKind::kDimensionMismatch, "relation y length does not match strategy");
  if (rel.pairs.empty()) return 0.0;
  for (const auto& p : rel.pairs)
    if (p.u.size() != n || p.v.size() != m)
      throw Error(ErrorKind::kDimensionMismatch, "relation pair has wrong vector lengths");

  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  std::vector<ComplexMatrix> left, right;
  for (const auto& a : s.alice) left.push_back(a.matrix() * psi);
  for (const auto& b : s.bob) right.push_back(psi * transpose(b.matrix()));
  double total = 0.0;
  for (const auto& p : rel.pairs) {
    const double f = frobenius_norm(combine(left, p.u) - combine(right, p.v));
    total += f * f;
  }
  return total;
}

IdentityCheck check_identity(const XorGame& g, const Strategy& s, const RelationSystem& rel) {
  check_dimensions(g, rel);
  const double sum_y = std::accumulate(rel.y.begin(), rel.y.end(), 0.0);
  IdentityCheck out;
  out.lhs = residual(s, rel);
  out.rhs = sum_y - bias(g, s);
  out.ok = std::abs(out.lhs - out.rhs) <= kIdentityTolerance * std::max(1.0, sum_y);
  return out;
}

double certify_epsilon(const XorGame& g, const Strategy& s, const RelationSystem& rel, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorKind::kInvalidArgument, "beta must be positive");
  check_dimensions(g, rel);
  if (s.alice.size() != g.n_alice() || s.bob.size() != g.n_bob()) {
    throw Error(ErrorKind::kDimensionMismatch, "strategy question counts do not match the game");
  }
  return residual(s, rel) / beta;
}

}  // namespace xorgame
