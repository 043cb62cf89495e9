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

#include "xorgame/chshn.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "xorgame/linalg.hpp"

namespace xorgame {
namespace {

void check_chshn_strategy(const Strategy& s, int n) {
  const ChshnIndex index(n);
  s.check_shape();
  if (s.alice.size() != static_cast<std::size_t>(n) || s.bob.size() != index.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "strategy does not have CHSH(" + std::to_string(n) + ") question counts");
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + adjoint(m)) * Complex(0.5); }


// The Bob operator for column (j, k) is expected to act like (A_j + A_k)/sqrt2
// when j < k and (A_k - A_j)/sqrt2 when j > k.
ComplexMatrix expected_bob_action(const std::vector<Observable>& alice, int j, int k) {
  const double r = 1.0 / std::sqrt(2.0);
  const ComplexMatrix& lo = alice[std::min(j, k) - 1].matrix();
  const ComplexMatrix& hi = alice[std::max(j, k) - 1].matrix();
  return j < k ? (lo + hi) * Complex(r) : (lo - hi) * Complex(r);
}

double max_of(const std::vector<double>& xs) { return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end()); }

}  // namespace

BitString::BitString(int n, std::uint64_t mask) : n_(n), mask_(mask) {
  if (n < 1 || n > 63) throw Error(ErrorKind::kInvalidN, "bit string length must lie in [1, 63]");
  if (mask >> n) throw Error(ErrorKind::kIndexOutOfRange, "mask has bits beyond position n");
}

BitString BitString::from_bits(const std::vector<int>& bits) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw Error(ErrorKind::kInvalidArgument, "bits must be 0 or 1");
    if (bits[i]) mask |= std::uint64_t{1} << i;
  }
  return BitString(static_cast<int>(bits.size()), mask);
}

int BitString::operator[](int i) const {
  if (i < 1 || i > n_) throw Error(ErrorKind::kIndexOutOfRange, "bit index " + std::to_string(i) + " out of range");
  return static_cast<int>((mask_ >> (i - 1)) & 1u);
}

BitString BitString::flipped(int i) const {
  (void)(*this)[i];
  return BitString(n_, mask_ ^ (std::uint64_t{1} << (i - 1)));
}

ComplexMatrix chain_product(std::span<const Observable> obs, const BitString& j) {
  if (obs.size() != static_cast<std::size_t>(j.n())) {
    throw Error(ErrorKind::kDimensionMismatch, "observable count differs from bit string length");
  }
  const std::size_t d = obs.front().dim();
  for (const auto& o : obs)
    if (o.dim() != d) throw Error(ErrorKind::kDimensionMismatch, "observables have different dimensions");
  ComplexMatrix out = ComplexMatrix::identity(d);
  for (int i = 1; i <= j.n(); ++i)
    if (j[i]) out = out * obs[i - 1].matrix();
  return out;
}

int insertion_sign_left(int i, const BitString& j) {
  (void)j[i];
  const std::uint64_t below = j.mask() & ((std::uint64_t{1} << (i - 1)) - 1);
  return std::popcount(below) % 2 == 0 ? 1 : -1;
}

int insertion_sign_right(const BitString& j, int k) {
  (void)j[k];
  const std::uint64_t above = j.mask() >> k;
  return std::popcount(above) % 2 == 0 ? 1 : -1;
}

std::vector<ComplexVector> canonical_vector_family(int n) {
  const Strategy c = canonical_chshn(n);
  std::vector<ComplexVector> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const ComplexMatrix a = chain_product(c.alice, BitString(n, mask));
    out.push_back(xorgame::apply(kron(a, ComplexMatrix::identity(c.d_b)), c.state));
  }
  return out;
}

ComplexMatrix build_intertwiner(const Strategy& s, int n) {
  check_chshn_strategy(s, n);
  const std::vector<ComplexVector> canon = canonical_vector_family(n);
  const std::size_t rows = s.d_a * s.d_b, cols = canon.front().dim();
  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  ComplexMatrix t(rows, cols);
  for (std::uint64_t mask = 0; mask < canon.size(); ++mask) {
    const ComplexVector image = matrix_to_vec(chain_product(s.alice, BitString(n, mask)) * psi);
    const ComplexVector& ref = canon[mask];
    for (std::size_t i = 0; i < rows; ++i) {
      if (image[i] == Complex(0.0)) continue;
      for (std::size_t j = 0; j < cols; ++j) t(i, j) += image[i] * std::conj(ref[j]);
    }
  }
  t *= Complex(1.0 / std::sqrt(static_cast<double>(canon.size())));
  return t;
}

double IntertwinerReport::max_alice_residual() const { return max_of(alice_residuals); }
double IntertwinerReport::max_bob_residual() const { return max_of(bob_residuals); }

IntertwinerReport intertwiner_report(const XorGame& g, const Strategy& s, int n) {
  check_chshn_strategy(s, n);
  const Strategy canon = canonical_chshn(n);
  IntertwinerReport rep;
  rep.t = build_intertwiner(s, n);
  rep.frob_norm = frobenius_norm(rep.t);
  const SingularValueDecomposition sv = svd(rep.t);
  rep.t_rank = static_cast<std::size_t>(
      std::count_if(sv.values.begin(), sv.values.end(), [](double x) { return x > kDefaultSchmidtCutoff; }));

  const ComplexMatrix id_a = ComplexMatrix::identity(s.d_a), id_b = ComplexMatrix::identity(s.d_b);
  const ComplexMatrix id_ca = ComplexMatrix::identity(canon.d_a), id_cb = ComplexMatrix::identity(canon.d_b);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix lhs = kron(s.alice[i].matrix(), id_b) * rep.t;
    const ComplexMatrix rhs = rep.t * kron(canon.alice[i].matrix(), id_cb);
    rep.alice_residuals.push_back(frobenius_norm(lhs - rhs));
  }
  for (std::size_t c = 0; c < s.bob.size(); ++c) {
    const ComplexMatrix lhs = kron(id_a, s.bob[c].matrix()) * rep.t;
    const ComplexMatrix rhs = rep.t * kron(id_ca, canon.bob[c].matrix());
    rep.bob_residuals.push_back(frobenius_norm(lhs - rhs));
  }
  rep.bias = bias(g, s);
  rep.epsilon = std::max(0.0, 1.0 - rep.bias * std::sqrt(2.0));
  const double scale = static_cast<double>(n) * n * std::sqrt(rep.epsilon) * rep.frob_norm;
  rep.alice_bound = kAliceBoundConstant * scale;
  rep.bob_bound = kBobBoundConstant * scale;
  rep.bounds_hold = rep.max_alice_residual() <= rep.alice_bound + kBoundMargin &&
                    rep.max_bob_residual() <= rep.bob_bound + kBoundMargin;
  return rep;
}

double anticommutation_residual(const Strategy& s, int n) {
  check_chshn_strategy(s, n);
  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ComplexMatrix& a = s.alice[i].matrix();
      const ComplexMatrix& b = s.alice[j].matrix();
      const double f = frobenius_norm((a * b + b * a) * Complex(0.5) * psi);
      total += f * f;
    }
  return total;
}

AbSwitch ab_switch_check(const Strategy& s, int n, int k) {
  check_chshn_strategy(s, n);
  if (k < 1 || k > n) throw Error(ErrorKind::kIndexOutOfRange, "k must lie in [1, n]");
  const ChshnIndex index(n);
  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  const ComplexMatrix left = s.alice[k - 1].matrix() * psi;
  AbSwitch best{0, INFINITY};
  for (int l = 1; l <= n; ++l) {
    if (l == k) continue;
    const ComplexMatrix& bkl = s.bob[index.column(k, l)].matrix();
    const ComplexMatrix& blk = s.bob[index.column(l, k)].matrix();
    const ComplexMatrix sum = l > k ? bkl + blk : blk - bkl;
    const ComplexMatrix op = sign_normalize(hermitian_part(sum));
    const double dev = frobenius_norm(left - psi * transpose(op));
    if (dev < best.deviation) best = {l, dev};
  }
  return best;
}

NormalizationCheck normalization_lemma_check(const Observable& r, const Observable& s) {
  if (r.dim() != s.dim()) throw Error(ErrorKind::kDimensionMismatch, "observables have different dimensions");
  const std::size_t d = r.dim();
  const ComplexMatrix& rm = r.matrix();
  const ComplexMatrix& sm = s.matrix();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix x = hermitian_part(rm + sm);
  const ComplexMatrix diff = x * Complex(1.0 / std::sqrt(2.0)) - sign_normalize(x);
  NormalizationCheck out;
  out.lhs_sq = hermitian_part(diff * diff);

  const ComplexMatrix q = hermitian_part((rm * sm + sm * rm) * Complex(0.5));
  // I + Q = (R+S)^2 / 2, so its square root is |R+S| / sqrt2.
  const ComplexMatrix root = hermitian_function(x, [](double v) { return std::abs(v) / std::sqrt(2.0); });
  const ComplexMatrix denom = hermitian_part(id * Complex(2.0) + q + root * Complex(2.0));
  const ComplexMatrix inv = hermitian_function(denom, [](double v) { return 1.0 / v; });
  out.rhs_sq = hermitian_part(q * inv * q);
  out.identity_defect = max_abs_diff(out.lhs_sq, out.rhs_sq);
  out.psd_gap_mineig = min_eigenvalue(hermitian_part(q * q - out.lhs_sq));
  return out;
}

StructureReport verify_optimal_form(const Strategy& s, int n, double tol) {
  check_chshn_strategy(s, n);
  if (!(tol >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "tol must be non-negative");
  const ChshnIndex index(n);
  StructureReport rep;
  const SchmidtDecomposition sd = schmidt(s.state, s.d_a, s.d_b);
  rep.schmidt_rank = sd.rank();
  rep.schmidt_coefficients = sd.coefficients;
  rep.block_size = std::size_t{1} << (n / 2);
  rep.rank_divisible = rep.schmidt_rank > 0 && rep.schmidt_rank % rep.block_size == 0;
  for (std::size_t start = 0; start < sd.rank(); start += rep.block_size) {
    const std::size_t stop = std::min(sd.rank(), start + rep.block_size);
    rep.block_deviation = std::max(rep.block_deviation, sd.coefficients[start] - sd.coefficients[stop - 1]);
  }
  rep.blocks_equal = rep.rank_divisible && rep.block_deviation <= tol;

  ComplexMatrix pa(s.d_a, s.d_a), pb(s.d_b, s.d_b);
  for (std::size_t i = 0; i < sd.rank(); ++i) {
    for (std::size_t a = 0; a < s.d_a; ++a)
      for (std::size_t b = 0; b < s.d_a; ++b) pa(a, b) += sd.left_basis[i][a] * std::conj(sd.left_basis[i][b]);
    for (std::size_t a = 0; a < s.d_b; ++a)
      for (std::size_t b = 0; b < s.d_b; ++b) pb(a, b) += sd.right_basis[i][a] * std::conj(sd.right_basis[i][b]);
  }
  const ComplexMatrix qa = ComplexMatrix::identity(s.d_a) - pa;
  const ComplexMatrix qb = ComplexMatrix::identity(s.d_b) - pb;
  for (const auto& a : s.alice)
    rep.support_invariant_a = std::max(rep.support_invariant_a, frobenius_norm(qa * a.matrix() * pa));
  for (const auto& b : s.bob)
    rep.support_invariant_b = std::max(rep.support_invariant_b, frobenius_norm(qb * b.matrix() * pb));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const ComplexMatrix& a = s.alice[i].matrix();
      const ComplexMatrix& b = s.alice[j].matrix();
      rep.anticommute_on_support = std::max(rep.anticommute_on_support, frobenius_norm(pa * (a * b + b * a) * pa));
    }

  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  for (std::size_t c = 0; c < index.size(); ++c) {
    const auto [j, k] = index.pair(c);
    const ComplexMatrix lhs = expected_bob_action(s.alice, j, k) * psi;
    const ComplexMatrix rhs = psi * transpose(s.bob[c].matrix());
    rep.b_block_relation = std::max(rep.b_block_relation, frobenius_norm(lhs - rhs));
  }

  rep.verdict = rep.blocks_equal && rep.support_invariant_a <= tol && rep.support_invariant_b <= tol &&
                rep.anticommute_on_support <= tol && rep.b_block_relation <= tol;
  return rep;
}

}  // namespace xorgame
