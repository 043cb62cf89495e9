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

#include "xorgame/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "xorgame/linalg.hpp"

namespace xorgame {
namespace {

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, 2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

double square_defect(const ComplexMatrix& m) {
  return max_abs_diff(m * m, ComplexMatrix::identity(m.rows()));
}

bool is_pm1_observable(const ComplexMatrix& m) {
  return m.is_square() && m.rows() > 0 && hermiticity_defect(m) <= kObservableHermitianTolerance &&
         square_defect(m) <= kObservableSquareTolerance;
}

std::string describe(const char* side, std::size_t index) {
  return std::string(side) + " observable " + std::to_string(index);
}

ComplexMatrix zero_padded(const ComplexMatrix& psi, std::size_t rows, std::size_t cols) {
  ComplexMatrix out(rows, cols);
  for (std::size_t i = 0; i < psi.rows(); ++i)
    for (std::size_t j = 0; j < psi.cols(); ++j) out(i, j) = psi(i, j);
  return out;
}

}  // namespace

Observable::Observable(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!is_pm1_observable(matrix_)) {
    throw Error(ErrorKind::kInvalidObservable, "matrix is not a Hermitian operator squaring to the identity");
  }
}

Observable Observable::unchecked(ComplexMatrix matrix) { return Observable(std::move(matrix), UncheckedTag{}); }

double Observable::defect() const {
  if (!matrix_.is_square()) return INFINITY;
  return std::max(hermiticity_defect(matrix_), square_defect(matrix_));
}

void Strategy::check_shape() const {
  if (d_a == 0 || d_b == 0) throw Error(ErrorKind::kDimensionMismatch, "strategy dimensions must be positive");
  for (std::size_t i = 0; i < alice.size(); ++i)
    if (alice[i].matrix().rows() != d_a || alice[i].matrix().cols() != d_a)
      throw Error(ErrorKind::kDimensionMismatch, describe("Alice", i) + " is not d_A x d_A");
  for (std::size_t i = 0; i < bob.size(); ++i)
    if (bob[i].matrix().rows() != d_b || bob[i].matrix().cols() != d_b)
      throw Error(ErrorKind::kDimensionMismatch, describe("Bob", i) + " is not d_B x d_B");
  if (state.dim() != d_a * d_b) throw Error(ErrorKind::kDimensionMismatch, "state dimension is not d_A * d_B");
}

void Strategy::validate_observables() const {
  check_shape();
  for (std::size_t i = 0; i < alice.size(); ++i)
    if (!is_pm1_observable(alice[i].matrix()))
      throw Error(ErrorKind::kInvalidObservable, describe("Alice", i) + " is not a +-1 observable");
  for (std::size_t i = 0; i < bob.size(); ++i)
    if (!is_pm1_observable(bob[i].matrix()))
      throw Error(ErrorKind::kInvalidObservable, describe("Bob", i) + " is not a +-1 observable");
}

void Strategy::validate() const {
  validate_observables();
  if (std::abs(state.norm() - 1.0) > kStateNormTolerance) {
    throw Error(ErrorKind::kNotNormalized, "state norm is " + std::to_string(state.norm()));
  }
}

ComplexMatrix correlations(const Strategy& s) {
  s.check_shape();
  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  std::vector<ComplexMatrix> left, right;
  left.reserve(s.alice.size());
  right.reserve(s.bob.size());
  // <psi|A (x) B|psi> = Tr((A Psi)^dagger Psi B^T).
  for (const auto& a : s.alice) left.push_back(a.matrix() * psi);
  for (const auto& b : s.bob) right.push_back(psi * transpose(b.matrix()));
  return kernels::gram_table_parallel(left, right);
}

double bias(const XorGame& g, const Strategy& s) {
  if (s.alice.size() != g.n_alice() || s.bob.size() != g.n_bob()) {
    throw Error(ErrorKind::kDimensionMismatch, "strategy question counts do not match the game");
  }
  const ComplexMatrix c = correlations(s);
  Complex total = 0.0;
  for (std::size_t i = 0; i < g.n_alice(); ++i)
    for (std::size_t j = 0; j < g.n_bob(); ++j) total += g(i, j) * c(i, j);
  if (std::abs(total.imag()) > kImaginaryBiasTolerance) {
    throw Error(ErrorKind::kNonRealBias, "bias has imaginary part " + std::to_string(total.imag()));
  }
  return total.real();
}

std::vector<Observable> sigma_observables(int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidK, "sigma family needs k >= 1, got " + std::to_string(k));
  const auto kk = static_cast<std::size_t>(k);
  std::vector<Observable> out;
  out.reserve(2 * kk + 1);
  for (std::size_t l = 1; l <= kk; ++l) {
    for (const ComplexMatrix& p : {pauli_x(), pauli_z()}) {
      std::vector<ComplexMatrix> f(kk, ComplexMatrix::identity(2));
      for (std::size_t q = 0; q + 1 < l; ++q) f[q] = pauli_y();
      f[l - 1] = p;
      out.push_back(Observable::unchecked(kron_all(f)));
    }
  }
  out.push_back(Observable::unchecked(kron_all(std::vector<ComplexMatrix>(kk, pauli_y()))));
  return out;
}

ComplexVector maximally_entangled(std::size_t d) {
  ComplexVector v(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) v[i * d + i] = a;
  return v;
}

Strategy canonical_chshn(int n) {
  if (n < 2) throw Error(ErrorKind::kInvalidN, "CHSH(n) needs n >= 2, got " + std::to_string(n));
  const int k = n / 2;
  const std::vector<Observable> sigma = sigma_observables(k);
  std::vector<ComplexMatrix> a;
  if (n % 2 == 0) {
    for (int i = 0; i < n; ++i) a.push_back(sigma[i].matrix());
  } else {
    for (int i = 0; i < 2 * k; ++i) a.push_back(direct_sum(sigma[i].matrix(), sigma[i].matrix()));
    a.push_back(direct_sum(sigma[2 * k].matrix(), -sigma[2 * k].matrix()));
  }
  const std::size_t d = a.front().rows();
  const double r = 1.0 / std::sqrt(2.0);

  Strategy s;
  s.d_a = d;
  s.d_b = d;
  for (const auto& m : a) s.alice.push_back(Observable::unchecked(m));
  const ChshnIndex index(n);
  for (const auto& [j, l] : index.pairs()) {
    const ComplexMatrix& lo = a[std::min(j, l) - 1];
    const ComplexMatrix& hi = a[std::max(j, l) - 1];
    const ComplexMatrix b = j < l ? (lo + hi) * Complex(r) : (lo - hi) * Complex(r);
    s.bob.push_back(Observable::unchecked(transpose(b)));
  }
  s.state = maximally_entangled(d);
  return s;
}

Strategy tsirelson_strategy(const RealMatrix& z, std::size_t n, std::size_t m) {
  const std::size_t total = n + m;
  if (n == 0 || m == 0 || z.rows() != total || z.cols() != total) {
    throw Error(ErrorKind::kDimensionMismatch, "z must be (n+m) x (n+m)");
  }
  for (std::size_t i = 0; i < total; ++i)
    if (std::abs(z(i, i) - 1.0) > 1e-9)
      throw Error(ErrorKind::kBadDiagonal, "z diagonal entry " + std::to_string(i) + " is not 1");
  if (symmetry_defect(z) > 1e-9) throw Error(ErrorKind::kNotPsd, "z is not symmetric");
  const SymmetricEig eig = symmetric_eig(z);
  if (eig.values.front() < -1e-9) {
    throw Error(ErrorKind::kNotPsd, "z has eigenvalue " + std::to_string(eig.values.front()));
  }

  // Row i of V sqrt(Lambda) is a Gram vector for question i.
  std::vector<std::vector<double>> x(total, std::vector<double>(total));
  for (std::size_t i = 0; i < total; ++i) {
    double norm2 = 0.0;
    for (std::size_t l = 0; l < total; ++l) {
      const double lambda = eig.values[l] < 1e-10 ? 0.0 : eig.values[l];
      x[i][l] = eig.vectors(i, l) * std::sqrt(lambda);
      norm2 += x[i][l] * x[i][l];
    }
    const double norm = std::sqrt(norm2);
    for (double& v : x[i]) v /= norm;
  }

  const int k = static_cast<int>((total + 1) / 2);
  const std::vector<Observable> sigma = sigma_observables(k);
  const std::size_t d = sigma.front().dim();
  auto combine = [&](const std::vector<double>& coeffs) {
    ComplexMatrix out(d, d);
    for (std::size_t l = 0; l < total; ++l) out += sigma[l].matrix() * Complex(coeffs[l]);
    return out;
  };

  Strategy s;
  s.d_a = d;
  s.d_b = d;
  for (std::size_t i = 0; i < n; ++i) s.alice.push_back(Observable::unchecked(combine(x[i])));
  for (std::size_t j = 0; j < m; ++j) s.bob.push_back(Observable::unchecked(transpose(combine(x[n + j]))));
  s.state = maximally_entangled(d);
  return s;
}

SimulationResult simulate(const XorGame& g, const Strategy& s, std::size_t rounds, std::uint64_t seed) {
  if (rounds < 1) throw Error(ErrorKind::kInvalidArgument, "rounds must be at least 1");
  if (s.alice.size() != g.n_alice() || s.bob.size() != g.n_bob()) {
    throw Error(ErrorKind::kDimensionMismatch, "strategy question counts do not match the game");
  }
  s.check_shape();
  const ComplexMatrix psi = vec_to_matrix(s.state, s.d_a, s.d_b);
  const double norm2 = s.state.norm() * s.state.norm();

  const auto projector = [](const ComplexMatrix& obs, double sign) {
    ComplexMatrix p = obs * Complex(0.5 * sign);
    for (std::size_t i = 0; i < p.rows(); ++i) p(i, i) += 0.5;
    return p;
  };

  std::vector<double> weights;
  weights.reserve(g.n_alice() * g.n_bob());
  for (double x : g.matrix().entries()) weights.push_back(std::abs(x));
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Rng rng(seed);

  // Joint outcome table per question pair: p[a][b] with index 0 for +1.
  struct Outcomes {
    double p[2][2];
  };
  std::map<std::size_t, Outcomes> cache;
  const auto outcomes = [&](std::size_t st) -> const Outcomes& {
    auto it = cache.find(st);
    if (it != cache.end()) return it->second;
    const std::size_t si = st / g.n_bob(), ti = st % g.n_bob();
    Outcomes o{};
    for (int a = 0; a < 2; ++a) {
      const ComplexMatrix alice_side = projector(s.alice[si].matrix(), a == 0 ? 1.0 : -1.0) * psi;
      for (int b = 0; b < 2; ++b) {
        const ComplexMatrix pb = projector(s.bob[ti].matrix(), b == 0 ? 1.0 : -1.0);
        const double f = frobenius_norm(alice_side * transpose(pb));
        o.p[a][b] = f * f / norm2;
      }
    }
    return cache.emplace(st, o).first->second;
  };

  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t r = 0; r < rounds; ++r) {
    const std::size_t st = pick(rng);
    const Outcomes& o = outcomes(st);
    // Alice measures first; Bob then measures the post-measurement state.
    const double pa_plus = o.p[0][0] + o.p[0][1];
    const int a = unit(rng) < pa_plus ? 0 : 1;
    const double pa = o.p[a][0] + o.p[a][1];
    const int b = unit(rng) * pa < o.p[a][0] ? 0 : 1;
    const double v = g.matrix().entries()[st] > 0.0 ? 1.0 : -1.0;
    const double value = v * (a == b ? 1.0 : -1.0);
    sum += value;
    sum_sq += value * value;
  }
  const double nr = static_cast<double>(rounds);
  const double mean = sum / nr;
  SimulationResult out;
  out.empirical_bias = mean;
  out.rounds = rounds;
  if (rounds > 1) {
    const double var = std::max(0.0, (sum_sq - nr * mean * mean) / (nr - 1.0));
    out.standard_error = std::sqrt(var / nr);
  }
  return out;
}

Strategy embed_with_junk(const Strategy& s, std::size_t extra_a, std::size_t extra_b,
                         const std::vector<Observable>& junk_alice, const std::vector<Observable>& junk_bob) {
  s.check_shape();
  const auto check = [](const std::vector<Observable>& junk, std::size_t count, std::size_t extra,
                        const char* side) {
    if (extra == 0 && junk.empty()) return;
    if (junk.size() != count) {
      throw Error(ErrorKind::kDimensionMismatch, std::string(side) + " junk list length differs from observable count");
    }
    for (const auto& j : junk)
      if (j.dim() != extra) throw Error(ErrorKind::kDimensionMismatch, std::string(side) + " junk block has wrong size");
  };
  check(junk_alice, s.alice.size(), extra_a, "Alice");
  check(junk_bob, s.bob.size(), extra_b, "Bob");

  Strategy out;
  out.d_a = s.d_a + extra_a;
  out.d_b = s.d_b + extra_b;
  for (std::size_t i = 0; i < s.alice.size(); ++i) {
    const ComplexMatrix junk = extra_a == 0 ? ComplexMatrix(0, 0) : junk_alice[i].matrix();
    out.alice.push_back(Observable::unchecked(direct_sum(s.alice[i].matrix(), junk)));
  }
  for (std::size_t i = 0; i < s.bob.size(); ++i) {
    const ComplexMatrix junk = extra_b == 0 ? ComplexMatrix(0, 0) : junk_bob[i].matrix();
    out.bob.push_back(Observable::unchecked(direct_sum(s.bob[i].matrix(), junk)));
  }
  out.state = matrix_to_vec(zero_padded(vec_to_matrix(s.state, s.d_a, s.d_b), out.d_a, out.d_b));
  return out;
}

Strategy perturb(const Strategy& s, double theta, std::uint64_t seed, bool include_bob) {
  if (!(theta >= 0.0 && theta <= M_PI)) {
    throw Error(ErrorKind::kInvalidArgument, "theta must lie in [0, pi]");
  }
  s.check_shape();
  Rng rng(seed);
  const auto conjugate_all = [&](std::vector<Observable>& side) {
    for (auto& obs : side) {
      const ComplexMatrix u = unitary_exp(random_hermitian(obs.dim(), rng), theta);
      ComplexMatrix m = u * obs.matrix() * adjoint(u);
      m = (m + adjoint(m)) * Complex(0.5);
      obs = Observable::unchecked(std::move(m));
    }
  };
  Strategy out = s;
  conjugate_all(out.alice);
  if (include_bob) conjugate_all(out.bob);
  return out;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    h(i, i) = normal(rng);
    for (std::size_t j = i + 1; j < d; ++j) {
      h(i, j) = Complex(normal(rng), normal(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h * Complex(1.0 / frobenius_norm(h));
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexMatrix q(d, d);
  for (auto& x : q.entries()) x = Complex(normal(rng), normal(rng));
  // Modified Gram-Schmidt on the columns.
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t p = 0; p < j; ++p) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, p)) * q(i, j);
      for (std::size_t i = 0; i < d; ++i) q(i, j) -= proj * q(i, p);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < d; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < d; ++i) q(i, j) /= norm;
  }
  return q;
}

Observable random_observable(std::size_t d, Rng& rng) {
  const ComplexMatrix u = random_unitary(d, rng);
  std::vector<Complex> signs(d);
  std::bernoulli_distribution coin;
  for (auto& x : signs) x = coin(rng) ? 1.0 : -1.0;
  if (d >= 2) {
    signs[0] = 1.0;
    signs[1] = -1.0;
  }
  ComplexMatrix m = u * ComplexMatrix::diagonal(signs) * adjoint(u);
  m = (m + adjoint(m)) * Complex(0.5);
  return Observable::unchecked(std::move(m));
}

ComplexVector random_state(std::size_t d, Rng& rng) {
  std::normal_distribution<double> normal;
  ComplexVector v(d);
  for (auto& x : v.entries()) x = Complex(normal(rng), normal(rng));
  v *= 1.0 / v.norm();
  return v;
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta) {
  const HermitianEig eig = hermitian_eig(h);
  const std::size_t d = h.rows();
  ComplexMatrix scaled = eig.vectors;
  for (std::size_t j = 0; j < d; ++j) {
    const Complex phase = std::polar(1.0, theta * eig.values[j]);
    for (std::size_t i = 0; i < d; ++i) scaled(i, j) *= phase;
  }
  return scaled * adjoint(eig.vectors);
}

}  // namespace xorgame
