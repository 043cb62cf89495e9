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

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "xorgame/sdp.hpp"
#include "xorgame/strategy.hpp"

namespace xorgame {
namespace {

using testing::anticommutator_norm;
using testing::kInvSqrt2;
using testing::pauli_x;
using testing::pauli_y;
using testing::pauli_z;

Strategy identity_strategy(std::size_t n, std::size_t m, std::size_t d) {
  Strategy s;
  s.d_a = s.d_b = d;
  for (std::size_t i = 0; i < n; ++i) s.alice.push_back(Observable(ComplexMatrix::identity(d)));
  for (std::size_t i = 0; i < m; ++i) s.bob.push_back(Observable(ComplexMatrix::identity(d)));
  s.state = tensor(ComplexVector::basis(d, 0), ComplexVector::basis(d, d - 1));
  return s;
}

TEST(Observable, Validation) {
  EXPECT_NO_THROW(Observable{pauli_y()});
  EXPECT_THROW(Observable(pauli_x() * Complex(2.0)), Error);
  EXPECT_THROW(Observable(ComplexMatrix(2, 2, {0.0, 1.0, 0.0, 0.0})), Error);
  EXPECT_THROW(Observable(ComplexMatrix(2, 3)), Error);
  const Observable bad = Observable::unchecked(pauli_x() * Complex(2.0));
  EXPECT_GT(bad.defect(), 1.0);
}

TEST(Strategy, ValidateCatchesDefects) {
  Strategy s = canonical_chshn(2);
  EXPECT_NO_THROW(s.validate());
  s.state *= 0.9;
  try {
    s.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotNormalized);
  }
  EXPECT_NO_THROW(s.validate_observables());
  Strategy t = canonical_chshn(2);
  t.alice[0] = Observable::unchecked(pauli_x() + pauli_z());
  EXPECT_THROW(t.validate_observables(), Error);
  Strategy u = canonical_chshn(2);
  u.d_b = 3;
  EXPECT_THROW(u.check_shape(), Error);
}

TEST(Bias, AllIdentityIsSumOfEntries) {
  EXPECT_NEAR(bias(chsh_game(2).game, identity_strategy(2, 2, 2)), 0.5, 1e-15);
}

TEST(Bias, CanonicalStrategies) {
  for (int n = 2; n <= 6; ++n) EXPECT_NEAR(bias(chsh_game(n).game, canonical_chshn(n)), kInvSqrt2, 1e-12);
}

TEST(Bias, DimensionAndRealityErrors) {
  const XorGame g = chsh_game(2).game;
  try {
    bias(g, identity_strategy(2, 3, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimensionMismatch);
  }
  // A non-Hermitian "observable" can produce an imaginary expectation.
  Strategy s = identity_strategy(2, 2, 2);
  s.state = maximally_entangled(2);
  s.alice[0] = Observable::unchecked(ComplexMatrix::identity(2) * Complex(0, 1));
  try {
    bias(g, s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNonRealBias);
  }
}

TEST(Sigma, KOne) {
  const auto s = sigma_observables(1);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].matrix(), pauli_x());
  EXPECT_EQ(s[1].matrix(), pauli_z());
  EXPECT_EQ(s[2].matrix(), pauli_y());
}

TEST(Sigma, KTwoThirdObservable) {
  const auto s = sigma_observables(2);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[2].matrix(), kron(pauli_y(), pauli_x()));
  EXPECT_EQ(s[3].matrix(), kron(pauli_y(), pauli_z()));
  EXPECT_EQ(s[4].matrix(), kron(pauli_y(), pauli_y()));
}

TEST(Sigma, PairwiseAnticommutingUnitaries) {
  for (int k = 1; k <= 4; ++k) {
    const auto s = sigma_observables(k);
    ASSERT_EQ(s.size(), static_cast<std::size_t>(2 * k + 1));
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_NO_THROW(Observable{s[i].matrix()});
      for (std::size_t j = i + 1; j < s.size(); ++j)
        EXPECT_LE(anticommutator_norm(s[i].matrix(), s[j].matrix()), 1e-12);
    }
  }
}

TEST(Sigma, ProductIsPowerOfMinusI) {
  for (int k = 1; k <= 4; ++k) {
    const auto s = sigma_observables(k);
    ComplexMatrix p = ComplexMatrix::identity(s[0].dim());
    for (const auto& o : s) p = p * o.matrix();
    const Complex phase = std::pow(Complex(0, -1), k);
    EXPECT_LT(max_abs_diff(p, ComplexMatrix::identity(p.rows()) * phase), 1e-12);
  }
}

TEST(Sigma, RejectsBadK) { EXPECT_THROW(sigma_observables(0), Error); }

TEST(Sigma, CliffordRelationProperty) {
  Rng rng(1);
  std::normal_distribution<double> normal;
  for (int k = 1; k <= 3; ++k) {
    const auto s = sigma_observables(k);
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t len = 1 + trial % s.size();
      std::vector<double> u(len), v(len);
      for (auto& x : u) x = normal(rng);
      for (auto& x : v) x = normal(rng);
      double nu = 0, nv = 0, uv = 0;
      for (std::size_t i = 0; i < len; ++i) {
        nu += u[i] * u[i];
        nv += v[i] * v[i];
        uv += u[i] * v[i];
      }
      ComplexMatrix a(s[0].dim(), s[0].dim()), b = a;
      for (std::size_t i = 0; i < len; ++i) {
        a += s[i].matrix() * Complex(u[i] / std::sqrt(nu));
        b += s[i].matrix() * Complex(v[i] / std::sqrt(nv));
      }
      const ComplexMatrix expected = ComplexMatrix::identity(a.rows()) * Complex(2 * uv / std::sqrt(nu * nv));
      EXPECT_LT(max_abs_diff(a * b + b * a, expected), 1e-10);
    }
  }
}

TEST(MaximallyEntangled, TransposeTrickProperty) {
  Rng rng(2);
  for (std::size_t d : {2u, 4u, 5u}) {
    const ComplexMatrix m = testing::random_matrix(d, d, rng);
    const ComplexVector psi = maximally_entangled(d);
    const ComplexVector lhs = xorgame::apply(kron(m, ComplexMatrix::identity(d)), psi);
    const ComplexVector rhs = xorgame::apply(kron(ComplexMatrix::identity(d), transpose(m)), psi);
    EXPECT_LT(testing::max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(Canonical, NTwo) {
  const Strategy s = canonical_chshn(2);
  EXPECT_EQ(s.d_a, 2u);
  EXPECT_EQ(s.alice[0].matrix(), pauli_x());
  EXPECT_EQ(s.alice[1].matrix(), pauli_z());
  EXPECT_LT(max_abs_diff(s.bob[0].matrix(), transpose(pauli_x() + pauli_z()) * Complex(kInvSqrt2)), 1e-15);
  EXPECT_LT(max_abs_diff(s.bob[1].matrix(), transpose(pauli_x() - pauli_z()) * Complex(kInvSqrt2)), 1e-15);
}

TEST(Canonical, NThreeBlockForm) {
  const Strategy s = canonical_chshn(3);
  EXPECT_EQ(s.d_a, 4u);
  const ComplexMatrix y = pauli_y();
  EXPECT_EQ(s.alice[2].matrix(), direct_sum(y, -y));
  EXPECT_EQ(s.alice[0].matrix(), direct_sum(pauli_x(), pauli_x()));
}

TEST(Canonical, DimensionsValidityAndBias) {
  for (int n = 2; n <= 7; ++n) {
    const Strategy s = canonical_chshn(n);
    EXPECT_EQ(s.d_a, std::size_t{1} << ((n + 1) / 2));
    EXPECT_EQ(s.d_b, s.d_a);
    EXPECT_NO_THROW(s.validate());
    EXPECT_NEAR(bias(chsh_game(n).game, s), kInvSqrt2, 1e-12);
  }
  EXPECT_THROW(canonical_chshn(1), Error);
}

TEST(Tsirelson, IdentityGivesZeroCorrelations) {
  const Strategy s = tsirelson_strategy(RealMatrix::identity(5), 2, 3);
  EXPECT_EQ(s.d_a, 8u);
  EXPECT_NO_THROW(s.validate());
  const ComplexMatrix c = correlations(s);
  for (const auto& x : c.entries()) EXPECT_LT(std::abs(x), 1e-12);
}

TEST(Tsirelson, SolvedChsh2RoundTrip) {
  const XorGame g = chsh_game(2).game;
  const SdpSolution sol = solve(symmetrize(g));
  const Strategy s = tsirelson_strategy(sol.z, 2, 2);
  EXPECT_EQ(s.d_a, 4u);
  EXPECT_NO_THROW(s.validate());
  EXPECT_NEAR(bias(g, s), sol.primal_value, 1e-7);
}

TEST(Tsirelson, RankTwoKnownCorrelations) {
  // Alice at angles 0, pi/2; Bob at pi/4, -pi/4.
  const double angles[4] = {0.0, M_PI / 2, M_PI / 4, -M_PI / 4};
  RealMatrix z(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) z(i, j) = std::cos(angles[i] - angles[j]);
  const Strategy s = tsirelson_strategy(z, 2, 2);
  EXPECT_NEAR(bias(chsh_game(2).game, s), kInvSqrt2, 1e-12);
}

TEST(Tsirelson, CorrelationFidelityProperty) {
  Rng rng(3);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 2 + trial % 2, m = 2 + trial % 3, r = 3;
    std::vector<std::vector<double>> x(n + m, std::vector<double>(r));
    for (auto& v : x) {
      double s = 0;
      for (auto& e : v) {
        e = normal(rng);
        s += e * e;
      }
      for (auto& e : v) e /= std::sqrt(s);
    }
    RealMatrix z(n + m, n + m);
    for (std::size_t i = 0; i < n + m; ++i)
      for (std::size_t j = 0; j < n + m; ++j)
        for (std::size_t l = 0; l < r; ++l) z(i, j) += x[i][l] * x[j][l];
    for (std::size_t i = 0; i < n + m; ++i) z(i, i) = 1.0;
    const Strategy s = tsirelson_strategy(z, n, m);
    EXPECT_EQ(s.d_a, std::size_t{1} << ((n + m + 1) / 2));
    const ComplexMatrix c = correlations(s);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) EXPECT_NEAR(std::abs(c(i, j) - z(i, n + j)), 0.0, 1e-8);
  }
}

TEST(Tsirelson, Errors) {
  RealMatrix z = RealMatrix::identity(4);
  z(1, 1) = 1.1;
  try {
    tsirelson_strategy(z, 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadDiagonal);
  }
  RealMatrix w(2, 2, {1.0, 2.0, 2.0, 1.0});
  try {
    tsirelson_strategy(w, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotPsd);
  }
  EXPECT_THROW(tsirelson_strategy(RealMatrix::identity(4), 2, 3), Error);
}

TEST(Simulate, CanonicalChsh2WithinFourStandardErrors) {
  const ChshGame g = chsh_game(2);
  const SimulationResult r = simulate(g.game, canonical_chshn(2), 1000000, 7);
  EXPECT_EQ(r.rounds, 1000000u);
  EXPECT_GT(r.standard_error, 0.0);
  EXPECT_LE(std::abs(r.empirical_bias - kInvSqrt2), 4 * r.standard_error);
}

TEST(Simulate, DeterministicStrategyMatchesExactBias) {
  Strategy s;
  s.d_a = s.d_b = 2;
  s.alice = {Observable(pauli_z()), Observable(ComplexMatrix::identity(2))};
  s.bob = {Observable(ComplexMatrix::identity(2)), Observable(pauli_z() * Complex(-1.0))};
  s.state = tensor(ComplexVector::basis(2, 1), ComplexVector::basis(2, 0));
  const XorGame g = chsh_game(2).game;
  const double exact = bias(g, s);
  const SimulationResult r = simulate(g, s, 200000, 3);
  EXPECT_LE(std::abs(r.empirical_bias - exact), 5 * r.standard_error + 1e-12);
}

TEST(Simulate, ReproducibleGivenSeed) {
  const XorGame g = chsh_game(3).game;
  const Strategy s = canonical_chshn(3);
  const SimulationResult a = simulate(g, s, 1, 42), b = simulate(g, s, 1, 42);
  EXPECT_EQ(a.empirical_bias, b.empirical_bias);
  EXPECT_TRUE(a.empirical_bias == 1.0 || a.empirical_bias == -1.0);
  EXPECT_EQ(simulate(g, s, 5000, 9).empirical_bias, simulate(g, s, 5000, 9).empirical_bias);
  EXPECT_THROW(simulate(g, s, 0, 1), Error);
  EXPECT_THROW(simulate(chsh_game(2).game, s, 10, 1), Error);
}

TEST(Simulate, ConvergenceOverSeedsProperty) {
  const XorGame g = chsh_game(3).game;
  const Strategy s = perturb(canonical_chshn(3), 0.3, 5);
  const double exact = bias(g, s);
  int inside = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SimulationResult r = simulate(g, s, 20000, seed);
    inside += std::abs(r.empirical_bias - exact) <= 5 * r.standard_error;
  }
  EXPECT_GE(inside, 19);
}

TEST(EmbedWithJunk, BiasUnchanged) {
  Rng rng(4);
  const ChshGame g = chsh_game(2);
  const Strategy c = canonical_chshn(2);
  const Strategy e = embed_with_junk(c, 3, 3, testing::random_observables(2, 3, rng),
                                     testing::random_observables(2, 3, rng));
  EXPECT_EQ(e.d_a, 5u);
  EXPECT_NO_THROW(e.validate());
  EXPECT_NEAR(bias(g.game, e), kInvSqrt2, 1e-12);
}

TEST(EmbedWithJunk, ZeroExtraIsIdentity) {
  const Strategy c = canonical_chshn(3);
  const Strategy e = embed_with_junk(c, 0, 0, {}, {});
  EXPECT_EQ(e.d_a, c.d_a);
  EXPECT_EQ(e.state, c.state);
  for (std::size_t i = 0; i < c.alice.size(); ++i) EXPECT_EQ(e.alice[i].matrix(), c.alice[i].matrix());
  for (std::size_t i = 0; i < c.bob.size(); ++i) EXPECT_EQ(e.bob[i].matrix(), c.bob[i].matrix());
}

TEST(EmbedWithJunk, MinusIdentityJunk) {
  const Strategy c = canonical_chshn(3);
  const std::vector<Observable> ja(3, Observable(ComplexMatrix::identity(2) * Complex(-1.0)));
  const std::vector<Observable> jb(6, Observable(ComplexMatrix::identity(1) * Complex(-1.0)));
  const Strategy e = embed_with_junk(c, 2, 1, ja, jb);
  EXPECT_NEAR(bias(chsh_game(3).game, e), bias(chsh_game(3).game, c), 1e-12);
}

TEST(EmbedWithJunk, SizeErrors) {
  Rng rng(5);
  const Strategy c = canonical_chshn(2);
  EXPECT_THROW(embed_with_junk(c, 2, 0, testing::random_observables(2, 3, rng), {}), Error);
  EXPECT_THROW(embed_with_junk(c, 2, 0, testing::random_observables(1, 2, rng), {}), Error);
}

TEST(Perturb, ZeroAngleIsIdentity) {
  const Strategy c = canonical_chshn(2);
  const Strategy p = perturb(c, 0.0, 1);
  for (std::size_t i = 0; i < c.alice.size(); ++i) EXPECT_LT(max_abs_diff(p.alice[i].matrix(), c.alice[i].matrix()), 1e-15);
}

TEST(Perturb, BiasDropsContinuously) {
  const XorGame g = chsh_game(2).game;
  const Strategy c = canonical_chshn(2);
  const double b1 = bias(g, perturb(c, 0.01, 3));
  const double b5 = bias(g, perturb(c, 0.05, 3));
  EXPECT_LT(b5, kInvSqrt2);
  EXPECT_GT(kInvSqrt2 - b5, 0.0);
  EXPECT_LT(kInvSqrt2 - b1, kInvSqrt2 - b5);
  EXPECT_LT(kInvSqrt2 - b1, 1e-3);
}

TEST(Perturb, ObservablesStayValidProperty) {
  const Strategy c = canonical_chshn(4);
  for (double theta : {0.0, 0.3, 1.0, 2.5, M_PI}) {
    const Strategy p = perturb(c, theta, 11, true);
    EXPECT_NO_THROW(p.validate()) << theta;
  }
  EXPECT_THROW(perturb(c, -0.1, 1), Error);
  EXPECT_THROW(perturb(c, 4.0, 1), Error);
}

TEST(Perturb, BobOnlyWithFlag) {
  const Strategy c = canonical_chshn(2);
  const Strategy a = perturb(c, 0.2, 4);
  const Strategy b = perturb(c, 0.2, 4, true);
  EXPECT_EQ(a.bob[0].matrix(), c.bob[0].matrix());
  EXPECT_GT(max_abs_diff(b.bob[0].matrix(), c.bob[0].matrix()), 1e-6);
  EXPECT_EQ(a.alice[0].matrix(), b.alice[0].matrix());
}

TEST(RandomHelpers, Invariants) {
  Rng rng(6);
  const ComplexMatrix u = random_unitary(5, rng);
  EXPECT_LT(max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(5)), 1e-12);
  EXPECT_NEAR(frobenius_norm(random_hermitian(4, rng)), 1.0, 1e-14);
  EXPECT_NEAR(random_state(7, rng).norm(), 1.0, 1e-14);
  EXPECT_NO_THROW(Observable{random_observable(6, rng).matrix()});
  const ComplexMatrix h = random_hermitian(3, rng);
  EXPECT_LT(max_abs_diff(unitary_exp(h, 0.7) * unitary_exp(h, -0.7), ComplexMatrix::identity(3)), 1e-12);
}

}  // namespace
}  // namespace xorgame
