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
#include "xorgame/chshn.hpp"
#include "xorgame/relations.hpp"

namespace xorgame {
namespace {

using testing::kInvSqrt2;
using testing::pauli_x;
using testing::pauli_z;

Strategy junk_embedded(int n, Rng& rng) {
  const Strategy c = canonical_chshn(n);
  return embed_with_junk(c, 2, 3, testing::random_observables(n, 2, rng),
                         testing::random_observables(n * (n - 1), 3, rng));
}

TEST(BitString, Basics) {
  const BitString b = BitString::from_bits({1, 0, 1});
  EXPECT_EQ(b.n(), 3);
  EXPECT_EQ(b.mask(), 5u);
  EXPECT_EQ(b[1], 1);
  EXPECT_EQ(b[2], 0);
  EXPECT_EQ(b[3], 1);
  EXPECT_EQ(b.flipped(2), BitString(3, 7));
  EXPECT_EQ(b.flipped(2).flipped(2), b);
  EXPECT_THROW(b[0], Error);
  EXPECT_THROW(b[4], Error);
  EXPECT_THROW(BitString(0, 0), Error);
  EXPECT_THROW(BitString(2, 4), Error);
  EXPECT_THROW(BitString::from_bits({2}), Error);
}

TEST(ChainProduct, Examples) {
  const auto s = sigma_observables(2);
  EXPECT_EQ(chain_product(s, BitString(5, 0)), ComplexMatrix::identity(4));
  EXPECT_EQ(chain_product(s, BitString(5, 1)), s[0].matrix());
  EXPECT_LT(max_abs_diff(chain_product(s, BitString::from_bits({1, 1, 0, 0, 0})), s[0].matrix() * s[1].matrix()),
            1e-15);
  EXPECT_THROW(chain_product(s, BitString(4, 0)), Error);
  std::vector<Observable> mixed{Observable(pauli_x()), Observable(ComplexMatrix::identity(3))};
  EXPECT_THROW(chain_product(mixed, BitString(2, 3)), Error);
}

TEST(InsertionSigns, Examples) {
  EXPECT_EQ(insertion_sign_left(3, BitString(4, 0)), 1);
  EXPECT_EQ(insertion_sign_left(2, BitString::from_bits({1, 0, 0})), -1);
  EXPECT_EQ(insertion_sign_right(BitString::from_bits({0, 0, 1}), 1), -1);
  for (std::uint64_t m = 0; m < 16; ++m) EXPECT_EQ(insertion_sign_right(BitString(4, m), 4), 1);
  EXPECT_THROW(insertion_sign_left(0, BitString(3, 0)), Error);
  EXPECT_THROW(insertion_sign_right(BitString(3, 0), 4), Error);
}

TEST(InsertionSigns, BitFlipInvariance) {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
      for (int i = 1; i <= n; ++i) {
        const BitString j(n, m);
        EXPECT_EQ(insertion_sign_left(i, j), insertion_sign_left(i, j.flipped(i)));
        EXPECT_EQ(insertion_sign_right(j, i), insertion_sign_right(j.flipped(i), i));
      }
}

TEST(InsertionSigns, ExhaustiveAgainstSigmaMatricesProperty) {
  for (int k = 1; k <= 3; ++k) {
    const auto s = sigma_observables(k);
    const int n = 2 * k + 1;
    int cases = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      const BitString j(n, m);
      const ComplexMatrix p = chain_product(s, j);
      for (int i = 1; i <= n; ++i) {
        const ComplexMatrix target = chain_product(s, j.flipped(i));
        const ComplexMatrix left = s[i - 1].matrix() * p;
        const ComplexMatrix right = p * s[i - 1].matrix();
        EXPECT_LT(max_abs_diff(left, target * Complex(insertion_sign_left(i, j))), 1e-12);
        EXPECT_LT(max_abs_diff(right, target * Complex(insertion_sign_right(j, i))), 1e-12);
        ++cases;
      }
    }
    EXPECT_EQ(cases, (1 << n) * n);
  }
}

TEST(VectorFamily, NTwoBellStates) {
  const auto f = canonical_vector_family(2);
  ASSERT_EQ(f.size(), 4u);
  const double r = kInvSqrt2;
  const std::vector<ComplexVector> bell{ComplexVector({r, 0.0, 0.0, r}), ComplexVector({r, 0.0, 0.0, -r}),
                                        ComplexVector({0.0, r, r, 0.0}), ComplexVector({0.0, r, -r, 0.0})};
  for (const auto& v : f) {
    int matches = 0;
    for (const auto& b : bell) matches += std::abs(std::abs(inner(b, v)) - 1.0) < 1e-12;
    EXPECT_EQ(matches, 1);
  }
}

TEST(VectorFamily, OrthonormalProperty) {
  for (int n = 2; n <= 5; ++n) {
    const auto f = canonical_vector_family(n);
    ASSERT_EQ(f.size(), std::size_t{1} << n);
    const std::size_t d = std::size_t{1} << ((n + 1) / 2);
    for (std::size_t a = 0; a < f.size(); ++a) {
      EXPECT_EQ(f[a].dim(), d * d);
      for (std::size_t b = 0; b < f.size(); ++b)
        EXPECT_LT(std::abs(inner(f[a], f[b]) - (a == b ? 1.0 : 0.0)), 1e-10);
    }
  }
  EXPECT_THROW(canonical_vector_family(1), Error);
}

TEST(Intertwiner, CanonicalExact) {
  for (int n = 2; n <= 4; ++n) {
    const IntertwinerReport rep = intertwiner_report(chsh_game(n).game, canonical_chshn(n), n);
    const std::size_t d = std::size_t{1} << ((n + 1) / 2);
    EXPECT_EQ(rep.t.rows(), d * d);
    EXPECT_EQ(rep.t.cols(), d * d);
    EXPECT_NEAR(rep.frob_norm, 1.0, 1e-9);
    EXPECT_EQ(rep.t_rank, std::size_t{1} << n);
    EXPECT_EQ(rep.alice_residuals.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(rep.bob_residuals.size(), static_cast<std::size_t>(n * (n - 1)));
    EXPECT_LE(rep.max_alice_residual(), 1e-10);
    EXPECT_LE(rep.max_bob_residual(), 1e-10);
    EXPECT_LE(rep.epsilon, 1e-12);
    EXPECT_TRUE(rep.bounds_hold);
  }
}

TEST(Intertwiner, CanonicalTIsIsometryOntoImage) {
  const ComplexMatrix t = build_intertwiner(canonical_chshn(3), 3);
  const SingularValueDecomposition sv = svd(t);
  for (double x : sv.values) EXPECT_TRUE(std::abs(x) < 1e-10 || std::abs(x - sv.values[0]) < 1e-10);
}

TEST(Intertwiner, JunkEmbeddedResidualsVanish) {
  Rng rng(21);
  for (int n = 2; n <= 4; ++n) {
    const IntertwinerReport rep = intertwiner_report(chsh_game(n).game, junk_embedded(n, rng), n);
    EXPECT_NEAR(rep.frob_norm, 1.0, 1e-9);
    EXPECT_LE(rep.max_alice_residual(), 1e-9);
    EXPECT_LE(rep.max_bob_residual(), 1e-9);
  }
}

TEST(Intertwiner, PerturbedBoundsHoldProperty) {
  for (int n = 2; n <= 4; ++n)
    for (double theta : {0.02, 0.05, 0.1}) {
      const Strategy s = perturb(canonical_chshn(n), theta, 17, true);
      const IntertwinerReport rep = intertwiner_report(chsh_game(n).game, s, n);
      EXPECT_NEAR(rep.frob_norm, 1.0, 1e-9);
      EXPECT_GT(rep.epsilon, 0.0);
      EXPECT_NEAR(rep.alice_bound, 12.0 * n * n * std::sqrt(rep.epsilon) * rep.frob_norm, 1e-12);
      EXPECT_NEAR(rep.bob_bound, 17.0 * n * n * std::sqrt(rep.epsilon) * rep.frob_norm, 1e-12);
      EXPECT_TRUE(rep.bounds_hold) << n << " " << theta;
      EXPECT_LE(rep.t_rank, std::size_t{1} << n);
      EXPECT_GT(rep.t_rank, 0u);
    }
}

TEST(Intertwiner, UnitNormOnRandomStrategiesProperty) {
  Rng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    Strategy s;
    s.d_a = 1 + trial % 4;
    s.d_b = 2 + trial % 3;
    s.alice = testing::random_observables(n, s.d_a, rng);
    s.bob = testing::random_observables(n * (n - 1), s.d_b, rng);
    s.state = random_state(s.d_a * s.d_b, rng);
    EXPECT_NEAR(frobenius_norm(build_intertwiner(s, n)), 1.0, 1e-9);
  }
}

TEST(Intertwiner, WrongShape) {
  EXPECT_THROW(build_intertwiner(canonical_chshn(2), 3), Error);
}

TEST(Intertwiner, ResidualsGrowWithTheta) {
  double last = -1.0;
  for (double theta : {0.0, 0.02, 0.05, 0.1, 0.2}) {
    const Strategy s = perturb(canonical_chshn(3), theta, 4, true);
    const double r = intertwiner_report(chsh_game(3).game, s, 3).max_alice_residual();
    EXPECT_GE(r, last - 1e-12);
    last = r;
  }
}

TEST(Anticommutation, Examples) {
  EXPECT_LE(anticommutation_residual(canonical_chshn(3), 3), 1e-10);
  Strategy s = canonical_chshn(2);
  s.alice = {Observable(pauli_z()), Observable(pauli_z())};
  EXPECT_NEAR(anticommutation_residual(s, 2), 1.0, 1e-12);
}

TEST(Anticommutation, PerturbedWithinBoundProperty) {
  for (int n = 2; n <= 4; ++n)
    for (double theta : {0.01, 0.05, 0.1, 0.3}) {
      const Strategy s = perturb(canonical_chshn(n), theta, 9, true);
      const double eps = 1.0 - bias(chsh_game(n).game, s) / kInvSqrt2;
      const double c = (1.0 + std::sqrt(2.0)) * (1.0 + std::sqrt(2.0));
      EXPECT_LE(anticommutation_residual(s, n), c * n * (n - 1) * eps + 1e-12);
    }
}

TEST(AbSwitch, CanonicalAndBounds) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= n; ++k) {
      const AbSwitch a = ab_switch_check(canonical_chshn(n), n, k);
      EXPECT_NE(a.l, k);
      EXPECT_GE(a.l, 1);
      EXPECT_LE(a.l, n);
      EXPECT_LE(a.deviation, 1e-9);
    }
  EXPECT_EQ(ab_switch_check(canonical_chshn(2), 2, 1).l, 2);
  EXPECT_THROW(ab_switch_check(canonical_chshn(2), 2, 3), Error);
  for (int n = 2; n <= 4; ++n) {
    const Strategy s = perturb(canonical_chshn(n), 0.05, 6, true);
    const double eps = 1.0 - bias(chsh_game(n).game, s) / kInvSqrt2;
    for (int k = 1; k <= n; ++k)
      EXPECT_LE(ab_switch_check(s, n, k).deviation,
                (2 * std::sqrt(2.0) + 2) * std::sqrt(n) * std::sqrt(eps) + 1e-12);
  }
}

TEST(NormalizationIdentity, PauliXZ) {
  const NormalizationCheck c = normalization_lemma_check(Observable(pauli_x()), Observable(pauli_z()));
  // R + S = sqrt(2) H with H a reflection, so (R+S)/sqrt2 is already unitary.
  EXPECT_LT(max_abs_diff(c.lhs_sq, ComplexMatrix(2, 2)), 1e-14);
  EXPECT_LT(max_abs_diff(c.lhs_sq, c.rhs_sq), 1e-8);
  EXPECT_LE(c.identity_defect, 1e-8);
  EXPECT_GE(c.psd_gap_mineig, -1e-9);
}

TEST(NormalizationIdentity, EqualObservables) {
  const NormalizationCheck c = normalization_lemma_check(Observable(pauli_z()), Observable(pauli_z()));
  const double expected = (std::sqrt(2.0) - 1.0) * (std::sqrt(2.0) - 1.0);
  EXPECT_LT(max_abs_diff(c.lhs_sq, ComplexMatrix::identity(2) * Complex(expected)), 1e-14);
  EXPECT_LT(c.identity_defect, 1e-8);
  EXPECT_GE(c.psd_gap_mineig, -1e-9);
}

TEST(NormalizationIdentity, CommutingDiagonalScalarOracle) {
  // Diagonal entries r, s in {-1, 1}: lambda = r s + s r over 2 in {-1, 1} and
  // lhs = (v/sqrt2 - sign(v))^2 with v = r + s and sign(0) = +1, which is
  // what makes the right-hand side (value 1 at lambda = -1) agree.
  const ComplexMatrix r = ComplexMatrix::diagonal(std::vector<Complex>{1.0, 1.0, -1.0, -1.0});
  const ComplexMatrix s = ComplexMatrix::diagonal(std::vector<Complex>{1.0, -1.0, 1.0, -1.0});
  const NormalizationCheck c = normalization_lemma_check(Observable(r), Observable(s));
  for (int i = 0; i < 4; ++i) {
    const double v = r(i, i).real() + s(i, i).real();
    const double sign = v >= 0 ? 1.0 : -1.0;
    const double expected = (v / std::sqrt(2.0) - sign) * (v / std::sqrt(2.0) - sign);
    EXPECT_NEAR(c.lhs_sq(i, i).real(), expected, 1e-14);
    EXPECT_NEAR(c.rhs_sq(i, i).real(), expected, 1e-12);
  }
  EXPECT_GE(c.psd_gap_mineig, -1e-9);
}

TEST(NormalizationIdentity, RandomPairsProperty) {
  Rng rng(23);
  int cases = 0;
  for (std::size_t d : {2u, 4u, 8u})
    for (int trial = 0; trial < 70; ++trial) {
      const NormalizationCheck c = normalization_lemma_check(random_observable(d, rng), random_observable(d, rng));
      EXPECT_LT(max_abs_diff(c.lhs_sq, c.rhs_sq), 1e-8);
      EXPECT_GE(c.psd_gap_mineig, -1e-9);
      ++cases;
    }
  EXPECT_GE(cases, 200);
  EXPECT_THROW(normalization_lemma_check(Observable(pauli_x()), Observable(ComplexMatrix::identity(3))), Error);
}

TEST(OptimalForm, CanonicalChshThree) {
  const StructureReport r = verify_optimal_form(canonical_chshn(3), 3, 1e-8);
  EXPECT_TRUE(r.verdict);
  EXPECT_EQ(r.schmidt_rank, 4u);
  EXPECT_EQ(r.block_size, 2u);
  EXPECT_TRUE(r.rank_divisible);
  EXPECT_TRUE(r.blocks_equal);
  EXPECT_LT(r.block_deviation, 1e-10);
  EXPECT_LT(r.support_invariant_a, 1e-10);
  EXPECT_LT(r.support_invariant_b, 1e-10);
  EXPECT_LT(r.anticommute_on_support, 1e-10);
  EXPECT_LT(r.b_block_relation, 1e-10);
}

TEST(OptimalForm, CanonicalAndJunk) {
  Rng rng(24);
  for (int n = 2; n <= 4; ++n) {
    const StructureReport a = verify_optimal_form(canonical_chshn(n), n, 1e-8);
    EXPECT_TRUE(a.verdict) << n;
    EXPECT_EQ(a.block_size, std::size_t{1} << (n / 2));
    const StructureReport b = verify_optimal_form(junk_embedded(n, rng), n, 1e-8);
    EXPECT_TRUE(b.verdict) << n;
    EXPECT_EQ(b.schmidt_rank, a.schmidt_rank);
  }
}

TEST(OptimalForm, PerturbedFails) {
  for (int n = 2; n <= 4; ++n) {
    const StructureReport r = verify_optimal_form(perturb(canonical_chshn(n), 0.2, 3, true), n, 1e-8);
    EXPECT_FALSE(r.verdict) << n;
    EXPECT_GT(std::max({r.block_deviation, r.support_invariant_a, r.support_invariant_b, r.anticommute_on_support,
                        r.b_block_relation}),
              1e-8);
  }
}

TEST(OptimalForm, ZeroResidualImpliesVerdictProperty) {
  // Local unitaries and junk sectors preserve zero residual; every such
  // strategy must pass at tol 1e-6.
  Rng rng(25);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 4; ++trial) {
      Strategy s = trial % 2 == 0 ? canonical_chshn(n) : junk_embedded(n, rng);
      s = testing::locally_rotated(s, rng);
      ASSERT_LE(residual(s, chshn_relations_form1(n)), 1e-9);
      EXPECT_TRUE(verify_optimal_form(s, n, 1e-6).verdict) << n << " " << trial;
    }
}

TEST(OptimalForm, DeviationsNonNegativeAndTolValidation) {
  const StructureReport r = verify_optimal_form(perturb(canonical_chshn(2), 0.05, 1), 2, 1e-8);
  for (double x : {r.block_deviation, r.support_invariant_a, r.support_invariant_b, r.anticommute_on_support,
                   r.b_block_relation})
    EXPECT_GE(x, 0.0);
  EXPECT_THROW(verify_optimal_form(canonical_chshn(2), 2, -1.0), Error);
  EXPECT_THROW(verify_optimal_form(canonical_chshn(2), 3, 1e-8), Error);
}

}  // namespace
}  // namespace xorgame
