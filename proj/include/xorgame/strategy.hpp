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
#include <cstdint>
#include <random>
#include <vector>

#include "xorgame/game.hpp"
#include "xorgame/matrix.hpp"

namespace xorgame {

inline constexpr double kObservableHermitianTolerance = 1e-10;
inline constexpr double kObservableSquareTolerance = 1e-9;
inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kImaginaryBiasTolerance = 1e-8;

// A +-1 observable: Hermitian and squaring to the identity.
class Observable {
 public:
  Observable() = default;
  explicit Observable(ComplexMatrix matrix);

  // Skips validation. Used for inputs whose defects are the point of the test
  // and by constructions that are exact by design.
  static Observable unchecked(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

  // max(hermiticity defect, max |M^2 - I|).
  double defect() const;

 private:
  struct UncheckedTag {};
  Observable(ComplexMatrix matrix, UncheckedTag) : matrix_(std::move(matrix)) {}

  ComplexMatrix matrix_;
};

struct Strategy {
  std::size_t d_a = 0;
  std::size_t d_b = 0;
  std::vector<Observable> alice;
  std::vector<Observable> bob;
  ComplexVector state;

  // Sizes of every observable and of the state agree with d_a, d_b.
  void check_shape() const;
  // check_shape plus the +-1 observable invariants.
  void validate_observables() const;
  // validate_observables plus the unit-norm state invariant.
  void validate() const;
};

// Table of <psi| A_s (x) B_t |psi>.
ComplexMatrix correlations(const Strategy& s);

double bias(const XorGame& g, const Strategy& s);

// sigma_{k,1..2k+1}: pairwise anti-commuting Hermitian unitaries on C^{2^k}.
std::vector<Observable> sigma_observables(int k);

// (1/sqrt d) sum_i |i>|i>.
ComplexVector maximally_entangled(std::size_t d);

Strategy canonical_chshn(int n);

// Gram vectors of z realized on the anti-commuting family.
Strategy tsirelson_strategy(const RealMatrix& z, std::size_t n, std::size_t m);

struct SimulationResult {
  double empirical_bias = 0.0;
  double standard_error = 0.0;
  std::size_t rounds = 0;
};

SimulationResult simulate(const XorGame& g, const Strategy& s, std::size_t rounds, std::uint64_t seed);

Strategy embed_with_junk(const Strategy& s, std::size_t extra_a, std::size_t extra_b,
                         const std::vector<Observable>& junk_alice, const std::vector<Observable>& junk_bob);

// Conjugates each Alice observable (and Bob's too with `include_bob`) by
// exp(i theta H) for an independent random Hermitian H with ||H||_F = 1.
Strategy perturb(const Strategy& s, double theta, std::uint64_t seed, bool include_bob = false);

// ---- random sampling helpers ----

using Rng = std::mt19937_64;

ComplexMatrix random_hermitian(std::size_t d, Rng& rng);
ComplexMatrix random_unitary(std::size_t d, Rng& rng);
// U diag(+-1) U^dagger with at least one eigenvalue of each sign when d >= 2.
Observable random_observable(std::size_t d, Rng& rng);
ComplexVector random_state(std::size_t d, Rng& rng);
// exp(i theta h) for Hermitian h.
ComplexMatrix unitary_exp(const ComplexMatrix& h, double theta);

}  // namespace xorgame
