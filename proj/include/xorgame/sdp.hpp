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

#include <span>
#include <vector>

#include "xorgame/game.hpp"
#include "xorgame/matrix.hpp"

namespace xorgame {

inline constexpr double kDefaultSdpTolerance = 1e-8;
inline constexpr int kDefaultSdpIterations = 500;
inline constexpr double kFractionToBoundary = 0.98;
inline constexpr double kFeasibilityTolerance = 1e-9;

// Primal: max <C, Z> over Z >= 0 with unit diagonal.
// Dual:   min sum(y) over Diag(y) - C >= 0.
struct SdpSolution {
  RealMatrix z;
  std::vector<double> y;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Primal-dual path following from Z = I. A run that hits the iteration cap
// returns the last iterate with `converged` unset.
SdpSolution solve(const RealMatrix& g_sym, double tol = kDefaultSdpTolerance,
                  int max_iterations = kDefaultSdpIterations);

// Throws kMaxIterations when the solve does not converge.
double quantum_bias(const XorGame& game, double tol = kDefaultSdpTolerance);

struct DualFeasibility {
  bool feasible = false;
  double min_eig = 0.0;
};

DualFeasibility verify_dual_feasible(std::span<const double> y, const RealMatrix& g_sym);

}  // namespace xorgame
