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

#include <cstdint>
#include <ostream>
#include <vector>

namespace xorgame {

struct SweepGrid {
  std::vector<int> ns{2, 3, 4};
  std::vector<double> thetas{0.0, 0.01, 0.03, 0.05, 0.1};
  std::vector<std::uint64_t> seeds{1, 2, 3};
};

struct SweepRow {
  int n = 0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double max_alice_residual = 0.0;
  double alice_bound = 0.0;
  double max_bob_residual = 0.0;
  double bob_bound = 0.0;
  bool bounds_hold = false;
};

// One cell: perturb the canonical CHSH(n) strategy and build its intertwiner report.
SweepRow sweep_cell(int n, double theta, std::uint64_t seed);

// Rows in grid order (n outermost, then theta, then seed) for both variants.
std::vector<SweepRow> run_sweep_serial(const SweepGrid& grid);
std::vector<SweepRow> run_sweep_parallel(const SweepGrid& grid, int threads);

// XORGAME_THREADS when set to a positive integer, else the OpenMP default.
int sweep_threads();

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace xorgame
