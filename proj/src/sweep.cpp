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

#include "xorgame/sweep.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "xorgame/chshn.hpp"
#include "xorgame/error.hpp"

namespace xorgame {
namespace {

struct Cell {
  int n;
  double theta;
  std::uint64_t seed;
};

std::vector<Cell> cells(const SweepGrid& grid) {
  std::vector<Cell> out;
  for (int n : grid.ns)
    for (double theta : grid.thetas)
      for (std::uint64_t seed : grid.seeds) out.push_back({n, theta, seed});
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

SweepRow sweep_cell(int n, double theta, std::uint64_t seed) {
  const ChshGame game = chsh_game(n);
  const Strategy s = perturb(canonical_chshn(n), theta, seed);
  const IntertwinerReport rep = intertwiner_report(game.game, s, n);
  return {n,
          theta,
          seed,
          rep.epsilon,
          rep.max_alice_residual(),
          rep.alice_bound,
          rep.max_bob_residual(),
          rep.bob_bound,
          rep.bounds_hold};
}

std::vector<SweepRow> run_sweep_serial(const SweepGrid& grid) {
  std::vector<SweepRow> rows;
  for (const Cell& c : cells(grid)) rows.push_back(sweep_cell(c.n, c.theta, c.seed));
  return rows;
}

std::vector<SweepRow> run_sweep_parallel(const SweepGrid& grid, int threads) {
  const std::vector<Cell> work = cells(grid);
  std::vector<SweepRow> rows(work.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(work.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      rows[i] = sweep_cell(work[i].n, work[i].theta, work[i].seed);
    } catch (...) {
#pragma omp critical(xorgame_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

int sweep_threads() {
  if (const char* env = std::getenv("XORGAME_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,theta,seed,epsilon,max_alice_residual,alice_bound,max_bob_residual,bob_bound\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_number(r.theta) << ',' << r.seed << ',' << format_number(r.epsilon) << ','
        << format_number(r.max_alice_residual) << ',' << format_number(r.alice_bound) << ','
        << format_number(r.max_bob_residual) << ',' << format_number(r.bob_bound) << '\n';
  }
}

}  // namespace xorgame
