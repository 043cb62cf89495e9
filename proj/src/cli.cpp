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

#include "xorgame/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include "xorgame/chshn.hpp"
#include "xorgame/io.hpp"
#include "xorgame/relations.hpp"
#include "xorgame/sdp.hpp"
#include "xorgame/strategy.hpp"
#include "xorgame/sweep.hpp"

namespace xorgame::cli {
namespace {

using io::Json;

// Collects what one subcommand read and produced.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  std::string read(const std::string& path) {
    std::string text = io::read_file(path);
    inputs_[path] = "fnv1a64:" + io::hex_digest(text);
    return text;
  }
  Json read_json(const std::string& path) { return io::parse(read(path), path); }

  Json& outputs() { return outputs_; }

  // Writes `artifact` to `path` at full precision, or embeds it when no path is given.
  void emit(const std::optional<std::string>& path, const char* key, const Json& artifact) {
    if (path) {
      io::write_text_file(*path, io::dump(artifact));
      files_[key] = *path;
    } else {
      artifacts_[key] = artifact;
    }
  }
  void write_file(const std::string& path, const char* key, const std::string& text) {
    io::write_text_file(path, text);
    files_[key] = path;
  }

  Json finish(double wall_time) const {
    Json out = {{"command", command_}, {"inputs", inputs_}, {"outputs", rounded(outputs_)}};
    if (!files_.empty()) out["files"] = files_;
    if (!artifacts_.empty()) out["artifacts"] = artifacts_;
    out["wall_time"] = wall_time;
    return out;
  }

 private:
  static Json rounded(const Json& j) {
    if (j.is_number_float()) return round12(j.get<double>());
    if (j.is_array() || j.is_object()) {
      Json copy = j;
      for (auto& v : copy) v = rounded(v);
      return copy;
    }
    return j;
  }

  std::string command_;
  Json inputs_ = Json::object();
  Json outputs_ = Json::object();
  Json files_ = Json::object();
  Json artifacts_ = Json::object();
};

Strategy load_strategy(Report& rep, const std::string& path) {
  Strategy s = io::strategy_from_json(rep.read_json(path));
  s.validate_observables();
  return s;
}

XorGame load_game(Report& rep, const std::string& path) { return io::game_from_json(rep.read_json(path)); }

void add_game_summary(Json& out, const XorGame& g) {
  out["n_alice"] = g.n_alice();
  out["n_bob"] = g.n_bob();
  double abs_sum = 0.0;
  std::size_t nonzeros = 0;
  for (double x : g.matrix().entries()) {
    abs_sum += std::abs(x);
    nonzeros += x != 0.0;
  }
  out["abs_sum"] = abs_sum;
  out["nonzeros"] = nonzeros;
  if (g.n_alice() + g.n_bob() <= kClassicalEnumerationLimit) out["classical_bias"] = classical_bias(g);
}

bool verification_kind(ErrorKind k) { return k == ErrorKind::kDualInfeasible || k == ErrorKind::kMaxIterations; }

// Options shared across subcommands, filled by CLI11.
struct Options {
  int n = 2;
  int m = 0;
  int form = 1;
  double tol = kDefaultSdpTolerance;
  double structure_tol = 1e-8;
  double cutoff = kDefaultSchmidtCutoff;
  double theta = 0.0;
  double scale_state = 1.0;
  double beta = 0.0;
  std::uint64_t seed = 1;
  std::size_t rounds = 100000;
  bool include_bob = false;
  bool serial = false;
  std::optional<std::string> out;
  std::optional<std::string> dump_z;
  std::optional<std::string> dump_y;
  std::string file_a, file_b, file_c;
  std::vector<int> ns{2, 3, 4};
  std::vector<double> thetas{0.0, 0.01, 0.03, 0.05, 0.1};
  std::vector<std::uint64_t> seeds{1, 2, 3};
};

using Handler = std::function<int(Report&, const Options&, std::ostream&)>;

int game_chsh(Report& rep, const Options& o, std::ostream&) {
  const ChshGame g = chsh_game(o.n);
  rep.outputs()["n"] = o.n;
  add_game_summary(rep.outputs(), g.game);
  rep.emit(o.out, "game", io::game_to_json(g.game));
  return kExitOk;
}

int game_check(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  add_game_summary(rep.outputs(), g);
  rep.outputs()["valid"] = true;
  return kExitOk;
}

int solve_cmd(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  const SdpSolution sol = solve(symmetrize(g), o.tol);
  Json& out = rep.outputs();
  out["primal_value"] = sol.primal_value;
  out["dual_value"] = sol.dual_value;
  out["gap"] = sol.gap;
  out["iterations"] = sol.iterations;
  out["converged"] = sol.converged;
  out["tol"] = o.tol;
  if (g.n_alice() + g.n_bob() <= kClassicalEnumerationLimit) out["classical_bias"] = classical_bias(g);
  if (o.out) rep.emit(o.out, "solution", io::solution_to_json(sol));
  if (o.dump_z) rep.emit(o.dump_z, "z", io::to_json(sol.z));
  if (o.dump_y) rep.emit(o.dump_y, "y", Json(sol.y));
  return sol.converged ? kExitOk : kExitVerificationFailed;
}

void add_defects(Json& out, const XorGame& g, const RelationSystem& rel) {
  const RelationDefects d = relation_defects(g, rel);
  out["r"] = rel.r();
  out["defects"] = {{"alice", d.alice}, {"bob", d.bob}, {"cross", d.cross}};
  out["sum_y"] = std::accumulate(rel.y.begin(), rel.y.end(), 0.0);
}

int relations_extract(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  const std::vector<double> y = io::y_from_json(rep.read_json(o.file_b));
  const DualFeasibility f = verify_dual_feasible(y, symmetrize(g));
  rep.outputs()["dual_min_eig"] = f.min_eig;
  const RelationSystem rel = extract_relations(g, y, o.cutoff);
  add_defects(rep.outputs(), g, rel);
  rep.emit(o.out, "relations", io::relations_to_json(rel));
  return kExitOk;
}

int relations_chshn(Report& rep, const Options& o, std::ostream&) {
  if (o.form != 1 && o.form != 2) throw Error(ErrorKind::kInvalidArgument, "--form must be 1 or 2");
  const RelationSystem rel = o.form == 1 ? chshn_relations_form1(o.n) : chshn_relations_form2(o.n);
  rep.outputs()["n"] = o.n;
  rep.outputs()["form"] = o.form;
  add_defects(rep.outputs(), chsh_game(o.n).game, rel);
  rep.emit(o.out, "relations", io::relations_to_json(rel));
  return kExitOk;
}

int relations_residual(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  const Strategy s = load_strategy(rep, o.file_b);
  const RelationSystem rel = io::relations_from_json(rep.read_json(o.file_c));
  const IdentityCheck id = check_identity(g, s, rel);
  const double sum_y = std::accumulate(rel.y.begin(), rel.y.end(), 0.0);
  const double beta = o.beta > 0.0 ? o.beta : sum_y;
  Json& out = rep.outputs();
  out["residual"] = id.lhs;
  out["sum_y_minus_bias"] = id.rhs;
  out["identity_ok"] = id.ok;
  out["beta"] = beta;
  out["epsilon"] = certify_epsilon(g, s, rel, beta);
  return id.ok ? kExitOk : kExitVerificationFailed;
}

int strategy_canonical(Report& rep, const Options& o, std::ostream&) {
  const Strategy s = canonical_chshn(o.n);
  rep.outputs()["n"] = o.n;
  rep.outputs()["d_A"] = s.d_a;
  rep.outputs()["d_B"] = s.d_b;
  rep.outputs()["bias"] = bias(chsh_game(o.n).game, s);
  rep.emit(o.out, "strategy", io::strategy_to_json(s));
  return kExitOk;
}

int strategy_tsirelson(Report& rep, const Options& o, std::ostream&) {
  if (o.n < 1 || o.m < 1) throw Error(ErrorKind::kInvalidArgument, "--n and --m must be positive");
  const RealMatrix z = io::z_from_json(rep.read_json(o.file_a));
  const auto n = static_cast<std::size_t>(o.n), m = static_cast<std::size_t>(o.m);
  const Strategy s = tsirelson_strategy(z, n, m);
  const ComplexMatrix c = correlations(s);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, std::abs(c(i, j) - z(i, n + j)));
  rep.outputs()["d_A"] = s.d_a;
  rep.outputs()["d_B"] = s.d_b;
  rep.outputs()["max_correlation_error"] = worst;
  rep.emit(o.out, "strategy", io::strategy_to_json(s));
  return kExitOk;
}

int strategy_bias(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  const Strategy s = load_strategy(rep, o.file_b);
  rep.outputs()["bias"] = bias(g, s);
  rep.outputs()["state_norm"] = s.state.norm();
  return kExitOk;
}

int strategy_simulate(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  const Strategy s = load_strategy(rep, o.file_b);
  const SimulationResult r = simulate(g, s, o.rounds, o.seed);
  rep.outputs()["rounds"] = r.rounds;
  rep.outputs()["seed"] = o.seed;
  rep.outputs()["empirical_bias"] = r.empirical_bias;
  rep.outputs()["stderr"] = r.standard_error;
  rep.outputs()["exact_bias"] = bias(g, s);
  return kExitOk;
}

int strategy_perturb(Report& rep, const Options& o, std::ostream&) {
  Strategy s = perturb(load_strategy(rep, o.file_a), o.theta, o.seed, o.include_bob);
  if (o.scale_state != 1.0) s.state *= o.scale_state;
  rep.outputs()["theta"] = o.theta;
  rep.outputs()["seed"] = o.seed;
  rep.outputs()["state_norm"] = s.state.norm();
  rep.emit(o.out, "strategy", io::strategy_to_json(s));
  return kExitOk;
}

int structure_verify(Report& rep, const Options& o, std::ostream&) {
  const Strategy s = load_strategy(rep, o.file_a);
  const StructureReport r = verify_optimal_form(s, o.n, o.structure_tol);
  rep.outputs() = io::report_to_json(r);
  rep.outputs()["n"] = o.n;
  rep.outputs()["tol"] = o.structure_tol;
  return r.verdict ? kExitOk : kExitVerificationFailed;
}

int intertwiner_cmd(Report& rep, const Options& o, std::ostream&) {
  const XorGame g = load_game(rep, o.file_a);
  const Strategy s = load_strategy(rep, o.file_b);
  const IntertwinerReport r = intertwiner_report(g, s, o.n);
  Json& out = rep.outputs();
  out["n"] = o.n;
  out["t_shape"] = {r.t.rows(), r.t.cols()};
  out["frob_norm"] = r.frob_norm;
  out["t_rank"] = r.t_rank;
  out["bias"] = r.bias;
  out["epsilon"] = r.epsilon;
  out["alice_residuals"] = r.alice_residuals;
  out["bob_residuals"] = r.bob_residuals;
  out["alice_bound"] = r.alice_bound;
  out["bob_bound"] = r.bob_bound;
  out["bounds_hold"] = r.bounds_hold;
  if (o.out) rep.emit(o.out, "report", io::report_to_json(r));
  return r.bounds_hold ? kExitOk : kExitVerificationFailed;
}

int sweep_cmd(Report& rep, const Options& o, std::ostream& out) {
  const SweepGrid grid{o.ns, o.thetas, o.seeds};
  const int threads = sweep_threads();
  const std::vector<SweepRow> rows = o.serial ? run_sweep_serial(grid) : run_sweep_parallel(grid, threads);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  const bool all_hold = std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.bounds_hold; });
  if (!o.out) {
    out << csv.str();
    return all_hold ? kExitOk : kExitVerificationFailed;
  }
  rep.write_file(*o.out, "csv", csv.str());
  rep.outputs()["cells"] = rows.size();
  rep.outputs()["threads"] = o.serial ? 1 : threads;
  rep.outputs()["all_bounds_hold"] = all_hold;
  return all_hold ? kExitOk : kExitVerificationFailed;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum XOR game biases, optimality relations and CHSH(n) strategy verification", "xorgame"};
  app.require_subcommand(1);
  Options o;
  Handler handler;
  std::string command;

  const auto bind = [&](CLI::App* sub, std::string name, Handler h) {
    sub->callback([&, name = std::move(name), h = std::move(h)] {
      command = name;
      handler = h;
    });
  };
  const auto out_flag = [&](CLI::App* sub) { sub->add_option("--out", o.out, "Write the result to this file"); };

  CLI::App* game = app.add_subcommand("game", "Build or check XOR game files");
  game->require_subcommand(1);
  CLI::App* game_chsh_cmd = game->add_subcommand("chsh", "Write the CHSH(n) game");
  game_chsh_cmd->add_option("--n", o.n, "Number of Alice questions")->required();
  out_flag(game_chsh_cmd);
  bind(game_chsh_cmd, "game chsh", game_chsh);
  CLI::App* game_check_cmd = game->add_subcommand("check", "Validate a game file");
  game_check_cmd->add_option("game", o.file_a, "Game file")->required();
  bind(game_check_cmd, "game check", game_check);

  CLI::App* solve_sub = app.add_subcommand("solve", "Solve the bias SDP of a game");
  solve_sub->add_option("game", o.file_a, "Game file")->required();
  solve_sub->add_option("--tol", o.tol, "Duality gap tolerance");
  solve_sub->add_option("--dump-z", o.dump_z, "Write the primal matrix");
  solve_sub->add_option("--dump-y", o.dump_y, "Write the dual vector");
  out_flag(solve_sub);
  bind(solve_sub, "solve", solve_cmd);

  CLI::App* rel = app.add_subcommand("relations", "Relation systems from dual solutions");
  rel->require_subcommand(1);
  CLI::App* rel_extract = rel->add_subcommand("extract", "Relations from a dual vector");
  rel_extract->add_option("game", o.file_a, "Game file")->required();
  rel_extract->add_option("y", o.file_b, "Dual vector, relation or solution file")->required();
  rel_extract->add_option("--cutoff", o.cutoff, "Eigenvalue cutoff");
  out_flag(rel_extract);
  bind(rel_extract, "relations extract", relations_extract);
  CLI::App* rel_chshn = rel->add_subcommand("chshn", "Closed-form CHSH(n) relations");
  rel_chshn->add_option("--n", o.n, "CHSH(n) size")->required();
  rel_chshn->add_option("--form", o.form, "Decomposition, 1 or 2");
  out_flag(rel_chshn);
  bind(rel_chshn, "relations chshn", relations_chshn);
  CLI::App* rel_residual = rel->add_subcommand("residual", "Relation residual of a strategy");
  rel_residual->add_option("game", o.file_a, "Game file")->required();
  rel_residual->add_option("strategy", o.file_b, "Strategy file")->required();
  rel_residual->add_option("relations", o.file_c, "Relation file")->required();
  rel_residual->add_option("--beta", o.beta, "Quantum bias used for epsilon (default: sum of y)");
  bind(rel_residual, "relations residual", relations_residual);

  CLI::App* strat = app.add_subcommand("strategy", "Build, evaluate and perturb strategies");
  strat->require_subcommand(1);
  CLI::App* s_canon = strat->add_subcommand("canonical", "Canonical CHSH(n) strategy");
  s_canon->add_option("--n", o.n, "CHSH(n) size")->required();
  out_flag(s_canon);
  bind(s_canon, "strategy canonical", strategy_canonical);
  CLI::App* s_tsir = strat->add_subcommand("tsirelson", "Strategy from a primal matrix");
  s_tsir->add_option("--z", o.file_a, "Primal matrix or solution file")->required();
  s_tsir->add_option("--n", o.n, "Alice question count")->required();
  s_tsir->add_option("--m", o.m, "Bob question count")->required();
  out_flag(s_tsir);
  bind(s_tsir, "strategy tsirelson", strategy_tsirelson);
  CLI::App* s_bias = strat->add_subcommand("bias", "Success bias of a strategy");
  s_bias->add_option("game", o.file_a, "Game file")->required();
  s_bias->add_option("strategy", o.file_b, "Strategy file")->required();
  bind(s_bias, "strategy bias", strategy_bias);
  CLI::App* s_sim = strat->add_subcommand("simulate", "Monte-Carlo play of a game");
  s_sim->add_option("game", o.file_a, "Game file")->required();
  s_sim->add_option("strategy", o.file_b, "Strategy file")->required();
  s_sim->add_option("--rounds", o.rounds, "Rounds to play")->check(CLI::PositiveNumber);
  s_sim->add_option("--seed", o.seed, "Random seed");
  bind(s_sim, "strategy simulate", strategy_simulate);
  CLI::App* s_pert = strat->add_subcommand("perturb", "Conjugate observables by random unitaries");
  s_pert->add_option("strategy", o.file_a, "Strategy file")->required();
  s_pert->add_option("--theta", o.theta, "Rotation angle in [0, pi]")->required();
  s_pert->add_option("--seed", o.seed, "Random seed");
  s_pert->add_flag("--bob", o.include_bob, "Perturb Bob as well");
  s_pert->add_option("--scale-state", o.scale_state, "Multiply the state by this factor (builds invalid inputs)");
  out_flag(s_pert);
  bind(s_pert, "strategy perturb", strategy_perturb);

  CLI::App* structure = app.add_subcommand("structure", "Structure of optimal CHSH(n) strategies");
  structure->require_subcommand(1);
  CLI::App* st_verify = structure->add_subcommand("verify", "Check the optimal block form");
  st_verify->add_option("strategy", o.file_a, "Strategy file")->required();
  st_verify->add_option("--n", o.n, "CHSH(n) size")->required();
  st_verify->add_option("--tol", o.structure_tol, "Deviation tolerance");
  bind(st_verify, "structure verify", structure_verify);

  CLI::App* inter = app.add_subcommand("intertwiner", "Approximate intertwining operator");
  inter->require_subcommand(1);
  CLI::App* in_report = inter->add_subcommand("report", "Residuals and bounds for a strategy");
  in_report->add_option("game", o.file_a, "Game file")->required();
  in_report->add_option("strategy", o.file_b, "Strategy file")->required();
  in_report->add_option("--n", o.n, "CHSH(n) size")->required();
  out_flag(in_report);
  bind(in_report, "intertwiner report", intertwiner_cmd);

  CLI::App* sweep = app.add_subcommand("sweep", "Intertwiner bound grid over perturbed strategies");
  sweep->add_option("--n", o.ns, "Game sizes")->delimiter(',');
  sweep->add_option("--theta", o.thetas, "Perturbation angles")->delimiter(',');
  sweep->add_option("--seeds", o.seeds, "Seeds")->delimiter(',');
  sweep->add_flag("--serial", o.serial, "Run without OpenMP");
  sweep->add_option("--out", o.out, "Write the CSV here and print a report");
  bind(sweep, "sweep", sweep_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!handler) {
    err << "usage error: no command given\n";
    return kExitUsage;
  }

  Report report(command);
  const auto start = std::chrono::steady_clock::now();
  try {
    std::ostringstream direct;
    const int code = handler(report, o, direct);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!direct.str().empty()) {
      out << direct.str();
    } else {
      out << io::dump(report.finish(wall));
    }
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return verification_kind(e.kind()) ? kExitVerificationFailed : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace xorgame::cli
