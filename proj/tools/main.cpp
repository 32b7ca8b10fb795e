// swoco: online convex optimization games under an l2 movement budget.
//
//   run     play one game and emit its transcript CSV
//   sweep   grid of budgets -> regret/bound table (the phase-transition data)
//   verify  invariant battery; one line per check
//
// Exit codes: 0 success, 1 validation error, 2 check failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swoco/csv.hpp"
#include "swoco/engine.hpp"
#include "swoco/sweep.hpp"
#include "swoco/verify.hpp"

namespace {

struct GameFlags {
  long T = 100;
  int d = 2;
  double D = 2.0;
  double G = 1.0;
  double lambda = 0.0;
  std::string player = "ogd";
  std::string adversary = "alg1";
  std::uint64_t seed = 0;
};

const std::map<std::string, swoco::PlayerKind> kPlayers = {
    {"ogd", swoco::PlayerKind::kOgd},
    {"ogd-sc", swoco::PlayerKind::kOgdStronglyConvex},
    {"minibatch", swoco::PlayerKind::kMiniBatch},
    {"frozen", swoco::PlayerKind::kFrozen},
};

const std::map<std::string, swoco::AdversaryKind> kAdversaries = {
    {"alg1", swoco::AdversaryKind::kAdaptive},
    {"orthogonal", swoco::AdversaryKind::kOrthogonal},
    {"fixed", swoco::AdversaryKind::kFixed},
    {"random", swoco::AdversaryKind::kRandom},
};

void add_game_flags(CLI::App* sub, GameFlags& f) {
  sub->add_option("--T", f.T, "Horizon (rounds)");
  sub->add_option("--d", f.d, "Dimension");
  sub->add_option("--D", f.D, "Domain diameter (ball radius D/2)");
  sub->add_option("--G", f.G, "Gradient norm bound");
  sub->add_option("--lambda", f.lambda,
                  "Curvature; >0 selects quadratic losses for --adversary "
                  "random and enables --player ogd-sc");
  sub->add_option("--player", f.player, "Decision algorithm")
      ->check(CLI::IsMember({"ogd", "ogd-sc", "minibatch", "frozen"}));
  sub->add_option("--adversary", f.adversary,
                  "Loss policy: alg1 = adaptive epoch-based picks, orthogonal "
                  "= fresh pick every round, fixed = constant slope, random = "
                  "seeded draws")
      ->check(CLI::IsMember({"alg1", "orthogonal", "fixed", "random"}));
  sub->add_option("--seed", f.seed, "Random seed");
  // Config files are processed by the root app, so unmatched flags must
  // fall through for a trailing --config to reach it.
  sub->fallthrough();
}

swoco::GameConfig to_config(const GameFlags& f, double S) {
  swoco::GameConfig cfg;
  cfg.T = f.T;
  cfg.d = f.d;
  cfg.D = f.D;
  cfg.G = f.G;
  cfg.S = S;
  cfg.lambda = f.lambda;
  cfg.player = kPlayers.at(f.player);
  cfg.adversary = kAdversaries.at(f.adversary);
  cfg.seed = f.seed;
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path: " + path);
  out << text;
  if (!out) throw std::invalid_argument("cannot write output path: " + path);
}

int do_run(const GameFlags& flags, double S, const std::string& out_path) {
  const swoco::GameConfig cfg = to_config(flags, S);
  const swoco::Transcript tr = swoco::run_game(cfg);
  const swoco::AuditReport rep = swoco::audit_bounds(tr);

  const std::string csv = swoco::transcript_csv(tr);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_text(out_path, csv);
  }

  std::ostringstream sum;
  sum << "rounds=" << tr.rounds.size() << " regret="
      << swoco::fmt17(rep.regret_value)
      << " switch_cost=" << swoco::fmt17(rep.switch_cost)
      << " compliant=" << (rep.compliant ? 1 : 0);
  if (tr.threshold.epoching) sum << " epochs=" << tr.epoch_count;
  std::cerr << sum.str() << "\n";
  bool ok = true;
  for (const auto& c : rep.checks) {
    if (!c.flagged && !c.passed) {
      ok = false;
      std::cerr << "audit failure: " << c.name
                << " measured=" << swoco::fmt17(c.measured)
                << " bound=" << swoco::fmt17(c.bound) << "\n";
    }
  }
  return ok ? 0 : 2;
}

int do_sweep(const GameFlags& flags, const std::vector<double>& s_list,
             double s_min, double s_max, int s_count, int repeats,
             const std::string& out_path, const std::string& svg_path) {
  swoco::SweepSpec spec;
  spec.base = to_config(flags, 0.0);
  spec.repetitions = repeats;
  spec.budgets = s_list.empty() ? swoco::log_spaced(s_min, s_max, s_count)
                                : s_list;
  const std::vector<swoco::SweepRow> rows = swoco::run_sweep(spec);
  const std::string csv = swoco::sweep_csv(rows);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    write_text(out_path, csv);
  }
  if (!svg_path.empty()) write_text(svg_path, swoco::sweep_svg(rows));
  return 0;
}

int do_verify(bool quick, std::uint64_t seed, const std::string& out_dir) {
  swoco::BatteryOptions opts;
  opts.quick = quick;
  opts.seed = seed;
  opts.out_dir = out_dir;
  const std::vector<swoco::CheckResult> results = swoco::run_battery(opts);
  for (const auto& r : results) {
    std::cout << swoco::format_check_line(r) << "\n";
  }
  return swoco::all_passed(results) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Online convex optimization under an l2 switching budget: budgeted "
      "gradient players against adaptive loss-picking adversaries"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "INI config; [run] or [sweep] sections hold key = value "
                 "lines named after the long flags; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  GameFlags run_flags;
  double run_S = 0.0;
  std::string run_out;
  CLI::App* run_cmd = app.add_subcommand("run", "Play one game, emit the "
                                                "transcript CSV");
  add_game_flags(run_cmd, run_flags);
  run_cmd->add_option("--S", run_S, "Switching budget");
  run_cmd->add_option("--out", run_out, "Transcript CSV path (default stdout)");

  GameFlags sweep_flags;
  std::vector<double> sweep_list;
  double sweep_min = 2.0, sweep_max = 200.0;
  int sweep_count = 20, sweep_repeats = 1;
  std::string sweep_out, sweep_svg_path;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Budget grid -> regret/bounds CSV");
  add_game_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--S-list", sweep_list,
                        "Explicit budget grid (overrides min/max/count)");
  sweep_cmd->add_option("--S-min", sweep_min, "Smallest budget");
  sweep_cmd->add_option("--S-max", sweep_max, "Largest budget");
  sweep_cmd->add_option("--S-count", sweep_count, "Log-spaced grid size");
  sweep_cmd->add_option("--repeats", sweep_repeats,
                        "Repetitions per grid point (worst regret kept)");
  sweep_cmd->add_option("--out", sweep_out, "CSV path (default stdout)");
  sweep_cmd->add_option("--svg", sweep_svg_path,
                        "Also write a log-log chart to this path");

  bool verify_quick = false;
  std::uint64_t verify_seed = 424242;
  std::string verify_out;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the invariant battery");
  verify_cmd->add_flag("--quick", verify_quick,
                       "Smaller horizons and sample counts");
  verify_cmd->add_option("--seed", verify_seed, "Battery seed");
  verify_cmd->add_option("--out", verify_out,
                         "Directory for battery_report.csv and "
                         "phase_sweep.csv");
  verify_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*run_cmd) return do_run(run_flags, run_S, run_out);
    if (*sweep_cmd) {
      return do_sweep(sweep_flags, sweep_list, sweep_min, sweep_max,
                      sweep_count, sweep_repeats, sweep_out, sweep_svg_path);
    }
    return do_verify(verify_quick, verify_seed, verify_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
