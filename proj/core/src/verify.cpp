#include "swoco/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "swoco/csv.hpp"
#include "swoco/rng.hpp"
#include "swoco/sweep.hpp"

namespace swoco {

namespace {

template <typename Item, typename Fn>
auto parallel_map(const std::vector<Item>& items, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
  using Out = decltype(fn(items.front()));
  std::vector<std::future<Out>> futures;
  futures.reserve(items.size());
  for (const auto& it : items) {
    futures.push_back(std::async(std::launch::async, fn, it));
  }
  std::vector<Out> out;
  out.reserve(items.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

// Audit rows owned by the adaptive adversary's analysis.
const char* const kEpochRows[] = {
    "direction_norms",      "orthogonal_constraints", "epoch_interior_bound",
    "epoch_exit_bound",     "direction_floor",        "direction_sum_growth",
    "epoch_count_cap",
};

struct EpochTally {
  long games = 0;
  long rows = 0;
  long failures = 0;
  std::string first_failure;

  void absorb(const AuditReport& rep) {
    bool counted = false;
    for (const char* name : kEpochRows) {
      if (const AuditCheck* c = rep.find(name)) {
        counted = true;
        ++rows;
        if (!c->passed) {
          ++failures;
          if (first_failure.empty()) first_failure = name;
        }
      }
    }
    if (counted) ++games;
  }

  void merge(const EpochTally& other) {
    games += other.games;
    rows += other.rows;
    failures += other.failures;
    if (first_failure.empty()) first_failure = other.first_failure;
  }
};

struct GameOutcome {
  double compliance_ratio = 0.0;  // switch / (S * (1+1e-9)), 0 when S = 0
  double upper_ratio = 0.0;       // regret / ceiling
  bool zero_budget_moved = false;
  EpochTally tally;
};

GameOutcome play_and_audit(const GameConfig& cfg) {
  const Transcript tr = run_game(cfg);
  const AuditReport rep = audit_bounds(tr);
  GameOutcome out;
  if (cfg.S > 0.0) {
    out.compliance_ratio = rep.switch_cost / (cfg.S * (1.0 + 1e-9));
  } else {
    out.zero_budget_moved = rep.switch_cost > 0.0;
  }
  const double ceiling = convex_regret_bound(cfg.S, cfg.D, cfg.G, cfg.T);
  out.upper_ratio = rep.regret_value / ceiling;
  if (tr.adaptive) out.tally.absorb(rep);
  return out;
}

// Random-config battery shared by the compliance and ceiling checks.
void battery_random_configs(const BatteryOptions& opts,
                            std::vector<CheckResult>& results,
                            EpochTally& epochs) {
  const int n_configs = opts.quick ? 12 : 50;
  Rng rng(opts.seed);
  const long horizons[] = {opts.quick ? 300L : 1000L,
                           opts.quick ? 1000L : 10000L};
  const int dims[] = {2, 3, 5};
  const double diameters[] = {1.0, 2.0};
  const double grad_bounds[] = {1.0, 2.0};
  const AdversaryKind kinds[] = {AdversaryKind::kAdaptive,
                                 AdversaryKind::kOrthogonal,
                                 AdversaryKind::kFixed, AdversaryKind::kRandom};

  std::vector<GameConfig> games;
  for (int i = 0; i < n_configs; ++i) {
    GameConfig base;
    base.T = horizons[rng.next_u64() % 2];
    base.d = dims[rng.next_u64() % 3];
    base.D = diameters[rng.next_u64() % 2];
    base.G = grad_bounds[rng.next_u64() % 2];
    base.S = std::exp(rng.uniform(std::log(0.1),
                                  std::log(base.D * static_cast<double>(base.T))));
    base.player = PlayerKind::kOgd;
    for (AdversaryKind k : kinds) {
      GameConfig cfg = base;
      cfg.adversary = k;
      cfg.seed = rng.next_u64();
      games.push_back(cfg);
    }
  }

  const auto outcomes = parallel_map(games, play_and_audit);
  double worst_comp = 0.0, worst_upper = 0.0;
  bool moved_on_zero = false;
  for (const auto& o : outcomes) {
    worst_comp = std::max(worst_comp, o.compliance_ratio);
    worst_upper = std::max(worst_upper, o.upper_ratio);
    moved_on_zero = moved_on_zero || o.zero_budget_moved;
    epochs.merge(o.tally);
  }
  results.push_back(
      {"budget_compliance", worst_comp <= 1.0 && !moved_on_zero, worst_comp,
       1.0,
       std::to_string(games.size()) + " games; worst switch/budget ratio"});
  results.push_back({"convex_regret_upper", worst_upper <= 1.0 + 1e-6,
                     worst_upper, 1.0 + 1e-6,
                     "worst regret/ceiling ratio over the same games"});
}

void battery_adaptive_floor(const BatteryOptions& opts,
                            std::vector<CheckResult>& results,
                            EpochTally& epochs) {
  const long T = opts.quick ? 1000 : 10000;
  const double D = 2.0, G = 1.0;
  std::vector<double> budgets;
  if (opts.quick) {
    budgets = {0.5, 2.0, 10.0, 64.0, 100.0};
  } else {
    budgets = {0.5, 1.0, 2.0, 5.0, 10.0, 19.0, 200.0, 350.0};
  }
  const PlayerKind players[] = {PlayerKind::kOgd, PlayerKind::kMiniBatch,
                                PlayerKind::kFrozen};
  std::vector<GameConfig> games;
  for (PlayerKind p : players) {
    for (double S : budgets) {
      GameConfig cfg;
      cfg.T = T;
      cfg.d = 2;
      cfg.D = D;
      cfg.G = G;
      cfg.S = S;
      cfg.player = p;
      cfg.adversary = AdversaryKind::kAdaptive;
      cfg.seed = opts.seed;
      games.push_back(cfg);
    }
  }
  struct FloorOutcome {
    double ratio;
    bool ok;
    EpochTally tally;
  };
  const auto outcomes = parallel_map(games, [](const GameConfig& cfg) {
    const Transcript tr = run_game(cfg);
    const AuditReport rep = audit_bounds(tr);
    const double floor = adaptive_regret_floor(cfg.S, cfg.D, cfg.G, cfg.T);
    FloorOutcome out;
    out.ratio = rep.regret_value / floor;
    out.ok = rep.regret_value >= floor * (1.0 - 1e-9) - 1e-9;
    out.tally.absorb(rep);
    return out;
  });
  double min_ratio = std::numeric_limits<double>::infinity();
  bool all_ok = true;
  for (const auto& o : outcomes) {
    min_ratio = std::min(min_ratio, o.ratio);
    all_ok = all_ok && o.ok;
    epochs.merge(o.tally);
  }
  results.push_back({"adaptive_regret_lower", all_ok, min_ratio, 1.0,
                     "min regret/floor over 3 players x " +
                         std::to_string(budgets.size()) + " budgets"});
}

void battery_strongly_convex(const BatteryOptions& opts,
                             std::vector<CheckResult>& results) {
  const long T = opts.quick ? 1000 : 10000;
  const double lambda = 1.0, G = 2.0, D = 1.0;
  const double t_real = static_cast<double>(T);
  const double free_budget = (2.0 * G / lambda) * std::log(t_real + 1.0);
  const double spot = (2.0 * G / lambda) * std::log(std::sqrt(t_real) + 1.0);
  const std::vector<double> budgets = {0.0,  1.0,         5.0,
                                       spot, free_budget, 50.0};
  struct ScOutcome {
    double budget_ratio = 0.0;
    bool budget_ok = true;
    double regret_ratio = 0.0;
    bool zero_moved = false;
    double regret = 0.0;
  };
  std::vector<GameConfig> games;
  for (std::size_t k = 0; k < budgets.size(); ++k) {
    GameConfig cfg;
    cfg.T = T;
    cfg.d = 2;
    cfg.D = D;
    cfg.G = G;
    cfg.S = budgets[k];
    cfg.lambda = lambda;
    cfg.player = PlayerKind::kOgdStronglyConvex;
    cfg.adversary = AdversaryKind::kRandom;
    cfg.seed = opts.seed + 1000 + k;
    games.push_back(cfg);
  }
  const auto outcomes = parallel_map(games, [](const GameConfig& cfg) {
    const Transcript tr = run_game(cfg);
    const AuditReport rep = audit_bounds(tr);
    ScOutcome out;
    if (cfg.S > 0.0) {
      out.budget_ratio = rep.switch_cost / (cfg.S * (1.0 + 1e-9));
    } else {
      out.zero_moved = rep.switch_cost > 0.0;
    }
    if (const AuditCheck* c = rep.find("strongly_convex_budget")) {
      out.budget_ok = c->passed || c->flagged;
    }
    const double bound =
        strongly_convex_regret_bound(cfg.S, cfg.D, cfg.G, cfg.lambda, cfg.T);
    out.regret = rep.regret_value;
    out.regret_ratio = rep.regret_value / bound;
    return out;
  });
  double worst_budget = 0.0, worst_regret = 0.0;
  bool ok = true;
  for (const auto& o : outcomes) {
    worst_budget = std::max(worst_budget, o.budget_ratio);
    worst_regret = std::max(worst_regret, o.regret_ratio);
    ok = ok && o.budget_ok && !o.zero_moved;
  }
  results.push_back({"strongly_convex_budget", ok && worst_budget <= 1.0,
                     worst_budget, 1.0,
                     "worst switch/budget ratio; schedule cap audited"});
  results.push_back({"strongly_convex_regret_upper",
                     worst_regret <= 1.0 + 1e-6, worst_regret, 1.0 + 1e-6,
                     "worst regret/ceiling over the budget grid"});
  // Sublinearity spot check: at S tuned for T^(1/2), regret stays below
  // lambda D^2 sqrt(T) + (2G^2/lambda) ln(sqrt(T)+1).
  const double spot_bound =
      lambda * D * D * std::sqrt(t_real) +
      (2.0 * G * G / lambda) * std::log(std::sqrt(t_real) + 1.0);
  const double spot_regret = outcomes[3].regret;
  results.push_back({"strongly_convex_sublinear_spot",
                     spot_regret <= spot_bound * (1.0 + 1e-6), spot_regret,
                     spot_bound, "regret at the half-power budget"});
}

double quartic_value(double x) {
  return (((16.0 * x + 32.0) * x + 49.0) * x + 15.0) * x - 1.0;
}

void battery_quartic(std::vector<CheckResult>& results) {
  const double x = quartic_optimal_constant();
  const bool bracket = quartic_value(0.05) < 0.0 && quartic_value(0.06) > 0.0;
  results.push_back({"quartic_constant",
                     x >= 0.055 && x <= 0.057 && bracket, x, 0.056,
                     "root in [0.055;0.057]; sign change across [0.05;0.06]"});
  const double residual = std::abs(quartic_value(x));
  results.push_back(
      {"quartic_residual", residual < 1e-9, residual, 1e-9, ""});
}

std::vector<SweepRow> battery_phase(const BatteryOptions& opts,
                                    std::vector<CheckResult>& results) {
  const long T = opts.quick ? 1000 : 10000;
  const double D = 2.0, G = 1.0;
  const double boundary = D * std::sqrt(static_cast<double>(T));
  SweepSpec spec;
  spec.base.T = T;
  spec.base.d = 2;
  spec.base.D = D;
  spec.base.G = G;
  spec.base.player = PlayerKind::kOgd;
  spec.base.adversary = AdversaryKind::kAdaptive;
  spec.base.seed = opts.seed + 777;
  spec.budgets = log_spaced(2.0, opts.quick ? boundary : 200.0,
                            opts.quick ? 10 : 20);
  spec.repetitions = 1;
  const std::vector<SweepRow> rows = run_sweep(spec);

  std::vector<std::pair<double, double>> mid;
  for (const auto& r : rows) {
    if (r.regime == BudgetRegime::kMid) mid.emplace_back(r.S, r.regret);
  }
  double slope = 0.0;
  bool slope_ok = false;
  if (mid.size() >= 2) {
    slope = fit_loglog_slope(mid);
    slope_ok = std::abs(slope + 1.0) <= 0.15;
  }
  // Against this adversary the OGD path from the origin satisfies
  // w_{t+1} = -eta*M_t exactly; once every round trips the threshold
  // (S above sqrt(cT)) each admissible pick is M-orthogonal and regret
  // pins to 0.5*D*G*sqrt(T). That shelf flattens the upper mid range of
  // the fit window and the slope lands near -0.7 at the default scale.
  results.push_back({"phase_transition_slope", slope_ok, slope, -1.0,
                     "log-log regret slope over " + std::to_string(mid.size()) +
                         " mid-regime points; tolerance 0.15; regret shelf at "
                         "0.5*D*G*sqrt(T) above S~sqrt(cT) flattens the fit"});

  // Above the boundary the ceiling is budget-free; regret should be flat.
  double flat_lo = std::numeric_limits<double>::infinity();
  double flat_hi = 0.0;
  for (const auto& r : rows) {
    if (r.regime == BudgetRegime::kLarge) {
      flat_lo = std::min(flat_lo, r.regret);
      flat_hi = std::max(flat_hi, r.regret);
    }
  }
  for (double S : {boundary, 2.0 * boundary, 4.0 * boundary}) {
    GameConfig cfg = spec.base;
    cfg.S = S;
    const Transcript tr = run_game(cfg);
    const double r = regret(tr);
    flat_lo = std::min(flat_lo, r);
    flat_hi = std::max(flat_hi, r);
  }
  const double spread = flat_hi / flat_lo - 1.0;
  results.push_back({"phase_flat_large", spread < 0.05, spread, 0.05,
                     "relative regret spread over budget-free points"});
  return rows;
}

void battery_oracles(const BatteryOptions& opts,
                     std::vector<CheckResult>& results) {
  // Closed-form linear regret against a dense comparator sampling.
  const int n_tr = opts.quick ? 6 : 20;
  const long n_samples = opts.quick ? 200000 : 1000000;
  Rng rng(opts.seed + 31);
  std::vector<GameConfig> games;
  for (int i = 0; i < n_tr; ++i) {
    GameConfig cfg;
    cfg.T = 200;
    cfg.d = i % 2 == 0 ? 2 : 3;
    cfg.D = 2.0;
    cfg.G = 1.0;
    cfg.S = std::exp(rng.uniform(std::log(0.5), std::log(50.0)));
    cfg.player = PlayerKind::kOgd;
    cfg.adversary = AdversaryKind::kRandom;
    cfg.seed = rng.next_u64();
    games.push_back(cfg);
  }
  const auto diffs = parallel_map(games, [n_samples](const GameConfig& cfg) {
    const Transcript tr = run_game(cfg);
    const double closed = regret_linear(tr);
    Vec slope_sum(cfg.d, 0.0);
    double played = 0.0;
    for (const auto& rec : tr.rounds) {
      axpy(slope_sum, 1.0, std::get<LinearLoss>(rec.loss).slope);
      played += rec.value;
    }
    // The linear minimum lies on the sphere, so sampling it there is exact
    // in the limit; 1e6 draws resolve the direction to ~1e-5.
    Rng sampler(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    double best = std::numeric_limits<double>::infinity();
    for (long s = 0; s < n_samples; ++s) {
      best = std::min(best, dot(slope_sum, sampler.on_sphere(cfg.d, cfg.D / 2.0)));
    }
    const double sampled = played - best;
    return std::abs(closed - sampled) / std::max(1e-12, std::abs(closed));
  });
  double worst = 0.0;
  for (double d : diffs) worst = std::max(worst, d);
  results.push_back({"regret_sampling_oracle", worst <= 1e-3, worst, 1e-3,
                     std::to_string(n_tr) + " random linear transcripts"});

  // Closed-form quadratic comparator against a brute-force plane grid.
  const int n_quad = opts.quick ? 3 : 5;
  std::vector<GameConfig> qgames;
  for (int i = 0; i < n_quad; ++i) {
    GameConfig cfg;
    cfg.T = 50;
    cfg.d = 2;
    cfg.D = 1.0;
    cfg.G = 2.0;
    cfg.lambda = 1.0;
    cfg.S = 40.0;  // schedule shift 0
    cfg.player = PlayerKind::kOgdStronglyConvex;
    cfg.adversary = AdversaryKind::kRandom;
    cfg.seed = opts.seed + 5000 + i;
    qgames.push_back(cfg);
  }
  const auto qdiffs = parallel_map(qgames, [](const GameConfig& cfg) {
    const Transcript tr = run_game(cfg);
    const double closed = regret(tr);
    const double radius = cfg.D / 2.0;
    double played = 0.0;
    for (const auto& rec : tr.rounds) played += rec.value;
    double best = std::numeric_limits<double>::infinity();
    const int n_grid = 401;
    for (int ix = 0; ix < n_grid; ++ix) {
      for (int iy = 0; iy < n_grid; ++iy) {
        Vec w = {-radius + 2.0 * radius * ix / (n_grid - 1),
                 -radius + 2.0 * radius * iy / (n_grid - 1)};
        if (norm(w) > radius * (1.0 + 1e-12)) continue;
        double total = 0.0;
        for (const auto& rec : tr.rounds) total += loss_value(rec.loss, w);
        best = std::min(best, total);
      }
    }
    const double grid_regret = played - best;
    return std::abs(closed - grid_regret) / std::max(1e-12, std::abs(closed));
  });
  double worst_quad = 0.0;
  for (double d : qdiffs) worst_quad = std::max(worst_quad, d);
  results.push_back({"quadratic_grid_oracle", worst_quad <= 1e-3, worst_quad,
                     1e-3,
                     std::to_string(n_quad) + " quadratic transcripts vs " +
                         "401x401 grid"});

  const long pairs = opts.quick ? 20000 : 100000;
  results.push_back(
      check_projection_nonexpansion(pairs, opts.seed + 97, &project_to_ball));
  results.push_back(
      check_projection_idempotent(pairs, opts.seed + 98, &project_to_ball));
}

void battery_determinism(const BatteryOptions& opts,
                         std::vector<CheckResult>& results) {
  GameConfig cfg;
  cfg.T = opts.quick ? 500 : 2000;
  cfg.d = 3;
  cfg.D = 2.0;
  cfg.G = 1.0;
  cfg.S = 10.0;
  cfg.player = PlayerKind::kOgd;
  cfg.adversary = AdversaryKind::kAdaptive;
  cfg.seed = opts.seed + 5;
  const std::string a = transcript_csv(run_game(cfg));
  const std::string b = transcript_csv(run_game(cfg));

  SweepSpec spec;
  spec.base = cfg;
  spec.base.adversary = AdversaryKind::kRandom;
  spec.base.T = opts.quick ? 200 : 500;
  spec.budgets = log_spaced(1.0, 50.0, 4);
  spec.repetitions = 2;
  const std::string c = sweep_csv(run_sweep(spec));
  const std::string d = sweep_csv(run_sweep(spec));

  const long mismatches = (a == b ? 0 : 1) + (c == d ? 0 : 1);
  results.push_back({"rerun_determinism", mismatches == 0,
                     static_cast<double>(mismatches), 0.0,
                     "transcript and sweep CSV bytes across two runs"});
}

}  // namespace

CheckResult check_projection_nonexpansion(long pairs, std::uint64_t seed,
                                          const ProjectionFn& project) {
  Rng rng(seed);
  long violations = 0;
  const int dims[] = {1, 2, 3, 8};
  for (long i = 0; i < pairs; ++i) {
    const int d = dims[i % 4];
    const double radius = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const BallDomain dom(d, radius);
    const Vec p = rng.on_sphere(d, radius * std::exp(rng.uniform(-3.0, 3.0)));
    const Vec q = rng.on_sphere(d, radius * std::exp(rng.uniform(-3.0, 3.0)));
    if (distance(project(p, dom), project(q, dom)) >
        distance(p, q) + 1e-12) {
      ++violations;
    }
  }
  return {"projection_nonexpansion", violations == 0,
          static_cast<double>(violations), 0.0,
          std::to_string(pairs) + " random pairs"};
}

CheckResult check_projection_idempotent(long pairs, std::uint64_t seed,
                                        const ProjectionFn& project) {
  Rng rng(seed);
  long violations = 0;
  const int dims[] = {1, 2, 3, 8};
  for (long i = 0; i < pairs; ++i) {
    const int d = dims[i % 4];
    const double radius = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
    const BallDomain dom(d, radius);
    const Vec p = rng.on_sphere(d, radius * std::exp(rng.uniform(-3.0, 3.0)));
    const Vec once = project(p, dom);
    if (norm(once) > radius * (1.0 + 1e-12) || project(once, dom) != once) {
      ++violations;
    }
  }
  return {"projection_idempotent", violations == 0,
          static_cast<double>(violations), 0.0,
          "norm cap and bitwise fixed point"};
}

std::vector<CheckResult> run_battery(const BatteryOptions& opts) {
  std::vector<CheckResult> results;
  EpochTally epochs;
  battery_random_configs(opts, results, epochs);
  battery_adaptive_floor(opts, results, epochs);
  results.push_back(
      {"epoch_transcript_floors", epochs.failures == 0,
       static_cast<double>(epochs.failures), 0.0,
       std::to_string(epochs.games) + " adaptive games; " +
           std::to_string(epochs.rows) + " rows" +
           (epochs.first_failure.empty() ? ""
                                         : "; first: " + epochs.first_failure)});
  battery_strongly_convex(opts, results);
  battery_quartic(results);
  const std::vector<SweepRow> sweep_rows = battery_phase(opts, results);
  battery_oracles(opts, results);
  battery_determinism(opts, results);

  if (!opts.out_dir.empty()) {
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path dir(opts.out_dir);
    {
      std::ofstream f(dir / "battery_report.csv", std::ios::binary);
      f << battery_report_csv(results);
    }
    {
      std::ofstream f(dir / "phase_sweep.csv", std::ios::binary);
      write_sweep_csv(sweep_rows, f);
    }
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return true;
}

std::string battery_report_csv(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os << "name,passed,measured,bound,note\n";
  for (const auto& r : results) {
    os << r.name << ',' << (r.passed ? 1 : 0) << ',' << fmt17(r.measured)
       << ',' << fmt17(r.bound) << ',' << r.note << "\n";
  }
  return os.str();
}

std::string format_check_line(const CheckResult& r) {
  std::string line = r.passed ? "[PASS] " : "[FAIL] ";
  line += r.name;
  line += " measured=" + fmt17(r.measured);
  line += " bound=" + fmt17(r.bound);
  if (!r.note.empty()) line += "  (" + r.note + ")";
  return line;
}

}  // namespace swoco
