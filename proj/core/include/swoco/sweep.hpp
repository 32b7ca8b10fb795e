#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "swoco/engine.hpp"

namespace swoco {

struct SweepSpec {
  GameConfig base;  // its S is ignored; seed is the sweep's base seed
  std::vector<double> budgets;
  int repetitions = 1;
};

struct SweepRow {
  double S = 0.0;
  BudgetRegime regime = BudgetRegime::kLarge;
  double regret = 0.0;       // worst (max) over repetitions
  double switch_cost = 0.0;  // worst (max) over repetitions
  double upper_bound = 0.0;  // fixed-step player ceiling at this S
  double lower_bound = 0.0;  // adaptive adversary floor at this S
  bool compliant = true;     // every repetition within budget
};

// n points, multiplicatively even from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int n);

// Runs the grid (points fan out across threads, repetitions run in series)
// and returns rows in ascending S. Repetition i of ascending grid point j
// plays with seed base_seed + j*1000000 + i.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Header: S,regime,regret,switch_cost,upper_bound,lower_bound,compliant
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

// Least-squares slope of log(y) against log(x); pairs with non-positive
// coordinates are rejected.
double fit_loglog_slope(const std::vector<std::pair<double, double>>& xy);

// Self-contained SVG log-log chart of regret and both bound columns.
std::string sweep_svg(const std::vector<SweepRow>& rows);

}  // namespace swoco
