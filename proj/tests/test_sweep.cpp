#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "swoco/sweep.hpp"

using namespace swoco;

namespace {

SweepSpec small_spec() {
  SweepSpec spec;
  spec.base.T = 400;
  spec.base.d = 2;
  spec.base.D = 2.0;
  spec.base.G = 1.0;
  spec.base.player = PlayerKind::kOgd;
  spec.base.adversary = AdversaryKind::kAdaptive;
  spec.base.seed = 90;
  spec.budgets = {0.5, 2.0, 8.0, 40.0, 60.0};
  spec.repetitions = 1;
  return spec;
}

}  // namespace

TEST_CASE("log spacing hits endpoints with even ratios") {
  const auto g = log_spaced(2.0, 200.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 2.0);
  CHECK(g.back() == 200.0);
  for (std::size_t i = 2; i < g.size(); ++i) {
    CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-12));
  }
  CHECK(log_spaced(3.0, 100.0, 1) == std::vector<double>{3.0});
  CHECK_THROWS_AS(log_spaced(0.0, 10.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(5.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(1.0, 10.0, 0), std::invalid_argument);
}

TEST_CASE("sweep rows are ordered, labeled, and bounded consistently") {
  const SweepSpec spec = small_spec();
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == spec.budgets.size());
  const double boundary = spec.base.D * std::sqrt(400.0);  // 40
  double prev_s = 0.0;
  double prev_upper = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    CHECK(r.S > prev_s);
    prev_s = r.S;
    // Regime labels re-derive from (S, D, T).
    CHECK(r.regime == adversary_threshold_c(r.S, spec.base.D, spec.base.T).regime);
    CHECK(r.upper_bound ==
          convex_regret_bound(r.S, spec.base.D, spec.base.G, spec.base.T));
    CHECK(r.lower_bound ==
          adaptive_regret_floor(r.S, spec.base.D, spec.base.G, spec.base.T));
    CHECK(r.compliant);
    CHECK(r.lower_bound < r.upper_bound);
    // The ceiling falls with S until the boundary and is flat past it.
    if (r.S <= boundary) CHECK(r.upper_bound <= prev_upper);
    else CHECK(r.upper_bound == convex_regret_bound(boundary, 2.0, 1.0, 400));
    prev_upper = r.upper_bound;
  }
  CHECK(rows[3].S == 40.0);  // exactly the boundary: budget-free regime
  CHECK(rows[3].regime == BudgetRegime::kLarge);
  CHECK(rows[2].regime == BudgetRegime::kMid);
  CHECK(rows[0].regime == BudgetRegime::kSmall);
}

TEST_CASE("sweeps rerun to identical bytes") {
  const SweepSpec spec = small_spec();
  CHECK(sweep_csv(run_sweep(spec)) == sweep_csv(run_sweep(spec)));
}

TEST_CASE("repetitions keep the worst regret with derived seeds") {
  SweepSpec spec = small_spec();
  spec.base.adversary = AdversaryKind::kRandom;
  spec.budgets = {4.0, 9.0};
  spec.repetitions = 3;
  const auto rows = run_sweep(spec);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      GameConfig cfg = spec.base;
      cfg.S = rows[j].S;
      cfg.seed = spec.base.seed + j * 1000000ull + static_cast<unsigned>(i);
      worst = std::max(worst, regret(run_game(cfg)));
    }
    CHECK(rows[j].regret == worst);
  }
}

TEST_CASE("sweep CSV round-trips exactly") {
  const auto rows = run_sweep(small_spec());
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("S,regime,regret,switch_cost,upper_bound,lower_bound,"
                  "compliant\n", 0) == 0);
  std::istringstream is(csv);
  const auto back = read_sweep_csv(is);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].S == rows[i].S);
    CHECK(back[i].regime == rows[i].regime);
    CHECK(back[i].regret == rows[i].regret);
    CHECK(back[i].switch_cost == rows[i].switch_cost);
    CHECK(back[i].upper_bound == rows[i].upper_bound);
    CHECK(back[i].lower_bound == rows[i].lower_bound);
    CHECK(back[i].compliant == rows[i].compliant);
  }

  std::istringstream bad("wrong,header\n1,2\n");
  CHECK_THROWS_AS(read_sweep_csv(bad), std::invalid_argument);
  std::istringstream badflag(
      "S,regime,regret,switch_cost,upper_bound,lower_bound,compliant\n"
      "1,mid,2,0.5,3,1,yes\n");
  CHECK_THROWS_AS(read_sweep_csv(badflag), std::invalid_argument);
}

TEST_CASE("log-log slope recovery") {
  std::vector<std::pair<double, double>> xy;
  for (double x : {1.0, 3.0, 10.0, 42.0}) xy.emplace_back(x, 3.0 / x);
  CHECK(fit_loglog_slope(xy) == doctest::Approx(-1.0).epsilon(1e-12));
  xy.clear();
  xy.emplace_back(1.0, 2.0);
  xy.emplace_back(-1.0, 2.0);
  CHECK_THROWS_AS(fit_loglog_slope(xy), std::invalid_argument);
}

TEST_CASE("chart is a self-contained vector file") {
  const auto rows = run_sweep(small_spec());
  const std::string svg = sweep_svg(rows);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("#c0392b") != std::string::npos);
  // No external fetches: the only URL is the SVG namespace.
  CHECK(svg.find("http") == svg.find("http://www.w3.org/2000/svg"));
}
