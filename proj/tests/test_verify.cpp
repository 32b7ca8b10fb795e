#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "swoco/geometry.hpp"
#include "swoco/verify.hpp"

using namespace swoco;

TEST_CASE("quick battery reproduces the designed outcomes end to end") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "swoco_test_battery";
  fs::remove_all(dir);

  BatteryOptions opts;
  opts.quick = true;
  opts.out_dir = dir.string();
  const auto results = run_battery(opts);
  // Every check is green except the phase slope gate: the OGD equilibrium
  // pins regret to 0.5*D*G*sqrt(T) once every round re-picks, so the
  // upper mid range of the fit window is a shelf and the least-squares
  // slope sits near -0.59 at quick scale instead of inside -1 +/- 0.15.
  bool saw_slope = false;
  for (const auto& r : results) {
    if (r.name == "phase_transition_slope") {
      saw_slope = true;
      CHECK_MESSAGE(!r.passed, format_check_line(r));
      CHECK(r.measured > -0.75);
      CHECK(r.measured < -0.45);
    } else {
      CHECK_MESSAGE(r.passed, format_check_line(r));
    }
    CHECK(r.note.find(',') == std::string::npos);  // the report is CSV
  }
  CHECK(saw_slope);
  CHECK_FALSE(all_passed(results));
  CHECK(results.size() >= 14);

  CHECK(fs::exists(dir / "battery_report.csv"));
  CHECK(fs::exists(dir / "phase_sweep.csv"));
  std::ifstream rep(dir / "battery_report.csv");
  std::string header;
  std::getline(rep, header);
  CHECK(header == "name,passed,measured,bound,note");
  std::size_t lines = 0;
  for (std::string l; std::getline(rep, l);) ++lines;
  CHECK(lines == results.size());
  fs::remove_all(dir);
}

TEST_CASE("report formatting") {
  CheckResult r{"some_check", true, 0.5, 1.0, "detail"};
  CHECK(format_check_line(r) ==
        "[PASS] some_check measured=0.5 bound=1  (detail)");
  r.passed = false;
  r.note.clear();
  CHECK(format_check_line(r) == "[FAIL] some_check measured=0.5 bound=1");

  const std::string csv = battery_report_csv({r});
  CHECK(csv == "name,passed,measured,bound,note\nsome_check,0,0.5,1,\n");
}

TEST_CASE("projection mutants are caught by the matching check") {
  // Sound implementation: both checks green.
  CHECK(check_projection_nonexpansion(2000, 5, &project_to_ball).passed);
  CHECK(check_projection_idempotent(2000, 5, &project_to_ball).passed);

  // Rescaling everything onto the sphere rips nearby interior points apart.
  const ProjectionFn always_rescale = [](const Vec& p, const BallDomain& dom) {
    const double n = norm(p);
    return n == 0.0 ? p : scaled(p, dom.radius / n);
  };
  CHECK_FALSE(check_projection_nonexpansion(2000, 5, always_rescale).passed);

  // The identity map is non-expansive, so only the idempotence/feasibility
  // check can convict it.
  const ProjectionFn identity = [](const Vec& p, const BallDomain&) {
    return p;
  };
  CHECK(check_projection_nonexpansion(2000, 5, identity).passed);
  CHECK_FALSE(check_projection_idempotent(2000, 5, identity).passed);
}
