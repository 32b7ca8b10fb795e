#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swoco/engine.hpp"

namespace swoco {

struct CheckResult {
  std::string name;
  bool passed = true;
  double measured = 0.0;
  double bound = 0.0;
  std::string note;  // comma-free; the report is CSV
};

struct BatteryOptions {
  bool quick = false;           // smaller horizons and sample counts
  std::uint64_t seed = 424242;  // governs every randomized sub-check
  std::string out_dir;          // when nonempty: battery_report.csv,
                                // phase_sweep.csv written here
};

// The full invariant battery: budget compliance and regret ceilings across
// random games, adaptive-adversary regret floors, epoch bookkeeping, the
// strongly convex schedule, the quartic constant, the phase-transition
// sweep, oracle cross-checks, and rerun determinism. Pure given options;
// the report carries no timing, so bytes are stable across runs.
std::vector<CheckResult> run_battery(const BatteryOptions& opts);

bool all_passed(const std::vector<CheckResult>& results);

// Header name,passed,measured,bound,note
std::string battery_report_csv(const std::vector<CheckResult>& results);

// "[PASS] name measured=... bound=... note"
std::string format_check_line(const CheckResult& r);

// Injectable projection so a broken implementation is detectably red.
using ProjectionFn = std::function<Vec(const Vec&, const BallDomain&)>;
CheckResult check_projection_nonexpansion(long pairs, std::uint64_t seed,
                                          const ProjectionFn& project);
CheckResult check_projection_idempotent(long pairs, std::uint64_t seed,
                                        const ProjectionFn& project);

}  // namespace swoco
