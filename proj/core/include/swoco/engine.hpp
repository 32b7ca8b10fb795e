#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swoco/adversaries.hpp"
#include "swoco/geometry.hpp"
#include "swoco/losses.hpp"
#include "swoco/players.hpp"

namespace swoco {

enum class AdversaryKind { kAdaptive, kOrthogonal, kFixed, kRandom };

struct GameConfig {
  long T = 100;
  int d = 2;
  double D = 2.0;  // domain diameter; the ball has radius D/2
  double G = 1.0;  // gradient bound
  double S = 0.0;  // switching budget
  double lambda = 0.0;  // curvature: selects quadratic losses when > 0
  PlayerKind player = PlayerKind::kOgd;
  AdversaryKind adversary = AdversaryKind::kAdaptive;
  std::uint64_t seed = 0;
  // Replay losses for kFixed; empty means a constant slope G*e1.
  std::vector<Loss> fixed_losses;

  BallDomain domain() const;
  void validate() const;  // throws std::invalid_argument
};

struct RoundRecord {
  long t = 0;
  Vec action;
  Loss loss;
  double value = 0.0;        // loss at the committed action
  double switch_step = 0.0;  // |w_t - w_{t-1}|, 0 at t = 1
};

struct Transcript {
  GameConfig config;
  std::vector<RoundRecord> rounds;
  double total_switch = 0.0;
  // Populated for the picking adversaries (kAdaptive, kOrthogonal):
  bool adaptive = false;
  AdversaryThreshold threshold;
  long epoch_count = 0;            // meaningful when threshold.epoching
  std::vector<long> epoch_starts;  // rounds that opened an epoch
};

// Plays the T-round protocol: the player commits w_t, the adversary (seeing
// w_t) reveals f_t, the player receives value and gradient at w_t and
// transitions. Deterministic given the config, seed included.
Transcript run_game(const GameConfig& config);

double switching_cost(const std::vector<Vec>& actions);
// Recomputed from raw actions, not the stored aggregate.
double switching_cost(const Transcript& tr);

// Closed form for all-linear transcripts: sum of m_t.w_t plus (D/2)|sum m_t|.
// Throws when a round's loss is not linear.
double regret_linear(const Transcript& tr);

// Loss at the played actions minus loss at a fixed comparator.
double regret_general(const Transcript& tr, const Vec& comparator);

// Dispatch: closed form for all-linear, exact comparator for one-curvature
// quadratics, projected-gradient comparator otherwise.
double regret(const Transcript& tr);

struct AuditCheck {
  std::string name;
  bool passed = true;
  bool flagged = false;  // reported but not asserted (e.g. T < 3 schedules)
  double measured = 0.0;
  double bound = 0.0;
  std::string note;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  double regret_value = 0.0;
  double switch_cost = 0.0;
  bool compliant = false;

  bool all_passed() const;
  const AuditCheck* find(const std::string& name) const;
};

// Checks every guarantee that applies to this transcript: budget compliance,
// the player's regret ceiling, the adaptive adversary's regret floor, and
// the epoch bookkeeping inequalities. Report-only: nothing throws on failure.
AuditReport audit_bounds(const Transcript& tr);

// Regret ceiling of the fixed-step player by budget regime.
double convex_regret_bound(double S, double D, double G, long T);
// Regret floor forced by the adaptive adversary, by budget regime.
double adaptive_regret_floor(double S, double D, double G, long T);
// Regret ceiling of the shifted-step player on curvature-lambda losses.
double strongly_convex_regret_bound(double S, double D, double G, double lambda,
                                    long T);

// Header t,loss_kind,switch_step,loss_value,w1..wd; 17 significant digits.
void write_transcript_csv(const Transcript& tr, std::ostream& os);
std::string transcript_csv(const Transcript& tr);

}  // namespace swoco
