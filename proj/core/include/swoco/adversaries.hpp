#pragma once

#include <utility>
#include <vector>

#include "swoco/geometry.hpp"
#include "swoco/losses.hpp"

namespace swoco {

// Budget regimes split at S = D and S = D*sqrt(T).
enum class BudgetRegime { kLarge, kMid, kSmall };

const char* regime_name(BudgetRegime r);

// Epoch policy parameters for a given (S, D, T).
//   large-S: epoching disabled, a fresh direction every round;
//   mid-S:   epoch_constant = x* D^2;
//   small-S: epoch_constant = x* S^2;
//   S = 0:   epoch_constant is the +inf sentinel, switch_threshold = 0
//            (any real movement opens a new epoch; a compliant zero-budget
//            player faces one fixed direction forever).
// x* is quartic_optimal_constant().
struct AdversaryThreshold {
  BudgetRegime regime = BudgetRegime::kLarge;
  bool epoching = false;
  double epoch_constant = 0.0;    // c (+inf sentinel when unused)
  double switch_threshold = 0.0;  // c/S (+inf when epoching disabled)
};

// Unique positive root of 16x^4 + 32x^3 + 49x^2 + 15x - 1, by bisection on
// [0, 1]. The derivative is positive on x >= 0, so the root is unique.
double quartic_optimal_constant();

AdversaryThreshold adversary_threshold_c(double S, double D, long T);

// Direction of norm G with m.w >= 0 and m.M >= 0 (both up to 1e-9 relative).
// Construction: the unit vector orthogonal to w inside span{w, M}, signed so
// m.M >= 0; basis-plane fallbacks span{w,e1} then span{w,e2} when M is
// parallel to w or zero; G-scaled unit of M when w is zero (G*e1 if both
// are). Ties (both inner products zero) resolve to the sign making the first
// nonzero coordinate positive, so transcripts are reproducible.
Vec orthogonal_pick(const Vec& w, const Vec& M, double G, int d);

// Value state of the epoch-based adaptive adversary.
struct EpochState {
  long epoch_index = 1;       // tau
  long epoch_start = 1;       // round that opened the current epoch
  double within_epoch = 0.0;  // player movement accumulated inside the epoch
  Vec dir_sum;                // sum of emitted directions, m_t included
  Vec prev_dir;               // m_{t-1}
  Vec prev_action;            // w_{t-1}
  long round = 1;             // round of the last emission
};

// Round 1: emit m_1 orthogonal to w_1 (norm G), via the deterministic
// in-plane construction of orthogonal_pick with M = 0.
std::pair<Vec, EpochState> adaptive_init(const Vec& w1, double G, int d);

// Round t >= 2: observe w_t, add its movement to the within-epoch total;
// at or below switch_threshold (absolute slack 1e-12) the direction is
// reused, above it a fresh orthogonal direction opens a new epoch and the
// total resets to 0 (the triggering movement is not carried over). With
// epoching disabled every round picks fresh.
std::pair<Vec, EpochState> adaptive_step(const EpochState& state, const Vec& w_t,
                                         long t, double G,
                                         const AdversaryThreshold& thr);

// Replay adversary for player tests: emits sequence[t-1] at round t,
// ignoring the player's action.
struct FixedSequence {
  std::vector<Loss> sequence;

  // Throws when the sequence cannot cover a T-round game.
  void require_length(long T) const;
  const Loss& at(long t) const;  // 1-based
};

}  // namespace swoco
