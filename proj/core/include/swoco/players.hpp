#pragma once

#include <cstdint>
#include <vector>

#include "swoco/geometry.hpp"

namespace swoco {

enum class PlayerKind { kOgd, kOgdStronglyConvex, kMiniBatch, kFrozen };

// Value state threaded through pure step transitions. One game's steps are
// strictly sequential; distinct games may run concurrently on copies.
struct PlayerState {
  PlayerKind kind = PlayerKind::kFrozen;
  Vec action;        // w_t, always inside the domain
  long round = 1;    // t, 1-based
  double eta = 0.0;  // fixed step size (kOgd, kMiniBatch)
  // shifted schedule eta_t = 1/(curvature * (t + shift)):
  double curvature = 0.0;
  double shift = 0.0;
  bool frozen = false;  // zero-budget sentinel: eta_t = 0 for all t
  // mini-batch bookkeeping:
  long batch_len = 1;  // B
  long in_batch = 0;   // rounds accumulated in the current batch
  Vec grad_accum;      // summed gradients at the (constant) batch action
};

// Step size for the fixed-schedule player:
//   D/(G*sqrt(T)) when the budget never binds (S >= D*sqrt(T)),
//   S/(G*T) otherwise. S = 0 gives 0 (the player never moves).
double step_size_convex(double S, double D, double G, long T);

// Shift c for the strongly convex schedule eta_t = 1/(lambda*(t+c)):
//   0 when S >= (2G/lambda)*ln(T+1), else T/(exp(lambda*S/(2G)) - 1) - 1,
//   clamped below at 0. S = 0 returns +infinity, meaning a frozen player.
double shift_parameter_c(double S, double G, double lambda, long T);

// K = floor(S/D): the number of action changes the budget affords when each
// change may cost up to the domain diameter.
long minibatch_budget_K(double S, double D);

PlayerState make_ogd_player(double S, double D, double G, long T, int d);
PlayerState make_strongly_convex_player(double S, double D, double G,
                                        double lambda, long T, int d);
PlayerState make_minibatch_player(double S, double D, double G, long T, int d);
PlayerState make_frozen_player(int d);

// w <- project(w - eta * gradient); round incremented.
PlayerState ogd_fixed_step(const PlayerState& state, const Vec& gradient,
                           const BallDomain& dom);

// w <- project(w - gradient / (curvature * (t + shift))); frozen states pass
// through unchanged except for the round counter.
PlayerState ogd_strongly_convex_step(const PlayerState& state,
                                     const Vec& gradient,
                                     const BallDomain& dom);

// Accumulates gradients at the constant batch action; at a batch boundary
// takes one projected step with the averaged gradient. At most
// floor(T/B) <= K action changes are visible in a T-round game.
PlayerState minibatch_ogd_step(const PlayerState& state, const Vec& gradient,
                               const BallDomain& dom);

// Dispatch on state.kind.
PlayerState player_step(const PlayerState& state, const Vec& gradient,
                        const BallDomain& dom);

}  // namespace swoco
