#include "swoco/players.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace swoco {

double step_size_convex(double S, double D, double G, long T) {
  if (!(D > 0.0) || !(G > 0.0) || T < 1) {
    throw std::invalid_argument("step_size_convex: D, G, T must be positive");
  }
  if (S < 0.0) throw std::invalid_argument("step_size_convex: S must be >= 0");
  const double root_t = std::sqrt(static_cast<double>(T));
  // S > D*T cannot bind either (per-round movement is at most D), so it
  // shares the unconstrained branch.
  if (S >= D * root_t) return D / (G * root_t);
  return S / (G * static_cast<double>(T));
}

double shift_parameter_c(double S, double G, double lambda, long T) {
  if (!(G > 0.0) || !(lambda > 0.0) || T < 1) {
    throw std::invalid_argument(
        "shift_parameter_c: G, lambda, T must be positive");
  }
  if (S < 0.0) throw std::invalid_argument("shift_parameter_c: S must be >= 0");
  if (S == 0.0) return std::numeric_limits<double>::infinity();
  const double budget_free = (2.0 * G / lambda) * std::log(static_cast<double>(T) + 1.0);
  if (S >= budget_free) return 0.0;
  const double denom = std::expm1(lambda * S / (2.0 * G));
  const double c = static_cast<double>(T) / denom - 1.0;
  return c > 0.0 ? c : 0.0;
}

long minibatch_budget_K(double S, double D) {
  if (!(D > 0.0)) throw std::invalid_argument("minibatch_budget_K: D must be > 0");
  if (S < 0.0) throw std::invalid_argument("minibatch_budget_K: S must be >= 0");
  return static_cast<long>(std::floor(S / D));
}

namespace {

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

PlayerState make_ogd_player(double S, double D, double G, long T, int d) {
  PlayerState st;
  st.kind = PlayerKind::kOgd;
  st.action = Vec(d, 0.0);
  st.eta = step_size_convex(S, D, G, T);
  return st;
}

PlayerState make_strongly_convex_player(double S, double D, double G,
                                        double lambda, long T, int d) {
  (void)D;
  PlayerState st;
  st.kind = PlayerKind::kOgdStronglyConvex;
  st.action = Vec(d, 0.0);
  st.curvature = lambda;
  const double c = shift_parameter_c(S, G, lambda, T);
  if (std::isinf(c)) {
    st.frozen = true;
    st.shift = 0.0;
  } else {
    st.shift = c;
  }
  return st;
}

PlayerState make_minibatch_player(double S, double D, double G, long T, int d) {
  PlayerState st;
  st.kind = PlayerKind::kMiniBatch;
  st.action = Vec(d, 0.0);
  const long K = minibatch_budget_K(S, D);
  st.batch_len = ceil_div(T, K + 1);
  st.eta = D / (G * std::sqrt(static_cast<double>(K + 1)));
  if (K == 0) st.frozen = true;  // single batch spans the whole game
  st.grad_accum = Vec(d, 0.0);
  return st;
}

PlayerState make_frozen_player(int d) {
  PlayerState st;
  st.kind = PlayerKind::kFrozen;
  st.action = Vec(d, 0.0);
  st.frozen = true;
  return st;
}

PlayerState ogd_fixed_step(const PlayerState& state, const Vec& gradient,
                           const BallDomain& dom) {
  if (gradient.size() != state.action.size()) {
    throw std::invalid_argument("ogd_fixed_step: dimension mismatch");
  }
  PlayerState next = state;
  if (state.eta != 0.0) {
    Vec p = state.action;
    axpy(p, -state.eta, gradient);
    next.action = project_to_ball(p, dom);
  }
  next.round = state.round + 1;
  return next;
}

PlayerState ogd_strongly_convex_step(const PlayerState& state,
                                     const Vec& gradient,
                                     const BallDomain& dom) {
  if (gradient.size() != state.action.size()) {
    throw std::invalid_argument("ogd_strongly_convex_step: dimension mismatch");
  }
  if (!(state.curvature > 0.0) && !state.frozen) {
    throw std::invalid_argument(
        "ogd_strongly_convex_step: curvature must be > 0");
  }
  PlayerState next = state;
  if (!state.frozen) {
    const double eta_t =
        1.0 / (state.curvature * (static_cast<double>(state.round) + state.shift));
    Vec p = state.action;
    axpy(p, -eta_t, gradient);
    next.action = project_to_ball(p, dom);
  }
  next.round = state.round + 1;
  return next;
}

PlayerState minibatch_ogd_step(const PlayerState& state, const Vec& gradient,
                               const BallDomain& dom) {
  if (gradient.size() != state.action.size()) {
    throw std::invalid_argument("minibatch_ogd_step: dimension mismatch");
  }
  PlayerState next = state;
  next.round = state.round + 1;
  if (state.frozen) return next;
  axpy(next.grad_accum, 1.0, gradient);
  next.in_batch = state.in_batch + 1;
  if (next.in_batch == state.batch_len) {
    Vec p = state.action;
    axpy(p, -state.eta / static_cast<double>(state.batch_len), next.grad_accum);
    next.action = project_to_ball(p, dom);
    next.grad_accum.assign(next.grad_accum.size(), 0.0);
    next.in_batch = 0;
  }
  return next;
}

PlayerState player_step(const PlayerState& state, const Vec& gradient,
                        const BallDomain& dom) {
  switch (state.kind) {
    case PlayerKind::kOgd:
      return ogd_fixed_step(state, gradient, dom);
    case PlayerKind::kOgdStronglyConvex:
      return ogd_strongly_convex_step(state, gradient, dom);
    case PlayerKind::kMiniBatch:
      return minibatch_ogd_step(state, gradient, dom);
    case PlayerKind::kFrozen: {
      PlayerState next = state;
      next.round = state.round + 1;
      return next;
    }
  }
  throw std::invalid_argument("player_step: unknown player kind");
}

}  // namespace swoco
