#include "swoco/adversaries.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace swoco {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Step-6 comparison slack: floating-point equality at the epoch boundary
// must not flip epochs between builds.
constexpr double kThresholdSlack = 1e-12;

double quartic(double x) {
  return (((16.0 * x + 32.0) * x + 49.0) * x + 15.0) * x - 1.0;
}

// Doubly Gram-Schmidt-orthogonalized residual of v against w; the second
// pass keeps |r.w| at the 1e-16^2 level even for nearly parallel inputs.
Vec residual_against(const Vec& v, const Vec& w, double w_norm_sq) {
  Vec r = v;
  axpy(r, -dot(r, w) / w_norm_sq, w);
  axpy(r, -dot(r, w) / w_norm_sq, w);
  return r;
}

Vec basis_vector(int d, int k) {
  Vec e(d, 0.0);
  e[k] = 1.0;
  return e;
}

// Sign making the first nonzero coordinate positive.
void orient_first_coordinate(Vec& v) {
  for (double x : v) {
    if (x != 0.0) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace

const char* regime_name(BudgetRegime r) {
  switch (r) {
    case BudgetRegime::kLarge: return "large";
    case BudgetRegime::kMid: return "mid";
    case BudgetRegime::kSmall: return "small";
  }
  return "?";
}

double quartic_optimal_constant() {
  double lo = 0.0, hi = 1.0;  // f(0) = -1 < 0 < f(1)
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (quartic(mid) < 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

AdversaryThreshold adversary_threshold_c(double S, double D, long T) {
  if (!(D > 0.0) || T < 1) {
    throw std::invalid_argument("adversary_threshold_c: D, T must be positive");
  }
  if (S < 0.0) {
    throw std::invalid_argument("adversary_threshold_c: S must be >= 0");
  }
  AdversaryThreshold thr;
  const double boundary = D * std::sqrt(static_cast<double>(T));
  if (S >= boundary) {
    thr.regime = BudgetRegime::kLarge;
    thr.epoching = false;
    thr.epoch_constant = kInf;
    thr.switch_threshold = kInf;
    return thr;
  }
  const double x_star = quartic_optimal_constant();
  thr.epoching = true;
  if (S >= D) {
    thr.regime = BudgetRegime::kMid;
    thr.epoch_constant = x_star * D * D;
    thr.switch_threshold = thr.epoch_constant / S;
  } else if (S > 0.0) {
    thr.regime = BudgetRegime::kSmall;
    thr.epoch_constant = x_star * S * S;
    thr.switch_threshold = thr.epoch_constant / S;
  } else {
    thr.regime = BudgetRegime::kSmall;
    thr.epoch_constant = kInf;
    thr.switch_threshold = 0.0;
  }
  return thr;
}

Vec orthogonal_pick(const Vec& w, const Vec& M, double G, int d) {
  if (d < 2) {
    throw std::invalid_argument("orthogonal_pick: requires dimension >= 2");
  }
  if (static_cast<int>(w.size()) != d || static_cast<int>(M.size()) != d) {
    throw std::invalid_argument("orthogonal_pick: dimension mismatch");
  }
  if (!(G > 0.0)) throw std::invalid_argument("orthogonal_pick: G must be > 0");

  const double wn = norm(w);
  const double mn = norm(M);
  if (wn <= 1e-150) {
    // Any direction satisfies m.w = 0; align with M to make m.M maximal.
    if (mn <= 1e-150) return scaled(basis_vector(d, 0), G);
    return scaled(M, G / mn);
  }

  const double wsq = wn * wn;
  Vec r = residual_against(M, w, wsq);
  if (norm(r) <= 1e-9 * mn || mn <= 1e-150) {
    // M parallel to w (or zero): leave span{w, M} through a basis plane.
    r = residual_against(basis_vector(d, 0), w, wsq);
    if (norm(r) <= 1e-9) r = residual_against(basis_vector(d, 1), w, wsq);
  }
  const double rn = norm(r);
  Vec u = scaled(r, 1.0 / rn);
  const double align = dot(u, M);
  if (align < 0.0) {
    u = scaled(u, -1.0);
  } else if (align == 0.0) {
    orient_first_coordinate(u);
  }
  return scaled(u, G);
}

std::pair<Vec, EpochState> adaptive_init(const Vec& w1, double G, int d) {
  if (d < 2) {
    throw std::invalid_argument("adaptive_init: requires dimension >= 2");
  }
  if (static_cast<int>(w1.size()) != d) {
    throw std::invalid_argument("adaptive_init: dimension mismatch");
  }
  // M = 0 at round 1, so this reduces to the deterministic in-plane
  // orthogonal construction against w1 alone.
  Vec m1 = orthogonal_pick(w1, Vec(d, 0.0), G, d);
  EpochState st;
  st.epoch_index = 1;
  st.epoch_start = 1;
  st.within_epoch = 0.0;
  st.dir_sum = m1;
  st.prev_dir = m1;
  st.prev_action = w1;
  st.round = 1;
  return {std::move(m1), std::move(st)};
}

std::pair<Vec, EpochState> adaptive_step(const EpochState& state, const Vec& w_t,
                                         long t, double G,
                                         const AdversaryThreshold& thr) {
  if (t != state.round + 1) {
    throw std::invalid_argument("adaptive_step: rounds must be sequential");
  }
  if (w_t.size() != state.prev_action.size()) {
    throw std::invalid_argument("adaptive_step: dimension mismatch");
  }
  const int d = static_cast<int>(w_t.size());
  EpochState next = state;
  next.round = t;
  Vec m;
  if (!thr.epoching) {
    m = orthogonal_pick(w_t, state.dir_sum, G, d);
    next.epoch_index = t;
    next.epoch_start = t;
    next.within_epoch = 0.0;
  } else {
    const double moved = state.within_epoch + distance(w_t, state.prev_action);
    if (moved <= thr.switch_threshold + kThresholdSlack) {
      m = state.prev_dir;
      next.within_epoch = moved;
    } else {
      m = orthogonal_pick(w_t, state.dir_sum, G, d);
      next.epoch_index = state.epoch_index + 1;
      next.epoch_start = t;
      next.within_epoch = 0.0;
    }
  }
  axpy(next.dir_sum, 1.0, m);
  next.prev_dir = m;
  next.prev_action = w_t;
  return {std::move(m), std::move(next)};
}

void FixedSequence::require_length(long T) const {
  if (static_cast<long>(sequence.size()) < T) {
    throw std::invalid_argument("FixedSequence: sequence shorter than horizon");
  }
}

const Loss& FixedSequence::at(long t) const {
  if (t < 1 || t > static_cast<long>(sequence.size())) {
    throw std::invalid_argument("FixedSequence: round out of range");
  }
  return sequence[static_cast<std::size_t>(t - 1)];
}

}  // namespace swoco
