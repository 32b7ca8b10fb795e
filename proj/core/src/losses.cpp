#include "swoco/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace swoco {

double eval_linear(const LinearLoss& f, const Vec& w) { return dot(f.slope, w); }

Vec grad_linear(const LinearLoss& f, const Vec& w) {
  if (f.slope.size() != w.size()) {
    throw std::invalid_argument("grad_linear: dimension mismatch");
  }
  return f.slope;
}

double eval_quadratic(const QuadraticLoss& f, const Vec& w) {
  const double d = distance(w, f.target);
  return 0.5 * f.curvature * d * d;
}

Vec grad_quadratic(const QuadraticLoss& f, const Vec& w) {
  return scaled(sub(w, f.target), f.curvature);
}

double loss_value(const Loss& f, const Vec& w) {
  return std::visit([&](const auto& g) -> double {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, LinearLoss>) return eval_linear(g, w);
    else return eval_quadratic(g, w);
  }, f);
}

Vec loss_gradient(const Loss& f, const Vec& w) {
  return std::visit([&](const auto& g) -> Vec {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, LinearLoss>) return grad_linear(g, w);
    else return grad_quadratic(g, w);
  }, f);
}

double gradient_bound(const Loss& f, const BallDomain& dom) {
  return std::visit([&](const auto& g) -> double {
    using T = std::decay_t<decltype(g)>;
    if constexpr (std::is_same_v<T, LinearLoss>) {
      return norm(g.slope);
    } else {
      // |grad| = curvature * |w - target| <= curvature * (R + |target|)
      return g.curvature * (dom.radius + norm(g.target));
    }
  }, f);
}

double total_loss(const std::vector<Loss>& losses, const Vec& w) {
  double s = 0.0;
  for (const auto& f : losses) s += loss_value(f, w);
  return s;
}

Vec comparator_linear(const std::vector<Vec>& slopes, const BallDomain& dom) {
  Vec m(dom.dimension, 0.0);
  for (const auto& s : slopes) axpy(m, 1.0, s);
  const double n = norm(m);
  if (n == 0.0) return Vec(dom.dimension, 0.0);
  return scaled(m, -dom.radius / n);
}

Vec comparator_quadratic(const std::vector<Vec>& targets, const BallDomain& dom) {
  if (targets.empty()) return Vec(dom.dimension, 0.0);
  Vec mean(dom.dimension, 0.0);
  for (const auto& t : targets) axpy(mean, 1.0, t);
  mean = scaled(mean, 1.0 / static_cast<double>(targets.size()));
  return project_to_ball(mean, dom);
}

Vec offline_minimizer(const std::vector<Loss>& losses, const BallDomain& dom,
                      int iterations) {
  if (iterations < 1) {
    throw std::invalid_argument("offline_minimizer: iterations must be >= 1");
  }
  double g_bound = 0.0;
  for (const auto& f : losses) {
    g_bound = std::max(g_bound, gradient_bound(f, dom));
  }
  if (g_bound == 0.0 || losses.empty()) return Vec(dom.dimension, 0.0);

  // Descends the mean loss (same minimizer as the sum) so the per-step
  // gradient norm is bounded by g_bound and the step rule is well scaled.
  const double inv_n = 1.0 / static_cast<double>(losses.size());
  Vec w(dom.dimension, 0.0);
  Vec best = w;
  double best_value = total_loss(losses, w);
  for (int i = 1; i <= iterations; ++i) {
    Vec grad(dom.dimension, 0.0);
    for (const auto& f : losses) axpy(grad, inv_n, loss_gradient(f, w));
    const double step = dom.radius / (g_bound * std::sqrt(static_cast<double>(i)));
    axpy(w, -step, grad);
    w = project_to_ball(w, dom);
    const double v = total_loss(losses, w);
    if (v < best_value) {
      best_value = v;
      best = w;
    }
  }
  return best;
}

}  // namespace swoco
