#pragma once

#include <variant>
#include <vector>

#include "swoco/geometry.hpp"

namespace swoco {

// f(w) = <slope, w>
struct LinearLoss {
  Vec slope;
};

// f(w) = (curvature / 2) * |w - target|^2, curvature > 0
struct QuadraticLoss {
  Vec target;
  double curvature = 1.0;
};

using Loss = std::variant<LinearLoss, QuadraticLoss>;

double eval_linear(const LinearLoss& f, const Vec& w);
Vec grad_linear(const LinearLoss& f, const Vec& w);
double eval_quadratic(const QuadraticLoss& f, const Vec& w);
Vec grad_quadratic(const QuadraticLoss& f, const Vec& w);

double loss_value(const Loss& f, const Vec& w);
Vec loss_gradient(const Loss& f, const Vec& w);

// sup over the domain of the gradient norm.
double gradient_bound(const Loss& f, const BallDomain& dom);

double total_loss(const std::vector<Loss>& losses, const Vec& w);

// Best fixed point in hindsight for a pure linear sequence:
// -R * M / |M| where M is the summed slope. Origin when M = 0.
Vec comparator_linear(const std::vector<Vec>& slopes, const BallDomain& dom);

// Best fixed point for quadratics sharing one curvature: the target mean,
// projected. (The sum is a single quadratic centered at the mean.)
Vec comparator_quadratic(const std::vector<Vec>& targets, const BallDomain& dom);

// Projected gradient descent for mixed sequences, best iterate kept.
// Deterministic: starts at the origin, step R / (G * sqrt(i)).
Vec offline_minimizer(const std::vector<Loss>& losses, const BallDomain& dom,
                      int iterations = 10000);

}  // namespace swoco
