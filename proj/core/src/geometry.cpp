#include "swoco/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swoco {

namespace {

void require_same_size(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

// Relative slack on the boundary test. Rescaling a point onto the sphere can
// land one ulp outside it; treating near-boundary points as interior makes
// the projection exactly idempotent.
constexpr double kBoundarySlack = 1e-12;

}  // namespace

double dot(const Vec& a, const Vec& b) {
  require_same_size(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& v) { return std::sqrt(dot(v, v)); }

double distance(const Vec& a, const Vec& b) {
  require_same_size(a, b, "distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Vec add(const Vec& a, const Vec& b) {
  require_same_size(a, b, "add");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  require_same_size(a, b, "sub");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scaled(const Vec& v, double s) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

void axpy(Vec& y, double s, const Vec& x) {
  require_same_size(y, x, "axpy");
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += s * x[i];
}

BallDomain::BallDomain(int dimension, double radius)
    : dimension(dimension), radius(radius) {
  if (dimension < 1) {
    throw std::invalid_argument("BallDomain: dimension must be >= 1");
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("BallDomain: radius must be finite and > 0");
  }
}

bool BallDomain::contains(const Vec& w, double rel_slack) const {
  if (static_cast<int>(w.size()) != dimension) return false;
  return norm(w) <= radius * (1.0 + rel_slack);
}

Vec project_to_ball(const Vec& p, const BallDomain& dom) {
  if (static_cast<int>(p.size()) != dom.dimension) {
    throw std::invalid_argument("project_to_ball: dimension mismatch");
  }
  const double n = norm(p);
  if (!std::isfinite(n)) {
    throw std::invalid_argument("project_to_ball: point has non-finite norm");
  }
  if (n <= dom.radius * (1.0 + kBoundarySlack)) return p;
  return scaled(p, dom.radius / n);
}

}  // namespace swoco
