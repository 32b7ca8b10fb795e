#pragma once

#include <vector>

namespace swoco {

// Dense point/gradient in R^d. Plain vectors keep every arithmetic step
// explicit, which matters for bit-reproducible transcripts.
using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm(const Vec& v);
double distance(const Vec& a, const Vec& b);

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& v, double s);
// y += s * x
void axpy(Vec& y, double s, const Vec& x);

// Euclidean ball of given radius centered at the origin.
struct BallDomain {
  int dimension = 0;
  double radius = 0.0;

  BallDomain() = default;
  BallDomain(int dimension, double radius);

  bool contains(const Vec& w, double rel_slack = 1e-9) const;
};

// Euclidean projection onto the ball: identity inside, radial rescale
// outside. Points within one part in 1e12 of the boundary are returned
// unchanged so that projecting twice is bitwise idempotent.
Vec project_to_ball(const Vec& p, const BallDomain& dom);

}  // namespace swoco
