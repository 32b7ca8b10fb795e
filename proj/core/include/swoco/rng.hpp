#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "swoco/geometry.hpp"

namespace swoco {

// mt19937_64 with hand-written output transforms. The engine itself is
// bit-exact by the standard; the standard <random> distributions are not,
// so uniform and normal draws are built here from raw engine words. Two
// runs with the same seed produce identical transcripts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit mantissa.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Marsaglia polar method; rejection loop terminates with probability 1.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Isotropic point on the sphere of the given radius.
  Vec on_sphere(int d, double radius) {
    if (d < 1) throw std::invalid_argument("on_sphere: d must be >= 1");
    Vec v(d);
    double n = 0.0;
    do {
      for (int i = 0; i < d; ++i) v[i] = normal();
      n = norm(v);
    } while (n == 0.0);
    return scaled(v, radius / n);
  }

  // Uniform over the solid ball: isotropic direction, radial law u^(1/d).
  Vec in_ball(int d, double radius) {
    const double r = radius * std::pow(uniform(), 1.0 / d);
    return on_sphere(d, r > 0.0 ? r : radius * 0x1.0p-30);
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace swoco
