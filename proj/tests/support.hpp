#pragma once

// Random generators shared by the test binaries. All seeded; failures print
// the seed and case index so a case can be replayed.

#include <cmath>
#include <random>

#include "acax/acax.hpp"

namespace acax::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return nd_(rng_); }

  Vec3 unit() { return Direction::from_any(Vec3{{normal(), normal(), normal()}}).vec(); }

  Mat3 symmetric() {
    Mat3 a;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = normal();
    return a;
  }

  Mat3 traceless() {
    Mat3 a = symmetric();
    const double t = trace(a) / 3.0;
    return a - t * Mat3::identity();
  }

  Mat3 rotation() {
    const Vec3 a = unit();
    const Vec3 v = unit();
    const Vec3 b = normalized(v - dot(v, a) * a);
    const Vec3 c = cross(a, b);
    Mat3 r;
    for (int i = 0; i < 3; ++i) {
      r(i, 0) = a[i];
      r(i, 1) = b[i];
      r(i, 2) = c[i];
    }
    return r;
  }

  // Nine independent orthorhombic constants around a positive-definite core.
  Orthorhombic orthorhombic() {
    return Orthorhombic{uniform(150, 350), uniform(150, 350), uniform(150, 350), uniform(20, 110),
                        uniform(20, 110),  uniform(20, 110),  uniform(40, 120),  uniform(40, 120),
                        uniform(40, 120)};
  }

  StiffnessVoigt triclinic() {
    StiffnessVoigt c;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = i; j < 6; ++j) c(i, j) = c(j, i) = (i == j ? 200.0 : 0.0) + uniform(-30, 30);
    return c;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> nd_;
};

inline double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

/// Y = sigma (I - 3 q q), an axis by construction.
inline Mat3 planted(double sigma, const Vec3& q) { return sigma * (Mat3::identity() - 3.0 * outer(q, q)); }

}  // namespace acax::testing
