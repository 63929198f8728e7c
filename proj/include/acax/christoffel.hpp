#pragma once

// Christoffel (acoustic) tensor, its traceless reduction, scalar invariants
// and wave-mode decomposition.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "acax/elastic_media.hpp"
#include "acax/errors.hpp"
#include "acax/linalg.hpp"

namespace acax {

/// Unit propagation direction.
class Direction {
 public:
  /// Throws NonUnitDirection unless |n| = 1 within 1e-12.
  explicit Direction(const Vec3& n) : n_(n) { require_unit(n); }

  /// Normalizes an arbitrary nonzero vector; throws ZeroDirection otherwise.
  static Direction from_any(const Vec3& v) {
    const double len = norm(v);
    if (!(len > 1e-300) || !std::isfinite(len)) throw ZeroDirection("direction vector is zero or not finite");
    Vec3 u = (1.0 / len) * v;
    // One more pass removes the last-ulp drift of the division.
    u = (1.0 / norm(u)) * u;
    return Direction(u);
  }

  const Vec3& vec() const { return n_; }
  double operator[](std::size_t i) const { return n_[i]; }

 private:
  Vec3 n_;
};

/// Gamma(n) in m^2/s^2. Symmetric by construction.
struct AcousticTensor {
  Mat3 g;
};

/// Gamma = Y + gamma I with tr Y = 0.
struct ReducedTensor {
  Mat3 y;
  double gamma = 0.0;

  double norm() const { return frobenius(y); }

  /// Threshold below which Y counts as identically zero (spherical case).
  double zero_threshold() const {
    const double gamma_norm = std::sqrt(frobenius(y) * frobenius(y) + 3.0 * gamma * gamma);
    return 1e-10 * std::max(gamma_norm, 1.0);
  }
  bool is_spherical() const { return norm() <= zero_threshold(); }
};

struct InvariantSet {
  double p = 0.0;      // -tr(Y^2)/2
  double q = 0.0;      // -det Y
  double tr_y2 = 0.0;
  double tr_y3 = 0.0;
  double det_y = 0.0;
  double sigma = 0.0;  // speed parameter
};

struct WaveMode {
  double v2 = 0.0;      // squared phase speed
  Vec3 polarization;    // unit
  bool propagating() const { return v2 > 0.0; }
  double speed() const { return propagating() ? std::sqrt(v2) : 0.0; }
};

/// Three modes sorted by descending v^2, plus shifted eigenvalues v^2 - gamma.
struct WaveModeSet {
  std::array<WaveMode, 3> modes;
  std::array<double, 3> shifted{};
  double gamma = 0.0;
};

inline AcousticTensor gamma_of(const Material& material, const Direction& n) {
  return {(1.0 / material.density()) * full_tensor_contract(material.stiffness(), n.vec())};
}

inline ReducedTensor reduce(const AcousticTensor& gamma_tensor) {
  const Mat3& g = gamma_tensor.g;
  const double gamma = trace(g) / 3.0;
  Mat3 y = g - gamma * Mat3::identity();
  const double residual = trace(y) / 3.0;
  y(0, 0) -= residual;
  y(1, 1) -= residual;
  y(2, 2) -= residual;
  return {y, gamma};
}

inline ReducedTensor reduce(const Material& material, const Direction& n) { return reduce(gamma_of(material, n)); }

inline InvariantSet invariants(const ReducedTensor& r) {
  const Mat3& y = r.y;
  const Mat3 y2 = y * y;
  InvariantSet s;
  s.tr_y2 = trace(y2);
  s.tr_y3 = trace(y2 * y);
  s.det_y = det(y);
  s.p = -0.5 * s.tr_y2;
  s.q = -s.det_y;
  const double eps = r.zero_threshold();
  s.sigma = s.tr_y2 > eps * eps ? -3.0 * s.det_y / s.tr_y2 : 0.0;
  return s;
}

/// Eigen-decomposition of a symmetric traceless 3x3 matrix.
struct SymEigen {
  std::array<double, 3> values{};  // descending
  std::array<Vec3, 3> vectors;     // orthonormal, vectors[k] pairs with values[k]
  int isolated = 0;                // index of the best-separated eigenvalue
};

namespace detail {

// Null vector of the rank-2 symmetric matrix a, taken as the largest cross
// product of its rows.
inline Vec3 null_vector(const Mat3& a) {
  const Vec3 r0 = row(a, 0), r1 = row(a, 1), r2 = row(a, 2);
  const std::array<Vec3, 3> c{cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  std::size_t best = 0;
  double best_n = dot(c[0], c[0]);
  for (std::size_t i = 1; i < 3; ++i) {
    const double d = dot(c[i], c[i]);
    if (d > best_n) {
      best_n = d;
      best = i;
    }
  }
  if (!(best_n > 0.0)) return Vec3{{1.0, 0.0, 0.0}};
  return (1.0 / std::sqrt(best_n)) * c[best];
}

}  // namespace detail

/// Closed-form eigen solution: trigonometric roots of the depressed cubic,
/// the isolated eigenvector from a null-vector cross product (two Rayleigh
/// rounds), and the remaining pair from an exact 2x2 rotation in the plane
/// orthogonal to it.
inline SymEigen sym_eigen_traceless(const Mat3& y, double zero_norm = 0.0) {
  SymEigen out;
  const double tr_y2 = trace(y * y);
  const double ynorm = std::sqrt(tr_y2);
  if (!(ynorm > zero_norm) || ynorm == 0.0) {
    out.values = {0.0, 0.0, 0.0};
    out.vectors = {Vec3{{1.0, 0.0, 0.0}}, Vec3{{0.0, 1.0, 0.0}}, Vec3{{0.0, 0.0, 1.0}}};
    out.isolated = 0;
    return out;
  }
  // Eigenvalues 2 p cos(theta + 2 pi k / 3), p^2 = tr(Y^2)/6, cos 3theta = det Y / (2 p^3).
  const double p = std::sqrt(tr_y2 / 6.0);
  const double r = std::clamp(det(y) / (2.0 * p * p * p), -1.0, 1.0);
  const double theta = std::acos(r) / 3.0;
  constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
  const double l0 = 2.0 * p * std::cos(theta);
  const double l2 = 2.0 * p * std::cos(theta + third_turn);
  const double l1 = -l0 - l2;

  const int iso = (l0 - l1) >= (l1 - l2) ? 0 : 2;
  const double liso = iso == 0 ? l0 : l2;

  // acos loses accuracy as |r| -> 1, so the root is only good to ~eps/gap;
  // two Rayleigh-quotient rounds bring value and vector to rounding level.
  Vec3 u = detail::null_vector(y - liso * Mat3::identity());
  double liso_polished = dot(u, y * u);
  u = detail::null_vector(y - liso_polished * Mat3::identity());
  liso_polished = dot(u, y * u);

  // Pair: 2x2 block of Y in an orthonormal basis (e1, e2) of u-perp.
  const Vec3 e1 = any_orthogonal(u);
  const Vec3 e2 = cross(u, e1);
  const double b11 = dot(e1, y * e1);
  const double b22 = dot(e2, y * e2);
  const double b12 = dot(e1, y * e2);
  const double half_diff = 0.5 * (b11 - b22);
  const double mean = 0.5 * (b11 + b22);
  const double rad = std::hypot(half_diff, b12);
  Vec3 a_hi, a_lo;
  if (rad <= 1e-9 * ynorm) {
    a_hi = e1;
    a_lo = e2;
  } else {
    // Rotation angle phi with tan 2phi = 2 b12 / (b11 - b22).
    const double phi = 0.5 * std::atan2(b12, half_diff);
    const double c = std::cos(phi), s = std::sin(phi);
    a_hi = c * e1 + s * e2;
    a_lo = -s * e1 + c * e2;
  }
  const double hi = mean + rad;
  const double lo = mean - rad;

  struct Pair {
    double value;
    Vec3 vector;
    bool isolated;
  };
  std::array<Pair, 3> pairs{Pair{liso_polished, u, true}, Pair{hi, a_hi, false}, Pair{lo, a_lo, false}};
  // The polish can only reorder values that were already equal within rounding.
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.value > b.value; });
  for (std::size_t k = 0; k < 3; ++k) {
    out.values[k] = pairs[k].value;
    out.vectors[k] = pairs[k].vector;
    if (pairs[k].isolated) out.isolated = static_cast<int>(k);
  }
  return out;
}

inline WaveModeSet eigenmodes(const AcousticTensor& gamma_tensor) {
  const ReducedTensor r = reduce(gamma_tensor);
  const SymEigen e = sym_eigen_traceless(r.y, r.zero_threshold());
  WaveModeSet w;
  w.gamma = r.gamma;
  for (std::size_t k = 0; k < 3; ++k) {
    w.shifted[k] = e.values[k];
    w.modes[k].v2 = r.gamma + e.values[k];
    w.modes[k].polarization = e.vectors[k];
  }
  return w;
}

inline WaveModeSet eigenmodes(const Material& material, const Direction& n) {
  return eigenmodes(gamma_of(material, n));
}

struct SpecialDirection {
  bool pure_longitudinal = false;
  bool pure_shear = false;
};

/// Fedorov's special directions. Degenerate eigenspaces are treated as whole
/// subspaces: a polarization may be chosen anywhere inside them.
inline SpecialDirection classify_special(const Material& material, const Direction& n, double tol) {
  const ReducedTensor r = reduce(material, n);
  const SymEigen e = sym_eigen_traceless(r.y, r.zero_threshold());
  const double scale = std::max(r.norm(), r.zero_threshold());
  const double degenerate = std::max(1e-9, tol) * scale;
  const Vec3& nv = n.vec();

  SpecialDirection out;
  if (r.is_spherical()) return {true, true};

  // Group into eigenspaces.
  const bool d01 = e.values[0] - e.values[1] <= degenerate;
  const bool d12 = e.values[1] - e.values[2] <= degenerate;
  if (d01 && d12) return {true, true};

  auto check_line = [&](const Vec3& u) {
    const double c = std::fabs(dot(u, nv));
    if (c > 1.0 - tol) out.pure_longitudinal = true;
    if (c < tol) out.pure_shear = true;
  };
  auto check_plane = [&](const Vec3& a, const Vec3& b) {
    const double ca = dot(a, nv), cb = dot(b, nv);
    // Projection of n onto the plane; a plane always meets n-perp.
    if (std::sqrt(ca * ca + cb * cb) > 1.0 - tol) out.pure_longitudinal = true;
    out.pure_shear = true;
  };
  if (d01) {
    check_plane(e.vectors[0], e.vectors[1]);
    check_line(e.vectors[2]);
  } else if (d12) {
    check_line(e.vectors[0]);
    check_plane(e.vectors[1], e.vectors[2]);
  } else {
    for (const auto& u : e.vectors) check_line(u);
  }
  return out;
}

}  // namespace acax
