#pragma once

// Fixed-size 3-vector / 3x3-matrix arithmetic used throughout the library.

#include <array>
#include <cmath>
#include <cstddef>

namespace acax {

struct Vec3 {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  constexpr double& operator[](std::size_t i) { return v[i]; }
  constexpr double operator[](std::size_t i) const { return v[i]; }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  constexpr double& operator()(std::size_t i, std::size_t j) { return m[i][j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return m[i][j]; }

  static constexpr Mat3 identity() {
    Mat3 r;
    r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
    return r;
  }
  static constexpr Mat3 diag(double a, double b, double c) {
    Mat3 r;
    r(0, 0) = a;
    r(1, 1) = b;
    r(2, 2) = c;
    return r;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

// --- vectors ---------------------------------------------------------------

constexpr Vec3 operator+(const Vec3& a, const Vec3& b) { return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}; }
constexpr Vec3 operator-(const Vec3& a, const Vec3& b) { return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}; }
constexpr Vec3 operator-(const Vec3& a) { return {{-a[0], -a[1], -a[2]}}; }
constexpr Vec3 operator*(double s, const Vec3& a) { return {{s * a[0], s * a[1], s * a[2]}}; }
constexpr Vec3 operator*(const Vec3& a, double s) { return s * a; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) { return (1.0 / norm(a)) * a; }

// --- matrices --------------------------------------------------------------

constexpr Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

constexpr Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

constexpr Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = s * a(i, j);
  return r;
}

constexpr Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

constexpr Vec3 operator*(const Mat3& a, const Vec3& x) {
  return {{a(0, 0) * x[0] + a(0, 1) * x[1] + a(0, 2) * x[2],
           a(1, 0) * x[0] + a(1, 1) * x[1] + a(1, 2) * x[2],
           a(2, 0) * x[0] + a(2, 1) * x[1] + a(2, 2) * x[2]}};
}

constexpr Mat3 transpose(const Mat3& a) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

constexpr Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a[i] * b[j];
  return r;
}

constexpr double trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

constexpr double det(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

// Adjugate: transpose of the cofactor matrix, so that A * adj(A) = det(A) I.
constexpr Mat3 adjugate(const Mat3& a) {
  Mat3 r;
  r(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  r(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
  r(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
  r(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
  r(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
  r(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
  r(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
  r(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
  r(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return r;
}

inline double frobenius(const Mat3& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

constexpr Vec3 column(const Mat3& a, std::size_t j) { return {{a(0, j), a(1, j), a(2, j)}}; }
constexpr Vec3 row(const Mat3& a, std::size_t i) { return {{a(i, 0), a(i, 1), a(i, 2)}}; }

inline double max_abs(const Mat3& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s = std::fmax(s, std::fabs(a(i, j)));
  return s;
}

// Projective representative: the first component with magnitude above `eps`
// is made positive.
inline Vec3 canonical_sign(const Vec3& a, double eps = 1e-8) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (std::fabs(a[i]) > eps) return a[i] < 0.0 ? -a : a;
  }
  return a;
}

// Angle between the lines spanned by a and b (antipodes identified), in [0, pi/2].
inline double projective_angle(const Vec3& a, const Vec3& b) {
  const Vec3 ua = normalized(a);
  const Vec3 ub = normalized(b);
  // atan2 of |cross| and |dot| stays accurate for tiny angles.
  return std::atan2(norm(cross(ua, ub)), std::fabs(dot(ua, ub)));
}

// Any unit vector orthogonal to a unit vector n.
inline Vec3 any_orthogonal(const Vec3& n) {
  const Vec3 e = std::fabs(n[0]) < 0.6 ? Vec3{{1.0, 0.0, 0.0}}
                 : std::fabs(n[1]) < 0.6 ? Vec3{{0.0, 1.0, 0.0}}
                                         : Vec3{{0.0, 0.0, 1.0}};
  return normalized(cross(n, e));
}

}  // namespace acax
