#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "acax/criteria.hpp"
#include "acax/linalg.hpp"

namespace acax {

enum class SolutionKind { discrete, all_sphere, conic, none };

inline const char* to_string(SolutionKind k) {
  switch (k) {
    case SolutionKind::discrete: return "discrete";
    case SolutionKind::all_sphere: return "all_sphere";
    case SolutionKind::conic: return "conic";
    case SolutionKind::none: return "none";
  }
  return "?";
}

inline SolutionKind solution_kind_from_string(const std::string& s) {
  if (s == "discrete") return SolutionKind::discrete;
  if (s == "all_sphere") return SolutionKind::all_sphere;
  if (s == "conic") return SolutionKind::conic;
  return SolutionKind::none;
}

/// Quadric cone k1 n1^2 + k2 n2^2 + k3 n3^2 = 0 (coefficients in Pa).
struct ConicDescriptor {
  Vec3 k;

  bool axisymmetric() const {
    const double scale = std::max({std::fabs(k[0]), std::fabs(k[1]), std::fabs(k[2])});
    return std::fabs(k[0] - k[1]) <= 1e-10 * scale;
  }
  double k_perp() const { return k[0]; }
  double k_3() const { return k[2]; }

  /// Half-angle of an axisymmetric cone measured from the x3 axis.
  double half_angle() const { return std::atan(std::sqrt(-k[2] / k[0])); }

  /// A point of the cone at azimuth phi (axisymmetric or elliptic alike).
  Vec3 point(double phi) const {
    // Solve k1 c^2 s^2 + k2 s'^2 ... via n = (t cos phi, t sin phi, 1) normalized.
    const double kp = k[0] * std::cos(phi) * std::cos(phi) + k[1] * std::sin(phi) * std::sin(phi);
    const double t = std::sqrt(-k[2] / kp);
    return normalized(Vec3{{t * std::cos(phi), t * std::sin(phi), 1.0}});
  }

  /// Angular distance from direction n to the cone (antipodes identified).
  double distance(const Vec3& n_in) const {
    const Vec3 n = normalized(n_in);
    if (axisymmetric()) {
      const double theta = std::atan2(std::hypot(n[0], n[1]), std::fabs(n[2]));
      return std::fabs(theta - half_angle());
    }
    // First-order distance |f| / |tangential gradient| for the elliptic case.
    const double f = k[0] * n[0] * n[0] + k[1] * n[1] * n[1] + k[2] * n[2] * n[2];
    const Vec3 g{{2.0 * k[0] * n[0], 2.0 * k[1] * n[1], 2.0 * k[2] * n[2]}};
    const Vec3 gt = g - dot(g, n) * n;
    return std::fabs(f) / std::max(norm(gt), 1e-300);
  }
};

/// Direction-independent axis data for media where every direction is an axis.
struct AllSphereDescriptor {
  double sigma = 0.0;
  double gamma = 0.0;
  double v_double = 0.0;
  double v_single = 0.0;
  bool spherical = false;  // Y vanishes identically
};

struct AxisSolution {
  SolutionKind kind = SolutionKind::none;
  std::string solver;
  std::vector<AxisVerdict> axes;
  std::optional<ConicDescriptor> conic;
  std::optional<AllSphereDescriptor> all_sphere;
  // Coordinate planes (12, 13, 23) whose in-plane equation vanished identically.
  std::vector<int> continuum_planes;
  bool scan_supplemented = false;
};

inline constexpr double kDedupAngle = 1e-6;

/// Appends v unless an axis within `angle` (projectively) is already present.
inline bool add_unique(std::vector<AxisVerdict>& axes, const AxisVerdict& v, double angle = kDedupAngle) {
  for (const auto& a : axes)
    if (projective_angle(a.direction, v.direction) < angle) return false;
  axes.push_back(v);
  return true;
}

/// Ordering used for reports: kind, then lexicographic canonical direction.
inline void sort_axes(std::vector<AxisVerdict>& axes) {
  for (auto& a : axes) a.direction = canonical_sign(a.direction);
  std::sort(axes.begin(), axes.end(), [](const AxisVerdict& a, const AxisVerdict& b) {
    return std::tuple(static_cast<int>(a.kind), a.direction[0], a.direction[1], a.direction[2]) <
           std::tuple(static_cast<int>(b.kind), b.direction[0], b.direction[1], b.direction[2]);
  });
}

}  // namespace acax
