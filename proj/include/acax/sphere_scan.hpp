#pragma once

// Numerical axis search: hemisphere sweep of the eigenvalue gap, local-minimum
// detection and Levenberg-Marquardt refinement on the sphere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "acax/christoffel.hpp"
#include "acax/criteria.hpp"
#include "acax/solution.hpp"

namespace acax {

struct DegeneracyPoint {
  Vec3 n;
  double gap = 0.0;
  double discriminant = 0.0;
};

struct DegeneracyMap {
  std::vector<DegeneracyPoint> points;

  /// Typical angular spacing of the grid (rad).
  double spacing() const {
    return points.empty() ? 0.0 : std::sqrt(2.0 * std::numbers::pi / static_cast<double>(points.size()));
  }

  void write_csv(std::ostream& os) const {
    const auto old = os.precision(17);
    os << "n1,n2,n3,gap,discriminant_residual\n";
    for (const auto& p : points)
      os << p.n[0] << ',' << p.n[1] << ',' << p.n[2] << ',' << p.gap << ',' << p.discriminant << '\n';
    os.precision(old);
  }
};

struct RefinedCandidate {
  Vec3 n;
  bool converged = false;
  bool non_axis = false;  // stalled with residual above 1e-6
  double residual = 0.0;  // discriminant residual at n
  int iterations = 0;
};

inline constexpr std::size_t kMinScanPoints = 100;
inline constexpr double kConvergedResidual = 1e-12;
inline constexpr double kNonAxisResidual = 1e-6;
inline constexpr double kStartFloor = 1e-32;

/// Fibonacci spiral over the upper hemisphere (z > 0).
inline std::vector<Vec3> fibonacci_hemisphere(std::size_t count) {
  std::vector<Vec3> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    out.push_back(canonical_sign(Vec3{{r * std::cos(phi), r * std::sin(phi), z}}, 0.0));
  }
  return out;
}

/// Minimum pairwise eigenvalue gap of Y(n), relative to |Y|_F.
inline double eigen_gap(const ReducedTensor& r) {
  if (r.is_spherical()) return 0.0;
  const SymEigen e = sym_eigen_traceless(r.y, r.zero_threshold());
  const double g = std::min(e.values[0] - e.values[1], e.values[1] - e.values[2]);
  return std::max(0.0, g) / std::max(r.norm(), 1e-300);
}

inline DegeneracyMap scan(const Material& material, std::size_t point_count) {
  if (point_count < kMinScanPoints) throw std::invalid_argument("scan needs at least 100 points");
  DegeneracyMap map;
  map.points.reserve(point_count);
  for (const Vec3& n : fibonacci_hemisphere(point_count)) {
    const ReducedTensor r = reduce(material, Direction::from_any(n));
    map.points.push_back({n, eigen_gap(r), discriminant_residual(r)});
  }
  return map;
}

/// Indices of grid points whose gap does not exceed that of their k nearest
/// neighbours (antipodes identified).
inline std::vector<std::size_t> local_minima(const DegeneracyMap& map, std::size_t k = 8) {
  const std::size_t n = map.points.size();
  std::vector<std::size_t> out;
  std::vector<std::pair<double, std::size_t>> nb;
  nb.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    nb.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) nb.emplace_back(-std::fabs(dot(map.points[i].n, map.points[j].n)), j);
    const std::size_t kk = std::min(k, nb.size());
    std::partial_sort(nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(kk), nb.end());
    bool is_min = true;
    for (std::size_t a = 0; a < kk && is_min; ++a)
      if (map.points[nb[a].second].gap < map.points[i].gap) is_min = false;
    if (is_min) out.push_back(i);
  }
  return out;
}

namespace detail {

// Residual vector whose squared norm is the discriminant residual:
// D = 12 |phi|^2 / |Y|^6, written as a weighted list of the 10 Norris components.
// Evaluating D this way avoids the cancellation in 6 t3^2 - t2^3. Extended
// precision matters at tangential degeneracies, where D grows only like the
// fourth power of the angular distance.
inline std::array<double, 10> discriminant_vector(const Material& material, const Vec3& n_in) {
  using T = long double;
  const StiffnessVoigt& c = material.stiffness();
  const T len = std::sqrt(T(n_in[0]) * n_in[0] + T(n_in[1]) * n_in[1] + T(n_in[2]) * n_in[2]);
  const T n[3] = {n_in[0] / len, n_in[1] / len, n_in[2] / len};
  T y[3][3];
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t l = 0; l < 3; ++l) {
      T s = 0;
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) s += T(c(voigt_index(i, j), voigt_index(k, l))) * n[j] * n[k];
      y[i][l] = s;
    }
  const T gamma = (y[0][0] + y[1][1] + y[2][2]) / 3;
  T ysq = 0;
  for (int i = 0; i < 3; ++i) y[i][i] -= gamma;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ysq += y[i][j] * y[i][j];
  std::array<double, 10> f{};
  const T ynorm = std::sqrt(ysq);
  const T gnorm = std::sqrt(ysq + 3 * gamma * gamma);
  if (ynorm <= T(1e-10) * std::max(gnorm, T(1))) return f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) y[i][j] /= ynorm;
  T y2[3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) y2[i][j] += y[i][k] * y[k][j];
  T t[3][3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int r = 0; r < 3; ++r)
          for (int q = 0; q < 3; ++q) {
            const int e = levi_civita(i, r, q);
            if (e != 0) t[i][j][k] += e * y[r][j] * y2[q][k];
          }
  for (std::size_t a = 0; a < 10; ++a) {
    const auto& ix = NorrisTensor::kIndices[a];
    const int i = ix[0], j = ix[1], k = ix[2];
    const T phi = (t[i][j][k] + t[i][k][j] + t[j][i][k] + t[j][k][i] + t[k][i][j] + t[k][j][i]) / 6;
    f[a] = static_cast<double>(std::sqrt(T(12) * NorrisTensor::kMultiplicity[a]) * phi);
  }
  return f;
}

inline double sq_norm(const std::array<double, 10>& f) {
  double s = 0.0;
  for (double x : f) s += x * x;
  return s;
}

}  // namespace detail

/// Discriminant residual evaluated through the Norris form.
inline double stable_discriminant(const Material& material, const Vec3& n) {
  return detail::sq_norm(detail::discriminant_vector(material, n));
}

/// Levenberg-Marquardt on the sphere in a tangent-plane chart with central
/// finite-difference Jacobians.
inline RefinedCandidate refine(const Material& material, const Direction& n0, int max_iterations = 200) {
  RefinedCandidate c;
  Vec3 n = n0.vec();
  auto f = detail::discriminant_vector(material, n);
  double d = detail::sq_norm(f);
  double lambda = 1e-3;
  constexpr double h = 1e-7;
  constexpr double max_step = 0.1;

  // A start already at the rounding floor is left alone: on a whole-sphere
  // degeneracy the noise would only push it around.
  int it = 0;
  if (d <= kStartFloor) max_iterations = 0;
  for (; it < max_iterations && d > 0.0; ++it) {
    const Vec3 t1 = any_orthogonal(n);
    const Vec3 t2 = cross(n, t1);
    std::array<std::array<double, 10>, 2> jac{};
    for (int a = 0; a < 2; ++a) {
      const Vec3& t = a == 0 ? t1 : t2;
      const auto fp = detail::discriminant_vector(material, normalized(n + h * t));
      const auto fm = detail::discriminant_vector(material, normalized(n - h * t));
      for (std::size_t m = 0; m < 10; ++m) jac[a][m] = (fp[m] - fm[m]) / (2.0 * h);
    }
    double jtj[2][2] = {}, jtf[2] = {};
    for (std::size_t m = 0; m < 10; ++m) {
      for (int a = 0; a < 2; ++a) {
        jtf[a] += jac[a][m] * f[m];
        for (int b = 0; b < 2; ++b) jtj[a][b] += jac[a][m] * jac[b][m];
      }
    }
    const double scale = 0.5 * (jtj[0][0] + jtj[1][1]) + 1e-300;

    bool accepted = false;
    double step = 0.0;
    while (lambda < 1e12) {
      const double m00 = jtj[0][0] + lambda * scale, m11 = jtj[1][1] + lambda * scale, m01 = jtj[0][1];
      const double dt = m00 * m11 - m01 * m01;
      double x0 = -(m11 * jtf[0] - m01 * jtf[1]) / dt;
      double x1 = -(m00 * jtf[1] - m01 * jtf[0]) / dt;
      step = std::hypot(x0, x1);
      if (step > max_step) {
        x0 *= max_step / step;
        x1 *= max_step / step;
        step = max_step;
      }
      const Vec3 trial = normalized(n + x0 * t1 + x1 * t2);
      const auto ft = detail::discriminant_vector(material, trial);
      const double dtrial = detail::sq_norm(ft);
      if (dtrial < d) {
        n = trial;
        f = ft;
        d = dtrial;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        break;
      }
      lambda *= 10.0;
      if (step < 1e-14) break;
    }
    if (!accepted || step < 1e-14) {
      ++it;
      break;
    }
  }
  c.n = canonical_sign(n, 0.0);
  c.residual = d;
  c.iterations = it;
  c.converged = d <= kConvergedResidual;
  c.non_axis = d > kNonAxisResidual;
  return c;
}

/// Merges candidates closer than `angle`, keeping the smaller residual.
inline std::vector<RefinedCandidate> dedupe(const std::vector<RefinedCandidate>& in, double angle = kDedupAngle) {
  std::vector<RefinedCandidate> out;
  for (const auto& c : in) {
    bool merged = false;
    for (auto& o : out) {
      if (projective_angle(o.n, c.n) < angle) {
        if (c.residual < o.residual) o = c;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(c);
  }
  return out;
}

struct ScanResult {
  DegeneracyMap map;
  std::vector<RefinedCandidate> candidates;  // converged, deduplicated
  std::size_t minima = 0;
  std::size_t rejected = 0;  // refined but not converged
};

/// Scan, refine every local minimum, keep converged candidates that also pass axis_test.
inline ScanResult find_axes(const Material& material, std::size_t point_count = 5000,
                            double tol = kDefaultAxisTolerance) {
  ScanResult res;
  res.map = scan(material, point_count);
  const auto minima = local_minima(res.map);
  res.minima = minima.size();
  std::vector<RefinedCandidate> good;
  for (std::size_t i : minima) {
    const RefinedCandidate c = refine(material, Direction::from_any(res.map.points[i].n));
    if (c.converged && axis_test(material, Direction::from_any(c.n), tol).is_axis())
      good.push_back(c);
    else
      ++res.rejected;
  }
  res.candidates = dedupe(good);
  return res;
}

/// Scanned candidates turned into full verdicts.
inline std::vector<AxisVerdict> verdicts_of(const Material& material, const std::vector<RefinedCandidate>& cs,
                                            double tol = kDefaultAxisTolerance) {
  std::vector<AxisVerdict> out;
  for (const auto& c : cs) {
    const AxisVerdict v = axis_test(material, Direction::from_any(c.n), tol);
    if (v.is_axis()) add_unique(out, v);
  }
  return out;
}

struct MatchReport {
  struct Pair {
    std::size_t closed;
    std::size_t scanned;
    double angle;
  };
  std::vector<Pair> matches;
  std::vector<std::size_t> unmatched_closed;
  std::vector<std::size_t> unmatched_scanned;
  std::size_t on_conic = 0;        // scanned points attributed to the conic
  double max_angle = 0.0;          // over discrete matches
  double max_cone_distance = 0.0;  // over conic attributions

  bool complete() const { return unmatched_closed.empty() && unmatched_scanned.empty(); }
};

/// Greedy nearest-first matching (optimal here since both sides are
/// deduplicated at a far smaller scale than axis separations).
inline MatchReport compare(const AxisSolution& closed, const std::vector<RefinedCandidate>& scanned,
                           double match_angle = kDedupAngle, double cone_distance = 0.0) {
  MatchReport rep;
  if (closed.kind == SolutionKind::all_sphere) {
    for (std::size_t j = 0; j < scanned.size(); ++j) rep.matches.push_back({0, j, 0.0});
    return rep;
  }
  std::vector<MatchReport::Pair> cand;
  for (std::size_t i = 0; i < closed.axes.size(); ++i)
    for (std::size_t j = 0; j < scanned.size(); ++j) {
      const double a = projective_angle(closed.axes[i].direction, scanned[j].n);
      if (a <= match_angle) cand.push_back({i, j, a});
    }
  std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) { return x.angle < y.angle; });
  std::vector<bool> used_c(closed.axes.size(), false), used_s(scanned.size(), false);
  for (const auto& p : cand) {
    if (used_c[p.closed] || used_s[p.scanned]) continue;
    used_c[p.closed] = used_s[p.scanned] = true;
    rep.matches.push_back(p);
    rep.max_angle = std::max(rep.max_angle, p.angle);
  }
  for (std::size_t i = 0; i < closed.axes.size(); ++i)
    if (!used_c[i]) rep.unmatched_closed.push_back(i);
  for (std::size_t j = 0; j < scanned.size(); ++j) {
    if (used_s[j]) continue;
    if (closed.conic) {
      const double d = closed.conic->distance(scanned[j].n);
      if (d <= cone_distance) {
        ++rep.on_conic;
        rep.max_cone_distance = std::max(rep.max_cone_distance, d);
        continue;
      }
    }
    rep.unmatched_scanned.push_back(j);
  }
  return rep;
}

}  // namespace acax
