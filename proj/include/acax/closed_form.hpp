#pragma once

// Closed-form acoustic axes: isotropic, cubic and media whose Christoffel
// tensor has the orthorhombic (or higher) structure
//   rho Gamma_ii = sum_j a_ij n_j^2,   rho Gamma_ij = r_ij n_i n_j.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "acax/christoffel.hpp"
#include "acax/criteria.hpp"
#include "acax/elastic_media.hpp"
#include "acax/errors.hpp"
#include "acax/solution.hpp"
#include "acax/sphere_scan.hpp"

namespace acax {

// ---------------------------------------------------------------------------
// isotropic / cubic

inline AxisSolution solve_isotropic(double lambda, double mu, double rho) {
  AxisSolution s;
  s.kind = SolutionKind::all_sphere;
  s.solver = "isotropic";
  AllSphereDescriptor d;
  d.gamma = (lambda + 4.0 * mu) / (3.0 * rho);
  const double scale = std::max(std::fabs(lambda), std::fabs(mu));
  d.spherical = std::fabs(lambda + mu) <= 1e-12 * scale;
  d.sigma = d.spherical ? 0.0 : -(lambda + mu) / (3.0 * rho);
  d.v_double = std::sqrt(std::max(0.0, d.gamma + d.sigma));
  d.v_single = std::sqrt(std::max(0.0, d.gamma - 2.0 * d.sigma));
  s.all_sphere = d;
  return s;
}

inline AxisSolution solve(const Material& material);

inline AxisSolution solve_cubic(double c11, double c12, double c44, double rho) {
  const double alpha = c11 - c44;
  const double delta = c12 + c44;
  const double scale = std::max({std::fabs(c11), std::fabs(c12), std::fabs(c44)});
  const Material m(Cubic{c11, c12, c44}, rho);

  if (std::fabs(alpha) <= 1e-12 * scale || std::fabs(delta) <= 1e-12 * scale) {
    AxisSolution s = solve(m);
    s.solver = "cubic/rthc";
    return s;
  }
  AxisSolution s;
  s.solver = "cubic";
  const double k = 1.0 / std::sqrt(3.0);
  const std::array<Vec3, 7> dirs{Vec3{{1, 0, 0}}, Vec3{{0, 1, 0}}, Vec3{{0, 0, 1}}, Vec3{{k, k, k}},
                                 Vec3{{k, k, -k}}, Vec3{{k, -k, k}}, Vec3{{-k, k, k}}};
  for (const Vec3& n : dirs) {
    const AxisVerdict v = axis_test(m, Direction::from_any(n));
    if (v.is_axis()) add_unique(s.axes, v);
  }
  s.kind = SolutionKind::discrete;
  if (std::fabs(delta / alpha - 1.0) <= 1e-12) {
    // Y takes the isotropic form: every direction is an axis. The seven
    // crystallographic axes stay listed as representatives.
    s.kind = SolutionKind::all_sphere;
    AllSphereDescriptor d;
    d.sigma = -alpha / (3.0 * rho);
    d.gamma = (c11 + 2.0 * c44) / (3.0 * rho);
    d.v_double = std::sqrt(std::max(0.0, d.gamma + d.sigma));
    d.v_single = std::sqrt(std::max(0.0, d.gamma - 2.0 * d.sigma));
    s.all_sphere = d;
  }
  return s;
}

/// Coordinate-axis sigma (C44 - C11) / (3 rho).
constexpr double cubic_coordinate_sigma(double c11, double c44, double rho) { return (c44 - c11) / (3.0 * rho); }
/// Body-diagonal sigma -(C12 + C44) / (3 rho).
constexpr double cubic_diagonal_sigma(double c12, double c44, double rho) { return -(c12 + c44) / (3.0 * rho); }

// ---------------------------------------------------------------------------
// RTHC coefficients

/// Coefficients in Pa (divide by rho for m^2/s^2).
struct RTHCCoefficients {
  Mat3 a;
  Vec3 r;  // r12, r13, r23
  Mat3 b;  // b_ij = a_ij - mean_k a_kj

  double r_of(int i, int j) const {
    if (i > j) std::swap(i, j);
    return i == 0 ? (j == 1 ? r[0] : r[1]) : r[2];
  }

  double scale() const { return std::max({max_abs(a), std::fabs(r[0]), std::fabs(r[1]), std::fabs(r[2])}); }

  /// rho Gamma(n) rebuilt from the coefficients.
  Mat3 form(const Vec3& n) const {
    Mat3 g;
    for (int i = 0; i < 3; ++i) {
      double s = 0.0;
      for (int j = 0; j < 3; ++j) s += a(i, j) * n[j] * n[j];
      g(i, i) = s;
      for (int j = i + 1; j < 3; ++j) g(i, j) = g(j, i) = r_of(i, j) * n[i] * n[j];
    }
    return g;
  }
};

inline RTHCCoefficients rthc_coefficients(const Material& material) {
  const StiffnessVoigt& c = material.stiffness();
  RTHCCoefficients k;
  const std::array<Vec3, 3> e{Vec3{{1, 0, 0}}, Vec3{{0, 1, 0}}, Vec3{{0, 0, 1}}};
  for (int j = 0; j < 3; ++j) {
    const Mat3 g = full_tensor_contract(c, e[j]);
    for (int i = 0; i < 3; ++i) k.a(i, j) = g(i, i);
  }
  const double h = 1.0 / std::sqrt(2.0);
  k.r[0] = 2.0 * full_tensor_contract(c, Vec3{{h, h, 0}})(0, 1);
  k.r[1] = 2.0 * full_tensor_contract(c, Vec3{{h, 0, h}})(0, 2);
  k.r[2] = 2.0 * full_tensor_contract(c, Vec3{{0, h, h}})(1, 2);
  for (int j = 0; j < 3; ++j) {
    const double mean = (k.a(0, j) + k.a(1, j) + k.a(2, j)) / 3.0;
    for (int i = 0; i < 3; ++i) k.b(i, j) = k.a(i, j) - mean;
  }

  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    const Vec3 n = Direction::from_any(Vec3{{nd(rng), nd(rng), nd(rng)}}).vec();
    const Mat3 g = full_tensor_contract(c, n);
    if (frobenius(g - k.form(n)) > 1e-10 * std::max(frobenius(g), 1e-300))
      throw NotRTHC("Christoffel tensor is not of orthorhombic form in this frame");
  }
  return k;
}

/// Y(n) in m^2/s^2 from the coefficients alone.
inline ReducedTensor rthc_reduced(const RTHCCoefficients& k, double rho, const Vec3& n) {
  return reduce(AcousticTensor{(1.0 / rho) * k.form(n)});
}

/// Sign of r12 r13 r23: +1 prolate, -1 oblate, 0 when an r vanishes.
inline int oblique_kind_hint(const RTHCCoefficients& k) {
  const double p = k.r[0] * k.r[1] * k.r[2];
  return p > 0.0 ? 1 : (p < 0.0 ? -1 : 0);
}

// ---------------------------------------------------------------------------
// coordinate axes

struct CoordinateRow {
  int axis = 0;          // n = e_axis
  int polarization = 0;  // q = e_polarization
  bool satisfied = false;
  double sigma = 0.0;    // m^2/s^2
};

/// The nine (n = e_i, q = e_j) conditions: the two a_{k,i} with k != j agree,
/// sigma = b_{k,i} / rho for either such k.
inline std::array<CoordinateRow, 9> rthc_coordinate_table(const RTHCCoefficients& k, double rho, double tol) {
  std::array<CoordinateRow, 9> rows;
  const double scale = std::max(max_abs(k.a), 1e-300);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int k1 = j == 0 ? 1 : 0;
      const int k2 = j == 2 ? 1 : 2;
      CoordinateRow& row = rows[static_cast<std::size_t>(3 * i + j)];
      row.axis = i;
      row.polarization = j;
      row.satisfied = std::fabs(k.a(k1, i) - k.a(k2, i)) <= tol * scale;
      row.sigma = 0.5 * (k.b(k1, i) + k.b(k2, i)) / rho;
    }
  return rows;
}

inline std::vector<AxisVerdict> rthc_coordinate_axes(const RTHCCoefficients& k, double rho,
                                                     double tol = kDefaultAxisTolerance) {
  std::vector<AxisVerdict> out;
  for (const auto& row : rthc_coordinate_table(k, rho, tol)) {
    if (!row.satisfied) continue;
    Vec3 n;
    n[static_cast<std::size_t>(row.axis)] = 1.0;
    const AxisVerdict v = axis_test(rthc_reduced(k, rho, n), n, tol);
    if (v.is_axis()) add_unique(out, v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// in-plane axes

struct ClosedFormCandidate {
  Vec3 n;
  double sigma = 0.0;  // from the closed-form expression, m^2/s^2
  Vec3 q;
};

struct InPlaneAxes {
  std::vector<ClosedFormCandidate> candidates;
  std::vector<AxisVerdict> axes;
  bool continuum = false;  // quadratic vanished identically
};

/// Plane index: 0 -> 12, 1 -> 13, 2 -> 23.
inline InPlaneAxes rthc_inplane_axes(const RTHCCoefficients& k, double rho, int plane,
                                     double tol = kDefaultAxisTolerance) {
  static constexpr int kI[3] = {0, 0, 1}, kJ[3] = {1, 2, 2}, kK[3] = {2, 1, 0};
  const int i = kI[plane], j = kJ[plane], m = kK[plane];
  const auto& a = k.a;
  const double rij = k.r_of(i, j);
  // In t = (n_i / n_j)^2.
  const double qa = (a(i, i) - a(m, i)) * (a(j, i) - a(m, i));
  const double qc = (a(i, j) - a(m, j)) * (a(j, j) - a(m, j));
  const double qb = (a(i, i) - a(m, i)) * (a(j, j) - a(m, j)) + (a(i, j) - a(m, j)) * (a(j, i) - a(m, i)) - rij * rij;

  InPlaneAxes out;
  const double s = k.scale();
  const double zero = 1e-12 * s * s;
  std::vector<double> roots;
  const bool a0 = std::fabs(qa) <= zero, b0 = std::fabs(qb) <= zero, c0 = std::fabs(qc) <= zero;
  if (a0 && b0) {
    out.continuum = c0;
  } else if (a0) {
    roots.push_back(-qc / qb);
  } else {
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= -1e-12 * qb * qb || disc >= 0.0) {
      disc = std::max(disc, 0.0);
      const double sq = std::sqrt(disc);
      const double q = -0.5 * (qb + (qb >= 0.0 ? sq : -sq));
      roots.push_back(q / qa);
      if (q != 0.0) roots.push_back(qc / q);
    }
  }

  for (double t : roots) {
    if (!(t > 1e-14) || !std::isfinite(t)) continue;
    const double ni = std::sqrt(t / (1.0 + t));
    const double nj = std::sqrt(1.0 / (1.0 + t));
    for (double sign : {1.0, -1.0}) {
      Vec3 n;
      n[static_cast<std::size_t>(i)] = sign * ni;
      n[static_cast<std::size_t>(j)] = nj;
      ClosedFormCandidate c;
      c.n = n;
      c.sigma = (k.b(m, i) * ni * ni + k.b(m, j) * nj * nj) / rho;
      // q: eigenvector of the in-plane 2x2 block of Y for eigenvalue -2 sigma.
      const ReducedTensor r = rthc_reduced(k, rho, n);
      const double yii = r.y(i, i), yjj = r.y(j, j), yij = r.y(i, j);
      const double lam = -2.0 * c.sigma;
      Vec3 q;
      if (std::fabs(yij) + std::fabs(yii - lam) > std::fabs(yij) + std::fabs(yjj - lam)) {
        q[static_cast<std::size_t>(i)] = -yij;
        q[static_cast<std::size_t>(j)] = yii - lam;
      } else {
        q[static_cast<std::size_t>(i)] = yjj - lam;
        q[static_cast<std::size_t>(j)] = -yij;
      }
      c.q = norm(q) > 0.0 ? canonical_sign(normalized(q)) : q;
      out.candidates.push_back(c);
      const AxisVerdict v = axis_test(r, n, tol);
      if (v.is_axis()) add_unique(out.axes, v);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// oblique axes

struct ObliqueIntermediates {
  Vec3 alpha;  // Pa
  Vec3 u, w;   // Pa
  bool parallel = false;
};

inline ObliqueIntermediates oblique_intermediates(const RTHCCoefficients& k) {
  ObliqueIntermediates o;
  const double r12 = k.r[0], r13 = k.r[1], r23 = k.r[2];
  o.alpha = Vec3{{r12 * r13 / r23, r12 * r23 / r13, r13 * r23 / r12}};
  const Vec3& al = o.alpha;
  o.u = Vec3{{k.b(0, 0) - 2.0 * al[0] / 3.0, k.b(0, 1) + al[1] / 3.0, k.b(0, 2) + al[2] / 3.0}};
  o.w = Vec3{{k.b(1, 0) + al[0] / 3.0, k.b(1, 1) - 2.0 * al[1] / 3.0, k.b(1, 2) + al[2] / 3.0}};
  const double s = k.scale();
  const double nu = norm(o.u), nw = norm(o.w);
  o.parallel = nu <= 1e-12 * s || nw <= 1e-12 * s || norm(cross(o.u, o.w)) <= 1e-10 * nu * nw;
  return o;
}

struct ObliqueAxes {
  ObliqueIntermediates inter;
  std::vector<ClosedFormCandidate> candidates;
  AxisSolution solution;  // discrete, conic, all_sphere or none
  bool applicable = true; // false when some r_ij vanishes
};

namespace detail {

// Candidate n from squared components; also recovers q from the alpha relations.
inline std::optional<ClosedFormCandidate> oblique_candidate(const RTHCCoefficients& k, const Vec3& alpha,
                                                            const Vec3& n, double rho) {
  ClosedFormCandidate c;
  c.n = n;
  const double sig_pa = -(alpha[0] * n[0] * n[0] + alpha[1] * n[1] * n[1] + alpha[2] * n[2] * n[2]) / 3.0;
  if (sig_pa == 0.0) return std::nullopt;
  c.sigma = sig_pa / rho;
  Vec3 q2;
  for (int i = 0; i < 3; ++i) {
    q2[static_cast<std::size_t>(i)] = -alpha[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(i)] *
                                      n[static_cast<std::size_t>(i)] / (3.0 * sig_pa);
    if (q2[static_cast<std::size_t>(i)] < -1e-12) return std::nullopt;
  }
  Vec3 q{{std::sqrt(std::max(0.0, q2[0])), std::sqrt(std::max(0.0, q2[1])), std::sqrt(std::max(0.0, q2[2]))}};
  // r_ij n_i n_j = -3 sigma q_i q_j fixes the relative signs.
  auto sign_of = [&](int i, int j) { return -k.r_of(i, j) * n[static_cast<std::size_t>(i)] * n[static_cast<std::size_t>(j)] / sig_pa; };
  if (sign_of(0, 1) < 0.0) q[1] = -q[1];
  if (sign_of(0, 2) < 0.0) q[2] = -q[2];
  if (sign_of(1, 2) * q[1] * q[2] < 0.0) return std::nullopt;
  c.q = canonical_sign(normalized(q));
  return c;
}

}  // namespace detail

inline ObliqueAxes rthc_oblique_axes(const RTHCCoefficients& k, double rho, double tol = kDefaultAxisTolerance) {
  ObliqueAxes out;
  const double s = k.scale();
  if (std::fabs(k.r[0]) <= 1e-12 * s || std::fabs(k.r[1]) <= 1e-12 * s || std::fabs(k.r[2]) <= 1e-12 * s) {
    out.applicable = false;
    out.solution.kind = SolutionKind::none;
    return out;
  }
  out.inter = oblique_intermediates(k);
  const auto& o = out.inter;
  AxisSolution& sol = out.solution;

  auto emit = [&](const Vec3& n2) {
    const std::array<Vec3, 4> signs{Vec3{{1, 1, 1}}, Vec3{{1, 1, -1}}, Vec3{{1, -1, 1}}, Vec3{{-1, 1, 1}}};
    for (const Vec3& sg : signs) {
      const Vec3 n{{sg[0] * std::sqrt(n2[0]), sg[1] * std::sqrt(n2[1]), sg[2] * std::sqrt(n2[2])}};
      const auto c = detail::oblique_candidate(k, o.alpha, n, rho);
      if (!c) continue;
      out.candidates.push_back(*c);
      const AxisVerdict v = axis_test(rthc_reduced(k, rho, n), n, tol);
      if (v.is_axis()) add_unique(sol.axes, v);
    }
  };

  if (!o.parallel) {
    Vec3 sv = cross(o.u, o.w);
    const double sum = sv[0] + sv[1] + sv[2];
    if (std::fabs(sum) <= 1e-12 * norm(sv)) return out;
    sv = (1.0 / sum) * sv;
    for (int i = 0; i < 3; ++i) {
      if (sv[static_cast<std::size_t>(i)] < -1e-12) return out;
      if (std::fabs(sv[static_cast<std::size_t>(i)]) < 1e-12) sv[static_cast<std::size_t>(i)] = 0.0;
    }
    emit(sv);
    sol.kind = sol.axes.empty() ? SolutionKind::none : SolutionKind::discrete;
    return out;
  }

  // Degenerate branch: a single quadric k . n^2 = 0.
  const bool u_zero = norm(o.u) <= 1e-12 * s, w_zero = norm(o.w) <= 1e-12 * s;
  if (u_zero && w_zero) {
    sol.kind = SolutionKind::all_sphere;
    return out;
  }
  const Vec3 kq = 3.0 * (u_zero ? o.w : o.u);
  const double kz = 1e-12 * norm(kq);
  int pos = 0, neg = 0;
  for (int i = 0; i < 3; ++i) {
    if (kq[static_cast<std::size_t>(i)] > kz) ++pos;
    if (kq[static_cast<std::size_t>(i)] < -kz) ++neg;
  }
  if (pos == 0 || neg == 0) return out;  // no real oblique solutions

  // Probe a cone point with all components nonzero; keep the conic only if it is an axis.
  const bool lone_pos = pos == 1;
  int lone = 0;
  for (int i = 0; i < 3; ++i)
    if ((kq[static_cast<std::size_t>(i)] > kz) == lone_pos) lone = i;
  const auto ia = static_cast<std::size_t>((lone + 1) % 3), ib = static_cast<std::size_t>((lone + 2) % 3);
  const double ca = std::cos(0.3), cb = std::sin(0.3);
  Vec3 probe;
  probe[ia] = ca;
  probe[ib] = cb;
  probe[static_cast<std::size_t>(lone)] =
      std::sqrt(std::max(0.0, -(kq[ia] * ca * ca + kq[ib] * cb * cb) / kq[static_cast<std::size_t>(lone)]));
  probe = normalized(probe);
  const ConicDescriptor cone{kq};
  if (!axis_test(rthc_reduced(k, rho, probe), probe, tol).is_axis()) return out;
  sol.kind = SolutionKind::conic;
  sol.conic = cone;
  return out;
}

// ---------------------------------------------------------------------------
// dispatch

namespace detail {

inline bool close_rel(double x, double y, double scale) { return std::fabs(x - y) <= 1e-12 * scale; }

inline bool orthotropic_pattern(const StiffnessVoigt& c, double scale) {
  for (std::size_t I = 0; I < 6; ++I)
    for (std::size_t J = 0; J < 6; ++J) {
      const bool in_pattern = (I < 3 && J < 3) || I == J;
      if (!in_pattern && std::fabs(c(I, J)) > 1e-12 * scale) return false;
    }
  return true;
}

inline std::optional<Cubic> as_cubic(const StiffnessVoigt& c) {
  const double s = c.max_abs();
  if (!orthotropic_pattern(c, s)) return std::nullopt;
  if (!close_rel(c(0, 0), c(1, 1), s) || !close_rel(c(0, 0), c(2, 2), s)) return std::nullopt;
  if (!close_rel(c(0, 1), c(0, 2), s) || !close_rel(c(0, 1), c(1, 2), s)) return std::nullopt;
  if (!close_rel(c(3, 3), c(4, 4), s) || !close_rel(c(3, 3), c(5, 5), s)) return std::nullopt;
  return Cubic{c(0, 0), c(0, 1), c(3, 3)};
}

inline void finish(AxisSolution& s) {
  sort_axes(s.axes);
  if (s.kind == SolutionKind::none && !s.axes.empty()) s.kind = SolutionKind::discrete;
}

}  // namespace detail

/// Union of coordinate, in-plane and oblique axes from RTHC coefficients.
inline AxisSolution solve_rthc(const Material& material, const RTHCCoefficients& k,
                               double tol = kDefaultAxisTolerance) {
  const double rho = material.density();
  AxisSolution s;
  s.solver = "rthc";
  s.kind = SolutionKind::none;

  const ObliqueAxes ob = rthc_oblique_axes(k, rho, tol);
  if (ob.solution.kind == SolutionKind::all_sphere) {
    s.kind = SolutionKind::all_sphere;
    const Vec3 n{{1.0, 0.0, 0.0}};
    const AxisVerdict v = axis_test(material, Direction(n), tol);
    AllSphereDescriptor d;
    d.sigma = v.sigma;
    d.gamma = v.gamma;
    d.v_double = v.v_double;
    d.v_single = v.v_single;
    d.spherical = v.kind == AxisKind::spherical;
    s.all_sphere = d;
    return s;
  }
  if (ob.solution.conic) {
    s.kind = SolutionKind::conic;
    s.conic = ob.solution.conic;
  }
  auto add = [&](const AxisVerdict& v) {
    if (s.conic && s.conic->distance(v.direction) < kDedupAngle) return;
    add_unique(s.axes, v);
  };
  for (const auto& v : rthc_coordinate_axes(k, rho, tol)) add(v);
  bool continuum = false;
  for (int p = 0; p < 3; ++p) {
    const InPlaneAxes ip = rthc_inplane_axes(k, rho, p, tol);
    if (ip.continuum) {
      s.continuum_planes.push_back(p);
      continuum = true;
    }
    for (const auto& v : ip.axes) add(v);
  }
  for (const auto& v : ob.solution.axes) add(v);

  if (!ob.applicable || continuum) {
    // Closed form does not cover these directions; confirm with the scan.
    const ScanResult sr = find_axes(material, 5000, tol);
    for (const auto& v : verdicts_of(material, sr.candidates, tol)) add(v);
    s.scan_supplemented = true;
  }
  detail::finish(s);
  return s;
}

inline AxisSolution solve_scan(const Material& material, std::size_t points = 5000,
                               double tol = kDefaultAxisTolerance) {
  AxisSolution s;
  s.solver = "scan";
  const ScanResult sr = find_axes(material, points, tol);
  s.axes = verdicts_of(material, sr.candidates, tol);
  detail::finish(s);
  return s;
}

inline AxisSolution solve(const Material& material) {
  const StiffnessVoigt& c = material.stiffness();
  // Cubic first: an isotropic stiffness is the cubic case with xi = 1.
  if (const auto cu = detail::as_cubic(c)) {
    const double alpha = cu->c11 - cu->c44, delta = cu->c12 + cu->c44;
    const double scale = c.max_abs();
    if (std::fabs(alpha) > 1e-12 * scale && std::fabs(delta) > 1e-12 * scale) {
      AxisSolution s = solve_cubic(cu->c11, cu->c12, cu->c44, material.density());
      detail::finish(s);
      return s;
    }
  }
  try {
    return solve_rthc(material, rthc_coefficients(material));
  } catch (const NotRTHC&) {
    return solve_scan(material);
  }
}

}  // namespace acax
