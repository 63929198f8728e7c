#pragma once

// Acoustic-axis criteria. Every residual is evaluated on the unit-normalized
// tensor y = Y / |Y|_F so the defining polynomial identities, which are
// homogeneous, share one scale-free tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "acax/christoffel.hpp"
#include "acax/linalg.hpp"

namespace acax {

inline constexpr double kDefaultAxisTolerance = 1e-8;

namespace detail {

inline double safe_norm(const ReducedTensor& r) { return std::max(r.norm(), 1e-300); }

}  // namespace detail

/// |6 (tr Y^3)^2 - (tr Y^2)^3| / (tr Y^2)^3. Zero for the spherical case.
inline double discriminant_residual(const ReducedTensor& r) {
  if (r.is_spherical()) return 0.0;
  const Mat3 y = (1.0 / detail::safe_norm(r)) * r.y;
  const Mat3 y2 = y * y;
  const double t2 = trace(y2);
  const double t3 = trace(y2 * y);
  const double t2_cubed = t2 * t2 * t2;
  return std::fabs(6.0 * t3 * t3 - t2_cubed) / std::max(t2_cubed, 1e-300);
}

/// |sigma^2 I + sigma Y + adj Y|_F / |Y|_F^2.
inline double adjoint_residual(const ReducedTensor& r, double sigma) {
  if (r.is_spherical()) return 0.0;
  const double s = 1.0 / detail::safe_norm(r);
  const Mat3 y = s * r.y;
  const double sg = s * sigma;
  return frobenius(sg * sg * Mat3::identity() + sg * y + adjugate(y));
}

/// |Y^2 + sigma Y - 2 sigma^2 I|_F / |Y|_F^2.
inline double minimal_poly_residual(const ReducedTensor& r, double sigma) {
  if (r.is_spherical()) return 0.0;
  const double s = 1.0 / detail::safe_norm(r);
  const Mat3 y = s * r.y;
  const double sg = s * sigma;
  return frobenius(y * y + sg * y - 2.0 * sg * sg * Mat3::identity());
}

enum class TriState { pass, fail, inconclusive };

inline const char* to_string(TriState t) {
  switch (t) {
    case TriState::pass: return "pass";
    case TriState::fail: return "fail";
    case TriState::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Khatkevich pair. Only a necessary condition when an off-diagonal entry of
/// Y vanishes; `verdict` then reports inconclusive instead of pass.
struct KhatkevichPair {
  double r1 = 0.0;
  double r2 = 0.0;
  double offdiag_product = 0.0;  // y12 * y13 * y23 on the normalized tensor

  double magnitude() const { return std::hypot(r1, r2); }

  TriState verdict(double tol) const {
    if (magnitude() > tol) return TriState::fail;
    if (std::fabs(offdiag_product) <= tol) return TriState::inconclusive;
    return TriState::pass;
  }
};

inline KhatkevichPair khatkevich(const ReducedTensor& r) {
  if (r.is_spherical()) return {};
  const Mat3 y = (1.0 / detail::safe_norm(r)) * r.y;
  const double y11 = y(0, 0), y22 = y(1, 1), y33 = y(2, 2);
  const double y12 = y(0, 1), y13 = y(0, 2), y23 = y(1, 2);
  KhatkevichPair k;
  k.r1 = (y11 - y22) * y13 * y23 - y12 * (y13 * y13 - y23 * y23);
  k.r2 = (y11 - y33) * y12 * y23 - y13 * (y12 * y12 - y23 * y23);
  k.offdiag_product = y12 * y13 * y23;
  return k;
}

/// The seven Alshits-Lothe polynomials R1..R7 on the normalized tensor.
inline std::array<double, 7> alshits_lothe(const ReducedTensor& r) {
  if (r.is_spherical()) return {};
  const Mat3 y = (1.0 / detail::safe_norm(r)) * r.y;
  const double y11 = y(0, 0), y22 = y(1, 1), y33 = y(2, 2);
  const double y12 = y(0, 1), y13 = y(0, 2), y23 = y(1, 2);
  const double s12 = y12 * y12, s13 = y13 * y13, s23 = y23 * y23;
  std::array<double, 7> R{};
  R[0] = (y11 - y22) * y13 * y23 - y12 * (s13 - s23);
  R[1] = (y11 - y33) * y12 * y23 - y13 * (s12 - s23);
  R[2] = (y22 - y33) * y12 * y13 - y23 * (s12 - s13);
  R[3] = (y11 - y22) * (y11 - y33) * y23 - (y11 - y33) * y12 * y13 + y23 * (s12 - s23);
  R[4] = (y22 - y11) * (y22 - y33) * y13 - (y22 - y33) * y12 * y23 + y13 * (s12 - s13);
  R[5] = (y33 - y11) * (y33 - y22) * y12 - (y33 - y22) * y13 * y23 + y12 * (s13 - s12);
  R[6] = (y11 - y22) * (y22 - y33) * (y11 - y33) + (y22 - y33) * (s13 - s23) + (y11 - y22) * (s13 - s12);
  return R;
}

inline double alshits_lothe_norm(const std::array<double, 7>& R) {
  double s = 0.0;
  for (double x : R) s += x * x;
  return std::sqrt(s);
}

/// Fully symmetric third-order tensor with [m, Ym, Y^2 m] = phi_ijk m_i m_j m_k.
/// Stored as the 10 independent components; symmetrization is the average
/// over index permutations.
class NorrisTensor {
 public:
  // Component order: 111 112 113 122 123 133 222 223 233 333.
  static constexpr std::array<std::array<int, 3>, 10> kIndices{{{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 1},
                                                                 {0, 1, 2}, {0, 2, 2}, {1, 1, 1}, {1, 1, 2},
                                                                 {1, 2, 2}, {2, 2, 2}}};
  static constexpr std::array<int, 10> kMultiplicity{1, 3, 3, 3, 6, 3, 1, 3, 3, 1};

  NorrisTensor() = default;
  explicit NorrisTensor(const std::array<double, 10>& c) : c_(c) {}

  const std::array<double, 10>& components() const { return c_; }

  double operator()(int i, int j, int k) const {
    std::array<int, 3> idx{i, j, k};
    std::sort(idx.begin(), idx.end());
    for (std::size_t a = 0; a < 10; ++a)
      if (kIndices[a] == idx) return c_[a];
    return 0.0;
  }

  /// Frobenius norm over all 27 entries.
  double norm() const {
    double s = 0.0;
    for (std::size_t a = 0; a < 10; ++a) s += kMultiplicity[a] * c_[a] * c_[a];
    return std::sqrt(s);
  }

  /// phi_ijj for i = 1..3.
  Vec3 trace_vector() const {
    Vec3 t;
    for (int i = 0; i < 3; ++i) t[i] = (*this)(i, 0, 0) + (*this)(i, 1, 1) + (*this)(i, 2, 2);
    return t;
  }

  double contract(const Vec3& m) const {
    double s = 0.0;
    for (std::size_t a = 0; a < 10; ++a) {
      const auto& ix = kIndices[a];
      s += kMultiplicity[a] * c_[a] * m[ix[0]] * m[ix[1]] * m[ix[2]];
    }
    return s;
  }

 private:
  std::array<double, 10> c_{};
};

namespace detail {

constexpr int levi_civita(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  return ((i == 0 && j == 1) || (i == 1 && j == 2) || (i == 2 && j == 0)) ? 1 : -1;
}

inline NorrisTensor norris_of(const Mat3& y) {
  const Mat3 y2 = y * y;
  // t_ijk = eps_irs Y_rj (Y^2)_sk
  double t[3][3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double s = 0.0;
        for (int r = 0; r < 3; ++r)
          for (int q = 0; q < 3; ++q) {
            const int e = levi_civita(i, r, q);
            if (e != 0) s += e * y(r, j) * y2(q, k);
          }
        t[i][j][k] = s;
      }
  std::array<double, 10> c{};
  for (std::size_t a = 0; a < 10; ++a) {
    const auto& ix = NorrisTensor::kIndices[a];
    const int i = ix[0], j = ix[1], k = ix[2];
    c[a] = (t[i][j][k] + t[i][k][j] + t[j][i][k] + t[j][k][i] + t[k][i][j] + t[k][j][i]) / 6.0;
  }
  return NorrisTensor(c);
}

}  // namespace detail

inline NorrisTensor norris(const ReducedTensor& r) { return detail::norris_of(r.y); }

/// |phi|_F / |Y|_F^3.
inline double norris_residual(const ReducedTensor& r) {
  if (r.is_spherical()) return 0.0;
  return detail::norris_of((1.0 / detail::safe_norm(r)) * r.y).norm();
}

/// |Y - sigma (I - 3 q q)|_F / |Y|_F.
inline double polarization_residual(const ReducedTensor& r, double sigma, const Vec3& q) {
  const Mat3 model = sigma * (Mat3::identity() - 3.0 * outer(q, q));
  return frobenius(r.y - model) / std::max(r.norm(), 1e-300);
}

struct CriteriaResiduals {
  double discriminant = 0.0;
  double adjoint = 0.0;
  double minimal_poly = 0.0;
  KhatkevichPair khatkevich;
  std::array<double, 7> alshits_lothe{};
  double norris = 0.0;
  double polarization = 0.0;

  double alshits_lothe_norm() const { return acax::alshits_lothe_norm(alshits_lothe); }
};

enum class AxisKind { none, prolate, oblate, spherical };

inline const char* to_string(AxisKind k) {
  switch (k) {
    case AxisKind::none: return "none";
    case AxisKind::prolate: return "prolate";
    case AxisKind::oblate: return "oblate";
    case AxisKind::spherical: return "spherical";
  }
  return "?";
}

inline AxisKind axis_kind_from_string(const std::string& s) {
  if (s == "prolate") return AxisKind::prolate;
  if (s == "oblate") return AxisKind::oblate;
  if (s == "spherical") return AxisKind::spherical;
  return AxisKind::none;
}

/// Full verdict for one direction.
struct AxisVerdict {
  Vec3 direction;
  AxisKind kind = AxisKind::none;
  double sigma = 0.0;
  double gamma = 0.0;
  Vec3 q;                 // polarization of the single eigenvalue, canonical sign
  double v_double = 0.0;  // sqrt(gamma + sigma) when propagating
  double v_single = 0.0;  // sqrt(gamma - 2 sigma) when propagating
  bool double_propagating = false;
  bool single_propagating = false;
  CriteriaResiduals residuals;

  bool is_axis() const { return kind != AxisKind::none; }
};

inline CriteriaResiduals all_residuals(const ReducedTensor& r, double sigma, const Vec3& q) {
  CriteriaResiduals c;
  c.discriminant = discriminant_residual(r);
  c.adjoint = adjoint_residual(r, sigma);
  c.minimal_poly = minimal_poly_residual(r, sigma);
  c.khatkevich = khatkevich(r);
  c.alshits_lothe = alshits_lothe(r);
  c.norris = norris_residual(r);
  c.polarization = r.is_spherical() ? 0.0 : polarization_residual(r, sigma, q);
  return c;
}

/// Verdict from an already reduced tensor; `n` is only echoed.
inline AxisVerdict axis_test(const ReducedTensor& r, const Vec3& n, double tol = kDefaultAxisTolerance) {
  AxisVerdict v;
  v.direction = n;
  v.gamma = r.gamma;
  const InvariantSet inv = invariants(r);

  if (r.is_spherical()) {
    v.kind = AxisKind::spherical;
    v.sigma = 0.0;
    v.q = canonical_sign(n);
  } else {
    v.sigma = inv.sigma;
    const SymEigen e = sym_eigen_traceless(r.y, r.zero_threshold());
    v.q = canonical_sign(e.vectors[e.isolated]);
    const double mp = minimal_poly_residual(r, v.sigma);
    const double target = inv.tr_y2 / 6.0;
    const bool sigma_consistent = std::fabs(v.sigma * v.sigma - target) <= tol * target;
    if (mp <= tol && sigma_consistent) {
      v.kind = inv.det_y > 0.0 ? AxisKind::prolate : AxisKind::oblate;
    }
  }
  v.residuals = all_residuals(r, v.sigma, v.q);

  const double vd2 = v.gamma + v.sigma;
  const double vs2 = v.gamma - 2.0 * v.sigma;
  v.double_propagating = vd2 > 0.0;
  v.single_propagating = vs2 > 0.0;
  v.v_double = v.double_propagating ? std::sqrt(vd2) : 0.0;
  v.v_single = v.single_propagating ? std::sqrt(vs2) : 0.0;
  return v;
}

inline AxisVerdict axis_test(const Material& material, const Direction& n, double tol = kDefaultAxisTolerance) {
  return axis_test(reduce(material, n), n.vec(), tol);
}

}  // namespace acax
