#pragma once

// Elastic materials: Voigt stiffness, symmetry-class constants, density.

#include <array>
#include <cmath>
#include <string>
#include <variant>

#include "acax/errors.hpp"
#include "acax/linalg.hpp"

namespace acax {

/// 6x6 stiffness in Voigt notation, index map 11->0, 22->1, 33->2, 23->3,
/// 13->4, 12->5 (zero-based). No factor-of-2 scaling on shear entries.
struct StiffnessVoigt {
  std::array<std::array<double, 6>, 6> c{};

  constexpr double& operator()(std::size_t I, std::size_t J) { return c[I][J]; }
  constexpr double operator()(std::size_t I, std::size_t J) const { return c[I][J]; }

  friend constexpr bool operator==(const StiffnessVoigt&, const StiffnessVoigt&) = default;

  bool is_symmetric() const {
    for (std::size_t I = 0; I < 6; ++I)
      for (std::size_t J = I + 1; J < 6; ++J)
        if (c[I][J] != c[J][I]) return false;
    return true;
  }

  bool is_finite() const {
    for (const auto& r : c)
      for (double x : r)
        if (!std::isfinite(x)) return false;
    return true;
  }

  double max_abs() const {
    double s = 0.0;
    for (const auto& r : c)
      for (double x : r) s = std::fmax(s, std::fabs(x));
    return s;
  }
};

/// Voigt index of the symmetric tensor index pair (i, j).
constexpr std::size_t voigt_index(std::size_t i, std::size_t j) {
  if (i == j) return i;
  const std::size_t s = i + j;  // (1,2)->3, (0,2)->2, (0,1)->1
  return s == 3 ? 3 : (s == 2 ? 4 : 5);
}

// Symmetry-class constants. All moduli in Pa.
struct Isotropic { double lambda, mu; };
struct Cubic { double c11, c12, c44; };
struct Hexagonal { double c11, c12, c13, c33, c44; };  // symmetry axis x3
struct Tetragonal { double c11, c12, c13, c33, c44, c66; };
struct Orthorhombic { double c11, c22, c33, c12, c13, c23, c44, c55, c66; };
struct Triclinic { StiffnessVoigt voigt; };

using SymmetrySpec = std::variant<Isotropic, Cubic, Hexagonal, Tetragonal, Orthorhombic, Triclinic>;

namespace detail {

inline StiffnessVoigt orthotropic_voigt(double c11, double c22, double c33, double c12, double c13,
                                        double c23, double c44, double c55, double c66) {
  StiffnessVoigt s;
  s(0, 0) = c11;
  s(1, 1) = c22;
  s(2, 2) = c33;
  s(0, 1) = s(1, 0) = c12;
  s(0, 2) = s(2, 0) = c13;
  s(1, 2) = s(2, 1) = c23;
  s(3, 3) = c44;
  s(4, 4) = c55;
  s(5, 5) = c66;
  return s;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

/// Expands class constants into the full Voigt matrix; entries outside the
/// class pattern are zero. Hexagonal closes C66 = (C11 - C12) / 2.
inline StiffnessVoigt expand_symmetry(const SymmetrySpec& spec) {
  using detail::orthotropic_voigt;
  return std::visit(
      detail::overloaded{
          [](const Isotropic& s) {
            const double c11 = s.lambda + 2.0 * s.mu;
            return orthotropic_voigt(c11, c11, c11, s.lambda, s.lambda, s.lambda, s.mu, s.mu, s.mu);
          },
          [](const Cubic& s) {
            return orthotropic_voigt(s.c11, s.c11, s.c11, s.c12, s.c12, s.c12, s.c44, s.c44, s.c44);
          },
          [](const Hexagonal& s) {
            const double c66 = 0.5 * (s.c11 - s.c12);
            return orthotropic_voigt(s.c11, s.c11, s.c33, s.c12, s.c13, s.c13, s.c44, s.c44, c66);
          },
          [](const Tetragonal& s) {
            return orthotropic_voigt(s.c11, s.c11, s.c33, s.c12, s.c13, s.c13, s.c44, s.c44, s.c66);
          },
          [](const Orthorhombic& s) {
            return orthotropic_voigt(s.c11, s.c22, s.c33, s.c12, s.c13, s.c23, s.c44, s.c55, s.c66);
          },
          [](const Triclinic& s) { return s.voigt; },
      },
      spec);
}

/// Full fourth-order tensor C[i][j][k][l] with minor and major symmetries.
using FullTensor = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;

inline FullTensor full_tensor(const StiffnessVoigt& c) {
  FullTensor t{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < 3; ++l) t[i][j][k][l] = c(voigt_index(i, j), voigt_index(k, l));
  return t;
}

inline constexpr double kUnitTolerance = 1e-12;

inline void require_unit(const Vec3& n) {
  const double len = norm(n);
  if (!(std::fabs(len - 1.0) <= kUnitTolerance)) {
    throw NonUnitDirection("direction is not a unit vector (|n| = " + std::to_string(len) + ")");
  }
}

/// rho * Gamma: the contraction C^{ijkl} n_j n_k, read directly off the Voigt matrix.
inline Mat3 full_tensor_contract(const StiffnessVoigt& c, const Vec3& n) {
  require_unit(n);
  Mat3 g;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t l = i; l < 3; ++l) {
      double s = 0.0;
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) s += c(voigt_index(i, j), voigt_index(k, l)) * n[j] * n[k];
      g(i, l) = s;
      g(l, i) = s;
    }
  }
  return g;
}

/// Density plus stiffness; the physical input to every solver.
class Material {
 public:
  Material(const StiffnessVoigt& stiffness, double density) : stiffness_(stiffness), density_(density) {
    if (!(density > 0.0) || !std::isfinite(density)) {
      throw InvalidMaterial("density must be positive and finite");
    }
    if (!stiffness.is_finite()) throw InvalidMaterial("stiffness has non-finite entries");
    if (!stiffness.is_symmetric()) throw InvalidMaterial("stiffness matrix is not symmetric");
  }
  Material(const SymmetrySpec& spec, double density) : Material(expand_symmetry(spec), density) {}

  const StiffnessVoigt& stiffness() const { return stiffness_; }
  double density() const { return density_; }

  friend bool operator==(const Material&, const Material&) = default;

 private:
  StiffnessVoigt stiffness_;
  double density_;
};

/// Born stability for cubic crystals.
constexpr bool born_stability_cubic(double c11, double c12, double c44) {
  return c11 - c12 > 0.0 && c11 + 2.0 * c12 > 0.0 && c44 > 0.0;
}

/// Both squared speeds along an axis (gamma + sigma and gamma - 2 sigma) are
/// positive iff gamma/2 > sigma > -gamma.
constexpr bool speed_bound_check(double gamma, double sigma) { return gamma / 2.0 > sigma && sigma > -gamma; }

/// Axis-existence bounds for cubic crystals in the reduced coordinates
/// X = C44/C11, Y = C12/C11 (with C11 > 0): coordinate axes need X > 0,
/// body diagonals need -1/2 - 2X < Y < 1 + X.
constexpr bool cubic_axis_bounds(double x, double y) { return x > 0.0 && -0.5 - 2.0 * x < y && y < 1.0 + x; }

}  // namespace acax
