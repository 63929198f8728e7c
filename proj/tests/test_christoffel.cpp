#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace acax;
using acax::testing::Gen;

namespace {

// Cyclic Jacobi eigenvalues, independent of the closed-form solver.
std::array<double, 3> jacobi_values(Mat3 a) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    if (off < 1e-300) break;
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = 0.5 * std::atan2(2.0 * a(p, q), a(q, q) - a(p, p));
        const double c = std::cos(theta), s = std::sin(theta);
        Mat3 r = Mat3::identity();
        r(p, p) = c;
        r(q, q) = c;
        r(p, q) = s;
        r(q, p) = -s;
        a = transpose(r) * a * r;
      }
  }
  std::array<double, 3> v{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST(Christoffel, IsotropicClosedForm) {
  const Material m(Isotropic{2.0, 1.5}, 3.0);
  Gen g(21);
  for (int t = 0; t < 20; ++t) {
    const Vec3 n = g.unit();
    const Mat3 gam = gamma_of(m, Direction(n)).g;
    const Mat3 expect = (1.0 / 3.0) * ((2.0 + 1.5) * outer(n, n) + 1.5 * Mat3::identity());
    EXPECT_LT(frobenius(gam - expect), 1e-14);
  }
}

TEST(Christoffel, CubicOnAxis) {
  const Material m(Cubic{4.0, 1.0, 1.5}, 2.0);
  const Mat3 gam = gamma_of(m, Direction(Vec3{{1, 0, 0}})).g;
  EXPECT_DOUBLE_EQ(gam(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(gam(1, 1), 0.75);
  EXPECT_DOUBLE_EQ(gam(2, 2), 0.75);
  EXPECT_EQ(gam(0, 1), 0.0);
}

TEST(Christoffel, ReductionIsTraceless) {
  Gen g(22);
  for (int t = 0; t < 100; ++t) {
    const Material m(g.triclinic(), g.uniform(1, 5));
    const Direction n(g.unit());
    const AcousticTensor gam = gamma_of(m, n);
    const ReducedTensor r = reduce(gam);
    EXPECT_NEAR(trace(r.y), 0.0, 1e-13 * r.norm());
    EXPECT_NEAR(r.gamma, trace(gam.g) / 3.0, 1e-14 * std::fabs(r.gamma));
    EXPECT_EQ(gam.g(0, 1), gam.g(1, 0));
  }
}

TEST(Invariants, CayleyHamiltonAndAdjugateTrace) {
  Gen g(23);
  for (int t = 0; t < 500; ++t) {
    const ReducedTensor r{g.traceless(), 1.0};
    const InvariantSet inv = invariants(r);
    const Mat3 ch = r.y * r.y * r.y + inv.p * r.y + inv.q * Mat3::identity();
    const double n3 = r.norm() * r.norm() * r.norm();
    EXPECT_LE(frobenius(ch), 1e-12 * n3);
    EXPECT_NEAR(trace(adjugate(r.y)), -inv.tr_y2 / 2.0, 1e-12 * inv.tr_y2);
  }
}

TEST(Invariants, SigmaOnPlantedAxis) {
  Gen g(24);
  for (int t = 0; t < 200; ++t) {
    const double s = g.uniform(-3, 3);
    const ReducedTensor r{acax::testing::planted(s, g.unit()), 2.0};
    EXPECT_NEAR(invariants(r).sigma, s, 1e-13 * std::fabs(s) + 1e-300);
  }
}

TEST(SymEigen, MatchesJacobi) {
  Gen g(25);
  for (int t = 0; t < 1000; ++t) {
    const Mat3 y = g.traceless();
    const SymEigen e = sym_eigen_traceless(y);
    const auto ref = jacobi_values(y);
    const double scale = frobenius(y);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(e.values[k], ref[k], 1e-13 * scale) << t;
    for (int k = 0; k < 3; ++k) {
      const Vec3 v = e.vectors[k];
      EXPECT_NEAR(norm(v), 1.0, 1e-14);
      EXPECT_LT(norm(y * v - e.values[k] * v), 1e-13 * scale) << t << ' ' << k;
    }
    EXPECT_NEAR(dot(e.vectors[0], e.vectors[1]), 0.0, 1e-13);
    EXPECT_NEAR(dot(e.vectors[1], e.vectors[2]), 0.0, 1e-13);
  }
}

TEST(SymEigen, NearDegenerateStaysAccurate) {
  Gen g(26);
  for (int t = 0; t < 300; ++t) {
    const Vec3 q = g.unit();
    const double s = g.uniform(0.5, 2.0) * (t % 2 ? 1 : -1);
    const Mat3 y0 = acax::testing::planted(s, q);
    const double eps = std::pow(10.0, -g.uniform(4, 12));
    Mat3 pert = g.traceless();
    pert = (eps / frobenius(pert)) * pert;
    const Mat3 y = y0 + pert;
    const SymEigen e = sym_eigen_traceless(y);
    const Vec3 u = e.vectors[e.isolated];
    EXPECT_LT(norm(y * u - e.values[e.isolated] * u), 1e-13) << t;
    EXPECT_NEAR(e.values[e.isolated], -2.0 * s, 2.0 * eps + 1e-13);
    EXPECT_GT(std::fabs(dot(u, q)), 1.0 - 10.0 * eps / std::fabs(s) - 1e-12);
  }
}

TEST(SymEigen, ZeroMatrix) {
  const SymEigen e = sym_eigen_traceless(Mat3{});
  EXPECT_EQ(e.values[0], 0.0);
  EXPECT_EQ(e.values[2], 0.0);
}

TEST(Modes, IsotropicAlongX3) {
  const Material m(Isotropic{1.0, 1.0}, 1.0);
  const WaveModeSet w = eigenmodes(m, Direction(Vec3{{0, 0, 1}}));
  EXPECT_NEAR(w.modes[0].speed(), std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(w.modes[1].speed(), 1.0, 1e-14);
  EXPECT_NEAR(w.modes[2].speed(), 1.0, 1e-14);
  EXPECT_NEAR(std::fabs(w.modes[0].polarization[2]), 1.0, 1e-14);
  for (const auto& mode : w.modes) EXPECT_TRUE(mode.propagating());
}

TEST(Modes, NonPropagatingFlag) {
  // C44 < 0: shear modes along x1 have negative v^2.
  const Material m(Cubic{3.0, 1.0, -1.0}, 1.0);
  const WaveModeSet w = eigenmodes(m, Direction(Vec3{{1, 0, 0}}));
  EXPECT_TRUE(w.modes[0].propagating());
  EXPECT_FALSE(w.modes[2].propagating());
  EXPECT_EQ(w.modes[2].speed(), 0.0);
}

TEST(Special, CubicAxesArePureModes) {
  const Material m(Cubic{4.0, 1.0, 1.0}, 1.0);
  for (const Vec3& n : {Vec3{{1, 0, 0}}, Vec3{{0, 0, 1}}}) {
    const SpecialDirection s = classify_special(m, Direction(n), 1e-8);
    EXPECT_TRUE(s.pure_longitudinal);
    EXPECT_TRUE(s.pure_shear);
  }
  const double k = 1.0 / std::sqrt(3.0);
  const SpecialDirection d = classify_special(m, Direction(Vec3{{k, k, k}}), 1e-8);
  EXPECT_TRUE(d.pure_longitudinal);
  EXPECT_TRUE(d.pure_shear);
}

TEST(Special, GenericDirectionIsNeither) {
  const Material m(Cubic{4.0, 1.0, 1.0}, 1.0);
  const SpecialDirection s = classify_special(m, Direction::from_any(Vec3{{1.0, 0.3, 0.7}}), 1e-8);
  EXPECT_FALSE(s.pure_longitudinal);
  EXPECT_FALSE(s.pure_shear);
}
