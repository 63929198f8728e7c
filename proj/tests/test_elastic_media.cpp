#include <gtest/gtest.h>

#include "support.hpp"

using namespace acax;
using acax::testing::Gen;

TEST(VoigtIndex, MapsPairs) {
  EXPECT_EQ(voigt_index(0, 0), 0u);
  EXPECT_EQ(voigt_index(1, 1), 1u);
  EXPECT_EQ(voigt_index(2, 2), 2u);
  EXPECT_EQ(voigt_index(1, 2), 3u);
  EXPECT_EQ(voigt_index(2, 1), 3u);
  EXPECT_EQ(voigt_index(0, 2), 4u);
  EXPECT_EQ(voigt_index(2, 0), 4u);
  EXPECT_EQ(voigt_index(0, 1), 5u);
  EXPECT_EQ(voigt_index(1, 0), 5u);
}

TEST(FullTensor, HasMinorAndMajorSymmetry) {
  Gen g(11);
  const FullTensor t = full_tensor(g.triclinic());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          EXPECT_EQ(t[i][j][k][l], t[j][i][k][l]);
          EXPECT_EQ(t[i][j][k][l], t[i][j][l][k]);
          EXPECT_EQ(t[i][j][k][l], t[k][l][i][j]);
        }
}

TEST(FullTensor, ContractionMatchesExplicitSum) {
  Gen g(12);
  for (int trial = 0; trial < 50; ++trial) {
    const StiffnessVoigt c = g.triclinic();
    const FullTensor t = full_tensor(c);
    const Vec3 n = g.unit();
    const Mat3 fast = full_tensor_contract(c, n);
    for (int i = 0; i < 3; ++i)
      for (int l = 0; l < 3; ++l) {
        double s = 0.0;
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) s += t[i][j][k][l] * n[j] * n[k];
        EXPECT_NEAR(fast(i, l), s, 1e-12 * 300) << "trial " << trial;
      }
  }
}

TEST(ExpandSymmetry, Isotropic) {
  const StiffnessVoigt c = expand_symmetry(Isotropic{2.0, 3.0});
  EXPECT_EQ(c(0, 0), 8.0);
  EXPECT_EQ(c(2, 2), 8.0);
  EXPECT_EQ(c(0, 1), 2.0);
  EXPECT_EQ(c(3, 3), 3.0);
  EXPECT_EQ(c(0, 3), 0.0);
  EXPECT_TRUE(c.is_symmetric());
}

TEST(ExpandSymmetry, HexagonalClosesC66) {
  const StiffnessVoigt c = expand_symmetry(Hexagonal{10.0, 4.0, 3.0, 8.0, 2.0});
  EXPECT_EQ(c(5, 5), 3.0);
  EXPECT_EQ(c(1, 1), 10.0);
  EXPECT_EQ(c(1, 2), 3.0);
  EXPECT_EQ(c(4, 4), 2.0);
}

TEST(ExpandSymmetry, OrthorhombicPlacesConstants) {
  const StiffnessVoigt c = expand_symmetry(Orthorhombic{1, 2, 3, 4, 5, 6, 7, 8, 9});
  EXPECT_EQ(c(0, 0), 1);
  EXPECT_EQ(c(1, 1), 2);
  EXPECT_EQ(c(2, 2), 3);
  EXPECT_EQ(c(0, 1), 4);
  EXPECT_EQ(c(0, 2), 5);
  EXPECT_EQ(c(1, 2), 6);
  EXPECT_EQ(c(3, 3), 7);
  EXPECT_EQ(c(4, 4), 8);
  EXPECT_EQ(c(5, 5), 9);
}

TEST(Material, RejectsBadInput) {
  const StiffnessVoigt good = expand_symmetry(Cubic{3, 1, 1});
  EXPECT_THROW(Material(good, 0.0), InvalidMaterial);
  EXPECT_THROW(Material(good, -1.0), InvalidMaterial);
  EXPECT_THROW(Material(good, std::nan("")), InvalidMaterial);
  StiffnessVoigt asym = good;
  asym(0, 3) = 1.0;
  EXPECT_THROW(Material(asym, 1.0), InvalidMaterial);
  StiffnessVoigt nonfinite = good;
  nonfinite(2, 2) = INFINITY;
  EXPECT_THROW(Material(nonfinite, 1.0), InvalidMaterial);
  EXPECT_NO_THROW(Material(good, 1.0));
}

TEST(Direction, UnitCheck) {
  EXPECT_NO_THROW(Direction(Vec3{{1, 0, 0}}));
  EXPECT_THROW(Direction(Vec3{{1.0 + 1e-9, 0, 0}}), NonUnitDirection);
  EXPECT_THROW(Direction::from_any(Vec3{{0, 0, 0}}), ZeroDirection);
  const Direction d = Direction::from_any(Vec3{{3, 4, 0}});
  EXPECT_NEAR(d[0], 0.6, 1e-15);
  EXPECT_NEAR(d[1], 0.8, 1e-15);
}

TEST(Stability, BornCubic) {
  EXPECT_TRUE(born_stability_cubic(3, 1, 1));
  EXPECT_FALSE(born_stability_cubic(1, 1, 1));   // C11 - C12 = 0
  EXPECT_FALSE(born_stability_cubic(1, -0.6, 1)); // C11 + 2 C12 < 0
  EXPECT_FALSE(born_stability_cubic(3, 1, 0));
}

TEST(Stability, SpeedBound) {
  EXPECT_TRUE(speed_bound_check(5.0 / 3.0, -2.0 / 3.0));
  EXPECT_FALSE(speed_bound_check(1.0, 0.6));
  EXPECT_FALSE(speed_bound_check(1.0, -1.2));
}

// Axis bounds in (X, Y) equal positivity of both squared speeds on the
// coordinate axes and the diagonals, checked against direct speeds.
TEST(Stability, CubicAxisBoundsMatchSpeeds) {
  for (int i = 1; i <= 40; ++i)
    for (int j = -40; j <= 40; ++j) {
      const double x = 0.05 * i, y = 0.05 * j;
      // Points on the boundary lines are decided by rounding; skip them.
      if (std::fabs(y - 1.0 - x) < 1e-9 || std::fabs(y + 0.5 + 2.0 * x) < 1e-9) continue;
      const double c11 = 1.0, c44 = x, c12 = y;
      const double coord_d = c44, coord_s = c11;
      const double diag_d = (c11 - c12 + c44) / 3.0, diag_s = (c11 + 2.0 * c12 + 4.0 * c44) / 3.0;
      const bool speeds = coord_d > 0 && coord_s > 0 && diag_d > 0 && diag_s > 0;
      EXPECT_EQ(cubic_axis_bounds(x, y), speeds) << x << ' ' << y;
    }
}
