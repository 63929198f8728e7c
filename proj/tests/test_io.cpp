#include <gtest/gtest.h>

#include "acax/io.hpp"
#include "support.hpp"

using namespace acax;
using io::json;

namespace {

std::string material_path(const std::string& name) { return std::string(ACAX_MATERIALS_DIR) + "/" + name; }

json cubic_doc() {
  return json::parse(R"({"density": 2.0, "symmetry": "cubic", "constants": {"C11": 4, "C12": 1, "C44": 1}})");
}

}  // namespace

TEST(Loader, SymmetryForm) {
  const Material m = io::material_from_json(cubic_doc());
  EXPECT_EQ(m.density(), 2.0);
  EXPECT_EQ(m.stiffness()(0, 0), 4.0);
  EXPECT_EQ(m.stiffness()(1, 2), 1.0);
  EXPECT_EQ(m.stiffness()(5, 5), 1.0);
  EXPECT_EQ(m.stiffness()(0, 3), 0.0);
}

TEST(Loader, VoigtFormMatchesSymmetryForm) {
  const Material a = io::material_from_json(cubic_doc());
  json j = {{"density", 2.0}, {"voigt", json::array()}};
  for (const auto& row : a.stiffness().c) j["voigt"].push_back(json(row));
  const Material b = io::material_from_json(j);
  EXPECT_EQ(a.stiffness().c, b.stiffness().c);
}

TEST(Loader, Units) {
  json j = cubic_doc();
  j["units"] = "GPa";
  EXPECT_EQ(io::material_from_json(j).stiffness()(0, 0), 4e9);
  EXPECT_EQ(io::material_from_json(j, io::Units::pa).stiffness()(0, 0), 4.0);
  EXPECT_EQ(io::material_from_json(cubic_doc(), io::Units::gpa).stiffness()(0, 0), 4e9);
  j["units"] = "kbar";
  EXPECT_THROW(io::material_from_json(j), io::SchemaError);
}

TEST(Loader, SchemaErrors) {
  auto bad = [](const char* text) { return json::parse(text); };
  EXPECT_THROW(io::material_from_json(bad("[1,2]")), io::SchemaError);
  EXPECT_THROW(io::material_from_json(bad(R"({"symmetry": "cubic", "constants": {"C11": 4, "C12": 1, "C44": 1}})")),
               io::SchemaError);
  EXPECT_THROW(io::material_from_json(bad(R"({"density": 0, "symmetry": "cubic", "constants": {"C11": 4, "C12": 1, "C44": 1}})")),
               io::SchemaError);
  EXPECT_THROW(io::material_from_json(bad(R"({"density": 1, "symmetry": "cubic", "constants": {"C11": 4, "C12": 1}})")),
               io::SchemaError);
  EXPECT_THROW(io::material_from_json(bad(R"({"density": 1, "symmetry": "trigonal", "constants": {}})")),
               io::SchemaError);
  EXPECT_THROW(io::material_from_json(bad(R"({"density": 1, "voigt": [[1,2],[3,4]]})")), io::SchemaError);
  json asym = {{"density", 1.0}, {"voigt", json::array()}};
  for (int i = 0; i < 6; ++i) asym["voigt"].push_back(json(std::vector<double>(6, i == 0 ? 1.0 : 0.0)));
  asym["voigt"][0][1] = 0.5;
  EXPECT_THROW(io::material_from_json(asym), io::SchemaError);
  EXPECT_THROW(io::load_material(material_path("malformed.json")), io::SchemaError);
  EXPECT_THROW(io::load_material(material_path("does_not_exist.json")), io::SchemaError);
}

TEST(Loader, NonFinite) {
  EXPECT_THROW(io::load_material(material_path("nonfinite.json")), io::NonFiniteError);
  for (const char* s : {"nan", "-inf", "Infinity"}) {
    json j = cubic_doc();
    j["constants"]["C44"] = s;
    EXPECT_THROW(io::material_from_json(j), io::NonFiniteError) << s;
  }
  json j = cubic_doc();
  j["constants"]["C12"] = nullptr;
  EXPECT_THROW(io::material_from_json(j), io::NonFiniteError);
  // Finite in GPa, overflows once converted to Pa.
  j = cubic_doc();
  j["constants"]["C11"] = 1e305;
  EXPECT_THROW(io::material_from_json(j, io::Units::gpa), io::NonFiniteError);
}

// Stability is reported, not enforced.
TEST(Loader, UnstableMaterialAccepted) {
  json j = cubic_doc();
  j["constants"]["C44"] = -1.0;
  EXPECT_NO_THROW(io::material_from_json(j));
}

TEST(Loader, ShippedMaterialsLoad) {
  for (const char* f : {"cubic_311.json", "cubic_411.json", "isotropic.json", "hexagonal_conic.json", "copper.json",
                        "orthorhombic.json"})
    EXPECT_NO_THROW(io::load_material(material_path(f))) << f;
  EXPECT_EQ(io::load_material(material_path("copper.json")).stiffness()(0, 0), 168.4e9);
}

TEST(Report, RoundTrip) {
  for (const char* f : {"cubic_411.json", "cubic_311.json", "hexagonal_conic.json", "orthorhombic.json", "isotropic.json"}) {
    const Material m = io::load_material(material_path(f));
    const AxisSolution s = solve(m);
    const json report = io::run_report(m, s, 1.5);
    const json again = json::parse(report.dump());
    EXPECT_EQ(again, report) << f;

    const AxisSolution back = io::solution_from_json(again);
    EXPECT_EQ(back.kind, s.kind);
    EXPECT_EQ(back.solver, s.solver);
    ASSERT_EQ(back.axes.size(), s.axes.size());
    for (std::size_t i = 0; i < s.axes.size(); ++i) {
      EXPECT_EQ(back.axes[i].direction, s.axes[i].direction);
      EXPECT_EQ(back.axes[i].sigma, s.axes[i].sigma);
      EXPECT_EQ(back.axes[i].kind, s.axes[i].kind);
    }
    EXPECT_EQ(io::to_json(back), io::to_json(s)) << f;

    // The echoed material solves to the same axes.
    const Material echoed = io::material_from_json(again);
    EXPECT_EQ(echoed.stiffness().c, m.stiffness().c);
    const AxisSolution re = solve(echoed);
    ASSERT_EQ(re.axes.size(), s.axes.size()) << f;
    for (std::size_t i = 0; i < s.axes.size(); ++i)
      EXPECT_LT(projective_angle(re.axes[i].direction, s.axes[i].direction), 1e-12) << f;
  }
}

TEST(Report, Fields) {
  const Material m = io::load_material(material_path("hexagonal_conic.json"));
  const json r = io::run_report(m, solve(m), 0.0);
  EXPECT_EQ(r.at("solution_kind"), "conic");
  EXPECT_TRUE(r.at("conic").at("axisymmetric").get<bool>());
  EXPECT_NEAR(r.at("conic").at("half_angle").get<double>(), std::atan(std::sqrt(7.0 / 3.0)), 1e-12);
  EXPECT_TRUE(r.at("all_sphere").is_null());
  EXPECT_EQ(r.at("material").at("units"), "Pa");
  for (const auto& a : r.at("axes")) EXPECT_TRUE(a.at("is_axis").get<bool>());
}
