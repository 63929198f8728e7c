#pragma once

// JSON material files and run reports (nlohmann::json).

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acax/closed_form.hpp"
#include "acax/criteria.hpp"
#include "acax/elastic_media.hpp"
#include "acax/solution.hpp"

namespace acax::io {

using json = nlohmann::json;

/// Malformed input; the message names the offending field.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A constant or the density is NaN or infinite.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

enum class Units { pa, gpa };

inline std::optional<Units> units_from_string(const std::string& s) {
  if (s == "Pa") return Units::pa;
  if (s == "GPa") return Units::gpa;
  return std::nullopt;
}

namespace detail {

// Numbers may also be given as "nan"/"inf" strings (JSON has no literal for
// them); null is what nlohmann writes for a NaN, so it counts as non-finite too.
inline double value(const json& v, const std::string& where) {
  if (v.is_null()) throw NonFiniteError("field '" + where + "' is not finite");
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.erase(0, 1);
    if (s == "nan" || s == "inf" || s == "infinity") throw NonFiniteError("field '" + where + "' is not finite");
    throw SchemaError("field '" + where + "' must be a number");
  }
  if (!v.is_number()) throw SchemaError("field '" + where + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw NonFiniteError("field '" + where + "' is not finite");
  return x;
}

inline double number(const json& obj, const std::string& key, const std::string& path) {
  const std::string where = path.empty() ? key : path + "." + key;
  if (!obj.is_object() || !obj.contains(key)) throw SchemaError("missing field '" + where + "'");
  return value(obj.at(key), where);
}

inline StiffnessVoigt voigt_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 6) throw SchemaError("field '" + path + "' must be a 6x6 array");
  StiffnessVoigt c;
  for (std::size_t i = 0; i < 6; ++i) {
    const json& row = j[i];
    if (!row.is_array() || row.size() != 6) throw SchemaError("field '" + path + "' must be a 6x6 array");
    for (std::size_t k = 0; k < 6; ++k)
      c(i, k) = value(row[k], path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t k = i + 1; k < 6; ++k)
      if (c(i, k) != c(k, i)) throw SchemaError("field '" + path + "' is not symmetric");
  return c;
}

inline SymmetrySpec spec_from_json(const std::string& sym, const json& cs) {
  auto n = [&](const char* name) { return number(cs, name, "constants"); };
  if (sym == "isotropic") return Isotropic{n("lambda"), n("mu")};
  if (sym == "cubic") return Cubic{n("C11"), n("C12"), n("C44")};
  if (sym == "hexagonal") return Hexagonal{n("C11"), n("C12"), n("C13"), n("C33"), n("C44")};
  if (sym == "tetragonal") return Tetragonal{n("C11"), n("C12"), n("C13"), n("C33"), n("C44"), n("C66")};
  if (sym == "orthorhombic")
    return Orthorhombic{n("C11"), n("C22"), n("C33"), n("C12"), n("C13"), n("C23"), n("C44"), n("C55"), n("C66")};
  throw SchemaError("field 'symmetry' has unknown value '" + sym + "'");
}

}  // namespace detail

/// Material from a material file or from a report carrying a "material" echo.
/// `units` overrides the file's own "units" field.
inline Material material_from_json(const json& j_in, std::optional<Units> units = std::nullopt) {
  if (!j_in.is_object()) throw SchemaError("material document must be a JSON object");
  const json& j = j_in.contains("material") ? j_in.at("material") : j_in;
  if (!j.is_object()) throw SchemaError("field 'material' must be an object");

  const double density = detail::number(j, "density", "");
  if (!(density > 0.0)) throw SchemaError("field 'density' must be positive");

  Units u = Units::pa;
  if (j.contains("units")) {
    if (!j.at("units").is_string()) throw SchemaError("field 'units' must be \"Pa\" or \"GPa\"");
    const auto parsed = units_from_string(j.at("units").get<std::string>());
    if (!parsed) throw SchemaError("field 'units' must be \"Pa\" or \"GPa\"");
    u = *parsed;
  }
  if (units) u = *units;

  StiffnessVoigt c;
  if (j.contains("voigt")) {
    c = detail::voigt_from_json(j.at("voigt"), "voigt");
  } else {
    if (!j.contains("symmetry")) throw SchemaError("missing field 'symmetry' (or 'voigt')");
    if (!j.at("symmetry").is_string()) throw SchemaError("field 'symmetry' must be a string");
    if (!j.contains("constants") || !j.at("constants").is_object())
      throw SchemaError("missing field 'constants'");
    c = expand_symmetry(detail::spec_from_json(j.at("symmetry").get<std::string>(), j.at("constants")));
  }
  if (u == Units::gpa)
    for (auto& row : c.c)
      for (double& x : row) x *= 1e9;
  if (!c.is_finite()) throw NonFiniteError("stiffness is not finite after unit conversion");
  return Material(c, density);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open material file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

inline Material load_material(const std::string& path, std::optional<Units> units = std::nullopt) {
  return material_from_json(read_json_file(path), units);
}

// ---------------------------------------------------------------------------
// output

inline json to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

inline Vec3 vec_from_json(const json& j) { return Vec3{{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}}; }

/// Echo in SI: density plus the full Voigt matrix in Pa.
inline json material_to_json(const Material& m) {
  json v = json::array();
  for (const auto& row : m.stiffness().c) v.push_back(json(row));
  return {{"density", m.density()}, {"units", "Pa"}, {"voigt", v}};
}

inline json to_json(const CriteriaResiduals& r, double tol) {
  return {{"discriminant", r.discriminant},
          {"adjoint", r.adjoint},
          {"minimal_poly", r.minimal_poly},
          {"khatkevich",
           {{"r1", r.khatkevich.r1},
            {"r2", r.khatkevich.r2},
            {"offdiag_product", r.khatkevich.offdiag_product},
            {"verdict", to_string(r.khatkevich.verdict(tol))}}},
          {"alshits_lothe", r.alshits_lothe},
          {"norris", r.norris},
          {"polarization", r.polarization}};
}

inline CriteriaResiduals residuals_from_json(const json& j) {
  CriteriaResiduals r;
  r.discriminant = j.at("discriminant").get<double>();
  r.adjoint = j.at("adjoint").get<double>();
  r.minimal_poly = j.at("minimal_poly").get<double>();
  r.khatkevich.r1 = j.at("khatkevich").at("r1").get<double>();
  r.khatkevich.r2 = j.at("khatkevich").at("r2").get<double>();
  r.khatkevich.offdiag_product = j.at("khatkevich").at("offdiag_product").get<double>();
  r.alshits_lothe = j.at("alshits_lothe").get<std::array<double, 7>>();
  r.norris = j.at("norris").get<double>();
  r.polarization = j.at("polarization").get<double>();
  return r;
}

inline json to_json(const AxisVerdict& v, double tol = kDefaultAxisTolerance) {
  return {{"direction", to_json(v.direction)},
          {"kind", to_string(v.kind)},
          {"is_axis", v.is_axis()},
          {"sigma", v.sigma},
          {"gamma", v.gamma},
          {"q", to_json(v.q)},
          {"v_double", v.v_double},
          {"v_single", v.v_single},
          {"double_propagating", v.double_propagating},
          {"single_propagating", v.single_propagating},
          {"residuals", to_json(v.residuals, tol)}};
}

inline AxisVerdict verdict_from_json(const json& j) {
  AxisVerdict v;
  v.direction = vec_from_json(j.at("direction"));
  v.kind = axis_kind_from_string(j.at("kind").get<std::string>());
  v.sigma = j.at("sigma").get<double>();
  v.gamma = j.at("gamma").get<double>();
  v.q = vec_from_json(j.at("q"));
  v.v_double = j.at("v_double").get<double>();
  v.v_single = j.at("v_single").get<double>();
  v.double_propagating = j.at("double_propagating").get<bool>();
  v.single_propagating = j.at("single_propagating").get<bool>();
  v.residuals = residuals_from_json(j.at("residuals"));
  return v;
}

inline json to_json(const AxisSolution& s, double tol = kDefaultAxisTolerance) {
  json j;
  j["solver"] = s.solver;
  j["solution_kind"] = to_string(s.kind);
  j["axes"] = json::array();
  for (const auto& a : s.axes) j["axes"].push_back(to_json(a, tol));
  if (s.all_sphere) {
    const auto& d = *s.all_sphere;
    j["all_sphere"] = {{"sigma", d.sigma},
                       {"gamma", d.gamma},
                       {"v_double", d.v_double},
                       {"v_single", d.v_single},
                       {"spherical", d.spherical}};
  } else {
    j["all_sphere"] = nullptr;
  }
  if (s.conic) {
    const auto& c = *s.conic;
    json cj = {{"k", to_json(c.k)}, {"axisymmetric", c.axisymmetric()}};
    if (c.axisymmetric()) {
      cj["k_perp"] = c.k_perp();
      cj["k_3"] = c.k_3();
      cj["half_angle"] = c.half_angle();
    }
    j["conic"] = cj;
  } else {
    j["conic"] = nullptr;
  }
  j["continuum_planes"] = json::array();
  static constexpr const char* kPlanes[3] = {"12", "13", "23"};
  for (int p : s.continuum_planes) j["continuum_planes"].push_back(kPlanes[p]);
  j["scan_supplemented"] = s.scan_supplemented;
  return j;
}

inline AxisSolution solution_from_json(const json& j) {
  AxisSolution s;
  s.solver = j.at("solver").get<std::string>();
  s.kind = solution_kind_from_string(j.at("solution_kind").get<std::string>());
  for (const auto& a : j.at("axes")) s.axes.push_back(verdict_from_json(a));
  if (!j.at("all_sphere").is_null()) {
    const auto& d = j.at("all_sphere");
    s.all_sphere = AllSphereDescriptor{d.at("sigma").get<double>(), d.at("gamma").get<double>(),
                                       d.at("v_double").get<double>(), d.at("v_single").get<double>(),
                                       d.at("spherical").get<bool>()};
  }
  if (!j.at("conic").is_null()) s.conic = ConicDescriptor{vec_from_json(j.at("conic").at("k"))};
  for (const auto& p : j.at("continuum_planes")) {
    const auto name = p.get<std::string>();
    s.continuum_planes.push_back(name == "12" ? 0 : (name == "13" ? 1 : 2));
  }
  s.scan_supplemented = j.at("scan_supplemented").get<bool>();
  return s;
}

/// Full report for the axes command.
inline json run_report(const Material& m, const AxisSolution& s, double elapsed_ms,
                       double tol = kDefaultAxisTolerance) {
  json j = to_json(s, tol);
  j["material"] = material_to_json(m);
  j["timing_ms"] = elapsed_ms;
  return j;
}

}  // namespace acax::io
