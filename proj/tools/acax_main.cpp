// acax: acoustic-axis finder for anisotropic elastic media.
//
// Exit codes: 0 ok, 1 usage, 2 schema, 3 non-finite input, 4 bad direction,
// 5 criteria disagreement (verify).

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acax/acax.hpp"

namespace {

using acax::io::json;

enum Exit : int { kOk = 0, kUsage = 1, kSchema = 2, kNonFinite = 3, kBadDirection = 4, kDisagree = 5 };

struct BadDirection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

acax::Direction parse_direction(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      xs.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) throw BadDirection("");
    } catch (const std::exception&) {
      throw BadDirection("cannot parse direction component '" + item + "'");
    }
  }
  if (xs.size() != 3) throw BadDirection("direction needs three comma-separated components");
  try {
    return acax::Direction::from_any(acax::Vec3{{xs[0], xs[1], xs[2]}});
  } catch (const acax::ZeroDirection& e) {
    throw BadDirection(e.what());
  }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

struct Common {
  std::string file;
  std::string units;
  double tol = acax::kDefaultAxisTolerance;

  acax::Material load() const {
    std::optional<acax::io::Units> u;
    if (!units.empty()) u = acax::io::units_from_string(units);
    return acax::io::load_material(file, u);
  }
};

void add_common(CLI::App* sub, Common& c, bool with_tol) {
  sub->add_option("material", c.file, "material JSON file")->required();
  sub->add_option("--units", c.units, "stiffness units of the file (overrides its 'units' field)")
      ->check(CLI::IsMember({"Pa", "GPa"}));
  if (with_tol) sub->add_option("--tol", c.tol, "criterion tolerance on normalized residuals")->capture_default_str();
}

int cmd_axes(const Common& c) {
  const acax::Material m = c.load();
  const auto t0 = std::chrono::steady_clock::now();
  const acax::AxisSolution s = acax::solve(m);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  print(acax::io::run_report(m, s, ms, c.tol));
  return kOk;
}

int cmd_check(const Common& c, const std::string& n_text) {
  const acax::Material m = c.load();
  const acax::Direction n = parse_direction(n_text);
  const acax::AxisVerdict v = acax::axis_test(m, n, c.tol);
  json j = acax::io::to_json(v, c.tol);
  j["direction"] = acax::io::to_json(n.vec());
  j["khatkevich_verdict"] = acax::to_string(v.residuals.khatkevich.verdict(c.tol));
  print(j);
  return kOk;
}

int cmd_modes(const Common& c, const std::string& n_text) {
  const acax::Material m = c.load();
  const acax::Direction n = parse_direction(n_text);
  const acax::WaveModeSet w = acax::eigenmodes(m, n);
  const acax::SpecialDirection sd = acax::classify_special(m, n, c.tol);
  json modes = json::array();
  for (const auto& mode : w.modes)
    modes.push_back({{"v2", mode.v2},
                     {"v", mode.speed()},
                     {"propagating", mode.propagating()},
                     {"polarization", acax::io::to_json(acax::canonical_sign(mode.polarization))}});
  print({{"direction", acax::io::to_json(n.vec())},
         {"gamma", w.gamma},
         {"modes", modes},
         {"pure_longitudinal", sd.pure_longitudinal},
         {"pure_shear", sd.pure_shear}});
  return kOk;
}

int cmd_scan(const Common& c, std::size_t resolution, const std::string& out) {
  const acax::Material m = c.load();
  if (resolution < acax::kMinScanPoints) throw CLI::ValidationError("--resolution", "must be at least 100");
  const acax::ScanResult r = acax::find_axes(m, resolution, c.tol);
  if (out.empty()) {
    r.map.write_csv(std::cout);
    return kOk;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  r.map.write_csv(f);
  json axes = json::array();
  for (const auto& v : acax::verdicts_of(m, r.candidates, c.tol)) axes.push_back(acax::io::to_json(v, c.tol));
  print({{"csv", out},
         {"points", r.map.points.size()},
         {"grid_spacing", r.map.spacing()},
         {"local_minima", r.minima},
         {"rejected", r.rejected},
         {"axes", axes}});
  return kOk;
}

// Verdict of one criterion: pass below tol, fail above the separation floor,
// otherwise undecided.
enum class Call { pass, fail, gray };

Call call_of(double residual, double tol) {
  if (residual <= tol) return Call::pass;
  if (residual >= 1e-4) return Call::fail;
  return Call::gray;
}

int cmd_verify(const Common& c, std::size_t samples, std::uint64_t seed) {
  const acax::Material m = c.load();
  const acax::AxisSolution s = acax::solve(m);

  std::vector<acax::Vec3> dirs;
  for (const auto& a : s.axes) dirs.push_back(a.direction);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  for (std::size_t i = 0; i < samples; ++i) dirs.push_back(acax::Vec3{{nd(rng), nd(rng), nd(rng)}});

  static constexpr const char* kNames[] = {"discriminant", "adjoint", "minimal_poly", "khatkevich",
                                           "alshits_lothe", "norris", "polarization"};
  constexpr std::size_t kCount = std::size(kNames);
  std::array<double, kCount> max_res{};
  std::size_t disagreements = 0, axes_seen = 0, gray = 0;
  double worst_spread = 0.0;
  json examples = json::array();

  for (const auto& d : dirs) {
    const acax::Direction n = acax::Direction::from_any(d);
    const acax::AxisVerdict v = acax::axis_test(m, n, c.tol);
    const auto& r = v.residuals;
    const std::array<double, kCount> res{std::sqrt(r.discriminant), r.adjoint, r.minimal_poly,
                                         r.khatkevich.magnitude(), r.alshits_lothe_norm(), r.norris,
                                         r.polarization};
    bool any_pass = false, any_fail = false;
    double lo = INFINITY, hi = 0.0;
    for (std::size_t k = 0; k < kCount; ++k) {
      if (k == 3 && r.khatkevich.verdict(c.tol) == acax::TriState::inconclusive) continue;
      max_res[k] = std::max(max_res[k], res[k]);
      lo = std::min(lo, res[k]);
      hi = std::max(hi, res[k]);
      const Call call = call_of(res[k], c.tol);
      any_pass |= call == Call::pass;
      any_fail |= call == Call::fail;
      gray += call == Call::gray;
    }
    if (any_pass) {
      ++axes_seen;
      worst_spread = std::max(worst_spread, hi);
    }
    if (any_pass && any_fail) {
      ++disagreements;
      if (examples.size() < 10) examples.push_back(acax::io::to_json(n.vec()));
    }
  }
  json maxes;
  for (std::size_t k = 0; k < kCount; ++k) maxes[kNames[k]] = max_res[k];
  print({{"directions", dirs.size()},
         {"closed_form_axes", s.axes.size()},
         {"solution_kind", acax::to_string(s.kind)},
         {"directions_passing_any", axes_seen},
         {"max_residual_on_axes", worst_spread},
         {"undecided_calls", gray},
         {"disagreements", disagreements},
         {"disagreement_examples", examples},
         {"max_residual", maxes}});
  return disagreements == 0 ? kOk : kDisagree;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acax: acoustic axes of anisotropic elastic media"};
  app.require_subcommand(1);

  Common c;
  std::string n_text;
  std::size_t resolution = 5000, samples = 500;
  std::uint64_t seed = 12345;
  std::string out;

  auto* axes = app.add_subcommand("axes", "solve for all acoustic axes");
  add_common(axes, c, true);
  auto* check = app.add_subcommand("check", "test one direction against every criterion");
  add_common(check, c, true);
  check->add_option("--n", n_text, "direction x,y,z (normalized internally)")->required();
  auto* modes = app.add_subcommand("modes", "phase speeds and polarizations along a direction");
  add_common(modes, c, true);
  modes->add_option("--n", n_text, "direction x,y,z")->required();
  auto* scanc = app.add_subcommand("scan", "hemisphere degeneracy map and refined axes");
  add_common(scanc, c, true);
  scanc->add_option("--resolution", resolution, "grid points on the hemisphere")->capture_default_str();
  scanc->add_option("--out", out, "CSV path (CSV goes to stdout when omitted)");
  auto* verify = app.add_subcommand("verify", "cross-check the criteria on random directions and all axes");
  add_common(verify, c, true);
  verify->add_option("--samples", samples, "random directions")->capture_default_str();
  verify->add_option("--seed", seed, "RNG seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*axes) return cmd_axes(c);
    if (*check) return cmd_check(c, n_text);
    if (*modes) return cmd_modes(c, n_text);
    if (*scanc) return cmd_scan(c, resolution, out);
    if (*verify) return cmd_verify(c, samples, seed);
  } catch (const acax::io::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const acax::io::NonFiniteError& e) {
    std::cerr << "non-finite input: " << e.what() << '\n';
    return kNonFinite;
  } catch (const acax::InvalidMaterial& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const BadDirection& e) {
    std::cerr << "bad direction: " << e.what() << '\n';
    return kBadDirection;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
