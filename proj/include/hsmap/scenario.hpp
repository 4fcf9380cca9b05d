#pragma once

/**
 * @file scenario.hpp
 * @brief JSON artifacts and scenarios, the dilatation text syntax, and the
 *        named checks run by `hsmap verify`.
 *
 * An artifact describes one map ("single") or a two-map combination. A
 * scenario is an artifact with an optional `checks` list and `render` block,
 * so every scenario file is also a valid artifact.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hsmap/error.hpp"
#include "hsmap/maps.hpp"
#include "hsmap/shear.hpp"
#include "hsmap/verify.hpp"

namespace hsmap {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// "a", "bi", "a+bi", "a-bi", "-i", optionally wrapped in parentheses.
inline cplx parse_complex(std::string s) {
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw InvalidParameter("empty complex number");
  auto to_double = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw InvalidParameter("cannot parse number '" + part + "' in '" + s + "'");
    }
    if (used != part.size()) throw InvalidParameter("cannot parse number '" + part + "' in '" + s + "'");
    return v;
  };
  if (s.back() != 'i') return {to_double(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(body)};
  return {to_double(body.substr(0, split)), to_double(body.substr(split))};
}

// "[-]z", "[-]z^n", "c*z^n" with c a real or complex coefficient, |c| <= 1.
inline MonomialDilatation parse_dilatation(std::string s) {
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  cplx coeff{1.0};
  std::string rest = s;
  if (const auto star = s.find('*'); star != std::string::npos) {
    coeff = parse_complex(s.substr(0, star));
    rest = s.substr(star + 1);
  } else if (!s.empty() && s.front() == '-') {
    coeff = -1.0;
    rest = s.substr(1);
  }
  if (rest.empty() || rest.front() != 'z') throw InvalidParameter("dilatation '" + s + "' must be of the form c*z^n");
  int power = 1;
  if (rest.size() > 1) {
    if (rest[1] != '^' || rest.size() < 3) throw InvalidParameter("dilatation '" + s + "' must be of the form c*z^n");
    const std::string digits = rest.substr(2);
    if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw InvalidParameter("dilatation power in '" + s + "' must be a positive integer");
    power = std::stoi(digits);
  }
  if (!(std::abs(coeff) <= 1.0)) throw InvalidParameter("dilatation '" + s + "' violates |c| <= 1");
  return MonomialDilatation(coeff, power);
}

inline json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }
inline cplx complex_from_json(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline json polynomial_to_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& c : p.coeffs()) arr.push_back(complex_to_json(c));
  return arr;
}

inline Polynomial polynomial_from_json(const json& j) {
  std::vector<cplx> cs;
  for (const auto& c : j) cs.push_back(complex_from_json(c));
  return Polynomial(std::move(cs));
}

inline json descriptor_to_json(const MapDescriptor& d) {
  json j;
  if (d.params.family == Family::alpha) {
    j["family"] = "alpha";
    j["alpha"] = d.params.alpha;
  } else {
    j["family"] = "theta";
    j["theta"] = d.params.theta;
  }
  j["omega"] = format_dilatation(d.omega);
  return j;
}

inline MapDescriptor descriptor_from_json(const json& j) {
  const auto family = j.at("family").get<std::string>();
  FamilyParams p;
  if (family == "alpha")
    p = FamilyParams::alpha_family(j.at("alpha").get<double>());
  else if (family == "theta")
    p = FamilyParams::theta_family(j.at("theta").get<double>());
  else
    throw InvalidParameter("unknown family '" + family + "' (expected alpha or theta)");
  return {p, parse_dilatation(j.at("omega").get<std::string>())};
}

struct RenderSpec {
  int rings = 10;
  int rays = 24;
  double r_max = 0.95;
  int samples_per_curve = 256;

  void validate() const {
    if (rings < 1) throw InvalidParameter("render rings must be >= 1");
    if (rays < 4) throw InvalidParameter("render rays must be >= 4");
    if (!(r_max > 0.0 && r_max < 1.0)) throw InvalidParameter("render r_max must lie in (0, 1)");
    if (samples_per_curve < 64) throw InvalidParameter("render samples_per_curve must be >= 64");
  }
};

struct Artifact {
  std::string name;
  std::vector<MapDescriptor> maps;  // one for single, two for combination
  double t = 1.0;                   // combination only
  std::optional<RationalDilatation> rational;
  std::vector<std::string> checks;
  std::optional<RenderSpec> render;

  bool is_combination() const { return maps.size() == 2; }
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"sense", "hs", "cvdir-imag", "cvdir-real", "wang", "gate", "witness"};
  return names;
}

// Rational combined dilatation when both constituents are alpha maps.
inline std::optional<RationalDilatation> assemble_rational(const std::vector<MapDescriptor>& maps, double t) {
  if (maps.size() != 2) return std::nullopt;
  if (maps[0].params.family != Family::alpha || maps[1].params.family != Family::alpha) return std::nullopt;
  return combined_dilatation(maps[0].omega, maps[1].omega, maps[0].params.alpha, maps[1].params.alpha, t);
}

inline Artifact make_single(MapDescriptor d, std::string name = {}) {
  Artifact a;
  a.name = std::move(name);
  a.maps = {d};
  return a;
}

inline Artifact make_combination(const MapDescriptor& first, const MapDescriptor& second, double t,
                                 std::string name = {}) {
  require_unit_interval(t);
  Artifact a;
  a.name = std::move(name);
  a.maps = {first, second};
  a.t = t;
  a.rational = assemble_rational(a.maps, t);
  return a;
}

inline HarmonicMap build_harmonic_map(const Artifact& a) {
  if (!a.is_combination()) return build_map(a.maps.at(0));
  return lincomb({build_map(a.maps[0]), build_map(a.maps[1]), a.t});
}

inline GateInput gate_input(const Artifact& a) {
  GateInput in{a.maps.at(0), std::nullopt, 1.0};
  if (a.is_combination()) {
    in.second = a.maps[1];
    in.t = a.t;
  }
  return in;
}

struct Normalization {
  double f0_abs;
  cplx h_prime0;
  cplx g_prime0;
  cplx omega0;
  bool ok;
};

// f(0) = 0, h'(0) = 1 and g'(0) = omega(0) h'(0) = 0.
inline Normalization check_normalization(const HarmonicMap& f) {
  Normalization n{std::abs(f(0.0)), f.h().derivative(0.0), f.g().derivative(0.0), f.dilatation(0.0), false};
  n.ok = n.f0_abs <= 1e-14 && std::abs(n.h_prime0 - 1.0) <= 1e-14 && std::abs(n.g_prime0) <= 1e-14 &&
         std::abs(n.omega0) <= 1e-14;
  return n;
}

inline json render_spec_to_json(const RenderSpec& r) {
  return {{"rings", r.rings}, {"rays", r.rays}, {"r_max", r.r_max}, {"samples_per_curve", r.samples_per_curve}};
}

inline json artifact_to_json(const Artifact& a) {
  json j;
  j["version"] = kFormatVersion;
  if (!a.name.empty()) j["name"] = a.name;
  j["kind"] = a.is_combination() ? "combination" : "single";
  json maps = json::array();
  for (const auto& m : a.maps) maps.push_back(descriptor_to_json(m));
  j["maps"] = maps;
  if (a.is_combination()) j["t"] = a.t;
  if (a.rational)
    j["rational_dilatation"] = {{"numerator", polynomial_to_json(a.rational->numerator)},
                                {"denominator", polynomial_to_json(a.rational->denominator)}};
  if (!a.checks.empty()) j["checks"] = a.checks;
  if (a.render) j["render"] = render_spec_to_json(*a.render);
  return j;
}

inline Artifact artifact_from_json(const json& j) {
  if (!j.contains("version") || j.at("version").get<int>() != kFormatVersion)
    throw InvalidParameter("artifact version must be " + std::to_string(kFormatVersion));
  Artifact a;
  a.name = j.value("name", "");
  const auto kind = j.at("kind").get<std::string>();
  for (const auto& m : j.at("maps")) a.maps.push_back(descriptor_from_json(m));
  if (kind == "single") {
    if (a.maps.size() != 1) throw InvalidParameter("single artifact needs exactly one map");
    if (j.contains("t")) throw InvalidParameter("single artifact must not carry t");
  } else if (kind == "combination") {
    if (a.maps.size() != 2) throw InvalidParameter("combination artifact needs exactly two maps");
    a.t = j.at("t").get<double>();
    require_unit_interval(a.t);
  } else {
    throw InvalidParameter("unknown artifact kind '" + kind + "'");
  }
  if (j.contains("rational_dilatation")) {
    const auto& r = j.at("rational_dilatation");
    a.rational = RationalDilatation{polynomial_from_json(r.at("numerator")),
                                    polynomial_from_json(r.at("denominator"))};
  } else {
    a.rational = assemble_rational(a.maps, a.t);
  }
  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) {
      const auto name = c.get<std::string>();
      if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end())
        throw InvalidParameter("unknown check '" + name + "'");
      a.checks.push_back(name);
    }
  }
  if (j.contains("render")) {
    const auto& r = j.at("render");
    RenderSpec spec;
    spec.rings = r.value("rings", spec.rings);
    spec.rays = r.value("rays", spec.rays);
    spec.r_max = r.value("r_max", spec.r_max);
    spec.samples_per_curve = r.value("samples_per_curve", spec.samples_per_curve);
    spec.validate();
    a.render = spec;
  }
  return a;
}

inline Artifact load_artifact(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open artifact '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InvalidParameter("artifact '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (j.value("name", "").empty()) j["name"] = path.stem().string();
  return artifact_from_json(j);
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// Checks

// HS_GRID_SCALE, an integer >= 1 multiplying default grid densities.
inline int grid_scale_from_env() {
  const char* v = std::getenv("HS_GRID_SCALE");
  if (v == nullptr || *v == '\0') return 1;
  char* end = nullptr;
  const long s = std::strtol(v, &end, 10);
  if (*end != '\0' || s < 1 || s > 64) throw InvalidParameter("HS_GRID_SCALE must be an integer >= 1");
  return static_cast<int>(s);
}

struct CheckDefaults {
  int grid_scale = 1;
  GridSpec grid() const { return {100 * grid_scale, 360 * grid_scale, 0.95}; }
  std::vector<double> convexity_radii{0.5, 0.9, 0.95};
  int convexity_samples() const { return 512 * grid_scale; }
};

inline json report_to_json(const VerificationReport& r) {
  json j;
  j["check_name"] = r.check_name;
  j["verdict"] = to_string(r.verdict);
  j["extremal_value"] = std::isfinite(r.extremal_value) ? json(r.extremal_value) : json(nullptr);
  j["witness"] = r.witness ? complex_to_json(*r.witness) : json(nullptr);
  j["grid"] = r.grid ? json{{"radii", r.grid->radii}, {"angles", r.grid->angles}, {"r_max", r.grid->r_max}}
                     : json(nullptr);
  j["notes"] = r.notes;
  return j;
}

namespace detail {

inline VerificationReport convexity_all_radii(const HarmonicMap& f, Direction dir, const CheckDefaults& d) {
  VerificationReport agg;
  agg.check_name = dir == Direction::imaginary_axis ? "cvdir-imag" : "cvdir-real";
  agg.verdict = Verdict::holds;
  std::ostringstream notes;
  for (double r : d.convexity_radii) {
    const auto rep = check_direction_convexity(f, r, d.convexity_samples(), dir);
    notes << "r=" << r << ": " << to_string(rep.verdict) << " (" << rep.notes << "); ";
    agg.extremal_value = std::max(agg.extremal_value, rep.extremal_value);
    agg.grid = rep.grid;
    if (rep.verdict == Verdict::fails && agg.verdict != Verdict::fails) {
      agg.verdict = Verdict::fails;
      agg.witness = rep.witness;
    }
  }
  agg.notes = notes.str();
  return agg;
}

inline Dilatation artifact_dilatation(const Artifact& a, const HarmonicMap& f) {
  if (a.rational && a.t != 0.0 && a.t != 1.0) return *a.rational;
  return f.omega();
}

}  // namespace detail

/**
 * Runs one named check. Semantics of the two hypothesis-aware checks:
 *  - gate: the numeric outcome must agree with theorem_gate (sense check when
 *    it predicts holds, witness search when it predicts a violation);
 *    no_guarantee or an unknown scenario is inconclusive.
 *  - witness: holds iff a witness is found exactly when a violation is predicted.
 */
inline VerificationReport run_check(const std::string& name, const Artifact& a, const HarmonicMap& f,
                                    const CheckDefaults& d = {}) {
  const GridSpec grid = d.grid();
  if (name == "sense") return check_sense_preserving(f, grid);
  if (name == "hs") return check_hs_criterion(f.prevertex(), grid);
  if (name == "cvdir-imag") return detail::convexity_all_radii(f, Direction::imaginary_axis, d);
  if (name == "cvdir-real") return detail::convexity_all_radii(f, Direction::real_axis, d);
  if (name == "wang") {
    if (!a.is_combination()) return check_wang_condition(f, f, grid);
    return check_wang_condition(build_map(a.maps[0]), build_map(a.maps[1]), grid);
  }
  if (name == "gate" || name == "witness") {
    GatePrediction pred;
    try {
      pred = theorem_gate(gate_input(a));
    } catch (const UnknownScenario& e) {
      return {name, Verdict::inconclusive, 0.0, std::nullopt, std::nullopt, e.what()};
    }
    const std::string head = std::string("prediction ") + to_string(pred.prediction) +
                             (pred.covered_by.empty() ? "" : " [" + pred.covered_by + "]") + ": " + pred.rationale;
    if (name == "gate" && pred.prediction == Prediction::holds) {
      auto rep = check_sense_preserving(f, grid);
      rep.check_name = name;
      rep.notes = head + "; numeric max |omega| " + (rep.verdict == Verdict::holds ? "< 1" : ">= 1");
      return rep;
    }
    if (pred.prediction == Prediction::no_guarantee) {
      return {name, Verdict::inconclusive, 0.0, std::nullopt, std::nullopt, head};
    }
    const auto search = find_dilatation_violation(detail::artifact_dilatation(a, f));
    const bool found = search.witness.has_value();
    const bool agrees = (pred.prediction == Prediction::violation) == found;
    VerificationReport rep{name, agrees ? Verdict::holds : Verdict::fails, search.best.modulus,
                           search.witness ? std::optional<cplx>(search.witness->z) : std::nullopt,
                           GridSpec{256, 512, 0.999}, head};
    rep.notes += found ? "; witness found" : "; no witness within budget";
    if (!agrees && !rep.witness) rep.witness = search.best.z;
    return rep;
  }
  throw InvalidParameter("unknown check '" + name + "'");
}

// Exit code contract: 0 all hold, 3 any failure, 4 otherwise inconclusive.
inline int exit_code_for(const std::vector<VerificationReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fails) return 3;
    if (r.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? 4 : 0;
}

}  // namespace hsmap
