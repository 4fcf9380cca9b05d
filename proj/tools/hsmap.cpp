// hsmap: construct, combine, verify and render sheared harmonic maps.
//
// Exit codes: 0 success / all checks hold, 2 usage or parameter error,
// 3 a check failed, 4 a check was inconclusive, 1 unexpected error.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsmap/hsmap.hpp"

namespace fs = std::filesystem;
using namespace hsmap;

namespace {

constexpr int kExitUsage = 2;

json normalization_json(const HarmonicMap& f) {
  const auto n = check_normalization(f);
  return {{"f0_abs", n.f0_abs},
          {"h_prime0", complex_to_json(n.h_prime0)},
          {"g_prime0", complex_to_json(n.g_prime0)},
          {"omega0", complex_to_json(n.omega0)},
          {"ok", n.ok}};
}

void write_artifact(const Artifact& a, const fs::path& out) {
  json j = artifact_to_json(a);
  j["normalization"] = normalization_json(build_harmonic_map(a));
  write_json(out, j);
}

struct VerifyOutcome {
  std::vector<VerificationReport> reports;
  int code = 0;
};

VerifyOutcome verify_artifact(const Artifact& a, const std::vector<std::string>& checks, const CheckDefaults& d) {
  VerifyOutcome out;
  const HarmonicMap f = build_harmonic_map(a);
  for (const auto& c : checks) out.reports.push_back(run_check(c, a, f, d));
  out.code = exit_code_for(out.reports);
  return out;
}

json reports_json(const std::string& name, const VerifyOutcome& o) {
  json arr = json::array();
  for (const auto& r : o.reports) arr.push_back(report_to_json(r));
  return {{"version", kFormatVersion}, {"artifact", name}, {"reports", arr}, {"exit_code", o.code}};
}

void print_reports(const std::string& name, const VerifyOutcome& o) {
  for (const auto& r : o.reports) {
    std::cout << name << ": " << r.check_name << " " << to_string(r.verdict);
    if (r.witness) std::cout << " witness=(" << r.witness->real() << "," << r.witness->imag() << ")";
    std::cout << "\n";
  }
}

std::vector<std::string> split_checks(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::string cur;
    for (char ch : item + ",") {
      if (ch == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }
  for (const auto& c : out)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw InvalidParameter("unknown check '" + c + "'");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sheared harmonic maps of the unit disk: construct, combine, verify, render"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "Describe a single sheared map");
  std::string family, omega_text = "-z", out_path, name;
  double alpha = 0.0, theta = 0.0;
  construct->add_option("--family", family, "alpha or theta")->required();
  construct->add_option("--alpha", alpha, "alpha in [-1, 1]");
  construct->add_option("--theta", theta, "theta in (0, pi)");
  construct->add_option("--omega", omega_text, "dilatation, e.g. -z, z^2, 0.5*z^3, (0.3+0.4i)*z")->capture_default_str();
  construct->add_option("--name", name, "artifact name");
  construct->add_option("-o,--output", out_path, "artifact path")->required();

  // combine
  auto* combine = app.add_subcommand("combine", "Combine two artifacts as t f1 + (1 - t) f2");
  std::string first_path, second_path;
  double t = 0.5;
  combine->add_option("--first", first_path, "first constituent")->required();
  combine->add_option("--second", second_path, "second constituent")->required();
  combine->add_option("-t,--t", t, "weight of the first map, in [0, 1]")->required();
  combine->add_option("--name", name, "artifact name");
  combine->add_option("-o,--output", out_path, "artifact path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Run checks on an artifact or on the scenario corpus");
  std::string artifact_path, report_path, scenarios_dir = "scenarios", report_dir;
  std::vector<std::string> checks_raw;
  bool all = false;
  verify->add_option("artifact", artifact_path, "artifact or scenario file");
  verify->add_option("--checks", checks_raw, "comma-separated: sense,hs,cvdir-imag,cvdir-real,wang,gate,witness");
  verify->add_option("--report", report_path, "JSON report path");
  verify->add_flag("--all", all, "verify every scenario in --scenarios");
  verify->add_option("--scenarios", scenarios_dir, "scenario directory")->capture_default_str();
  verify->add_option("--report-dir", report_dir, "directory for per-scenario reports (with --all)");

  // render
  auto* render = app.add_subcommand("render", "Render circle and ray images as SVG and CSV");
  std::string svg_path, csv_path;
  RenderSpec rspec;
  auto* o_rings = render->add_option("--rings", rspec.rings, "number of concentric circles");
  auto* o_rays = render->add_option("--rays", rspec.rays, "number of radial segments");
  auto* o_rmax = render->add_option("--r-max", rspec.r_max, "outer radius");
  auto* o_samples = render->add_option("--samples", rspec.samples_per_curve, "samples per curve");
  render->add_option("artifact", artifact_path, "artifact or scenario file")->required();
  render->add_option("--svg", svg_path, "SVG output path");
  render->add_option("--csv", csv_path, "CSV output path");

  // cohn
  auto* cohn = app.add_subcommand("cohn", "Count zeros of a polynomial inside/on/outside |z| = 1");
  std::vector<std::string> coeff_text;
  cohn->add_option("coefficients", coeff_text, "coefficients in ascending powers, e.g. -0.25 0 1 or 1+2i")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*construct) {
      FamilyParams p;
      if (family == "alpha")
        p = FamilyParams::alpha_family(alpha);
      else if (family == "theta")
        p = FamilyParams::theta_family(theta);
      else
        throw InvalidParameter("--family must be alpha or theta");
      write_artifact(make_single({p, parse_dilatation(omega_text)}, name), out_path);
      return 0;
    }

    if (*combine) {
      const Artifact a = load_artifact(first_path);
      const Artifact b = load_artifact(second_path);
      if (a.is_combination() || b.is_combination())
        throw InvalidParameter("combine takes two single-map artifacts");
      write_artifact(make_combination(a.maps[0], b.maps[0], t, name), out_path);
      return 0;
    }

    if (*verify) {
      CheckDefaults defaults;
      defaults.grid_scale = grid_scale_from_env();
      if (all) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(scenarios_dir))
          if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw InvalidParameter("no scenarios found in '" + scenarios_dir + "'");
        if (!report_dir.empty()) fs::create_directories(report_dir);
        int worst = 0;
        for (const auto& file : files) {
          const Artifact a = load_artifact(file);
          const auto start = std::chrono::steady_clock::now();
          const auto outcome = verify_artifact(a, a.checks, defaults);
          const double secs =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          print_reports(a.name, outcome);
          std::cout << a.name << ": exit " << outcome.code << " (" << secs << " s)\n";
          if (!report_dir.empty())
            write_json(fs::path(report_dir) / (a.name + ".report.json"), reports_json(a.name, outcome));
          if (outcome.code == 3 || (outcome.code == 4 && worst != 3)) worst = outcome.code;
        }
        return worst;
      }
      if (artifact_path.empty()) throw InvalidParameter("verify needs an artifact path or --all");
      const Artifact a = load_artifact(artifact_path);
      auto checks = split_checks(checks_raw);
      if (checks.empty()) checks = a.checks;
      if (checks.empty()) throw InvalidParameter("no checks requested");
      const auto outcome = verify_artifact(a, checks, defaults);
      print_reports(a.name, outcome);
      if (!report_path.empty()) write_json(report_path, reports_json(a.name, outcome));
      return outcome.code;
    }

    if (*render) {
      const Artifact a = load_artifact(artifact_path);
      RenderSpec spec = a.render.value_or(RenderSpec{});
      if (*o_rings) spec.rings = rspec.rings;
      if (*o_rays) spec.rays = rspec.rays;
      if (*o_rmax) spec.r_max = rspec.r_max;
      if (*o_samples) spec.samples_per_curve = rspec.samples_per_curve;
      const Rendering rnd = render_map(build_harmonic_map(a), spec);
      if (svg_path.empty() && csv_path.empty()) throw InvalidParameter("render needs --svg and/or --csv");
      if (!svg_path.empty()) write_text(svg_path, rendering_svg(rnd, a.name));
      if (!csv_path.empty()) write_text(csv_path, rendering_csv(rnd));
      const auto& b = rnd.box;
      std::cout << a.name << ": bbox [" << b.min_x << ", " << b.max_x << "] x [" << b.min_y << ", " << b.max_y
                << "]\n";
      return 0;
    }

    if (*cohn) {
      std::vector<cplx> cs;
      for (const auto& s : coeff_text) cs.push_back(parse_complex(s));
      const Polynomial p(std::move(cs));
      const ZeroCount zc = count_zeros_unit_disk(p);
      const json j = {{"degree", p.degree()},
                      {"inside", zc.inside},
                      {"on_circle", zc.on_circle},
                      {"outside", zc.outside},
                      {"method", to_string(zc.method)}};
      std::cout << j.dump() << "\n";
      return 0;
    }
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
