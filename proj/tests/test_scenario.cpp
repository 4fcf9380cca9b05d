#include <gtest/gtest.h>

#include <cstdlib>
#include <numbers>
#include <sstream>

#include "hsmap/render.hpp"
#include "hsmap/scenario.hpp"

using namespace hsmap;

namespace {

MapDescriptor alpha_map(double a, double c, int n) { return {FamilyParams::alpha_family(a), MonomialDilatation(c, n)}; }

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.5"), cplx(0.5, 0.0));
  EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parse_complex("2i"), cplx(0.0, 2.0));
  EXPECT_EQ(parse_complex("(0.3+0.4i)"), cplx(0.3, 0.4));
  EXPECT_EQ(parse_complex("1e-3-2.5i"), cplx(1e-3, -2.5));
  EXPECT_EQ(parse_complex("1.5e+2"), cplx(150.0, 0.0));
  EXPECT_THROW(parse_complex("abc"), InvalidParameter);
  EXPECT_THROW(parse_complex(""), InvalidParameter);
}

TEST(ParseDilatation, Forms) {
  EXPECT_EQ(parse_dilatation("-z"), MonomialDilatation(-1.0, 1));
  EXPECT_EQ(parse_dilatation("z^2"), MonomialDilatation(1.0, 2));
  EXPECT_EQ(parse_dilatation("0.5*z^3"), MonomialDilatation(0.5, 3));
  EXPECT_EQ(parse_dilatation("(0.3+0.4i)*z"), MonomialDilatation(cplx(0.3, 0.4), 1));
  EXPECT_THROW(parse_dilatation("2*z"), InvalidParameter);
  EXPECT_THROW(parse_dilatation("z^x"), InvalidParameter);
  EXPECT_THROW(parse_dilatation("w"), InvalidParameter);
  // Text form survives a round trip.
  for (const auto* s : {"-z", "z^2", "0.5*z^3", "-z^2"})
    EXPECT_EQ(format_dilatation(parse_dilatation(s)), s);
}

TEST(Artifact, RoundTripSingle) {
  Artifact a = make_single({FamilyParams::theta_family(std::numbers::pi / 2), MonomialDilatation(-1.0, 1)}, "strip");
  a.checks = {"sense", "hs"};
  a.render = RenderSpec{};
  const Artifact b = artifact_from_json(json::parse(artifact_to_json(a).dump()));
  EXPECT_EQ(b.name, "strip");
  ASSERT_EQ(b.maps.size(), 1u);
  EXPECT_EQ(b.maps[0].params.theta, std::numbers::pi / 2);
  EXPECT_EQ(b.maps[0].omega, a.maps[0].omega);
  EXPECT_EQ(b.checks, a.checks);
  EXPECT_TRUE(b.render.has_value());
}

TEST(Artifact, RoundTripCombination) {
  const Artifact a = make_combination(alpha_map(0.5, -1, 1), alpha_map(-0.5, 1, 1), 0.25, "fig3");
  ASSERT_TRUE(a.rational.has_value());
  const Artifact b = artifact_from_json(json::parse(artifact_to_json(a).dump()));
  EXPECT_EQ(b.t, 0.25);
  EXPECT_EQ(b.maps[0].params.alpha, 0.5);
  EXPECT_EQ(b.maps[1].params.alpha, -0.5);
  ASSERT_TRUE(b.rational.has_value());
  const auto& n0 = a.rational->numerator.coeffs();
  const auto& n1 = b.rational->numerator.coeffs();
  ASSERT_EQ(n0.size(), n1.size());
  for (std::size_t k = 0; k < n0.size(); ++k) EXPECT_LE(std::abs(n0[k] - n1[k]), 1e-15);
}

TEST(Artifact, Errors) {
  json j = artifact_to_json(make_single(alpha_map(0.5, -1, 1)));
  j["version"] = 2;
  EXPECT_THROW(artifact_from_json(j), InvalidParameter);
  j["version"] = 1;
  j["checks"] = {"nonsense"};
  EXPECT_THROW(artifact_from_json(j), InvalidParameter);
  j.erase("checks");
  j["t"] = 0.5;
  EXPECT_THROW(artifact_from_json(j), InvalidParameter);
  json c = artifact_to_json(make_combination(alpha_map(0.5, -1, 1), alpha_map(-0.5, 1, 1), 0.25));
  c["t"] = 1.5;
  EXPECT_THROW(artifact_from_json(c), InvalidParameter);
  c["t"] = 0.5;
  c["maps"][0]["alpha"] = 3.0;
  EXPECT_THROW(artifact_from_json(c), InvalidParameter);
}

TEST(Artifact, NormalizationOfBuiltMaps) {
  for (const auto& a : {make_single(alpha_map(0.5, -1, 1)),
                        make_combination(alpha_map(0.5, -1, 1), alpha_map(-0.5, 1, 1), 0.25),
                        make_combination(alpha_map(0.2, -1, 1), alpha_map(0.7, 0.5, 3), 0.6)}) {
    EXPECT_TRUE(check_normalization(build_harmonic_map(a)).ok);
  }
}

TEST(GridScale, Environment) {
  ::unsetenv("HS_GRID_SCALE");
  EXPECT_EQ(grid_scale_from_env(), 1);
  ::setenv("HS_GRID_SCALE", "2", 1);
  EXPECT_EQ(grid_scale_from_env(), 2);
  ::setenv("HS_GRID_SCALE", "0", 1);
  EXPECT_THROW(grid_scale_from_env(), InvalidParameter);
  ::setenv("HS_GRID_SCALE", "x", 1);
  EXPECT_THROW(grid_scale_from_env(), InvalidParameter);
  ::unsetenv("HS_GRID_SCALE");
  CheckDefaults d;
  d.grid_scale = 2;
  EXPECT_EQ(d.grid().radii, 200);
  EXPECT_EQ(d.convexity_samples(), 1024);
}

TEST(RunCheck, GateAndWitnessSemantics) {
  const Artifact cubic = make_combination(alpha_map(0.4, -1, 1), alpha_map(0.3, 1, 3), 0.75);
  const auto f = build_harmonic_map(cubic);
  const auto w = run_check("witness", cubic, f);
  EXPECT_EQ(w.verdict, Verdict::holds);
  EXPECT_TRUE(w.witness.has_value());

  const Artifact uncovered = make_combination(alpha_map(0.4, -1, 1), alpha_map(0.3, 1, 3), 0.5);
  EXPECT_EQ(run_check("gate", uncovered, build_harmonic_map(uncovered)).verdict, Verdict::inconclusive);

  const Artifact outside = make_combination(alpha_map(0.1, 1, 2), alpha_map(0.3, 1, 1), 0.5);
  EXPECT_EQ(run_check("gate", outside, build_harmonic_map(outside)).verdict, Verdict::inconclusive);

  EXPECT_THROW(run_check("bogus", cubic, f), InvalidParameter);
  EXPECT_EQ(exit_code_for({w}), 0);
  EXPECT_EQ(exit_code_for({w, {"x", Verdict::inconclusive}}), 4);
  EXPECT_EQ(exit_code_for({{"y", Verdict::inconclusive}, {"x", Verdict::fails}}), 3);
}

TEST(ReportJson, InfinityBecomesNull) {
  VerificationReport r{"cvdir-imag", Verdict::fails, std::numeric_limits<double>::infinity(), cplx(0.1, 0.2),
                       std::nullopt, "degenerate"};
  const json j = report_to_json(r);
  EXPECT_TRUE(j["extremal_value"].is_null());
  EXPECT_EQ(j["verdict"], "fails");
  EXPECT_EQ(j["witness"][1], 0.2);
}

TEST(Render, IdentityRingsAreCircles) {
  AnalyticFunction id([](cplx z) { return z; }, [](cplx) { return cplx{1.0}; }, "z");
  AnalyticFunction zero([](cplx) { return cplx{0.0}; }, [](cplx) { return cplx{0.0}; }, "0");
  const HarmonicMap f(id, zero, [](cplx) { return cplx{0.0}; }, "identity");
  const RenderSpec spec{4, 8, 0.8, 64};
  const Rendering rnd = render_map(f, spec);
  ASSERT_EQ(rnd.curves.size(), 12u);
  for (const auto& c : rnd.curves) {
    ASSERT_EQ(c.samples.size(), 64u);
    for (const auto& s : c.samples) {
      EXPECT_NEAR(std::abs(s.w), s.r, 1e-15);
      if (c.ring) EXPECT_EQ(s.r, c.samples.front().r);
    }
  }
  EXPECT_NEAR(rnd.box.max_x, 0.8, 1e-15);
  EXPECT_NEAR(rnd.box.min_x, -0.8, 1e-15);
  const std::string svg = rendering_svg(rnd, "identity");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<title>identity</title>"), std::string::npos);
}

TEST(Render, DeterministicCsv) {
  const Artifact a = make_combination(alpha_map(0.5, -1, 1), alpha_map(-0.5, 1, 1), 0.25);
  const RenderSpec spec{};
  const Rendering r1 = render_map(build_harmonic_map(a), spec);
  const Rendering r2 = render_map(build_harmonic_map(a), spec);
  EXPECT_EQ(r1.box, r2.box);
  const std::string csv = rendering_csv(r1);
  EXPECT_EQ(csv, rendering_csv(r2));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,angle,re_f,im_f");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 3);
  }
  EXPECT_EQ(rows, spec.rings * spec.samples_per_curve);
}

TEST(RenderSpec, Validation) {
  EXPECT_THROW((RenderSpec{0, 24, 0.95, 256}.validate()), InvalidParameter);
  EXPECT_THROW((RenderSpec{10, 3, 0.95, 256}.validate()), InvalidParameter);
  EXPECT_THROW((RenderSpec{10, 24, 0.95, 63}.validate()), InvalidParameter);
}
