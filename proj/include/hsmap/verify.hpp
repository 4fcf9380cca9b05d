#pragma once

/**
 * @file verify.hpp
 * @brief Sample-based certification of harmonic maps on the unit disk.
 *
 * Every check evaluates the quantity of interest on an explicit polar grid
 * (or a sampled circle) and returns a VerificationReport. A failing report
 * always carries a witness point at which the violation can be reproduced.
 * None of these checks is a proof; they are evidence on the stated grid.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hsmap/error.hpp"
#include "hsmap/maps.hpp"
#include "hsmap/shear.hpp"

namespace hsmap {

namespace verify_tol {
inline constexpr double kSensePreserving = 1e-9;  // slack on max |omega| < 1
inline constexpr double kWitness = 1e-6;          // |omega| >= 1 + kWitness
inline constexpr double kGeom = 1e-6;             // sweep gap, relative to image diameter
}  // namespace verify_tol

struct GridSpec {
  int radii = 100;
  int angles = 360;
  double r_max = 0.95;

  void validate() const {
    if (radii < 2) throw InvalidParameter("grid radii must be >= 2");
    if (angles < 8) throw InvalidParameter("grid angles must be >= 8");
    if (!(r_max > 0.0 && r_max < 1.0)) throw InvalidParameter("grid r_max must lie in (0, 1)");
  }

  // Origin plus radii x angles points, r_i = r_max * i / radii for i = 1..radii.
  std::vector<cplx> points() const {
    validate();
    std::vector<cplx> pts;
    pts.reserve(static_cast<std::size_t>(radii) * angles + 1);
    pts.emplace_back(0.0, 0.0);
    for (int i = 1; i <= radii; ++i) {
      const double r = r_max * i / radii;
      for (int j = 0; j < angles; ++j) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * j / angles));
    }
    return pts;
  }

  bool operator==(const GridSpec&) const = default;
};

enum class Verdict { holds, fails, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    default: return "inconclusive";
  }
}

struct VerificationReport {
  std::string check_name;
  Verdict verdict = Verdict::inconclusive;
  double extremal_value = 0.0;
  std::optional<cplx> witness;
  std::optional<GridSpec> grid;
  std::string notes;
};

namespace detail {

// Scans the grid for the minimum of a real functional. Non-finite samples
// count as -infinity so they always surface as the extremum.
template <class Fn>
std::pair<double, cplx> grid_min(const GridSpec& grid, Fn&& fn) {
  double best = std::numeric_limits<double>::infinity();
  cplx arg{0.0};
  for (const auto& z : grid.points()) {
    double v = fn(z);
    if (std::isnan(v)) v = -std::numeric_limits<double>::infinity();
    if (v < best) {
      best = v;
      arg = z;
    }
  }
  return {best, arg};
}

}  // namespace detail

// Minimum of Re[(1 - z^2) F'(z)] over the grid; holds iff it is > 0.
inline VerificationReport check_hs_criterion(const AnalyticFunction& F, const GridSpec& grid) {
  auto [mn, at] = detail::grid_min(grid, [&](cplx z) { return std::real((1.0 - z * z) * F.derivative(z)); });
  VerificationReport rep{"hs", mn > 0.0 ? Verdict::holds : Verdict::fails, mn, std::nullopt, grid,
                         "boundary-sequence condition checked via criterion"};
  if (rep.verdict == Verdict::fails) rep.witness = at;
  return rep;
}

// Maximum of |omega| over the grid; holds iff it is < 1 - kSensePreserving.
inline VerificationReport check_sense_preserving(const Dilatation& omega, const GridSpec& grid) {
  auto [mn, at] = detail::grid_min(grid, [&](cplx z) { return -std::abs(omega(z)); });
  const double mx = -mn;
  VerificationReport rep{"sense", mx < 1.0 - verify_tol::kSensePreserving ? Verdict::holds : Verdict::fails,
                         mx, std::nullopt, grid, "max |omega| over grid"};
  if (rep.verdict == Verdict::fails) rep.witness = at;
  return rep;
}

inline VerificationReport check_sense_preserving(const HarmonicMap& f, const GridSpec& grid) {
  return check_sense_preserving(f.omega(), grid);
}

enum class Direction { imaginary_axis, real_axis };

namespace detail {

inline double cross(cplx a, cplx b, cplx c) {
  return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
}

// Index pair of the first two non-adjacent segments of the closed polyline
// that cross properly, if any.
inline std::optional<std::pair<std::size_t, std::size_t>> self_intersection(const std::vector<cplx>& w,
                                                                            double tol) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = w[i], b = w[(i + 1) % n];
    const double minx = std::min(a.real(), b.real()), maxx = std::max(a.real(), b.real());
    const double miny = std::min(a.imag(), b.imag()), maxy = std::max(a.imag(), b.imag());
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const cplx c = w[j], d = w[(j + 1) % n];
      if (std::max(c.real(), d.real()) < minx || std::min(c.real(), d.real()) > maxx ||
          std::max(c.imag(), d.imag()) < miny || std::min(c.imag(), d.imag()) > maxy)
        continue;
      const double d1 = cross(a, b, c), d2 = cross(a, b, d);
      const double d3 = cross(c, d, a), d4 = cross(c, d, b);
      if (((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
          ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol)))
        return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/**
 * Maps |z| = r to a closed polyline and sweeps lines parallel to the chosen
 * axis across it. Between two consecutive distinct vertex coordinates the
 * crossing count is constant, so one line per gap (skipping gaps narrower
 * than kGeom times the image diameter) covers every line. Segments are
 * half-open for tie-breaking. Holds iff no line crosses more than twice and
 * the polyline does not self-intersect.
 */
inline VerificationReport check_direction_convexity(const HarmonicMap& f, double r, int n_samples,
                                                    Direction direction) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidParameter("convexity radius must lie in (0, 1)");
  if (n_samples < 256) throw InvalidParameter("convexity check needs n_samples >= 256");
  const std::string name = direction == Direction::imaginary_axis ? "cvdir-imag" : "cvdir-real";

  std::vector<cplx> zs(n_samples), ws(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    zs[k] = std::polar(r, 2.0 * std::numbers::pi * k / n_samples);
    ws[k] = f(zs[k]);
  }
  double minx = ws[0].real(), maxx = minx, miny = ws[0].imag(), maxy = miny;
  for (const auto& w : ws) {
    minx = std::min(minx, w.real());
    maxx = std::max(maxx, w.real());
    miny = std::min(miny, w.imag());
    maxy = std::max(maxy, w.imag());
  }
  const double diam = std::hypot(maxx - minx, maxy - miny);
  GridSpec grid{1, n_samples, r};

  if (auto hit = detail::self_intersection(ws, 1e-14 * diam * diam)) {
    return {name, Verdict::fails, std::numeric_limits<double>::infinity(), zs[hit->first], grid,
            "degenerate curve: polyline self-intersects"};
  }

  auto coord = [direction](cplx w) { return direction == Direction::imaginary_axis ? w.real() : w.imag(); };
  std::vector<double> xs(n_samples);
  for (int k = 0; k < n_samples; ++k) xs[k] = coord(ws[k]);
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  const double gap_min = verify_tol::kGeom * diam;
  int worst = 0;
  double worst_line = 0.0;
  int lines = 0;
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i + 1] - sorted[i] <= gap_min) continue;
    const double c = 0.5 * (sorted[i] + sorted[i + 1]);
    ++lines;
    int count = 0;
    for (int k = 0; k < n_samples; ++k) {
      const double a = xs[k], b = xs[(k + 1) % n_samples];
      if ((a <= c && c < b) || (b <= c && c < a)) ++count;
    }
    if (count > worst) {
      worst = count;
      worst_line = c;
    }
  }

  std::ostringstream notes;
  notes << lines << " sweep lines, max crossings " << worst;
  VerificationReport rep{name, worst <= 2 ? Verdict::holds : Verdict::fails, static_cast<double>(worst),
                         std::nullopt, grid, notes.str()};
  if (rep.verdict == Verdict::fails) {
    // Preimage of the middle crossing on the offending line.
    std::vector<int> hits;
    for (int k = 0; k < n_samples; ++k) {
      const double a = xs[k], b = xs[(k + 1) % n_samples];
      if ((a <= worst_line && worst_line < b) || (b <= worst_line && worst_line < a)) hits.push_back(k);
    }
    rep.witness = zs[hits[hits.size() / 2]];
  }
  return rep;
}

// Minimum of Re[(1 - omega1 conj(omega2)) h1' conj(h2')] over the grid; holds iff > 0.
inline VerificationReport check_wang_condition(const HarmonicMap& f1, const HarmonicMap& f2,
                                               const GridSpec& grid) {
  auto [mn, at] = detail::grid_min(grid, [&](cplx z) {
    const cplx q = (1.0 - f1.dilatation(z) * std::conj(f2.dilatation(z))) * f1.h().derivative(z) *
                   std::conj(f2.h().derivative(z));
    return q.real();
  });
  VerificationReport rep{"wang", mn > 0.0 ? Verdict::holds : Verdict::fails, mn, std::nullopt, grid,
                         "sufficient condition; failure does not imply non-univalence"};
  if (rep.verdict == Verdict::fails) rep.witness = at;
  return rep;
}

// ---------------------------------------------------------------------------
// Theorem gate

enum class Prediction { holds, violation, no_guarantee };

inline const char* to_string(Prediction p) {
  switch (p) {
    case Prediction::holds: return "holds";
    case Prediction::violation: return "violation";
    default: return "no_guarantee";
  }
}

struct GateInput {
  MapDescriptor first;
  std::optional<MapDescriptor> second;
  double t = 1.0;
};

struct GatePrediction {
  Prediction prediction = Prediction::no_guarantee;
  std::string covered_by;  // short rule id, empty when nothing applies
  std::string rationale;
};

/**
 * Decides which known result covers a scenario and what it predicts for
 * "univalent, sense-preserving and convex in the direction of the imaginary
 * axis". Rules, after ordering the pair so the -z (or strip) map comes first:
 *
 *   single map / t in {0,1}      holds        (criterion + shear principle)
 *   alpha1 == alpha2             holds        (any monomial pair)
 *   -z, z:   alpha1 >= alpha2    holds;  alpha2 > alpha1: violation
 *   -z, -z^2: alpha1 >= alpha2   holds
 *   -z, z^2: |alpha1| >= |alpha2| and alpha1 alpha2 >= 0   holds
 *   -z, z^3 at t = 3/4 with (0.4, 0.3) or (0.3, 0.6)       violation
 *   strip(pi/2, -z) with alpha = -1, z^2                   holds
 *   other strip/alpha pairs      no_guarantee (criterion only)
 *
 * Throws UnknownScenario for pairs outside this catalogue.
 */
inline GatePrediction theorem_gate(const GateInput& in) {
  require_unit_interval(in.t);
  if (!in.second || in.t == 1.0 || in.t == 0.0) {
    return {Prediction::holds, "single_map",
            "prevertex map satisfies the criterion and |omega| < 1, so the shear is univalent"};
  }
  MapDescriptor a = in.first;
  MapDescriptor b = *in.second;
  double t = in.t;
  auto swap_pair = [&] {
    std::swap(a, b);
    t = 1.0 - t;
  };

  const bool a_theta = a.params.family == Family::theta;
  const bool b_theta = b.params.family == Family::theta;
  if (a_theta && b_theta) throw UnknownScenario("gate: two strip maps are outside the catalogue");
  if (a_theta || b_theta) {
    if (b_theta) swap_pair();
    if (is_half_pi(a.params.theta) && a.omega.is(-1.0, 1) && b.params.alpha == -1.0 && b.omega.is(1.0, 2)) {
      return {Prediction::holds, "strip_pair", "combined dilatation is z(z - t)/(1 - t z), |omega| < 1"};
    }
    return {Prediction::no_guarantee, "strip_combination",
            "criterion holds for the combination; local univalence is not guaranteed"};
  }

  const double a1 = a.params.alpha, a2 = b.params.alpha;
  if (a1 == a2) return {Prediction::holds, "equal_alpha", "equal alphas give |omega| < 1 for any dilatations"};

  if (!a.omega.is(-1.0, 1) && b.omega.is(-1.0, 1)) swap_pair();
  if (!a.omega.is(-1.0, 1)) throw UnknownScenario("gate: first dilatation must be -z");
  const double al1 = a.params.alpha, al2 = b.params.alpha;
  const auto& w2 = b.omega;

  if (w2.is(1.0, 1)) {
    if (al1 >= al2) return {Prediction::holds, "linear_pair", "omega = -z gamma/gamma*, zeros of gamma in closed disk"};
    return {Prediction::violation, "linear_pair_reversed",
            "product of the zeros of gamma1 has modulus 1 + alpha2 - alpha1 > 1"};
  }
  if (w2.is(-1.0, 2)) {
    if (al1 >= al2) return {Prediction::holds, "neg_quadratic", "omega2 = -z^2 with alpha1 >= alpha2"};
    return {Prediction::no_guarantee, "", "omega2 = -z^2 with alpha1 < alpha2"};
  }
  if (w2.is(1.0, 2)) {
    if (std::abs(al1) >= std::abs(al2) && al1 * al2 >= 0.0)
      return {Prediction::holds, "pos_quadratic", "omega2 = z^2 with |alpha1| >= |alpha2|, alpha1 alpha2 >= 0"};
    return {Prediction::no_guarantee, "", "omega2 = z^2 outside the covered alpha region"};
  }
  if (w2.is(1.0, 3)) {
    const bool listed = t == 0.75 && ((al1 == 0.4 && al2 == 0.3) || (al1 == 0.3 && al2 == 0.6));
    if (listed) return {Prediction::violation, "cubic_counterexample", "omega2 = z^3 breaks sense preservation"};
    return {Prediction::no_guarantee, "", "omega2 = z^3 is not covered"};
  }
  throw UnknownScenario("gate: dilatation pair (-z, " + format_dilatation(w2) + ") is outside the catalogue");
}

// ---------------------------------------------------------------------------
// Witness search

struct Witness {
  cplx z;
  double modulus;
};

struct WitnessSearchParams {
  double r_max = 0.999;
  long budget = 140000;
  int starts = 8;
  int levels = 20;
};

struct WitnessSearchResult {
  std::optional<Witness> witness;
  Witness best;  // best point seen, whether or not it is a violation
  long evaluations = 0;
};

/**
 * Maximizes |omega| over |z| <= r_max: a coarse polar grid (256 x 512 when the
 * budget allows) followed by a deterministic 3 x 3 zoom from the best
 * `starts` grid points, halving the step for `levels` rounds. Returns a
 * witness iff |omega| >= 1 + kWitness somewhere; absence is inconclusive.
 */
inline WitnessSearchResult find_dilatation_violation(const Dilatation& omega,
                                                     const WitnessSearchParams& params = {}) {
  if (params.budget < 1000) throw InvalidParameter("witness search budget must be >= 1000");
  if (!(params.r_max > 0.0 && params.r_max < 1.0)) throw InvalidParameter("witness r_max must lie in (0, 1)");

  long evals = 0;
  auto modulus = [&](cplx z) {
    ++evals;
    try {
      const double m = std::abs(omega(z));
      return std::isfinite(m) ? m : -1.0;
    } catch (const DomainError&) {
      return -1.0;
    }
  };

  const long refine_cost = static_cast<long>(params.starts) * params.levels * 9;
  long coarse = std::max(64L, params.budget - refine_cost);
  int nr = 256, na = 512;
  if (coarse < static_cast<long>(nr) * na) {
    nr = std::max(4, static_cast<int>(std::sqrt(coarse / 2.0)));
    na = 2 * nr;
  }
  const double dr0 = params.r_max / nr;
  const double da0 = 2.0 * std::numbers::pi / na;

  struct Cand {
    double m, r, a;
  };
  std::vector<Cand> cands;
  cands.reserve(static_cast<std::size_t>(nr) * na);
  for (int i = 1; i <= nr; ++i)
    for (int j = 0; j < na; ++j) {
      const double r = dr0 * i, a = da0 * j;
      cands.push_back({modulus(std::polar(r, a)), r, a});
    }
  const int k = std::min<int>(params.starts, static_cast<int>(cands.size()));
  std::partial_sort(cands.begin(), cands.begin() + k, cands.end(),
                    [](const Cand& x, const Cand& y) { return x.m > y.m; });

  Cand best = cands[0];
  for (int s = 0; s < k; ++s) {
    Cand cur = cands[s];
    double dr = dr0, da = da0;
    for (int lvl = 0; lvl < params.levels; ++lvl) {
      Cand step = cur;
      for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
          if (di == 0 && dj == 0) continue;
          const double r = std::clamp(cur.r + di * dr, 0.0, params.r_max);
          const double a = cur.a + dj * da;
          const double m = modulus(std::polar(r, a));
          if (m > step.m) step = {m, r, a};
        }
      cur = step;
      dr *= 0.5;
      da *= 0.5;
    }
    if (cur.m > best.m) best = cur;
  }

  WitnessSearchResult res;
  res.best = {std::polar(best.r, best.a), best.m};
  res.evaluations = evals;
  if (best.m >= 1.0 + verify_tol::kWitness) res.witness = res.best;
  return res;
}

}  // namespace hsmap
