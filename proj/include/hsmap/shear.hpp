#pragma once

/**
 * @file shear.hpp
 * @brief Shear construction f = h + conj(g) from a prevertex map F = h + g and
 *        a dilatation omega = g'/h', linear combinations of two harmonic maps,
 *        and the rational form of the combined dilatation.
 */

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>

#include "hsmap/error.hpp"
#include "hsmap/maps.hpp"
#include "hsmap/polynomial.hpp"
#include "hsmap/quadrature.hpp"

namespace hsmap {

using Dilatation = std::function<cplx(cplx)>;

// omega = numerator / denominator with both parts kept as polynomials.
struct RationalDilatation {
  Polynomial numerator;
  Polynomial denominator;

  cplx operator()(cplx z) const { return numerator(z) / denominator(z); }
};

class HarmonicMap {
 public:
  HarmonicMap(AnalyticFunction h, AnalyticFunction g, Dilatation omega, std::string label)
      : h_(std::move(h)), g_(std::move(g)), omega_(std::move(omega)), label_(std::move(label)) {}

  const AnalyticFunction& h() const noexcept { return h_; }
  const AnalyticFunction& g() const noexcept { return g_; }
  const Dilatation& omega() const noexcept { return omega_; }
  const std::string& label() const noexcept { return label_; }

  cplx operator()(cplx z) const { return h_.value(z) + std::conj(g_.value(z)); }
  cplx dilatation(cplx z) const { return omega_(z); }

  // F = h + g, the analytic map this harmonic map is a shear of.
  AnalyticFunction prevertex() const { return h_ + g_; }

 private:
  AnalyticFunction h_;
  AnalyticFunction g_;
  Dilatation omega_;
  std::string label_;
};

inline std::string format_dilatation(const MonomialDilatation& w) {
  std::ostringstream os;
  os.precision(17);
  const cplx c = w.coefficient();
  if (c == cplx{1.0}) {
  } else if (c == cplx{-1.0}) {
    os << '-';
  } else if (c.imag() == 0.0) {
    os << c.real() << '*';
  } else {
    os << '(' << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)*";
  }
  os << 'z';
  if (w.power() != 1) os << '^' << w.power();
  return os.str();
}

/**
 * Shears F along the real axis with dilatation omega:
 * h' = F'/(1 + omega), g' = omega h', and h, g are obtained by integrating
 * along the radial segment [0, z]; h(0) = g(0) = 0.
 */
inline HarmonicMap shear_construct(const AnalyticFunction& F, const MonomialDilatation& omega,
                                   const QuadratureParams& quad = {}) {
  auto dh = [F, omega](cplx z) {
    const cplx w = omega(z);
    if (!(std::abs(w) < 1.0)) throw DomainError("shear: |omega(z)| >= 1, cannot divide by 1 + omega");
    return F.derivative(z) / (1.0 + w);
  };
  auto dg = [dh, omega](cplx z) { return omega(z) * dh(z); };
  auto h = [dh, quad](cplx z) {
    require_in_disk(z, "shear h");
    return integrate_segment(dh, cplx{0.0}, z, quad);
  };
  auto g = [dg, quad](cplx z) {
    require_in_disk(z, "shear g");
    return integrate_segment(dg, cplx{0.0}, z, quad);
  };
  const std::string tag = F.label() + ", omega=" + format_dilatation(omega);
  return HarmonicMap({h, dh, "h[" + tag + "]"}, {g, dg, "g[" + tag + "]"},
                     [omega](cplx z) { return omega(z); }, "shear[" + tag + "]");
}

inline HarmonicMap from_parts(ShearParts parts, const MonomialDilatation& omega, std::string label) {
  return HarmonicMap(std::move(parts.h), std::move(parts.g), [omega](cplx z) { return omega(z); },
                     std::move(label));
}

inline bool is_half_pi(double theta) { return std::abs(theta - std::numbers::pi / 2) <= 1e-15; }

// Builds the sheared map for a descriptor, using a closed form when one is
// available and quadrature otherwise.
inline HarmonicMap build_map(const MapDescriptor& d, const QuadratureParams& quad = {}) {
  const auto& p = d.params;
  const std::string label = prevertex(p).label() + ", omega=" + format_dilatation(d.omega);
  if (p.family == Family::alpha && (d.omega.is(-1.0, 1) || d.omega.is(1.0, 1)))
    return from_parts(closed_form_parts_alpha(p.alpha, d.omega), d.omega, "closed[" + label + "]");
  if (p.family == Family::theta && is_half_pi(p.theta) && d.omega.is(-1.0, 1))
    return from_parts(closed_form_parts_strip_pair().first, d.omega, "closed[" + label + "]");
  if (p.family == Family::alpha && p.alpha == -1.0 && d.omega.is(1.0, 2))
    return from_parts(closed_form_parts_strip_pair().second, d.omega, "closed[" + label + "]");
  return shear_construct(prevertex(p), d.omega, quad);
}

struct LinCombSpec {
  HarmonicMap f1;
  HarmonicMap f2;
  double t = 0.5;
};

inline void require_unit_interval(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "t = " << t << " violates t in [0, 1]";
    throw InvalidParameter(os.str());
  }
}

/**
 * f = t f1 + (1 - t) f2. The dilatation is the general ratio
 * (t omega1 h1' + (1 - t) omega2 h2') / (t h1' + (1 - t) h2').
 * The endpoints t = 0 and t = 1 return the constituent unchanged.
 */
inline HarmonicMap lincomb(const LinCombSpec& spec) {
  const double t = spec.t;
  require_unit_interval(t);
  if (t == 1.0) return spec.f1;
  if (t == 0.0) return spec.f2;
  const HarmonicMap f1 = spec.f1;
  const HarmonicMap f2 = spec.f2;
  const double s = 1.0 - t;
  AnalyticFunction h = t * f1.h() + s * f2.h();
  AnalyticFunction g = t * f1.g() + s * f2.g();
  auto omega = [f1, f2, t, s](cplx z) {
    const cplx d1 = f1.h().derivative(z);
    const cplx d2 = f2.h().derivative(z);
    return (t * f1.dilatation(z) * d1 + s * f2.dilatation(z) * d2) / (t * d1 + s * d2);
  };
  std::ostringstream os;
  os << t << "*" << f1.label() << " + " << s << "*" << f2.label();
  return HarmonicMap(std::move(h), std::move(g), omega, os.str());
}

/**
 * Combined dilatation of t f_{alpha1} + (1 - t) f_{alpha2} for monomial
 * omega1, omega2, assembled symbolically as
 *
 *   N = (1+z^2)(t w1 + (1-t) w2 + w1 w2)
 *       - 2z(alpha1 t w1 + alpha1 t w1 w2 + (1-t) alpha2 w2 + (1-t) alpha2 w1 w2)
 *   D = (1+z^2)(1 + t w2 + (1-t) w1)
 *       - 2z(alpha2 + alpha1 t w2 + (1-t) alpha2 w1 + alpha1 t - alpha2 t).
 */
inline RationalDilatation combined_dilatation(const MonomialDilatation& omega1,
                                              const MonomialDilatation& omega2, double alpha1,
                                              double alpha2, double t) {
  (void)FamilyParams::alpha_family(alpha1);
  (void)FamilyParams::alpha_family(alpha2);
  require_unit_interval(t);
  const Polynomial w1 = omega1.as_polynomial();
  const Polynomial w2 = omega2.as_polynomial();
  const Polynomial w12 = w1 * w2;
  const Polynomial one{1.0};
  const Polynomial q{1.0, 0.0, 1.0};   // 1 + z^2
  const Polynomial two_z{0.0, 2.0};    // 2z
  const double s = 1.0 - t;
  const Polynomial num = q * (cplx(t) * w1 + cplx(s) * w2 + w12) -
                         two_z * (cplx(alpha1 * t) * w1 + cplx(alpha1 * t) * w12 +
                                  cplx(s * alpha2) * w2 + cplx(s * alpha2) * w12);
  const Polynomial den = q * (one + cplx(t) * w2 + cplx(s) * w1) -
                         two_z * (Polynomial{alpha2 + alpha1 * t - alpha2 * t} +
                                  cplx(alpha1 * t) * w2 + cplx(s * alpha2) * w1);
  return {num, den};
}

struct GammaPair {
  Polynomial gamma;
  Polynomial gamma_star;
};

/**
 * For omega1 = -z, omega2 = z the combined dilatation is -z gamma(z)/gamma*(z) with
 * gamma(z) = z^3 + (2t-1-2 alpha1 t-2 alpha2(1-t)) z^2 + (1+2 alpha2(1-t)-2 alpha1 t) z + (2t-1).
 */
inline GammaPair gamma_polys(double alpha1, double alpha2, double t) {
  const double s = 1.0 - t;
  Polynomial gamma{2 * t - 1, 1 + 2 * alpha2 * s - 2 * alpha1 * t,
                   2 * t - 1 - 2 * alpha1 * t - 2 * alpha2 * s, 1.0};
  Polynomial star = conj_reciprocal(gamma);
  return {std::move(gamma), std::move(star)};
}

inline RationalDilatation gamma_dilatation(double alpha1, double alpha2, double t) {
  auto [gamma, star] = gamma_polys(alpha1, alpha2, t);
  return {Polynomial{0.0, -1.0} * gamma, star};
}

// Closed-form dilatation z(z - t)/(1 - t z) of the strip/alpha combination.
inline Dilatation strip_pair_dilatation(double t) {
  require_unit_interval(t);
  return [t](cplx z) { return z * (z - t) / (1.0 - t * z); };
}

}  // namespace hsmap
