#pragma once

/**
 * @file maps.hpp
 * @brief Analytic building blocks on the unit disk: the prevertex families
 *        F_alpha(z) = z(1 - alpha z)/(1 - z^2) and the vertical strip map
 *        F_theta, monomial dilatations, and closed-form sheared parts.
 *
 * All logarithms use the principal branch. Their arguments (1 - z, 1 + z,
 * 1 + z e^{+-i theta}, 1 + z^2) stay in the right half-plane for |z| < 1,
 * so no branch cut is met inside the disk.
 */

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>

#include "hsmap/error.hpp"
#include "hsmap/polynomial.hpp"

namespace hsmap {

// Evaluable handle on the open unit disk: value and analytic derivative.
class AnalyticFunction {
 public:
  using Fn = std::function<cplx(cplx)>;

  AnalyticFunction(Fn value, Fn derivative, std::string label)
      : value_(std::move(value)), derivative_(std::move(derivative)), label_(std::move(label)) {}

  cplx value(cplx z) const { return value_(z); }
  cplx derivative(cplx z) const { return derivative_(z); }
  cplx operator()(cplx z) const { return value_(z); }
  const std::string& label() const noexcept { return label_; }

  friend AnalyticFunction operator+(const AnalyticFunction& a, const AnalyticFunction& b) {
    return {[a, b](cplx z) { return a.value(z) + b.value(z); },
            [a, b](cplx z) { return a.derivative(z) + b.derivative(z); },
            "(" + a.label() + " + " + b.label() + ")"};
  }

  friend AnalyticFunction operator*(double s, const AnalyticFunction& a) {
    std::ostringstream os;
    os << s << "*" << a.label();
    return {[s, a](cplx z) { return s * a.value(z); },
            [s, a](cplx z) { return s * a.derivative(z); }, os.str()};
  }

 private:
  Fn value_;
  Fn derivative_;
  std::string label_;
};

inline void require_in_disk(cplx z, const std::string& who) {
  if (!(std::abs(z) < 1.0)) {
    std::ostringstream os;
    os << who << ": |z| = " << std::abs(z) << " is outside the open unit disk";
    throw DomainError(os.str());
  }
}

// omega(z) = c z^n with |c| <= 1 and n >= 1.
class MonomialDilatation {
 public:
  MonomialDilatation(cplx coefficient, int power) : c_(coefficient), n_(power) {
    if (power < 1) throw InvalidParameter("dilatation power must be >= 1");
    if (!(std::abs(coefficient) <= 1.0))
      throw InvalidParameter("dilatation coefficient must satisfy |c| <= 1");
  }

  cplx coefficient() const noexcept { return c_; }
  int power() const noexcept { return n_; }

  cplx operator()(cplx z) const { return c_ * std::pow(z, n_); }
  Polynomial as_polynomial() const { return Polynomial::monomial(c_, n_); }

  bool operator==(const MonomialDilatation& o) const noexcept {
    return c_ == o.c_ && n_ == o.n_;
  }
  bool is(double c, int n) const noexcept { return c_ == cplx{c} && n_ == n; }

 private:
  cplx c_;
  int n_;
};

enum class Family { alpha, theta };

struct FamilyParams {
  Family family = Family::alpha;
  double alpha = 0.0;  // meaningful iff family == alpha
  double theta = 0.0;  // meaningful iff family == theta

  static FamilyParams alpha_family(double a) {
    if (!(a >= -1.0 && a <= 1.0)) {
      std::ostringstream os;
      os << "alpha = " << a << " violates alpha in [-1, 1]";
      throw InvalidParameter(os.str());
    }
    return {Family::alpha, a, 0.0};
  }

  static FamilyParams theta_family(double th) {
    if (!(th > 0.0 && th < std::numbers::pi)) {
      std::ostringstream os;
      os << "theta = " << th << " violates theta in (0, pi)";
      throw InvalidParameter(os.str());
    }
    return {Family::theta, 0.0, th};
  }

  bool operator==(const FamilyParams&) const = default;
};

// A constituent map as described by its parameters.
struct MapDescriptor {
  FamilyParams params;
  MonomialDilatation omega{-1.0, 1};
};

// F_alpha(z) = z(1 - alpha z)/(1 - z^2),  F_alpha'(z) = (1 + z^2 - 2 alpha z)/(1 - z^2)^2.
inline AnalyticFunction prevertex_alpha(double alpha) {
  (void)FamilyParams::alpha_family(alpha);
  std::ostringstream os;
  os << "F_alpha(" << alpha << ")";
  return {[alpha](cplx z) {
            require_in_disk(z, "F_alpha");
            return z * (1.0 - alpha * z) / (1.0 - z * z);
          },
          [alpha](cplx z) {
            require_in_disk(z, "F_alpha'");
            const cplx d = 1.0 - z * z;
            return (1.0 + z * z - 2.0 * alpha * z) / (d * d);
          },
          os.str()};
}

// Vertical strip map (1/(2i sin theta)) log((1 + z e^{i theta})/(1 + z e^{-i theta})).
inline AnalyticFunction prevertex_theta(double theta) {
  (void)FamilyParams::theta_family(theta);
  const cplx e = std::polar(1.0, theta);
  const cplx ec = std::conj(e);
  const cplx k = 1.0 / (cplx{0.0, 2.0} * std::sin(theta));
  std::ostringstream os;
  os << "F_theta(" << theta << ")";
  return {[=](cplx z) {
            require_in_disk(z, "F_theta");
            return k * (std::log(1.0 + z * e) - std::log(1.0 + z * ec));
          },
          [=](cplx z) {
            require_in_disk(z, "F_theta'");
            return 1.0 / ((1.0 + z * e) * (1.0 + z * ec));
          },
          os.str()};
}

inline AnalyticFunction prevertex(const FamilyParams& p) {
  return p.family == Family::alpha ? prevertex_alpha(p.alpha) : prevertex_theta(p.theta);
}

struct ShearParts {
  AnalyticFunction h;
  AnalyticFunction g;
};

/**
 * Closed-form analytic and co-analytic parts of the shear of F_alpha with
 * dilatation -z or z, with the integration constants chosen so that
 * h(0) = g(0) = 0. Derivatives are the symbolic derivatives of the closed
 * forms themselves, not F'/(1 + omega).
 */
inline ShearParts closed_form_parts_alpha(double alpha, const MonomialDilatation& omega) {
  const auto F = prevertex_alpha(alpha);
  const double a = alpha;
  std::ostringstream tag;
  tag << "(" << a << ")";

  auto L = [](cplx z) { return std::log((1.0 + z) / (1.0 - z)); };
  auto dL = [](cplx z) { return 2.0 / (1.0 - z * z); };

  if (omega.is(-1.0, 1)) {
    auto h = [=](cplx z) {
      require_in_disk(z, "h1");
      const cplx m = 1.0 - z, p = 1.0 + z;
      return (1.0 - a) / (4.0 * m * m) - (1.0 + a) / (4.0 * p) + (1.0 + a) / 8.0 * L(z) + a / 2.0;
    };
    auto dh = [=](cplx z) {
      require_in_disk(z, "h1'");
      const cplx m = 1.0 - z, p = 1.0 + z;
      return (1.0 - a) / (2.0 * m * m * m) + (1.0 + a) / (4.0 * p * p) + (1.0 + a) / 8.0 * dL(z);
    };
    AnalyticFunction hf{h, dh, "h1" + tag.str()};
    AnalyticFunction gf{[F, h](cplx z) { return F.value(z) - h(z); },
                        [F, dh](cplx z) { return F.derivative(z) - dh(z); }, "g1" + tag.str()};
    return {hf, gf};
  }
  if (omega.is(1.0, 1)) {
    auto h = [=](cplx z) {
      require_in_disk(z, "h2");
      const cplx m = 1.0 - z, p = 1.0 + z;
      return (1.0 - a) / (4.0 * m) - (1.0 + a) / (4.0 * p * p) + (1.0 - a) / 8.0 * L(z) + a / 2.0;
    };
    auto dh = [=](cplx z) {
      require_in_disk(z, "h2'");
      const cplx m = 1.0 - z, p = 1.0 + z;
      return (1.0 - a) / (4.0 * m * m) + (1.0 + a) / (2.0 * p * p * p) + (1.0 - a) / 8.0 * dL(z);
    };
    AnalyticFunction hf{h, dh, "h2" + tag.str()};
    AnalyticFunction gf{[F, h](cplx z) { return F.value(z) - h(z); },
                        [F, dh](cplx z) { return F.derivative(z) - dh(z); }, "g2" + tag.str()};
    return {hf, gf};
  }
  throw UnsupportedDilatation("closed forms exist only for omega = -z or omega = z");
}

/**
 * Closed forms for the strip/alpha pair: the shear of F_theta at theta = pi/2
 * (that is, arctan z) with omega = -z, and the shear of z/(1 - z) with
 * omega = z^2.
 */
inline std::pair<ShearParts, ShearParts> closed_form_parts_strip_pair() {
  auto h1 = [](cplx z) {
    require_in_disk(z, "h1");
    return 0.5 * std::atan(z) - 0.5 * std::log(1.0 - z) + 0.25 * std::log(1.0 + z * z);
  };
  auto g1 = [](cplx z) {
    require_in_disk(z, "g1");
    return 0.5 * std::atan(z) + 0.5 * std::log(1.0 - z) - 0.25 * std::log(1.0 + z * z);
  };
  auto dh1 = [](cplx z) {
    require_in_disk(z, "h1'");
    const cplx q = 1.0 + z * z;
    return 0.5 / q + 0.5 / (1.0 - z) + 0.5 * z / q;
  };
  auto dg1 = [](cplx z) {
    require_in_disk(z, "g1'");
    const cplx q = 1.0 + z * z;
    return 0.5 / q - 0.5 / (1.0 - z) - 0.5 * z / q;
  };
  auto h2 = [](cplx z) {
    require_in_disk(z, "h2");
    return z / (2.0 * (1.0 - z)) - 0.5 * std::log(1.0 - z) + 0.25 * std::log(1.0 + z * z);
  };
  auto g2 = [](cplx z) {
    require_in_disk(z, "g2");
    return z / (2.0 * (1.0 - z)) + 0.5 * std::log(1.0 - z) - 0.25 * std::log(1.0 + z * z);
  };
  auto dh2 = [](cplx z) {
    require_in_disk(z, "h2'");
    const cplx m = 1.0 - z;
    return 0.5 / (m * m) + 0.5 / m + 0.5 * z / (1.0 + z * z);
  };
  auto dg2 = [](cplx z) {
    require_in_disk(z, "g2'");
    const cplx m = 1.0 - z;
    return 0.5 / (m * m) - 0.5 / m - 0.5 * z / (1.0 + z * z);
  };
  return {ShearParts{{h1, dh1, "h_theta"}, {g1, dg1, "g_theta"}},
          ShearParts{{h2, dh2, "h_alpha"}, {g2, dg2, "g_alpha"}}};
}

}  // namespace hsmap
