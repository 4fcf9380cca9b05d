#pragma once

// Globally adaptive Gauss-Kronrod (7, 15) quadrature for complex-valued
// integrands of a real variable, and line integrals along straight segments
// in the complex plane.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hsmap/error.hpp"

namespace hsmap {

struct QuadratureParams {
  double rel_tol = 1e-11;
  double abs_tol = 0.0;
  int max_subdivisions = 1 << 14;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int subdivisions = 0;
};

namespace detail {

// Kronrod abscissae (descending) and weights, G7 weights on the even nodes.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  double abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(center);
  std::complex<double> k15 = fc * kWgk[7];
  std::complex<double> g7 = fc * kWg[3];
  double abs_k = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const std::complex<double> f1 = f(center - dx);
    const std::complex<double> f2 = f(center + dx);
    k15 += kWgk[j] * (f1 + f2);
    abs_k += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) g7 += kWg[j / 2] * (f1 + f2);
  }
  Panel p{a, b, k15 * half, std::abs((k15 - g7) * half), abs_k * std::abs(half)};
  return p;
}

}  // namespace detail

// Integrates f over [a, b]. Stops when the summed error estimate is below
// max(abs_tol, rel_tol * |I|) or reaches the rounding floor of the integrand.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureParams& params = {}) {
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gk15(f, a, b));
  std::complex<double> total = panels.top().value;
  double err = panels.top().error;
  double abs_total = panels.top().abs_value;
  int n = 1;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    const double tol = std::max(params.abs_tol, params.rel_tol * std::abs(total));
    const double floor = 50.0 * eps * abs_total;
    if (err <= tol || err <= floor) return {total, err, n};
    if (n >= params.max_subdivisions) {
      throw QuadratureFailure("quadrature: error estimate " + std::to_string(err) +
                              " above tolerance " + std::to_string(tol) + " after " +
                              std::to_string(n) + " subdivisions");
    }
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gk15(f, worst.a, mid);
    const detail::Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    panels.push(left);
    panels.push(right);
    ++n;
    // Re-sum occasionally to keep the running totals free of drift.
    if (n % 64 == 0) {
      auto copy = panels;
      total = 0.0;
      err = 0.0;
      abs_total = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        abs_total += copy.top().abs_value;
        copy.pop();
      }
    }
  }
}

// Line integral of an analytic integrand along the straight segment [z0, z1].
template <class F>
std::complex<double> integrate_segment(F&& integrand, std::complex<double> z0,
                                       std::complex<double> z1,
                                       const QuadratureParams& params = {}) {
  const std::complex<double> dz = z1 - z0;
  if (dz == std::complex<double>{0.0}) return 0.0;
  auto along = [&](double s) { return integrand(z0 + s * dz) * dz; };
  return integrate(along, 0.0, 1.0, params).value;
}

}  // namespace hsmap
