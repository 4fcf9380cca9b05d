#pragma once

// Shared generators and comparison helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hsmap/polynomial.hpp"

namespace hsmap::testing {

// Uniform point in the closed disk |z| <= r.
inline cplx random_disk_point(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(r * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
}

// Root with modulus in [0, 0.95] or [1.05, 2.5], uniform angle.
inline cplx random_root_off_circle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double m = u(rng) < 0.5 ? 0.95 * u(rng) : 1.05 + 1.45 * u(rng);
  return std::polar(m, 2.0 * std::numbers::pi * u(rng));
}

// Expands lead * prod (z - r_k) in ascending powers.
inline std::vector<cplx> expand_roots(const std::vector<cplx>& roots, cplx lead) {
  std::vector<cplx> c{lead};
  for (const auto& r : roots) {
    std::vector<cplx> next(c.size() + 1, cplx{0.0});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

// max_i |a_i - b_i| / max_i |b_i|, zero-padding the shorter list.
inline double coeff_rel_error(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx x = i < a.size() ? a[i] : cplx{0.0};
    const cplx y = i < b.size() ? b[i] : cplx{0.0};
    diff = std::max(diff, std::abs(x - y));
    scale = std::max(scale, std::abs(y));
  }
  return scale == 0.0 ? diff : diff / scale;
}

inline double rel_error(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace hsmap::testing
