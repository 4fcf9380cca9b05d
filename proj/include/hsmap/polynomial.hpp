#pragma once

/**
 * @file polynomial.hpp
 * @brief Complex polynomials, conjugate-reciprocal transform, Cohn reduction
 *        and zero counting with respect to the unit circle.
 *
 * Coefficients are stored in ascending powers: coeffs()[i] multiplies z^i.
 * Trailing coefficients whose magnitude is at most kTrim times the largest
 * coefficient magnitude are dropped on construction, so degree() is always
 * the index of the highest retained coefficient.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hsmap/error.hpp"

namespace hsmap {

using cplx = std::complex<double>;

namespace poly_tol {
inline constexpr double kTrim = 1e-13;    // relative degree-trim threshold
inline constexpr double kCohn = 1e-10;    // margin on |c0| < |cn|
inline constexpr double kCircle = 1e-8;   // ||r| - 1| <= kCircle counts as "on"
inline constexpr double kRoot = 1e-9;     // residual bound for roots()
inline constexpr int kMaxIters = 500;
}  // namespace poly_tol

class Polynomial {
 public:
  Polynomial() : coeffs_{cplx{0.0}} {}
  Polynomial(std::initializer_list<cplx> cs) : coeffs_(cs) { trim(); }
  explicit Polynomial(std::vector<cplx> cs) : coeffs_(std::move(cs)) { trim(); }

  static Polynomial monomial(cplx c, int power) {
    std::vector<cplx> cs(static_cast<std::size_t>(power) + 1, cplx{0.0});
    cs.back() = c;
    return Polynomial(std::move(cs));
  }

  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  cplx leading() const noexcept { return coeffs_.back(); }

  cplx operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : cplx{0.0};
  }

  // max |c_i|
  double scale() const noexcept {
    double s = 0.0;
    for (const auto& c : coeffs_) s = std::max(s, std::abs(c));
    return s;
  }

  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }

  // Horner evaluation.
  cplx operator()(cplx z) const noexcept {
    cplx acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
  }

  Polynomial operator+(const Polynomial& o) const {
    std::vector<cplx> r(std::max(coeffs_.size(), o.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (*this)[i] + o[i];
    return Polynomial(std::move(r));
  }

  Polynomial operator-() const {
    std::vector<cplx> r(coeffs_);
    for (auto& c : r) c = -c;
    return Polynomial(std::move(r));
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    std::vector<cplx> r(coeffs_.size() + o.coeffs_.size() - 1, cplx{0.0});
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(cplx s, const Polynomial& p) {
    std::vector<cplx> r(p.coeffs_);
    for (auto& c : r) c *= s;
    return Polynomial(std::move(r));
  }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << '[';
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (i) os << ", ";
      os << coeffs_[i];
    }
    os << ']';
    return os.str();
  }

 private:
  void trim() {
    if (coeffs_.empty()) coeffs_.push_back(cplx{0.0});
    const double cut = poly_tol::kTrim * scale();
    while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= cut) coeffs_.pop_back();
    if (coeffs_.size() == 1 && std::abs(coeffs_[0]) == 0.0) coeffs_[0] = cplx{0.0};
  }

  std::vector<cplx> coeffs_;
};

inline cplx eval(const Polynomial& p, cplx z) noexcept { return p(z); }

// p*(z) = z^n conj(p(1/conj z)): conjugated coefficients in reverse order.
inline Polynomial conj_reciprocal(const Polynomial& p) {
  std::vector<cplx> r(p.coeffs().rbegin(), p.coeffs().rend());
  for (auto& c : r) c = std::conj(c);
  return Polynomial(std::move(r));
}

/**
 * One Cohn reduction p1 = (conj(a_n) p - a_0 p*) / z.
 *
 * Requires |a_0| < |a_n| - kCohn * scale(p). The constant term of the
 * numerator cancels identically, so the division by z is an index shift.
 * The leading coefficient of p1 is |a_n|^2 - |a_0|^2 > 0, hence deg p1 = n - 1.
 */
inline Polynomial cohn_step(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw PreconditionViolated("cohn_step: degree must be at least 1");
  const cplx a0 = p[0];
  const cplx an = p.leading();
  const double scale = p.scale();
  if (!(std::abs(a0) < std::abs(an) - poly_tol::kCohn * scale)) {
    throw PreconditionViolated("cohn_step: requires |a0| < |an| (got |a0|=" +
                               std::to_string(std::abs(a0)) +
                               ", |an|=" + std::to_string(std::abs(an)) + ")");
  }
  const Polynomial ps = conj_reciprocal(p);
  const cplx can = std::conj(an);
  std::vector<cplx> num(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) num[i] = can * p[i] - a0 * ps[i];
  // Cancels exactly in exact arithmetic; in floating point both products are
  // formed from the same operands, so the residue stays at rounding level.
  if (std::abs(num[0]) > poly_tol::kTrim * scale * scale)
    throw PreconditionViolated("cohn_step: constant term failed to cancel");
  return Polynomial(std::vector<cplx>(num.begin() + 1, num.end()));
}

/**
 * All roots of p by Aberth-Ehrlich simultaneous iteration.
 *
 * Starting points are perturbed roots of unity on the Cauchy bound circle.
 * An approximation is frozen once |p(z)| falls to the Horner rounding level.
 * Throws NoConvergence if any residual exceeds
 * kRoot * scale(p) * max(1, |r|)^n after kMaxIters sweeps.
 */
inline std::vector<cplx> roots(const Polynomial& p, int max_iters = poly_tol::kMaxIters) {
  const int n = p.degree();
  if (n < 1) throw PreconditionViolated("roots: degree must be at least 1");
  const auto& c = p.coeffs();
  if (n == 1) return {-c[0] / c[1]};

  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
  bound += 1.0;

  std::vector<cplx> z(n);
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = std::polar(bound, ang);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto horner = [&](cplx x, cplx& val, cplx& der, double& err_bound) {
    val = c[n];
    der = 0.0;
    double absacc = std::abs(c[n]);
    const double ax = std::abs(x);
    for (int i = n - 1; i >= 0; --i) {
      der = der * x + val;
      val = val * x + c[i];
      absacc = absacc * ax + std::abs(c[i]);
    }
    err_bound = 8.0 * eps * absacc;
  };

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iters; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      cplx val, der;
      double err;
      horner(z[k], val, der, err);
      if (std::abs(val) <= err) {
        done[k] = true;
        continue;
      }
      all_done = false;
      cplx sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      const cplx ratio = val / der;
      cplx w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
        w = std::polar(1e-3 * std::max(1.0, std::abs(z[k])), 1.0 + k);
      z[k] -= w;
      if (std::abs(w) <= 4.0 * eps * std::abs(z[k])) done[k] = true;
    }
    if (all_done) break;
  }

  const double scale = p.scale();
  for (const auto& r : z) {
    const double allowed = poly_tol::kRoot * scale * std::pow(std::max(1.0, std::abs(r)), n);
    const double res = std::abs(p(r));
    if (!(res <= allowed)) {
      std::ostringstream os;
      os.precision(6);
      os << "roots: no convergence after " << max_iters << " iterations; residuals:";
      for (const auto& q : z) os << ' ' << std::abs(p(q));
      throw NoConvergence(os.str());
    }
  }
  return z;
}

enum class ZeroCountMethod { cohn_chain, root_oracle };

inline const char* to_string(ZeroCountMethod m) {
  return m == ZeroCountMethod::cohn_chain ? "cohn_chain" : "root_oracle";
}

struct ZeroCount {
  int inside = 0;
  int on_circle = 0;
  int outside = 0;
  ZeroCountMethod method = ZeroCountMethod::cohn_chain;
};

// Classify raw roots against |z| = 1 with the kCircle band.
inline ZeroCount classify_roots(const std::vector<cplx>& rs) {
  ZeroCount zc;
  zc.method = ZeroCountMethod::root_oracle;
  for (const auto& r : rs) {
    const double d = std::abs(r) - 1.0;
    if (std::abs(d) <= poly_tol::kCircle)
      ++zc.on_circle;
    else if (d < 0)
      ++zc.inside;
    else
      ++zc.outside;
  }
  return zc;
}

/**
 * Counts zeros of p inside, on and outside |z| = 1.
 *
 * While |a0| < |an| a Cohn step removes one zero from the inside count.
 * While |a0| > |an| the polynomial is replaced by p*, which swaps the roles
 * of inside and outside. Near-equality (self-inversive remainder, typically
 * zeros on the circle) hands the remainder to roots().
 */
inline ZeroCount count_zeros_unit_disk(const Polynomial& p) {
  if (p.degree() < 1) throw PreconditionViolated("count_zeros_unit_disk: degree must be at least 1");
  ZeroCount zc;
  Polynomial q = (1.0 / p.scale()) * p;
  bool reflected = false;
  while (q.degree() >= 1) {
    const double a0 = std::abs(q[0]);
    const double an = std::abs(q.leading());
    const double margin = poly_tol::kCohn * q.scale();
    if (a0 < an - margin) {
      q = cohn_step(q);
      q = (1.0 / q.scale()) * q;
      ++(reflected ? zc.outside : zc.inside);
    } else if (a0 > an + margin) {
      q = conj_reciprocal(q);
      reflected = !reflected;
    } else {
      const ZeroCount rest = classify_roots(roots(q));
      zc.inside += reflected ? rest.outside : rest.inside;
      zc.outside += reflected ? rest.inside : rest.outside;
      zc.on_circle += rest.on_circle;
      zc.method = ZeroCountMethod::root_oracle;
      break;
    }
  }
  return zc;
}

}  // namespace hsmap
