#pragma once

// Images of concentric circles and radial segments under a harmonic map,
// written as SVG 1.1 and as a CSV of the sampled circle images.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "hsmap/error.hpp"
#include "hsmap/scenario.hpp"
#include "hsmap/shear.hpp"

namespace hsmap {

struct CurveSample {
  double r;
  double angle;
  cplx w;
};

struct Curve {
  bool ring;  // true: image of |z| = r, false: image of a radial segment
  std::vector<CurveSample> samples;
};

struct BoundingBox {
  double min_x, max_x, min_y, max_y;
  bool operator==(const BoundingBox&) const = default;
};

struct Rendering {
  std::vector<Curve> curves;
  BoundingBox box;
};

inline Rendering render_map(const HarmonicMap& f, const RenderSpec& spec) {
  spec.validate();
  Rendering out;
  const int n = spec.samples_per_curve;
  for (int k = 1; k <= spec.rings; ++k) {
    const double r = spec.r_max * k / spec.rings;
    Curve c{true, {}};
    c.samples.reserve(n);
    for (int j = 0; j < n; ++j) {
      const double a = 2.0 * std::numbers::pi * j / n;
      c.samples.push_back({r, a, f(std::polar(r, a))});
    }
    out.curves.push_back(std::move(c));
  }
  for (int k = 0; k < spec.rays; ++k) {
    const double a = 2.0 * std::numbers::pi * k / spec.rays;
    Curve c{false, {}};
    c.samples.reserve(n);
    for (int j = 0; j < n; ++j) {
      const double r = spec.r_max * j / (n - 1);
      c.samples.push_back({r, a, f(std::polar(r, a))});
    }
    out.curves.push_back(std::move(c));
  }
  const cplx w0 = out.curves.front().samples.front().w;
  BoundingBox b{w0.real(), w0.real(), w0.imag(), w0.imag()};
  for (const auto& c : out.curves)
    for (const auto& s : c.samples) {
      b.min_x = std::min(b.min_x, s.w.real());
      b.max_x = std::max(b.max_x, s.w.real());
      b.min_y = std::min(b.min_y, s.w.imag());
      b.max_y = std::max(b.max_y, s.w.imag());
    }
  out.box = b;
  return out;
}

namespace detail {
inline std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
inline std::string num9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}
}  // namespace detail

// Columns r, angle, Re f, Im f; one row per ring sample, 17 significant digits.
inline std::string rendering_csv(const Rendering& rnd) {
  std::string s = "r,angle,re_f,im_f\n";
  for (const auto& c : rnd.curves) {
    if (!c.ring) continue;
    for (const auto& p : c.samples) {
      s += detail::num17(p.r) + ',' + detail::num17(p.angle) + ',' + detail::num17(p.w.real()) + ',' +
           detail::num17(p.w.imag()) + '\n';
    }
  }
  return s;
}

// Viewport is the bounding box plus a 5% margin; SVG y runs downward so the
// imaginary part is negated.
inline std::string rendering_svg(const Rendering& rnd, const std::string& title = {}) {
  using detail::num9;
  const auto& b = rnd.box;
  const double w = std::max(b.max_x - b.min_x, 1e-12);
  const double h = std::max(b.max_y - b.min_y, 1e-12);
  const double m = 0.05 * std::max(w, h);
  const double vx = b.min_x - m, vy = -(b.max_y + m), vw = w + 2 * m, vh = h + 2 * m;
  const double px = 600.0;
  const double stroke = 0.0015 * std::max(vw, vh);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num9(px) + "\" height=\"" +
       num9(px * vh / vw) + "\" viewBox=\"" + num9(vx) + ' ' + num9(vy) + ' ' + num9(vw) + ' ' + num9(vh) + "\">\n";
  if (!title.empty()) s += "<title>" + title + "</title>\n";
  s += "<rect x=\"" + num9(vx) + "\" y=\"" + num9(vy) + "\" width=\"" + num9(vw) + "\" height=\"" + num9(vh) +
       "\" fill=\"white\"/>\n";
  // Axes through the origin, clipped to the viewport.
  s += "<g stroke=\"#999999\" stroke-width=\"" + num9(stroke) + "\" stroke-dasharray=\"" + num9(4 * stroke) + "\">\n";
  if (vy <= 0.0 && 0.0 <= vy + vh)
    s += "<line x1=\"" + num9(vx) + "\" y1=\"0\" x2=\"" + num9(vx + vw) + "\" y2=\"0\"/>\n";
  if (vx <= 0.0 && 0.0 <= vx + vw)
    s += "<line x1=\"0\" y1=\"" + num9(vy) + "\" x2=\"0\" y2=\"" + num9(vy + vh) + "\"/>\n";
  s += "</g>\n";
  s += "<g fill=\"none\" stroke=\"black\" stroke-width=\"" + num9(stroke) + "\">\n";
  for (const auto& c : rnd.curves) {
    s += c.ring ? "<polygon points=\"" : "<polyline points=\"";
    bool first = true;
    for (const auto& p : c.samples) {
      if (!first) s += ' ';
      first = false;
      s += num9(p.w.real()) + ',' + num9(-p.w.imag());
    }
    s += "\"/>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidParameter("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InvalidParameter("failed writing '" + path.string() + "'");
}

}  // namespace hsmap
