// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "lincell/star.hpp"

namespace lincell {

struct RenderBounds {
  double x0 = -5, y0 = -5, x1 = 5, y1 = 5;
};

namespace detail {

struct Vec2 {
  double x, y;
};

/* Sutherland-Hodgman clip of a convex polygon against an axis box. */
inline std::vector<Vec2> clip_to_box(std::vector<Vec2> poly, const RenderBounds& b) {
  auto clip_half = [](const std::vector<Vec2>& in, auto inside, auto cross) {
    std::vector<Vec2> out;
    for (size_t i = 0; i < in.size(); ++i) {
      const Vec2& cur = in[i];
      const Vec2& nxt = in[(i + 1) % in.size()];
      bool ci = inside(cur), ni = inside(nxt);
      if (ci) out.push_back(cur);
      if (ci != ni) out.push_back(cross(cur, nxt));
    }
    return out;
  };
  auto lerp_x = [](const Vec2& a, const Vec2& c, double x) {
    double t = (x - a.x) / (c.x - a.x);
    return Vec2{x, a.y + t * (c.y - a.y)};
  };
  auto lerp_y = [](const Vec2& a, const Vec2& c, double y) {
    double t = (y - a.y) / (c.y - a.y);
    return Vec2{a.x + t * (c.x - a.x), y};
  };
  poly = clip_half(poly, [&](const Vec2& p) { return p.x >= b.x0; },
                   [&](const Vec2& p, const Vec2& q) { return lerp_x(p, q, b.x0); });
  if (poly.empty()) return poly;
  poly = clip_half(poly, [&](const Vec2& p) { return p.x <= b.x1; },
                   [&](const Vec2& p, const Vec2& q) { return lerp_x(p, q, b.x1); });
  if (poly.empty()) return poly;
  poly = clip_half(poly, [&](const Vec2& p) { return p.y >= b.y0; },
                   [&](const Vec2& p, const Vec2& q) { return lerp_y(p, q, b.y0); });
  if (poly.empty()) return poly;
  poly = clip_half(poly, [&](const Vec2& p) { return p.y <= b.y1; },
                   [&](const Vec2& p, const Vec2& q) { return lerp_y(p, q, b.y1); });
  return poly;
}

class SvgCanvas {
 public:
  SvgCanvas(const RenderBounds& b, int width = 640, int height = 640)
      : b_(b), w_(width), h_(height) {
    out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
         << "\" viewBox=\"0 0 " << w_ << " " << h_ << "\">\n";
    out_ << "<rect width=\"" << w_ << "\" height=\"" << h_ << "\" fill=\"white\"/>\n";
  }

  /* Deterministic palette: golden-angle hue rotation by cell index. */
  static std::string color(size_t index) {
    int hue = static_cast<int>((index * 137) % 360);
    return "hsl(" + std::to_string(hue) + ",70%,45%)";
  }

  void polygon(const std::vector<Vec2>& pts, const std::string& col) {
    if (pts.size() < 3) return;
    out_ << "<polygon points=\"";
    for (const Vec2& p : pts) out_ << fmt(px(p.x)) << "," << fmt(py(p.y)) << " ";
    out_ << "\" fill=\"" << col << "\" fill-opacity=\"0.35\" stroke=\"" << col
         << "\" stroke-width=\"1\"/>\n";
  }

  void segment(Vec2 a, Vec2 c, const std::string& col) {
    out_ << "<line x1=\"" << fmt(px(a.x)) << "\" y1=\"" << fmt(py(a.y)) << "\" x2=\""
         << fmt(px(c.x)) << "\" y2=\"" << fmt(py(c.y)) << "\" stroke=\"" << col
         << "\" stroke-width=\"2\"/>\n";
  }

  void dot(Vec2 p, const std::string& col) {
    out_ << "<circle cx=\"" << fmt(px(p.x)) << "\" cy=\"" << fmt(py(p.y))
         << "\" r=\"4\" fill=\"" << col << "\"/>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  double px(double x) const { return margin_ + (x - b_.x0) / (b_.x1 - b_.x0) * (w_ - 2 * margin_); }
  double py(double y) const {
    return h_ - margin_ - (y - b_.y0) / (b_.y1 - b_.y0) * (h_ - 2 * margin_);
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  RenderBounds b_;
  int w_, h_;
  double margin_ = 20;
  std::ostringstream out_;
};

inline double approx(const Rational& q) {
  return static_cast<double>(num(q)) / static_cast<double>(den(q));
}

/* Liang-Barsky segment clip; false when fully outside. */
inline bool clip_segment(Vec2& a, Vec2& c, const RenderBounds& b) {
  double t0 = 0, t1 = 1, dx = c.x - a.x, dy = c.y - a.y;
  auto clip = [&](double p, double q) {
    if (p == 0) return q >= 0;
    double r = q / p;
    if (p < 0) {
      if (r > t1) return false;
      if (r > t0) t0 = r;
    } else {
      if (r < t0) return false;
      if (r < t1) t1 = r;
    }
    return true;
  };
  if (!clip(-dx, a.x - b.x0) || !clip(dx, b.x1 - a.x) || !clip(-dy, a.y - b.y0) ||
      !clip(dy, b.y1 - a.y))
    return false;
  Vec2 na{a.x + t0 * dx, a.y + t0 * dy}, nc{a.x + t1 * dx, a.y + t1 * dy};
  a = na;
  c = nc;
  return true;
}

inline double wall_value(const ExtAffine& w, double x, const RenderBounds& b, bool upper) {
  if (!w.is_finite()) return upper ? b.y1 + 1 : b.y0 - 1;
  double c1 = approx(w.fn.coef[0]);
  double c0 = approx(w.fn.constant);
  return c1 * x + c0;
}

/* Band or graph over a 1-D cell, as one clipped SVG element. */
inline void draw_planar_cell(SvgCanvas& svg, const RenderBounds& b, const LinearCell& c,
                             const std::string& col) {
  const LinearCell& base = c.base();
  double bx0, bx1;
  if (base.kind() == LinearCell::Kind::Point) {
    bx0 = bx1 = approx(base.point_value());
    if (bx0 < b.x0 || bx0 > b.x1) return;
  } else {
    bx0 = base.interval_lo().is_finite() ? approx(base.interval_lo().value) : b.x0 - 1;
    bx1 = base.interval_hi().is_finite() ? approx(base.interval_hi().value) : b.x1 + 1;
    bx0 = std::max(bx0, b.x0 - 1);
    bx1 = std::min(bx1, b.x1 + 1);
    if (bx0 >= bx1) return;
  }

  if (c.kind() == LinearCell::Kind::Graph) {
    double y0 = wall_value(ExtAffine(c.graph_fn()), bx0, b, false);
    double y1 = wall_value(ExtAffine(c.graph_fn()), bx1, b, false);
    if (base.kind() == LinearCell::Kind::Point) {
      if (y0 >= b.y0 && y0 <= b.y1) svg.dot({bx0, y0}, col);
      return;
    }
    Vec2 a{bx0, y0}, z{bx1, y1};
    if (clip_segment(a, z, b)) svg.segment(a, z, col);
    return;
  }

  double lo0 = wall_value(c.band_lo(), bx0, b, false);
  double lo1 = wall_value(c.band_lo(), bx1, b, false);
  double hi0 = wall_value(c.band_hi(), bx0, b, true);
  double hi1 = wall_value(c.band_hi(), bx1, b, true);
  if (base.kind() == LinearCell::Kind::Point) {
    double y0 = std::max(lo0, b.y0), y1 = std::min(hi0, b.y1);
    if (y0 < y1) svg.segment({bx0, y0}, {bx0, y1}, col);
    return;
  }
  std::vector<Vec2> poly =
      clip_to_box({{bx0, lo0}, {bx1, lo1}, {bx1, hi1}, {bx0, hi0}}, b);
  svg.polygon(poly, col);
}

inline void draw_line_cell(SvgCanvas& svg, const RenderBounds& b, const LinearCell& c,
                           const std::string& col) {
  if (c.kind() == LinearCell::Kind::Point) {
    double x = approx(c.point_value());
    if (x >= b.x0 && x <= b.x1) svg.dot({x, 0}, col);
    return;
  }
  double x0 = c.interval_lo().is_finite() ? approx(c.interval_lo().value) : b.x0 - 1;
  double x1 = c.interval_hi().is_finite() ? approx(c.interval_hi().value) : b.x1 + 1;
  x0 = std::max(x0, b.x0);
  x1 = std::min(x1, b.x1);
  if (x0 < x1) svg.segment({x0, 0}, {x1, 0}, col);
}

}  // namespace detail

/* SVG figure of a 1-D or 2-D decomposition: bands as translucent polygons,
 * graphs and intervals as strokes, points as dots. */
inline std::string render_svg(const Decomposition& d, const RenderBounds& bounds = {}) {
  if (d.dim() > 2) throw InputError("render supports ambient dimension <= 2 only");
  detail::SvgCanvas svg(bounds);
  for (size_t i = 0; i < d.cells().size(); ++i) {
    const std::string col = detail::SvgCanvas::color(i);
    if (d.dim() == 1)
      detail::draw_line_cell(svg, bounds, d.cells()[i], col);
    else
      detail::draw_planar_cell(svg, bounds, d.cells()[i], col);
  }
  return svg.finish();
}

/* SVG figure of an open-cell cover; every piece of a cover cell shares one
 * color. */
inline std::string render_svg(const std::vector<OpenPLCell>& cover,
                              const RenderBounds& bounds = {}) {
  detail::SvgCanvas svg(bounds);
  for (size_t i = 0; i < cover.size(); ++i) {
    const OpenPLCell& c = cover[i];
    if (c.dim() > 2) throw InputError("render supports ambient dimension <= 2 only");
    const std::string col = detail::SvgCanvas::color(i);
    if (c.dim() == 1) {
      double x0 = c.interval_lo().is_finite() ? detail::approx(c.interval_lo().value)
                                              : bounds.x0 - 1;
      double x1 = c.interval_hi().is_finite() ? detail::approx(c.interval_hi().value)
                                              : bounds.x1 + 1;
      x0 = std::max(x0, bounds.x0);
      x1 = std::min(x1, bounds.x1);
      if (x0 < x1) svg.segment({x0, 0}, {x1, 0}, col);
      continue;
    }
    // draw each wall piece as a band over its 1-D domain
    const PWAWall& lo = c.wall_lo();
    const PWAWall& hi = c.wall_hi();
    size_t pieces = lo.is_finite() ? lo.pieces.size() : hi.pieces.size();
    if (!lo.is_finite() && !hi.is_finite()) {
      // unbounded vertical extent over the base interval
      double x0 = c.base().interval_lo().is_finite()
                      ? detail::approx(c.base().interval_lo().value)
                      : bounds.x0 - 1;
      double x1 = c.base().interval_hi().is_finite()
                      ? detail::approx(c.base().interval_hi().value)
                      : bounds.x1 + 1;
      std::vector<detail::Vec2> poly = detail::clip_to_box(
          {{x0, bounds.y0 - 1}, {x1, bounds.y0 - 1}, {x1, bounds.y1 + 1}, {x0, bounds.y1 + 1}},
          bounds);
      svg.polygon(poly, col);
      continue;
    }
    for (size_t p = 0; p < pieces; ++p) {
      const LinearCell& dom = lo.is_finite() ? lo.pieces[p].first : hi.pieces[p].first;
      ExtAffine plo = lo.is_finite() ? ExtAffine(lo.pieces[p].second) : ExtAffine::neg_inf();
      ExtAffine phi = hi.is_finite() ? ExtAffine(hi.pieces[p].second) : ExtAffine::pos_inf();
      LinearCell band = LinearCell::band_presorted(dom, plo, phi);
      detail::draw_planar_cell(svg, bounds, band, col);
    }
  }
  return svg.finish();
}

}  // namespace lincell
