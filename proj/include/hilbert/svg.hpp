#pragma once
// Deterministic SVG rendering for 2-dimensional charts: domain outline,
// family translates, orbit points, limit-set points, and quotient class
// coloring, in that layer order. Fixed canvas, fixed palette, coordinates
// printed at four decimals, so identical inputs give identical bytes.

#include "hilbert/scene.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

namespace hilbert {

struct PlotOverlays {
  std::vector<HomogeneousPoint> orbit_points;
  std::vector<HomogeneousPoint> limit_points;
  std::vector<ConvexSubset> translates;
  std::vector<HomogeneousPoint> class_points;
  std::vector<int> class_of;  // parallel to class_points
};

namespace detail {

inline constexpr const char* kPalette[8] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                            "#66a61e", "#e6ab02", "#a6761d", "#666666"};

// Chart-to-canvas map: bounding square of the outline, centered, y up.
struct CanvasFrame {
  double cx = 0.0, cy = 0.0, scale = 1.0;
  double x(const Vec& c) const { return 320.0 + (c[0] - cx) * scale; }
  double y(const Vec& c) const { return 320.0 - (c[1] - cy) * scale; }
};

inline void svg_num(double v, std::string& out) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  out += buf;
}

inline void svg_circle(const CanvasFrame& f, const Vec& c, double radius, const char* fill,
                       std::string& out) {
  out += "<circle cx=\"";
  svg_num(f.x(c), out);
  out += "\" cy=\"";
  svg_num(f.y(c), out);
  out += "\" r=\"";
  svg_num(radius, out);
  out += "\" fill=\"";
  out += fill;
  out += "\"/>\n";
}

}  // namespace detail

inline std::string emit_svg(const ConvexDomain& dom, const PlotOverlays& o) {
  if (dom.chart_dim() != 2)
    fail(errc::unsupported_plot_dimension, "plot needs a 2-dimensional chart");
  if (o.class_of.size() != o.class_points.size())
    fail(errc::invalid_argument, "class list must match the class points");

  const int kOutline = 256;
  std::vector<Vec> outline;
  outline.reserve(kOutline);
  double lo_x = detail::kInf, hi_x = -detail::kInf, lo_y = detail::kInf, hi_y = -detail::kInf;
  for (int k = 0; k < kOutline; ++k) {
    double th = 2.0 * std::numbers::pi * k / kOutline;
    Vec dir(2);
    dir << std::cos(th), std::sin(th);
    Vec c = dom.chart_point(dom.ray_boundary_exit(dom.base_chart(), dir));
    lo_x = std::min(lo_x, c[0]);
    hi_x = std::max(hi_x, c[0]);
    lo_y = std::min(lo_y, c[1]);
    hi_y = std::max(hi_y, c[1]);
    outline.push_back(std::move(c));
  }

  detail::CanvasFrame f;
  f.cx = 0.5 * (lo_x + hi_x);
  f.cy = 0.5 * (lo_y + hi_y);
  f.scale = 600.0 / std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});

  std::string out;
  out +=
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 640\" "
      "width=\"640\" height=\"640\">\n";

  out += "<path fill=\"#fbfbf8\" stroke=\"#333333\" stroke-width=\"1.5\" d=\"";
  for (int k = 0; k < kOutline; ++k) {
    out += k == 0 ? "M " : " L ";
    detail::svg_num(f.x(outline[k]), out);
    out += " ";
    detail::svg_num(f.y(outline[k]), out);
  }
  out += " Z\"/>\n";

  for (std::size_t i = 0; i < o.translates.size(); ++i) {
    const char* color = detail::kPalette[i % 8];
    std::vector<Vec> pts;
    for (const auto& g : o.translates[i].generators())
      if (auto c = dom.try_chart_point(g)) pts.push_back(*c);
    if (pts.empty()) continue;
    if (pts.size() == 1) {
      detail::svg_circle(f, pts[0], 3.0, color, out);
    } else if (pts.size() == 2) {
      out += "<line x1=\"";
      detail::svg_num(f.x(pts[0]), out);
      out += "\" y1=\"";
      detail::svg_num(f.y(pts[0]), out);
      out += "\" x2=\"";
      detail::svg_num(f.x(pts[1]), out);
      out += "\" y2=\"";
      detail::svg_num(f.y(pts[1]), out);
      out += "\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.5\"/>\n";
    } else {
      out += "<polygon fill=\"";
      out += color;
      out += "\" fill-opacity=\"0.12\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1\" points=\"";
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += " ";
        detail::svg_num(f.x(pts[k]), out);
        out += ",";
        detail::svg_num(f.y(pts[k]), out);
      }
      out += "\"/>\n";
    }
  }

  for (const auto& p : o.orbit_points)
    if (auto c = dom.try_chart_point(p)) detail::svg_circle(f, *c, 2.2, "#1f77b4", out);
  for (const auto& p : o.limit_points)
    if (auto c = dom.try_chart_point(p)) detail::svg_circle(f, *c, 1.4, "#d62728", out);
  for (std::size_t i = 0; i < o.class_points.size(); ++i)
    if (auto c = dom.try_chart_point(o.class_points[i]))
      detail::svg_circle(f, *c, 3.4, detail::kPalette[((o.class_of[i] % 8) + 8) % 8], out);

  out += "</svg>\n";
  return out;
}

inline std::string emit_svg(const Scene& scene, const PlotOverlays& overlays) {
  return emit_svg(*scene.domain, overlays);
}

}  // namespace hilbert
