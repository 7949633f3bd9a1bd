#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "dsn/errors.hpp"
#include "dsn/layout.hpp"

namespace dsn {

namespace detail {

// Fixed-point with 6 decimal places; C locale, so output is byte-stable.
inline std::string svg_num(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace detail

// Standalone SVG 1.1 document: one labeled circle per category, one straight
// arrow per directed link with stroke width proportional to the adjacency
// entry. The viewport is fitted to the circles with a 10% margin. Identical
// layouts yield byte-identical documents.
inline std::string layout_to_svg(const Layout& layout) {
  const std::size_t n = layout.coords.size();
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = layout.diameters[i] / 2.0;
    min_x = std::min(min_x, layout.coords[i][0] - r);
    max_x = std::max(max_x, layout.coords[i][0] + r);
    min_y = std::min(min_y, layout.coords[i][1] - r);
    max_y = std::max(max_y, layout.coords[i][1] + r);
  }
  const double extent = std::max({max_x - min_x, max_y - min_y, 1e-6});
  const double margin = 0.1 * extent;
  const double view_x = min_x - margin;
  const double view_y = min_y - margin;
  const double view_w = (max_x - min_x) + 2.0 * margin;
  const double view_h = (max_y - min_y) + 2.0 * margin;

  const double stroke_unit = 0.012 * extent;   // link width per unit adjacency
  const double circle_stroke = 0.004 * extent;
  const double font_size = 0.05 * extent;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
         "height=\"640\" viewBox=\"" +
         detail::svg_num(view_x) + " " + detail::svg_num(view_y) + " " +
         detail::svg_num(view_w) + " " + detail::svg_num(view_h) + "\">\n";

  // Links first so circles sit on top of the line ends.
  for (const LayoutLink& link : layout.links) {
    const auto& s = layout.coords[link.source];
    const auto& t = layout.coords[link.target];
    double dx = t[0] - s[0];
    double dy = t[1] - s[1];
    const double len = std::hypot(dx, dy);
    double ox = 0.0, oy = 0.0;
    bool reverse_exists = false;
    for (const LayoutLink& other : layout.links)
      if (other.source == link.target && other.target == link.source) reverse_exists = true;
    if (reverse_exists && len > 1e-9 * extent) {
      // Shift to the right of the travel direction so both arrows stay visible.
      ox = (dy / len) * 1.2 * stroke_unit;
      oy = (-dx / len) * 1.2 * stroke_unit;
    }
    const double width = link.width * stroke_unit;
    double x1 = s[0] + ox, y1 = s[1] + oy;
    double x2 = t[0] + ox, y2 = t[1] + oy;
    if (len > 1e-9 * extent) {
      // Trim at the circle boundaries so the arrowhead is not covered.
      const double ux = dx / len;
      const double uy = dy / len;
      const double rs = layout.diameters[link.source] / 2.0;
      const double rt = layout.diameters[link.target] / 2.0;
      if (len > rs + rt) {
        x1 += ux * rs;
        y1 += uy * rs;
        x2 -= ux * rt;
        y2 -= uy * rt;
      }
      const double head = std::max(2.5 * width, 0.02 * extent);
      const double bx = x2 - ux * head;
      const double by = y2 - uy * head;
      out += "<line x1=\"" + detail::svg_num(x1) + "\" y1=\"" + detail::svg_num(y1) +
             "\" x2=\"" + detail::svg_num(bx) + "\" y2=\"" + detail::svg_num(by) +
             "\" stroke=\"#555555\" stroke-width=\"" + detail::svg_num(width) + "\"/>\n";
      out += "<polygon points=\"" + detail::svg_num(x2) + "," + detail::svg_num(y2) + " " +
             detail::svg_num(bx - uy * 0.5 * head) + "," +
             detail::svg_num(by + ux * 0.5 * head) + " " +
             detail::svg_num(bx + uy * 0.5 * head) + "," +
             detail::svg_num(by - ux * 0.5 * head) + "\" fill=\"#555555\"/>\n";
    } else {
      out += "<line x1=\"" + detail::svg_num(x1) + "\" y1=\"" + detail::svg_num(y1) +
             "\" x2=\"" + detail::svg_num(x2) + "\" y2=\"" + detail::svg_num(y2) +
             "\" stroke=\"#555555\" stroke-width=\"" + detail::svg_num(width) + "\"/>\n";
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    out += "<circle cx=\"" + detail::svg_num(layout.coords[i][0]) + "\" cy=\"" +
           detail::svg_num(layout.coords[i][1]) + "\" r=\"" +
           detail::svg_num(layout.diameters[i] / 2.0) +
           "\" fill=\"#9ecae1\" fill-opacity=\"0.85\" stroke=\"#333333\" stroke-width=\"" +
           detail::svg_num(circle_stroke) + "\"/>\n";
    out += "<text x=\"" + detail::svg_num(layout.coords[i][0]) + "\" y=\"" +
           detail::svg_num(layout.coords[i][1]) +
           "\" text-anchor=\"middle\" dominant-baseline=\"central\" font-family=\"sans-serif\" "
           "font-size=\"" +
           detail::svg_num(font_size) + "\">" + std::to_string(i) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

inline void render_svg(const Layout& layout, const std::filesystem::path& path) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoFailure("render_svg: cannot open " + path.string());
  const std::string doc = layout_to_svg(layout);
  stream.write(doc.data(), static_cast<std::streamsize>(doc.size()));
  if (!stream) throw IoFailure("render_svg: write failed for " + path.string());
}

}  // namespace dsn
