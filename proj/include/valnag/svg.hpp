#pragma once

#include "valnag/nok.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace valnag {

struct SvgLayers {
  const NokPolygon* polygon = nullptr;
  std::optional<std::vector<ExactPoint>> outer;  // triangle T
  std::optional<std::vector<ExactPoint>> inner;  // inner triangle
  std::string title;
};

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

inline std::string label(const Surd& s) {
  if (s.is_rational()) return to_string(s.rational());
  return s.str();
}

}  // namespace svg_detail

/// 600x400 drawing: the polygon filled, triangles stroked, vertices labelled
/// with their exact coordinates. Floating point is used for placement only.
inline std::string render_svg(const SvgLayers& layers) {
  using svg_detail::num;
  const double width = 600, height = 400, margin = 50;
  std::vector<const std::vector<ExactPoint>*> all;
  if (layers.polygon) all.push_back(&layers.polygon->boundary);
  if (layers.outer) all.push_back(&*layers.outer);
  if (layers.inner) all.push_back(&*layers.inner);
  double xmax = 1e-9, ymax = 1e-9;
  for (const auto* pts : all)
    for (const auto& p : *pts) {
      xmax = std::max(xmax, p.x.approx());
      ymax = std::max(ymax, p.y.approx());
    }
  const double sx = (width - 2 * margin) / xmax;
  const double sy = (height - 2 * margin) / ymax;
  auto px = [&](const ExactPoint& p) { return num(margin + p.x.approx() * sx); };
  auto py = [&](const ExactPoint& p) { return num(height - margin - p.y.approx() * sy); };
  auto path = [&](const std::vector<ExactPoint>& pts) {
    std::string s;
    for (const auto& p : pts) s += px(p) + "," + py(p) + " ";
    if (!s.empty()) s.pop_back();
    return s;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"400\" viewBox=\"0 0 600 400\">\n";
  out << "  <rect width=\"600\" height=\"400\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << num(margin) << "\" y1=\"" << num(height - margin) << "\" x2=\"" << num(width - margin / 2)
      << "\" y2=\"" << num(height - margin) << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << num(margin) << "\" y1=\"" << num(height - margin) << "\" x2=\"" << num(margin)
      << "\" y2=\"" << num(margin / 2) << "\" stroke=\"black\"/>\n";
  if (layers.polygon)
    out << "  <polygon points=\"" << path(layers.polygon->boundary)
        << "\" fill=\"#8fb8de\" fill-opacity=\"0.7\" stroke=\"#1f4e79\"/>\n";
  if (layers.outer)
    out << "  <polygon points=\"" << path(*layers.outer) << "\" fill=\"none\" stroke=\"#c0392b\" stroke-dasharray=\"6 3\"/>\n";
  if (layers.inner)
    out << "  <polygon points=\"" << path(*layers.inner) << "\" fill=\"none\" stroke=\"#27ae60\"/>\n";
  if (layers.polygon)
    for (const auto& p : layers.polygon->vertices)
      out << "  <text x=\"" << px(p) << "\" y=\"" << py(p) << "\" font-size=\"11\" dx=\"4\" dy=\"-4\">("
          << svg_detail::escape(svg_detail::label(p.x)) << ", " << svg_detail::escape(svg_detail::label(p.y))
          << ")</text>\n";
  out << "  <text x=\"" << num(width - margin / 2) << "\" y=\"" << num(height - margin + 16)
      << "\" font-size=\"12\" text-anchor=\"end\">t</text>\n";
  if (!layers.title.empty())
    out << "  <text x=\"" << num(width / 2) << "\" y=\"20\" font-size=\"13\" text-anchor=\"middle\">"
        << svg_detail::escape(layers.title) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace valnag
