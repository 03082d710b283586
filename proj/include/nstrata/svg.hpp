#pragma once

// SVG rendering of concave polygons on a lattice grid. Output depends only
// on the inputs, so identical calls give identical bytes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nstrata/polygon.hpp"

namespace nstrata {

struct PlotSeries {
  ConcavePolygon polygon;
  std::string label;
  std::string color;  // empty: taken from the default palette
};

namespace svg_detail {

constexpr std::int64_t kUnit = 40;
constexpr std::int64_t kMargin = 40;
constexpr std::int64_t kLabelRoom = 160;

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                               "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  return colors;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Point {
  std::int64_t x;
  std::int64_t y;
};

inline std::vector<Point> vertices(const ConcavePolygon& p) {
  std::vector<Point> out{{0, 0}};
  for (const auto& run : p.runs()) out.push_back({out.back().x + run.length, out.back().y + run.degree().num()});
  return out;
}

}  // namespace svg_detail

/// Repeated labels get " (2)", " (3)", ... in input order.
inline std::vector<std::string> disambiguate_labels(const std::vector<std::string>& labels) {
  std::map<std::string, int> seen;
  std::vector<std::string> out;
  for (const auto& l : labels) {
    int k = ++seen[l];
    out.push_back(k == 1 ? l : l + " (" + std::to_string(k) + ")");
  }
  return out;
}

/// One lattice unit is 40 px, the origin sits at the bottom-left of the
/// grid, and y grows upward. The grid covers every vertex, so negative
/// degrees extend it below the x-axis.
inline std::string render_svg(const std::vector<PlotSeries>& series) {
  using namespace svg_detail;
  std::int64_t x_max = 1, y_min = 0, y_max = 1;
  std::vector<std::vector<Point>> verts;
  for (const auto& s : series) {
    verts.push_back(vertices(s.polygon));
    for (const auto& v : verts.back()) {
      x_max = std::max(x_max, v.x);
      y_min = std::min(y_min, v.y);
      y_max = std::max(y_max, v.y);
    }
  }
  const std::int64_t width = 2 * kMargin + kUnit * x_max + kLabelRoom;
  const std::int64_t height = 2 * kMargin + kUnit * (y_max - y_min);
  auto px = [&](std::int64_t x) { return kMargin + kUnit * x; };
  auto py = [&](std::int64_t y) { return kMargin + kUnit * (y_max - y); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";

  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (std::int64_t x = 0; x <= x_max; ++x)
    os << "<line x1=\"" << px(x) << "\" y1=\"" << py(y_max) << "\" x2=\"" << px(x) << "\" y2=\"" << py(y_min)
       << "\"/>\n";
  for (std::int64_t y = y_min; y <= y_max; ++y)
    os << "<line x1=\"" << px(0) << "\" y1=\"" << py(y) << "\" x2=\"" << px(x_max) << "\" y2=\"" << py(y) << "\"/>\n";
  os << "</g>\n";
  os << "<g stroke=\"#000000\" stroke-width=\"1.5\">\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x_max) << "\" y2=\"" << py(0) << "\"/>\n";
  os << "<line x1=\"" << px(0) << "\" y1=\"" << py(y_max) << "\" x2=\"" << px(0) << "\" y2=\"" << py(y_min)
     << "\"/>\n";
  os << "</g>\n";

  std::vector<std::string> labels;
  for (const auto& s : series) labels.push_back(s.label);
  labels = disambiguate_labels(labels);

  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string color = series[i].color.empty() ? palette()[i % palette().size()] : series[i].color;
    const std::string c = escape(color);
    os << "<g>\n<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\" points=\"";
    for (std::size_t k = 0; k < verts[i].size(); ++k)
      os << (k ? " " : "") << px(verts[i][k].x) << ',' << py(verts[i][k].y);
    os << "\"/>\n";
    for (const auto& v : verts[i])
      os << "<circle cx=\"" << px(v.x) << "\" cy=\"" << py(v.y) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    const Point& end = verts[i].back();
    os << "<text x=\"" << px(end.x) + 6 << "\" y=\"" << py(end.y) - 6 - 14 * static_cast<std::int64_t>(i)
       << "\" font-family=\"monospace\" font-size=\"12\" fill=\"" << c << "\">" << escape(labels[i]) << "</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace nstrata
