#include "reebflow/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "reebflow/errors.hpp"

namespace reebflow {

namespace {

std::string num(double v, const char* fmt = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double d = std::max(1e-6, 0.05 * std::abs(hi));
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, int width, int panel_height) {
  const double left = 80.0, right = 150.0, top = 36.0, bottom = 48.0;
  const int height = panel_height * static_cast<int>(std::max<std::size_t>(panels.size(), 1));
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) + "\" height=\"" +
       std::to_string(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& panel = panels[p];
    const double y0 = p * panel_height;
    const double pw = width - left - right;
    const double ph = panel_height - top - bottom;
    Range xr, yr;
    for (const Series& se : panel.series) {
      for (double v : se.x) xr.add(v);
      for (double v : se.y) yr.add(v);
    }
    xr.pad();
    yr.pad();
    auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return y0 + top + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(y0 + 20) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + escape(panel.title) + "</text>\n";
    s += "<rect x=\"" + num(left) + "\" y=\"" + num(y0 + top) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double xv = xr.lo + (xr.hi - xr.lo) * t / 4.0;
      const double yv = yr.lo + (yr.hi - yr.lo) * t / 4.0;
      s += "<text x=\"" + num(px(xv)) + "\" y=\"" + num(y0 + top + ph + 16) +
           "\" text-anchor=\"middle\">" + num(xv, "%.4g") + "</text>\n";
      s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(py(yv) + 4) + "\" text-anchor=\"end\">" +
           num(yv, "%.6g") + "</text>\n";
      s += "<line x1=\"" + num(left) + "\" y1=\"" + num(py(yv)) + "\" x2=\"" + num(left + pw) +
           "\" y2=\"" + num(py(yv)) + "\" stroke=\"#dddddd\"/>\n";
    }
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(y0 + panel_height - 8) +
         "\" text-anchor=\"middle\">" + escape(panel.x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(y0 + top + ph / 2) + "\" transform=\"rotate(-90 16 " +
         num(y0 + top + ph / 2) + ")\" text-anchor=\"middle\">" + escape(panel.y_label) + "</text>\n";

    for (std::size_t k = 0; k < panel.series.size(); ++k) {
      const Series& se = panel.series[k];
      if (se.x.size() != se.y.size()) throw InvalidInput("svg series '" + se.label + "': size mismatch");
      s += "<polyline fill=\"none\" stroke=\"" + se.color + "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < se.x.size(); ++i) {
        if (!std::isfinite(se.x[i]) || !std::isfinite(se.y[i])) continue;
        s += num(px(se.x[i])) + "," + num(py(se.y[i])) + " ";
      }
      s += "\"/>\n";
      const double ly = y0 + top + 14 + 18 * k;
      s += "<line x1=\"" + num(left + pw + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(left + pw + 30) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + se.color +
           "\" stroke-width=\"2\"/>\n";
      s += "<text x=\"" + num(left + pw + 34) + "\" y=\"" + num(ly) + "\">" + escape(se.label) +
           "</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

void write_svg(const std::string& path, const std::vector<Panel>& panels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << render_svg(panels);
}

}  // namespace reebflow
