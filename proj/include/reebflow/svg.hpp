#pragma once

#include <string>
#include <vector>

namespace reebflow {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Static SVG with the panels stacked vertically. Output depends only on the
/// data (fixed number formatting), so identical inputs give identical files.
std::string render_svg(const std::vector<Panel>& panels, int width = 720, int panel_height = 300);

void write_svg(const std::string& path, const std::vector<Panel>& panels);

}  // namespace reebflow
