#pragma once

#include <string>
#include <utility>
#include <vector>

namespace bslab {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 640;
  int height = 420;
};

// Static SVG with axes, ticks, one polyline and marker set per series and a
// legend. Output depends only on the input.
std::string render_svg(const LinePlot& plot);

}  // namespace bslab
