#pragma once

#include <string>
#include <vector>

namespace trilat {

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  /// Mapped onto a blue-to-red ramp across the observed value span.
  double color_value = 0.0;
};

struct ScatterSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::string color_label;
  std::vector<ScatterPoint> points;
};

struct LineSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Self-contained SVG documents. Output bytes depend only on the inputs:
/// no timestamps, no generated ids, fixed-precision coordinates.
std::string render_scatter_svg(const ScatterSpec& spec);
std::string render_line_svg(const LineSpec& spec);

}  // namespace trilat
