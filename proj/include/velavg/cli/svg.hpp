#pragma once

#include <functional>
#include <string>
#include <vector>

namespace velavg {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool connect = false;  // polyline through the points instead of markers
};

/// y = fn(x) drawn across the plotted x range.
struct ReferenceLine {
  std::string label;
  std::function<double(double)> fn;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
  std::vector<ReferenceLine> lines;
};

struct BarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> labels;
  std::vector<double> values;
};

/// Self-contained SVG 1.1 document. Throws std::invalid_argument when there
/// is no series, a series is empty or has mismatched x/y, or a log axis sees
/// a non-positive value.
std::string render_svg(const Plot& plot);
std::string render_svg(const BarChart& chart);

/// Writes render_svg(...) to `path`; I/O failures throw std::runtime_error
/// naming the path.
void emit_svg(const Plot& plot, const std::string& path);
void emit_svg(const BarChart& chart, const std::string& path);

}  // namespace velavg
