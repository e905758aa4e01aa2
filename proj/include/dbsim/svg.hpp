#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dbsim {

/// One polyline of a chart: (x, y) samples plus a legend label.
struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Self-contained SVG line chart: one polyline with point markers per
/// series, x on a log10 scale, embedded axis labels and legend, no external
/// references. Output is byte-stable for identical input.
void write_log_line_chart(std::span<const ChartSeries> series,
                          const std::string& x_label,
                          const std::string& y_label, std::ostream& out);

}  // namespace dbsim
