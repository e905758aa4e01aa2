#include "dbsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace dbsim {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 78.0;
constexpr double kRight = 780.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 450.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

double nice_step(double raw) {
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  if (frac <= 1.0) return mag;
  if (frac <= 2.0) return 2.0 * mag;
  if (frac <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

void write_log_line_chart(std::span<const ChartSeries> series,
                          const std::string& x_label,
                          const std::string& y_label, std::ostream& out) {
  double log_lo = 0.0, log_hi = 0.0, y_max = 0.0;
  bool any = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!(x > 0.0))
        throw std::invalid_argument("chart x values must be positive (log scale)");
      const double lx = std::log10(x);
      log_lo = any ? std::min(log_lo, lx) : lx;
      log_hi = any ? std::max(log_hi, lx) : lx;
      y_max = std::max(y_max, y);
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("chart needs at least one point");

  if (log_hi - log_lo < 1e-9) {
    log_lo -= 0.5;
    log_hi += 0.5;
  } else {
    const double pad = 0.05 * (log_hi - log_lo);
    log_lo -= pad;
    log_hi += pad;
  }
  if (y_max <= 0.0) y_max = 1.0;
  const double y_step = nice_step(y_max * 1.15 / 5.0);
  const double y_top = y_step * std::ceil(y_max * 1.15 / y_step);

  const auto x_px = [&](double x) {
    return kLeft + (std::log10(x) - log_lo) / (log_hi - log_lo) * (kRight - kLeft);
  };
  const auto y_px = [&](double y) {
    return kBottom - y / y_top * (kBottom - kTop);
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // y grid, ticks, labels
  const int y_decimals =
      std::max(0, -static_cast<int>(std::floor(std::log10(y_step))));
  const char* y_fmt = y_decimals >= 3 ? "%.3f" : (y_decimals == 2 ? "%.2f" : "%.1f");
  for (double y = 0.0; y <= y_top + 1e-12; y += y_step) {
    const double py = y_px(y);
    out << "<line x1=\"" << fmt("%.2f", kLeft) << "\" y1=\"" << fmt("%.2f", py)
        << "\" x2=\"" << fmt("%.2f", kRight) << "\" y2=\"" << fmt("%.2f", py)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt("%.2f", kLeft - 8) << "\" y=\""
        << fmt("%.2f", py + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << fmt(y_fmt, y) << "</text>\n";
  }

  // x decade ticks
  const int dec_lo = static_cast<int>(std::ceil(log_lo - 1e-9));
  const int dec_hi = static_cast<int>(std::floor(log_hi + 1e-9));
  for (int d = dec_lo; d <= dec_hi; ++d) {
    const double px = x_px(std::pow(10.0, d));
    out << "<line x1=\"" << fmt("%.2f", px) << "\" y1=\"" << fmt("%.2f", kTop)
        << "\" x2=\"" << fmt("%.2f", px) << "\" y2=\"" << fmt("%.2f", kBottom)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << fmt("%.2f", px) << "\" y=\""
        << fmt("%.2f", kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">1e"
        << d << "</text>\n";
  }

  // axes
  out << "<line x1=\"" << fmt("%.2f", kLeft) << "\" y1=\"" << fmt("%.2f", kTop)
      << "\" x2=\"" << fmt("%.2f", kLeft) << "\" y2=\"" << fmt("%.2f", kBottom)
      << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n"
      << "<line x1=\"" << fmt("%.2f", kLeft) << "\" y1=\""
      << fmt("%.2f", kBottom) << "\" x2=\"" << fmt("%.2f", kRight)
      << "\" y2=\"" << fmt("%.2f", kBottom)
      << "\" stroke=\"#333333\" stroke-width=\"1.5\"/>\n";

  // axis labels
  out << "<text x=\"" << fmt("%.2f", (kLeft + kRight) / 2.0) << "\" y=\""
      << fmt("%.2f", kHeight - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << fmt("%.2f", (kTop + kBottom) / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 18 "
      << fmt("%.2f", (kTop + kBottom) / 2.0) << ")\">" << escape(y_label)
      << "</text>\n";

  // series
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    auto pts = series[i].points;
    std::sort(pts.begin(), pts.end());
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts)
      out << fmt("%.2f", x_px(x)) << ',' << fmt("%.2f", y_px(y)) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : pts)
      out << "<circle cx=\"" << fmt("%.2f", x_px(x)) << "\" cy=\""
          << fmt("%.2f", y_px(y)) << "\" r=\"3.5\" fill=\"" << color
          << "\"/>\n";
  }

  // legend, top-right corner of the plot area
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % std::size(kPalette)];
    const double ly = kTop + 18.0 + 20.0 * static_cast<double>(i);
    out << "<line x1=\"" << fmt("%.2f", kRight - 170) << "\" y1=\""
        << fmt("%.2f", ly - 4) << "\" x2=\"" << fmt("%.2f", kRight - 140)
        << "\" y2=\"" << fmt("%.2f", ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << fmt("%.2f", kRight - 132) << "\" y=\""
        << fmt("%.2f", ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(series[i].label) << "</text>\n";
  }

  out << "</svg>\n";
}

}  // namespace dbsim
