#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "partbias/sweep_report.hpp"

namespace partbias {

namespace {

// Chart geometry: fixed 800x600 viewBox per chart, margins for axis labels.
constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 770.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 540.0;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Series {
  std::vector<std::pair<double, double>> points;
  const char* color;
  const char* label;
  bool markers;
};

struct Range {
  double lo, hi;
  double span() const { return hi - lo; }
};

Range padded_range(double lo, double hi) {
  if (lo > hi) std::swap(lo, hi);
  double pad = (hi - lo) * 0.06;
  if (pad <= 0.0) pad = std::fabs(hi) * 0.1 + 1.0;
  return Range{lo - pad, hi + pad};
}

double map_x(double v, const Range& r) {
  return kLeft + (v - r.lo) / r.span() * (kRight - kLeft);
}

double map_y(double v, const Range& r) {
  return kBottom - (v - r.lo) / r.span() * (kBottom - kTop);
}

// Round tick spacing to 1/2/5 * 10^k covering the range with ~6 ticks.
std::vector<double> ticks(const Range& r) {
  const double raw = r.span() / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> out;
  double v = std::ceil(r.lo / step) * step;
  for (; v <= r.hi + step * 1e-9; v += step) {
    out.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
  }
  return out;
}

std::string chart(const std::string& title, const std::string& x_label,
                  const std::string& y_label,
                  const std::vector<Series>& series, double y_offset) {
  double x_lo = 1e300, x_hi = -1e300, y_lo = 1e300, y_hi = -1e300;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  const Range xr = padded_range(x_lo, x_hi);
  const Range yr = padded_range(y_lo, y_hi);

  std::string out;
  out += "<svg x=\"0\" y=\"" + fmt(y_offset) +
         "\" width=\"800\" height=\"600\" viewBox=\"0 0 800 600\" "
         "xmlns=\"http://www.w3.org/2000/svg\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"32\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"20\">" + title + "</text>\n";

  // axes
  out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" +
         fmt(kRight) + "\" y2=\"" + fmt(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  out += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kTop) + "\" x2=\"" +
         fmt(kLeft) + "\" y2=\"" + fmt(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  for (double v : ticks(xr)) {
    const double x = map_x(v, xr);
    out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" +
           fmt(x) + "\" y2=\"" + fmt(kBottom + 6) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kBottom + 24) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" + fmt(v) + "</text>\n";
  }
  for (double v : ticks(yr)) {
    const double y = map_y(v, yr);
    out += "<line x1=\"" + fmt(kLeft - 6) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(kLeft) + "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fmt(kLeft - 10) + "\" y=\"" + fmt(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"13\">" + fmt(v) + "</text>\n";
  }
  out += "<text x=\"" + fmt((kLeft + kRight) / 2) + "\" y=\"" +
         fmt(kBottom + 46) + "\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">" + x_label +
         "</text>\n";
  out += "<text x=\"20\" y=\"" + fmt((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\" transform=\"rotate(-90 20 " +
         fmt((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";

  double legend_y = kTop + 8;
  for (const auto& s : series) {
    std::string pts;
    for (const auto& [x, y] : s.points) {
      pts += fmt(map_x(x, xr)) + "," + fmt(map_y(y, yr)) + " ";
    }
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
           s.color + "\" stroke-width=\"2\"/>\n";
    if (s.markers) {
      for (const auto& [x, y] : s.points) {
        out += "<circle cx=\"" + fmt(map_x(x, xr)) + "\" cy=\"" +
               fmt(map_y(y, yr)) + "\" r=\"3\" fill=\"" + s.color + "\"/>\n";
      }
    }
    if (series.size() > 1) {
      out += "<line x1=\"" + fmt(kRight - 150) + "\" y1=\"" + fmt(legend_y) +
             "\" x2=\"" + fmt(kRight - 120) + "\" y2=\"" + fmt(legend_y) +
             "\" stroke=\"" + s.color + "\" stroke-width=\"2\"/>\n";
      out += "<text x=\"" + fmt(kRight - 112) + "\" y=\"" + fmt(legend_y + 4) +
             "\" font-family=\"sans-serif\" font-size=\"13\">" + s.label +
             "</text>\n";
      legend_y += 20;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

std::string render_sweep_svg(const std::vector<SweepRow>& rows,
                             const SvgOptions& options) {
  std::vector<std::pair<double, double>> max_pts, min_pts, log_pts, ref_pts;
  for (const auto& row : rows) {
    if (!row.has_data) continue;
    const double t = static_cast<double>(row.t);
    max_pts.emplace_back(t, row.max_gap.to_double());
    min_pts.emplace_back(t, row.min_gap.to_double());
    log_pts.emplace_back(t, -std::log(row.min_gap.to_double()));
    ref_pts.emplace_back(t, options.reference_coefficient * std::sqrt(t));
  }
  if (max_pts.empty()) {
    throw std::invalid_argument("render_sweep_svg: no rows with data");
  }

  std::string out =
      "<svg version=\"1.1\" width=\"800\" height=\"1800\" "
      "viewBox=\"0 0 800 1800\" xmlns=\"http://www.w3.org/2000/svg\">\n";
  out += chart("Largest pairwise gap M_t", "t", "M_t",
               {Series{max_pts, "#1f77b4", "M_t", true}}, 0.0);
  out += chart("Smallest pairwise gap m_t", "t", "m_t",
               {Series{min_pts, "#1f77b4", "m_t", true}}, 600.0);
  {
    char label[64];
    std::snprintf(label, sizeof(label), "%.2g sqrt(t)",
                  options.reference_coefficient);
    out += chart("-log m_t against the reference curve", "t", "-log m_t",
                 {Series{log_pts, "#1f77b4", "-log m_t", true},
                  Series{ref_pts, "#ff7f0e", label, false}},
                 1200.0);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace partbias
