#include "wsncal/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "wsncal/errors.hpp"

namespace wsncal {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct Axis {
  double lo = 0.0;
  double hi = 1.0;

  void pad() {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double map(double v, double from, double to) const { return from + (v - lo) / (hi - lo) * (to - from); }
};

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

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void frame(std::ostringstream& svg, const Axis& x, const Axis& y, const std::string& title) {
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n"
      << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin
      << "\" height=\"" << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x.lo + (x.hi - x.lo) * i / 4.0;
    const double fy = y.lo + (y.hi - y.lo) * i / 4.0;
    const double px = x.map(fx, kMargin, kWidth - kMargin);
    const double py = y.map(fy, kHeight - kMargin, kMargin);
    svg << "<text x=\"" << px << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"middle\">" << fmt(fx) << "</text>\n"
        << "<text x=\"" << kMargin - 6 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
        << fmt(fy) << "</text>\n";
  }
}

void save(const std::filesystem::path& path, const std::ostringstream& svg) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << svg.str();
}

}  // namespace

void write_scatter_svg(const std::filesystem::path& path, std::span<const ScatterPoint> points,
                       const std::string& title) {
  Axis axis{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : points) {
    axis.lo = std::min({axis.lo, p.true_drift, p.predicted_drift});
    axis.hi = std::max({axis.hi, p.true_drift, p.predicted_drift});
  }
  if (points.empty()) axis = {0.0, 1.0};
  axis.pad();

  std::ostringstream svg;
  frame(svg, axis, axis, title);
  // Identity line: perfect drift prediction.
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kMargin << "\" stroke=\"#888\" stroke-dasharray=\"4\"/>\n";
  for (const auto& p : points) {
    svg << "<circle cx=\"" << axis.map(p.true_drift, kMargin, kWidth - kMargin) << "\" cy=\""
        << axis.map(p.predicted_drift, kHeight - kMargin, kMargin)
        << "\" r=\"1.2\" fill=\"#1f77b4\" fill-opacity=\"0.4\"/>\n";
  }
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\">true drift</text>\n"
      << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
      << ")\" text-anchor=\"middle\">predicted drift</text>\n</svg>\n";
  save(path, svg);
}

void write_series_svg(const std::filesystem::path& path, std::span<const LineSeries> series,
                      const std::string& title) {
  Axis x{0.0, 1.0};
  Axis y{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : series) {
    x.hi = std::max(x.hi, static_cast<double>(s.values.size()) - 1.0);
    for (double v : s.values) {
      y.lo = std::min(y.lo, v);
      y.hi = std::max(y.hi, v);
    }
  }
  if (!std::isfinite(y.lo)) y = {0.0, 1.0};
  y.pad();

  std::ostringstream svg;
  frame(svg, x, y, title);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* colour = kPalette[k % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke-width=\"0.8\" stroke=\"" << colour << "\" points=\"";
    const auto& v = series[k].values;
    for (std::size_t i = 0; i < v.size(); ++i) {
      svg << x.map(static_cast<double>(i), kMargin, kWidth - kMargin) << ','
          << y.map(v[i], kHeight - kMargin, kMargin) << ' ';
    }
    svg << "\"/>\n<text x=\"" << kMargin + 8 << "\" y=\"" << kMargin + 14 + 14 * k
        << "\" fill=\"" << colour << "\">" << escape(series[k].label) << "</text>\n";
  }
  svg << "</svg>\n";
  save(path, svg);
}

}  // namespace wsncal
