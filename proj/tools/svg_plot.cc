// Copyright 2026 The Cournot Learning Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace cournot::tools {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;  // legend column
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;
constexpr std::size_t kMaxPoints = 2000;
constexpr int kTicks = 5;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                "#bcbd22", "#17becf"};

std::string Escape(const std::string& s) {
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

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string TickLabel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

const char* Color(std::size_t i) {
  return kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
}

}  // namespace

std::string RenderLineChart(const LineChart& chart) {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const LineSeries& s : chart.series) {
    for (double v : s.x) {
      x_lo = std::min(x_lo, v);
      x_hi = std::max(x_hi, v);
    }
    for (double v : s.y) {
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  for (const ReferenceLine& r : chart.references) {
    y_lo = std::min(y_lo, r.y);
    y_hi = std::max(y_hi, r.y);
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
  }
  if (!std::isfinite(y_lo)) {
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) {
    return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\" "
         "width=\"800\" height=\"500\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n"
      << "<text x=\"" << Num(kLeft + plot_w / 2) << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << Escape(chart.title) << "</text>\n";

  // Axes, ticks and grid.
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
      << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(kTop + plot_h)
      << "\" x2=\"" << Num(kLeft + plot_w) << "\" y2=\"" << Num(kTop + plot_h)
      << "\"/>\n"
      << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(kTop) << "\" x2=\""
      << Num(kLeft) << "\" y2=\"" << Num(kTop + plot_h) << "\"/>\n"
      << "</g>\n";
  svg << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= kTicks; ++k) {
    const double xv = x_lo + (x_hi - x_lo) * k / kTicks;
    const double yv = y_lo + (y_hi - y_lo) * k / kTicks;
    svg << "<text x=\"" << Num(sx(xv)) << "\" y=\"" << Num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << TickLabel(xv) << "</text>\n"
        << "<text x=\"" << Num(kLeft - 6) << "\" y=\"" << Num(sy(yv) + 4)
        << "\" text-anchor=\"end\">" << TickLabel(yv) << "</text>\n"
        << "<line x1=\"" << Num(kLeft) << "\" y1=\"" << Num(sy(yv))
        << "\" x2=\"" << Num(kLeft + plot_w) << "\" y2=\"" << Num(sy(yv))
        << "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
  }
  svg << "</g>\n";
  svg << "<text x=\"" << Num(kLeft + plot_w / 2) << "\" y=\""
      << Num(kHeight - 12) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\">"
      << Escape(chart.x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << Num(kTop + plot_h / 2) << "\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << Num(kTop + plot_h / 2) << ")\">"
      << Escape(chart.y_label) << "</text>\n";

  for (std::size_t i = 0; i < chart.references.size(); ++i) {
    const double y = sy(chart.references[i].y);
    svg << "<line class=\"ne-ref\" x1=\"" << Num(kLeft) << "\" y1=\""
        << Num(y) << "\" x2=\"" << Num(kLeft + plot_w) << "\" y2=\"" << Num(y)
        << "\" stroke=\"" << Color(i) << "\" stroke-width=\"1\" "
        << "stroke-dasharray=\"6 4\"/>\n";
  }

  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const LineSeries& s = chart.series[i];
    const std::size_t n = std::min(s.x.size(), s.y.size());
    const std::size_t step = n > kMaxPoints ? (n + kMaxPoints - 1) / kMaxPoints : 1;
    svg << "<polyline class=\"series\" fill=\"none\" stroke=\"" << Color(i)
        << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t k = 0; k < n; k += step) {
      svg << Num(sx(s.x[k])) << ',' << Num(sy(s.y[k])) << ' ';
    }
    if (n > 0 && (n - 1) % step != 0) {
      svg << Num(sx(s.x[n - 1])) << ',' << Num(sy(s.y[n - 1]));
    }
    svg << "\"/>\n";
  }

  // Legend.
  const std::size_t rows = std::max(chart.series.size(), chart.references.size());
  svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < rows; ++i) {
    const double y = kTop + 10 + 36 * static_cast<double>(i);
    const double x = kWidth - kRight + 15;
    if (i < chart.series.size()) {
      svg << "<line x1=\"" << Num(x) << "\" y1=\"" << Num(y) << "\" x2=\""
          << Num(x + 20) << "\" y2=\"" << Num(y) << "\" stroke=\"" << Color(i)
          << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << Num(x + 26) << "\" y=\"" << Num(y + 4) << "\">"
          << Escape(chart.series[i].label) << "</text>\n";
    }
    if (i < chart.references.size()) {
      svg << "<line x1=\"" << Num(x) << "\" y1=\"" << Num(y + 16)
          << "\" x2=\"" << Num(x + 20) << "\" y2=\"" << Num(y + 16)
          << "\" stroke=\"" << Color(i)
          << "\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n"
          << "<text x=\"" << Num(x + 26) << "\" y=\"" << Num(y + 20) << "\">"
          << Escape(chart.references[i].label) << "</text>\n";
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace cournot::tools
