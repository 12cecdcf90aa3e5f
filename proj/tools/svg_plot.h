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

#ifndef COURNOT_TOOLS_SVG_PLOT_H_
#define COURNOT_TOOLS_SVG_PLOT_H_

#include <string>
#include <vector>

namespace cournot::tools {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ReferenceLine {
  std::string label;
  double y = 0.0;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<LineSeries> series;
  // Drawn dashed across the full x range, in the color of the series with the
  // same index.
  std::vector<ReferenceLine> references;
};

// Static SVG document with a fixed 800x500 viewBox and linear axes. Series
// longer than 2000 points are thinned to keep files small.
std::string RenderLineChart(const LineChart& chart);

}  // namespace cournot::tools

#endif  // COURNOT_TOOLS_SVG_PLOT_H_
