// Copyright 2026 The qtesd Authors
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

#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace qtesd::cli {

/// Samples on a regular grid. value(i, j) sits at (x(i), y(j)).
struct ScalarGrid {
  std::size_t nx = 0, ny = 0;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  std::vector<double> values;  // row-major in j

  double x(std::size_t i) const { return x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(nx - 1); }
  double y(std::size_t j) const { return y0 + (y1 - y0) * static_cast<double>(j) / static_cast<double>(ny - 1); }
  double value(std::size_t i, std::size_t j) const { return values[j * nx + i]; }

  static ScalarGrid sample(std::size_t nx, std::size_t ny, double x0, double x1, double y0, double y1,
                           const std::function<double(double, double)>& f);
};

using Polyline = std::vector<std::pair<double, double>>;

/// Level set {value == level} by marching squares. Saddle cells are resolved
/// with the cell-centre average; segments are stitched into polylines.
std::vector<Polyline> contour_lines(const ScalarGrid& grid, double level = 0.0);

}  // namespace qtesd::cli
