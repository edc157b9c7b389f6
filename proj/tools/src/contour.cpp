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

#include "qtesd/cli/contour.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace qtesd::cli {

ScalarGrid ScalarGrid::sample(std::size_t nx, std::size_t ny, double x0, double x1, double y0, double y1,
                              const std::function<double(double, double)>& f) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("ScalarGrid: need at least 2x2 samples");
  ScalarGrid g{nx, ny, x0, x1, y0, y1, {}};
  g.values.resize(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) g.values[j * nx + i] = f(g.x(i), g.y(j));
  return g;
}

namespace {

// Edge ids: 2*(j*nx+i) is the horizontal edge (i,j)-(i+1,j),
// 2*(j*nx+i)+1 the vertical edge (i,j)-(i,j+1).
using EdgeId = std::size_t;

struct Segment {
  EdgeId a, b;
};

// Cell edges: 0 bottom, 1 right, 2 top, 3 left.
constexpr int kNone[2] = {-1, -1};
constexpr int kTable[16][2][2] = {
    {{-1, -1}, {-1, -1}}, {{3, 0}, {-1, -1}}, {{0, 1}, {-1, -1}}, {{3, 1}, {-1, -1}},
    {{1, 2}, {-1, -1}},   {{-1, -1}, {-1, -1}}, {{0, 2}, {-1, -1}}, {{2, 3}, {-1, -1}},
    {{2, 3}, {-1, -1}},   {{0, 2}, {-1, -1}}, {{-1, -1}, {-1, -1}}, {{1, 2}, {-1, -1}},
    {{1, 3}, {-1, -1}},   {{0, 1}, {-1, -1}}, {{3, 0}, {-1, -1}}, {{-1, -1}, {-1, -1}}};

}  // namespace

std::vector<Polyline> contour_lines(const ScalarGrid& g, double level) {
  const std::size_t nx = g.nx, ny = g.ny;
  auto inside = [&](std::size_t i, std::size_t j) { return g.value(i, j) > level; };
  auto edge = [&](std::size_t i, std::size_t j, int e) -> EdgeId {
    switch (e) {
      case 0: return 2 * (j * nx + i);
      case 1: return 2 * (j * nx + i + 1) + 1;
      case 2: return 2 * ((j + 1) * nx + i);
      default: return 2 * (j * nx + i) + 1;
    }
  };

  std::vector<Segment> segments;
  for (std::size_t j = 0; j + 1 < ny; ++j)
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const int code = (inside(i, j) ? 1 : 0) | (inside(i + 1, j) ? 2 : 0) | (inside(i + 1, j + 1) ? 4 : 0) |
                       (inside(i, j + 1) ? 8 : 0);
      if (code == 5 || code == 10) {
        const double centre =
            0.25 * (g.value(i, j) + g.value(i + 1, j) + g.value(i + 1, j + 1) + g.value(i, j + 1));
        // Connected through the centre when it agrees with the diagonal that is inside.
        const bool joined = centre > level;
        const bool cut_odd = (code == 5) == joined;  // isolate the (i+1,j) and (i,j+1) corners
        if (cut_odd) {
          segments.push_back({edge(i, j, 0), edge(i, j, 1)});
          segments.push_back({edge(i, j, 2), edge(i, j, 3)});
        } else {
          segments.push_back({edge(i, j, 3), edge(i, j, 0)});
          segments.push_back({edge(i, j, 1), edge(i, j, 2)});
        }
        continue;
      }
      for (const auto& s : kTable[code]) {
        if (s[0] == kNone[0]) continue;
        segments.push_back({edge(i, j, s[0]), edge(i, j, s[1])});
      }
    }

  auto point = [&](EdgeId id) -> std::pair<double, double> {
    const std::size_t cell = id / 2;
    const std::size_t i = cell % nx, j = cell / nx;
    const bool vertical = id % 2 == 1;
    const std::size_t i2 = vertical ? i : i + 1, j2 = vertical ? j + 1 : j;
    const double va = g.value(i, j), vb = g.value(i2, j2);
    const double t = (va == vb) ? 0.5 : (level - va) / (vb - va);
    return {g.x(i) + t * (g.x(i2) - g.x(i)), g.y(j) + t * (g.y(j2) - g.y(j))};
  };

  std::unordered_map<EdgeId, std::vector<std::size_t>> touching;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    touching[segments[k].a].push_back(k);
    touching[segments[k].b].push_back(k);
  }

  std::vector<bool> used(segments.size(), false);
  auto next_from = [&](EdgeId at) -> std::optional<std::pair<std::size_t, EdgeId>> {
    for (std::size_t k : touching[at])
      if (!used[k]) return std::make_pair(k, segments[k].a == at ? segments[k].b : segments[k].a);
    return std::nullopt;
  };

  std::vector<Polyline> lines;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    used[s] = true;
    std::deque<EdgeId> chain{segments[s].a, segments[s].b};
    while (auto n = next_from(chain.back())) {
      used[n->first] = true;
      chain.push_back(n->second);
    }
    while (auto n = next_from(chain.front())) {
      used[n->first] = true;
      chain.push_front(n->second);
    }
    Polyline line;
    line.reserve(chain.size());
    for (EdgeId id : chain) line.push_back(point(id));
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace qtesd::cli
