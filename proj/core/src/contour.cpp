// Copyright 2026 The stirap Authors
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

#include "stirap/contour.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_map>

#include "stirap/error.hpp"

namespace stirap {

namespace {

std::size_t bracket(std::span<const double> axis, double v) {
  if (axis.size() < 2) return 0;
  const auto it = std::upper_bound(axis.begin(), axis.end(), v);
  const auto idx = static_cast<std::size_t>(std::distance(axis.begin(), it));
  return std::clamp<std::size_t>(idx == 0 ? 0 : idx - 1, 0, axis.size() - 2);
}

struct Segment {
  std::uint64_t edge[2];
  Point2 point[2];
};

}  // namespace

double GridField::interpolate(double x, double y) const {
  if (xs.empty() || ys.empty()) throw ValidationError("empty grid");
  x = std::clamp(x, xs.front(), xs.back());
  y = std::clamp(y, ys.front(), ys.back());
  if (xs.size() == 1 && ys.size() == 1) return value(0, 0);
  const std::size_t i = bracket(xs, x);
  const std::size_t j = bracket(ys, y);
  const std::size_t i1 = std::min(i + 1, xs.size() - 1);
  const std::size_t j1 = std::min(j + 1, ys.size() - 1);
  const double tx = i1 == i ? 0.0 : (x - xs[i]) / (xs[i1] - xs[i]);
  const double ty = j1 == j ? 0.0 : (y - ys[j]) / (ys[j1] - ys[j]);
  return (1 - tx) * (1 - ty) * value(i, j) + tx * (1 - ty) * value(i1, j) +
         (1 - tx) * ty * value(i, j1) + tx * ty * value(i1, j1);
}

std::vector<Polyline> marching_squares(const GridField& f, double level) {
  const std::size_t nx = f.xs.size();
  const std::size_t ny = f.ys.size();
  if (f.values.size() != nx * ny) throw ValidationError("grid values do not match axes");
  if (nx < 2 || ny < 2) return {};

  // Edge ids: horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
  auto h_edge = [ny](std::size_t i, std::size_t j) { return (std::uint64_t(i) * ny + j) * 2; };
  auto v_edge = [ny](std::size_t i, std::size_t j) { return (std::uint64_t(i) * ny + j) * 2 + 1; };
  auto cross = [&](double xa, double ya, double va, double xb, double yb, double vb) {
    const double t = (va == vb) ? 0.5 : (level - va) / (vb - va);
    return Point2{xa + t * (xb - xa), ya + t * (yb - ya)};
  };

  std::vector<Segment> segments;
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double x0 = f.xs[i], x1 = f.xs[i + 1], y0 = f.ys[j], y1 = f.ys[j + 1];
      const double v00 = f.value(i, j), v10 = f.value(i + 1, j);
      const double v11 = f.value(i + 1, j + 1), v01 = f.value(i, j + 1);
      const int code = (v00 >= level ? 1 : 0) | (v10 >= level ? 2 : 0) |
                       (v11 >= level ? 4 : 0) | (v01 >= level ? 8 : 0);
      if (code == 0 || code == 15) continue;

      // Cell sides: 0 bottom, 1 right, 2 top, 3 left.
      const std::array<std::uint64_t, 4> ids{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1),
                                             v_edge(i, j)};
      const auto point = [&](int side) {
        switch (side) {
          case 0: return cross(x0, y0, v00, x1, y0, v10);
          case 1: return cross(x1, y0, v10, x1, y1, v11);
          case 2: return cross(x0, y1, v01, x1, y1, v11);
          default: return cross(x0, y0, v00, x0, y1, v01);
        }
      };
      const auto add = [&](int a, int b) {
        segments.push_back({{ids[a], ids[b]}, {point(a), point(b)}});
      };

      const bool centre_in = 0.25 * (v00 + v10 + v11 + v01) >= level;
      switch (code) {
        case 1: case 14: add(3, 0); break;
        case 2: case 13: add(0, 1); break;
        case 3: case 12: add(3, 1); break;
        case 4: case 11: add(1, 2); break;
        case 6: case 9: add(0, 2); break;
        case 7: case 8: add(3, 2); break;
        case 5:  // v00, v11 inside
          if (centre_in) { add(0, 1); add(3, 2); } else { add(3, 0); add(1, 2); }
          break;
        case 10:  // v10, v01 inside
          if (centre_in) { add(3, 0); add(1, 2); } else { add(0, 1); add(3, 2); }
          break;
        default: break;
      }
    }
  }

  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_edge;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    by_edge[segments[s].edge[0]].push_back(s);
    by_edge[segments[s].edge[1]].push_back(s);
  }

  std::vector<bool> used(segments.size(), false);
  auto walk = [&](std::size_t s, int entry_end) {
    Polyline line;
    line.push_back(segments[s].point[entry_end]);
    std::size_t current = s;
    int from = entry_end;
    while (true) {
      used[current] = true;
      const int to = 1 - from;
      line.push_back(segments[current].point[to]);
      const std::uint64_t edge = segments[current].edge[to];
      std::size_t next = segments.size();
      for (std::size_t cand : by_edge[edge]) {
        if (!used[cand]) { next = cand; break; }
      }
      if (next == segments.size()) break;
      from = segments[next].edge[0] == edge ? 0 : 1;
      current = next;
    }
    return line;
  };

  std::vector<Polyline> lines;
  // Open lines start at an edge touched by a single segment (grid boundary).
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (used[s]) continue;
    for (int end = 0; end < 2; ++end) {
      if (by_edge[segments[s].edge[end]].size() == 1) {
        lines.push_back(walk(s, end));
        break;
      }
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) lines.push_back(walk(s, 0));
  }
  return lines;
}

bool contour_encloses(const std::vector<Polyline>& lines, const GridField& field, double level,
                      Point2 p) {
  std::size_t crossings = 0;
  for (const auto& line : lines) {
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      const Point2 a = line[k];
      const Point2 b = line[k + 1];
      if ((a.y > p.y) == (b.y > p.y)) continue;
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (x > p.x) ++crossings;
    }
  }
  const bool exit_inside = field.interpolate(field.xs.back(), p.y) >= level;
  return exit_inside != (crossings % 2 == 1);
}

}  // namespace stirap
