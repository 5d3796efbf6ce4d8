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

#pragma once

#include <span>
#include <vector>

namespace stirap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

using Polyline = std::vector<Point2>;

/// Scalar field sampled on a rectilinear grid; value(i, j) sits at (xs[i], ys[j]).
struct GridField {
  std::span<const double> xs;
  std::span<const double> ys;
  std::span<const double> values;  ///< row-major, index i * ys.size() + j

  double value(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
  /// Bilinear interpolation; the point is clamped into the grid.
  double interpolate(double x, double y) const;
};

/// Marching-squares iso-lines at `level`. Segments are joined into polylines;
/// closed loops repeat their first point at the end. Saddle cells are resolved
/// with the cell-centre average.
std::vector<Polyline> marching_squares(const GridField& field, double level);

/// Whether p lies in the region {value >= level} delimited by `lines`: counts
/// crossings of the ray from p towards +x and compares with the side of the
/// grid boundary where the ray exits.
bool contour_encloses(const std::vector<Polyline>& lines, const GridField& field, double level,
                      Point2 p);

}  // namespace stirap
