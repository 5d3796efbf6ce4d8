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

#include <array>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "stirap/qutrit.hpp"

namespace stirap {

/// Per-level tunneling probabilities of the two measurement flux pulses.
struct TomographyCalibration {
  std::array<double, 3> pulse_a{};  ///< (p0A, p1A, p2A)
  std::array<double, 3> pulse_b{};  ///< (p0B, p1B, p2B)

  /// Throws ValidationError for values outside [0, 1] and CalibrationError
  /// when |D| <= kSingularThreshold.
  void validate() const;

  /// Non-fatal issues, e.g. tunneling probability decreasing with level.
  std::vector<std::string> warnings() const;

  /// p0A = 5%, p0B = 0 and p1B = 5% follow the device description; the other
  /// three entries are synthetic.
  static TomographyCalibration demo();

  bool operator==(const TomographyCalibration&) const = default;
};

inline constexpr double kSingularThreshold = 1e-6;

/// Determinant of [[1, 1, 1], [p0A, p1A, p2A], [p0B, p1B, p2B]].
double determinant(const TomographyCalibration& calib);

struct TunnelingProbabilities {
  double pa = 0.0;
  double pb = 0.0;
};

/// p^{A,B} = sum_i P_i p_i^{A,B}. Throws ValidationError unless P sums to 1
/// within 1e-9 with components in [0, 1].
TunnelingProbabilities forward(const Populations& populations, const TomographyCalibration& calib);

/// Exact linear inversion using normalization:
///   P_i = [(p_j^B - p_k^B) pA + (p_k^A - p_j^A) pB + p_j^A p_k^B - p_k^A p_j^B] / D
/// with (i, j, k) cyclic. Results are raw; they may leave [0, 1] for noisy
/// input. Throws CalibrationError when |D| <= kSingularThreshold.
Populations invert(double pa, double pb, const TomographyCalibration& calib);

/// Clamps to [0, 1] and rescales to unit sum.
Populations clamp_and_renormalize(const Populations& populations);

/// Reads `pA,pB` rows (header required) and writes
/// `pA,pB,P0,P1,P2,P0_clamped,P1_clamped,P2_clamped`. Returns rows processed.
std::size_t invert_csv(std::istream& in, std::ostream& out, const TomographyCalibration& calib);

}  // namespace stirap
