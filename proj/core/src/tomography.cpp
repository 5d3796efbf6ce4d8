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

#include "stirap/tomography.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "format.hpp"
#include "stirap/error.hpp"

namespace stirap {

namespace {

constexpr std::array<std::array<std::size_t, 3>, 3> kCyclic{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view text, std::size_t line) {
  text = trim(text);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ValidationError("line " + std::to_string(line) + ": cannot parse '" + std::string(text) +
                          "' as a number");
  }
  return value;
}

}  // namespace

void TomographyCalibration::validate() const {
  for (const auto* row : {&pulse_a, &pulse_b}) {
    for (double p : *row) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError("tunneling probabilities must lie in [0, 1]");
      }
    }
  }
  if (std::abs(determinant(*this)) <= kSingularThreshold) {
    throw CalibrationError("singular calibration: |D| = " +
                           detail::format_number(std::abs(determinant(*this))) +
                           " <= 1e-6; pulses A and B are not sufficiently distinct");
  }
}

std::vector<std::string> TomographyCalibration::warnings() const {
  std::vector<std::string> out;
  const auto check = [&](const std::array<double, 3>& p, const char* name) {
    if (!(p[0] <= p[1] && p[1] <= p[2])) {
      out.push_back(std::string("pulse ") + name +
                    ": tunneling probability is not non-decreasing in level");
    }
  };
  check(pulse_a, "A");
  check(pulse_b, "B");
  return out;
}

TomographyCalibration TomographyCalibration::demo() {
  return {{0.05, 0.60, 0.90}, {0.0, 0.05, 0.70}};
}

double determinant(const TomographyCalibration& c) {
  const auto& a = c.pulse_a;
  const auto& b = c.pulse_b;
  double d = 0.0;
  for (const auto& [i, j, k] : kCyclic) d += a[j] * b[k] - a[k] * b[j];
  return d;
}

TunnelingProbabilities forward(const Populations& P, const TomographyCalibration& c) {
  double sum = 0.0;
  for (double p : P) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("populations must lie in [0, 1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("populations must sum to 1");
  TunnelingProbabilities out;
  for (std::size_t i = 0; i < 3; ++i) {
    out.pa += P[i] * c.pulse_a[i];
    out.pb += P[i] * c.pulse_b[i];
  }
  return out;
}

Populations invert(double pa, double pb, const TomographyCalibration& c) {
  const double d = determinant(c);
  if (std::abs(d) <= kSingularThreshold) {
    throw CalibrationError("singular calibration: |D| = " + detail::format_number(std::abs(d)) +
                           " <= 1e-6");
  }
  const auto& a = c.pulse_a;
  const auto& b = c.pulse_b;
  Populations out{};
  for (const auto& [i, j, k] : kCyclic) {
    out[i] = ((b[j] - b[k]) * pa + (a[k] - a[j]) * pb + a[j] * b[k] - a[k] * b[j]) / d;
  }
  return out;
}

Populations clamp_and_renormalize(const Populations& populations) {
  Populations out{};
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = std::clamp(populations[i], 0.0, 1.0);
    sum += out[i];
  }
  if (sum <= 0.0) return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  for (double& p : out) p /= sum;
  return out;
}

std::size_t invert_csv(std::istream& in, std::ostream& out, const TomographyCalibration& calib) {
  calib.validate();
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t rows = 0;
  out << "pA,pB,P0,P1,P2,P0_clamped,P1_clamped,P2_clamped\n";
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected two columns pA,pB");
    }
    if (!header_seen) {
      header_seen = true;
      if (trim(text.substr(0, comma)) != "pA" || trim(text.substr(comma + 1)) != "pB") {
        throw ValidationError("tomography input must start with header 'pA,pB'");
      }
      continue;
    }
    const double pa = parse_field(text.substr(0, comma), line_no);
    const double pb = parse_field(text.substr(comma + 1), line_no);
    const auto raw = invert(pa, pb, calib);
    const auto clamped = clamp_and_renormalize(raw);
    detail::write_row(out, {pa, pb, raw[0], raw[1], raw[2], clamped[0], clamped[1], clamped[2]});
    ++rows;
  }
  if (!header_seen) throw ValidationError("tomography input is empty");
  return rows;
}

}  // namespace stirap
