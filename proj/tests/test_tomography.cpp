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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "stirap/error.hpp"
#include "stirap/tomography.hpp"
#include "test_util.hpp"

namespace stirap {
namespace {

double cofactor_determinant(const TomographyCalibration& c) {
  const double m[3][3] = {{1, 1, 1},
                          {c.pulse_a[0], c.pulse_a[1], c.pulse_a[2]},
                          {c.pulse_b[0], c.pulse_b[1], c.pulse_b[2]}};
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

TEST(Calibration, DemoValues) {
  const auto c = TomographyCalibration::demo();
  EXPECT_EQ(c.pulse_a, (std::array<double, 3>{0.05, 0.60, 0.90}));
  EXPECT_EQ(c.pulse_b, (std::array<double, 3>{0.0, 0.05, 0.70}));
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.warnings().empty());
}

TEST(Calibration, RangeValidation) {
  auto c = TomographyCalibration::demo();
  c.pulse_a[1] = 1.2;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Calibration, NonMonotoneWarns) {
  auto c = TomographyCalibration::demo();
  c.pulse_b = {0.3, 0.05, 0.70};
  EXPECT_FALSE(c.warnings().empty());
}

TEST(Determinant, IdenticalPulsesAreSingular) {
  const TomographyCalibration c{{0.1, 0.5, 0.9}, {0.1, 0.5, 0.9}};
  EXPECT_EQ(determinant(c), 0.0);
}

TEST(Determinant, MatchesCofactorOracle) {
  const auto c = TomographyCalibration::demo();
  EXPECT_NEAR(determinant(c), cofactor_determinant(c), 1e-15);
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 1000; ++k) {
    const TomographyCalibration r{{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
    ASSERT_NEAR(determinant(r), cofactor_determinant(r), 1e-15);
  }
}

TEST(Determinant, UnitCase) {
  const TomographyCalibration c{{0, 1, 0}, {0, 0, 1}};
  EXPECT_EQ(determinant(c), 1.0);
}

TEST(Forward, Examples) {
  const auto c = TomographyCalibration::demo();
  auto r = forward({1, 0, 0}, c);
  EXPECT_EQ(r.pa, 0.05);
  EXPECT_EQ(r.pb, 0.0);
  r = forward({0, 0, 1}, c);
  EXPECT_EQ(r.pa, 0.90);
  EXPECT_EQ(r.pb, 0.70);
  r = forward({1.0 / 3, 1.0 / 3, 1.0 / 3}, c);
  EXPECT_NEAR(r.pa, 0.5167, 1e-4);
  EXPECT_NEAR(r.pb, 0.25, 1e-12);
}

TEST(Forward, RejectsNonNormalized) {
  const auto c = TomographyCalibration::demo();
  EXPECT_THROW(forward({0.5, 0.5, 0.5}, c), ValidationError);
  EXPECT_THROW(forward({1.2, -0.2, 0.0}, c), ValidationError);
}

TEST(Invert, GroundStateRow) {
  const auto c = TomographyCalibration::demo();
  const auto p = invert(c.pulse_a[0], c.pulse_b[0], c);
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_NEAR(p[1], 0.0, 1e-15);
  EXPECT_NEAR(p[2], 0.0, 1e-15);
}

TEST(Invert, SingularCalibration) {
  const TomographyCalibration c{{0.1, 0.5, 0.9}, {0.1, 0.5, 0.9}};
  EXPECT_THROW(invert(0.3, 0.3, c), CalibrationError);
}

TEST(Invert, RoundTripProperty) {
  std::mt19937_64 rng(22);
  const auto c = TomographyCalibration::demo();
  for (int k = 0; k < 1000; ++k) {
    const auto p = testing::random_simplex(rng);
    const auto m = forward(p, c);
    const auto q = invert(m.pa, m.pb, c);
    for (int i = 0; i < 3; ++i) ASSERT_NEAR(q[i], p[i], 1e-12);
    ASSERT_NEAR(q[0] + q[1] + q[2], 1.0, 1e-12);
  }
}

TEST(Invert, RoundTripRandomCalibrations) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0, 1);
  int used = 0;
  while (used < 1000) {
    const TomographyCalibration c{{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}};
    if (std::abs(determinant(c)) < 1e-2) continue;
    ++used;
    const auto p = testing::random_simplex(rng);
    const auto m = forward(p, c);
    const auto q = invert(m.pa, m.pb, c);
    for (int i = 0; i < 3; ++i) ASSERT_NEAR(q[i], p[i], 1e-12);
  }
}

TEST(Invert, SumIsOneForArbitraryInputs) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0, 1);
  const auto c = TomographyCalibration::demo();
  for (int k = 0; k < 1000; ++k) {
    const auto q = invert(u(rng), u(rng), c);
    ASSERT_NEAR(q[0] + q[1] + q[2], 1.0, 1e-12);
  }
}

TEST(Invert, PermutationConsistency) {
  std::mt19937_64 rng(25);
  const auto c = TomographyCalibration::demo();
  const std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  for (int k = 0; k < 200; ++k) {
    const auto p = testing::random_simplex(rng);
    const auto m = forward(p, c);
    for (const auto& s : perms) {
      // Level i of the original system becomes level s[i] of the relabelled one.
      TomographyCalibration r;
      for (int i = 0; i < 3; ++i) {
        r.pulse_a[s[i]] = c.pulse_a[i];
        r.pulse_b[s[i]] = c.pulse_b[i];
      }
      const auto q = invert(m.pa, m.pb, r);
      for (int i = 0; i < 3; ++i) ASSERT_NEAR(q[s[i]], p[i], 1e-12);
    }
  }
}

TEST(Clamp, RenormalizesNegativeComponents) {
  const auto q = clamp_and_renormalize({1.02, -0.05, 0.03});
  EXPECT_EQ(q[1], 0.0);
  EXPECT_NEAR(q[0] + q[1] + q[2], 1.0, 1e-15);
  EXPECT_GE(q[0], 0.0);
  EXPECT_LE(q[0], 1.0);
}

TEST(InvertCsv, BatchRoundTrip) {
  const auto c = TomographyCalibration::demo();
  std::mt19937_64 rng(26);
  std::ostringstream in;
  in << "pA,pB\n";
  std::vector<Populations> truth;
  for (int k = 0; k < 50; ++k) {
    truth.push_back(testing::random_simplex(rng));
    const auto m = forward(truth.back(), c);
    in.precision(17);
    in << m.pa << ',' << m.pb << '\n';
  }
  std::istringstream src(in.str());
  std::ostringstream out;
  EXPECT_EQ(invert_csv(src, out, c), 50u);
  std::istringstream res(out.str());
  std::string line;
  std::getline(res, line);
  EXPECT_EQ(line, "pA,pB,P0,P1,P2,P0_clamped,P1_clamped,P2_clamped");
  for (const auto& p : truth) {
    ASSERT_TRUE(std::getline(res, line));
    std::stringstream row(line);
    std::vector<double> cells;
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(std::stod(cell));
    ASSERT_EQ(cells.size(), 8u);
    for (int i = 0; i < 3; ++i) ASSERT_NEAR(cells[2 + i], p[i], 1e-12);
  }
}

TEST(InvertCsv, RejectsBadHeader) {
  std::istringstream src("a,b\n0.1,0.2\n");
  std::ostringstream out;
  EXPECT_THROW(invert_csv(src, out, TomographyCalibration::demo()), ValidationError);
}

}  // namespace
}  // namespace stirap
