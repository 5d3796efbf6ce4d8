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

#include <numbers>

// Internal convention: seconds and angular frequencies in rad/s. Config files
// and CSV output use MHz (ordinary frequency) and ns.
namespace stirap::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mhz_to_angular(double mhz) { return kTwoPi * 1e6 * mhz; }
constexpr double angular_to_mhz(double omega) { return omega / (kTwoPi * 1e6); }
constexpr double hz_to_angular(double hz) { return kTwoPi * hz; }

constexpr double ns_to_s(double ns) { return ns * 1e-9; }
constexpr double s_to_ns(double s) { return s * 1e9; }
constexpr double ps_to_s(double ps) { return ps * 1e-12; }
constexpr double s_to_ps(double s) { return s * 1e12; }
constexpr double us_to_s(double us) { return us * 1e-6; }

}  // namespace stirap::units
