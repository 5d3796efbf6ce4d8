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

#include <stdexcept>
#include <string>

namespace stirap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (bad parameters, non-normalized
/// populations, unknown sweep axis).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Scenario/config file could not be parsed or contains unknown keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure during integration, typically a step that is too large
/// for the fastest time scale in the Hamiltonian.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Tomography calibration whose pulse A and B rows are not sufficiently
/// distinct to invert.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Dark state requested with both drive amplitudes zero.
class DegenerateInputError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A sweep curve that has no interior maximum.
class NoPeakError : public Error {
 public:
  using Error::Error;
};

}  // namespace stirap
