// Copyright 2026 The crext Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CREXT_ERRORS_HPP
#define CREXT_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace crext {

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A polynomial operation would exceed the supported total degree.
class DegreeLimitError : public InputError {
 public:
  using InputError::InputError;
};

/// The Hermitian part of a model is not positive definite.
class NotElliptic : public InputError {
 public:
  NotElliptic(const std::string& what, double eigenvalue)
      : InputError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// An evaluation point sits too close to (or outside) a leaf boundary curve.
class NearBoundary : public InputError {
 public:
  NearBoundary(const std::string& what, std::complex<double> point)
      : InputError(what), point_(point) {}
  std::complex<double> point() const noexcept { return point_; }

 private:
  std::complex<double> point_;
};

/// A numerical procedure failed its own a-posteriori check. Exit code 3.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crext

#endif  // CREXT_ERRORS_HPP
