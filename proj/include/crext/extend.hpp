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

#ifndef CREXT_EXTEND_HPP
#define CREXT_EXTEND_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crext/polynomial.hpp"
#include "crext/quadric.hpp"

namespace crext {

inline constexpr double kExtensionTolerance = 1e-9;
inline constexpr double kConditioningWarning = 1e-11;
inline constexpr double kInvolutionTolerance = 1e-10;

enum class ExtensionStatus { Extended, NotExtendible };

std::string to_string(ExtensionStatus s);

/// Outcome of the least-squares solve for one homogeneous degree of f.
struct DegreeSolve {
  int degree = 0;
  int unknowns = 0;
  int equations = 0;
  double residual = 0.0;          ///< max |M c - b|
  double condition_number = 0.0;  ///< 0 when the degree was empty and skipped
  bool conditioning_warning = false;
};

struct Certificate {
  int degree = 0;
  double residual = 0.0;
  std::string condition;  ///< empty when no structural reason was identified
  std::optional<std::pair<int, int>> offending;  ///< (j, k) of z^j zbar^k, lambda = 0
  std::optional<double> involution_deviation;    ///< lambda > 0
  std::optional<std::pair<int, int>> cr_pair;    ///< zero-based (j, l), n >= 2
  std::optional<Polynomial> cr_value;
};

struct ExtensionResult {
  ExtensionStatus status = ExtensionStatus::NotExtendible;
  std::optional<Polynomial> P;
  double residual = 0.0;  ///< max coefficient of substitute_w(P, rho) - f when Extended
  double threshold = 0.0;
  std::vector<DegreeSolve> degrees;
  std::optional<Certificate> certificate;
};

/// Extension across w = |z|^2 by the monomial map z^j zbar^k -> z^{j-k} w^k.
ExtensionResult extend_lambda0(const Polynomial& f);

struct InvarianceReport {
  bool invariant = false;
  double deviation = 0.0;
};

/// Compares f with its pullback under (z, zbar) -> (z, -z/lambda - zbar).
InvarianceReport check_involution_invariance(const Polynomial& f, double lambda);

/// Solves for the holomorphic P with P(z, Q) = f degree by degree.
///
/// The model must be elliptic and unperturbed. Each degree d of f is matched
/// against the span of {z^alpha Q^k : |alpha| + 2k = d} in the least-squares
/// sense; a graded residual at or above tol * (1 + max|coeff f|) makes f
/// NotExtendible and the certificate names the structural reason when one
/// can be identified.
ExtensionResult extend_general(const Polynomial& f, const QuadricModel& model,
                               double tol = kExtensionTolerance);

/// xi, w -> P(xi v, w).
Polynomial restrict_to_plane(const Polynomial& P, std::span<const Complex> v);

struct SliceEntry {
  std::vector<Complex> direction;
  double restricted_lambda = 0.0;
  double deviation = 0.0;
  bool extended = false;
};

struct SliceReport {
  std::vector<SliceEntry> entries;
  double max_deviation = 0.0;
};

/// Re-derives P along complex lines through the w-axis with the n = 1 solver
/// and compares each against restrict_to_plane(P, v). The model must be in
/// Bishop normal form (A = I, B = diag(lambda)).
SliceReport slice_oracle(const Polynomial& f, const QuadricModel& model, const Polynomial& P,
                         std::span<const std::vector<Complex>> directions);

/// max |P(z, rho(z)) - f(z)| over random z in the ball of radius `radius`
/// (default_delta_z when radius <= 0).
double verify_extension(const Polynomial& P, const Polynomial& f, const QuadricModel& model,
                        int sample_count, std::uint64_t seed, double radius = 0.0);

}  // namespace crext

#endif  // CREXT_EXTEND_HPP
