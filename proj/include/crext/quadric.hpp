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

#ifndef CREXT_QUADRIC_HPP
#define CREXT_QUADRIC_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crext/polynomial.hpp"

namespace crext {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPositiveDefiniteTolerance = 1e-10;
inline constexpr double kNormalFormResidual = 1e-10;
inline constexpr double kNormalFormFailure = 1e-8;

/// The CR-singular model  w = Q(z, zbar) + E(z, zbar)  with
///
///   Q = sum_{jk} a_{jk} zbar_j z_k + b_{jk} z_j z_k + conj(b_{jk}) zbar_j zbar_k.
///
/// A is Hermitian, B symmetric; E is real-valued and vanishes to order 3.
struct QuadricModel {
  int n = 1;
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd B;
  std::optional<Polynomial> E;

  /// Validates and builds a model; throws InputError on any invariant violation.
  static QuadricModel create(Eigen::MatrixXcd A, Eigen::MatrixXcd B,
                             std::optional<Polynomial> E = std::nullopt);

  /// A = I, B = diag(lambdas).
  static QuadricModel bishop(std::span<const double> lambdas,
                             std::optional<Polynomial> E = std::nullopt);
};

enum class Classification { Degenerate, Elliptic, Parabolic, Hyperbolic };

std::string to_string(Classification c);

struct BishopNormalForm {
  Eigen::MatrixXcd T;           ///< z = T u puts the model into normal form
  std::vector<double> lambdas;  ///< ascending, all >= 0
  Classification classification = Classification::Elliptic;
  double hermitian_residual = 0.0;   ///< max |T*AT - I|
  double congruence_residual = 0.0;  ///< max |T^t B T - diag(lambdas)|
};

struct NondegeneracyReport {
  bool nondegenerate = false;
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
};

/// Nondegenerate iff sigma_min(A) > 1e-10 * max(sigma_max(A), 1).
NondegeneracyReport check_nondegenerate(const QuadricModel& model);

/// Simultaneous reduction T*AT = I, T^t B T = diag(lambda).
///
/// Throws NotElliptic if A is not positive definite and NumericalFailure if
/// the a-posteriori residuals exceed 1e-8.
BishopNormalForm normalize(const QuadricModel& model);

struct ClassificationReport {
  Classification classification = Classification::Degenerate;
  std::vector<double> lambdas;
  std::optional<BishopNormalForm> normal_form;
  NondegeneracyReport nondegeneracy;
  std::string note;
};

ClassificationReport classify(const QuadricModel& model);

/// Symmetric 2n x 2n matrix of Q as a real quadratic form in (Re z, Im z).
Eigen::MatrixXd real_quadratic_form(const QuadricModel& model);

/// True iff Q is positive definite as a real quadratic form (ignores E).
bool ellipticity_oracle(const QuadricModel& model);

/// Q + E as a Polynomial (real-valued, no w).
Polynomial q_polynomial(const QuadricModel& model);

/// Q alone.
Polynomial quadratic_part(const QuadricModel& model);

/// Default radius of the z-ball: 0.5 * sqrt(eig_min(A) / eig_max(A)).
double default_delta_z(const QuadricModel& model);

/// Unitary congruence diagonalization S = U diag(sigma) U^t of a complex
/// symmetric matrix, sigma >= 0 in descending order.
struct TakagiFactorization {
  Eigen::MatrixXcd U;
  Eigen::VectorXd sigma;
  double residual = 0.0;  ///< max |U diag(sigma) U^t - S|
};

TakagiFactorization takagi(const Eigen::MatrixXcd& S);

}  // namespace crext

#endif  // CREXT_QUADRIC_HPP
