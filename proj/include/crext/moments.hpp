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

#ifndef CREXT_MOMENTS_HPP
#define CREXT_MOMENTS_HPP

#include <span>
#include <vector>

#include "crext/polynomial.hpp"
#include "crext/quadric.hpp"

namespace crext {

inline constexpr int kDefaultGridSize = 512;
inline constexpr double kLeafResidual = 1e-12;

/// A leaf {w = level} of the hull, n = 1, traced as zeta(theta) = r phi(theta) e^{i theta}.
struct LeafParametrization {
  double lambda = 0.0;  ///< Bishop invariant of the model
  Polynomial rho{1};    ///< full defining function
  double r = 1.0;       ///< radial scale of the curve
  double level = 1.0;   ///< w-value of the leaf (r^2 on quadric models)
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> phi_theta;

  int size() const noexcept { return static_cast<int>(theta.size()); }
  double step() const noexcept;
  Complex point(int i) const;
  /// d zeta / d theta
  Complex tangent(int i) const;
  /// min |zeta| over the grid.
  double inradius() const;
  /// max |rho(zeta) - level| / r^2 over the grid.
  double residual() const;
};

/// Circle of radius `radius` on the level `level`; used for radially symmetric models.
LeafParametrization circle_leaf(const Polynomial& rho, double radius, double level, int N);

/// Solves rho(r phi e^{i theta}) = r^2 for phi at N equispaced angles (Newton),
/// then differentiates phi spectrally.
///
/// Requires an elliptic n = 1 model, r > 0 and N a power of two >= 64. Throws
/// NumericalFailure when Newton does not converge within 50 iterations, which
/// happens when the leaf lies outside the region where E is a small perturbation.
LeafParametrization solve_leaf(const QuadricModel& model, double r, int N = kDefaultGridSize);

/// Derivative of a periodic function sampled at N equispaced points on [0, 2pi).
std::vector<double> spectral_derivative(std::span<const double> samples);

/// Trapezoidal approximation of the contour integral of f(zeta) zeta^ell dzeta
/// around the leaf.
Complex moment_integral(const Polynomial& f, const LeafParametrization& leaf, int ell);

struct MomentEntry {
  double r = 0.0;
  int ell = 0;
  Complex value;
};

struct MomentReport {
  std::vector<MomentEntry> entries;  ///< ordered by (r, ell)
  double max_modulus = 0.0;
  double tolerance = 0.0;
  int lmax = 0;
  int grid_size = 0;
  bool pass = true;
};

/// Geometric ladder {0.05, 0.1, 0.2, 0.4} * delta_z.
std::vector<double> default_leaf_ladder(const QuadricModel& model);

/// Evaluates every moment for r in `leaves`, 0 <= ell <= lmax. An empty ladder
/// selects the default one; lmax < 0 selects deg f + 4.
MomentReport check_moments(const Polynomial& f, const QuadricModel& model,
                           std::span<const double> leaves, int lmax, double tol,
                           int N = kDefaultGridSize);

/// X f for the CR field X = rho_{zbar_j} d/dzbar_l - rho_{zbar_l} d/dzbar_j.
struct CrViolation {
  int j = 0;  ///< zero-based
  int l = 0;
  Polynomial value;
};

/// Applies every CR field (j < l) to f; an empty result means f is CR. n >= 2.
std::vector<CrViolation> cr_check(const Polynomial& f, const QuadricModel& model);

}  // namespace crext

#endif  // CREXT_MOMENTS_HPP
