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

#ifndef CREXT_LEAFCAUCHY_HPP
#define CREXT_LEAFCAUCHY_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crext/moments.hpp"
#include "crext/polynomial.hpp"
#include "crext/quadric.hpp"

namespace crext {

/// Boundary data on an n = 1 model, as a function of z in the z-plane.
/// The second argument is the w-value rho(z) of the point on M.
struct BoundaryData {
  using Evaluator = std::function<Complex(Complex z, double level)>;

  Evaluator value;
  std::string description;
  /// Wirtinger derivatives along M (d/dz and d/dzbar of z -> f(z, rho(z))).
  /// When absent they are estimated by central differences.
  Evaluator dz;
  Evaluator dzbar;
};

BoundaryData polynomial_data(const Polynomial& f);

/// Named data: "sqrt-re-w" (sqrt(Re w)), "constant" (the given value) or
/// "identity" (z). Throws InputError for other names.
BoundaryData builtin_data(std::string_view name, Complex constant = 1.0);

/// A one-parameter family of leaves {w = s}, s > 0.
struct LeafFamily {
  std::string name;
  std::function<double(Complex)> rho;
  std::function<LeafParametrization(double s, int N)> leaf;
};

LeafFamily quadric_family(const QuadricModel& model);

/// rho is a polynomial in |z|^2 and radius_of_level its inverse, s -> |z|.
LeafFamily radial_family(Polynomial rho, std::function<double(double)> radius_of_level,
                         std::string name);

/// w = |z|^{2m}.
LeafFamily radial_power_family(int m);

struct LeafExtension {
  LeafParametrization leaf;
  std::vector<std::pair<Complex, Complex>> interior_values;  ///< (z, F(z))
  double boundary_sup_error = 0.0;
};

/// Cauchy integral of f over the leaf curve at the given interior points.
///
/// Throws NearBoundary for a point outside the curve or within
/// 0.05 * inradius of it. boundary_sup_error is the largest mismatch between
/// the Cauchy integral's boundary values (computed with the singularity
/// subtracted) and f at a set of boundary probes.
LeafExtension cauchy_extend(const BoundaryData& f, const LeafParametrization& leaf,
                            std::span<const Complex> points);

struct ContinuityRow {
  double level = 0.0;
  double radius = 0.0;  ///< leaf label r (max |zeta| on circle leaves)
  double sup_deviation = 0.0;
};

/// sup over each leaf of |f - f(0)|. With f0 absent, the average of f on the
/// smallest leaf stands in for f(0).
std::vector<ContinuityRow> continuity_probe(const BoundaryData& f, const LeafFamily& family,
                                            std::span<const double> levels,
                                            std::optional<Complex> f0 = std::nullopt,
                                            int N = kDefaultGridSize);

struct NormalDerivativeReport {
  std::vector<double> levels;
  std::vector<Complex> values;       ///< F(0, s) per rung
  std::vector<double> fs_levels;     ///< interior rungs
  std::vector<double> fs_magnitude;  ///< |F_s(0, s)| per interior rung
  double exponent = 0.0;             ///< slope of log |F_s| against log s
  bool bounded = false;              ///< F_s numerically zero on every rung
};

/// Estimates the growth of the normal derivative F_s(0, s) along a geometric
/// ladder of at least 6 levels.
NormalDerivativeReport normal_derivative_probe(const BoundaryData& f, const LeafFamily& family,
                                               std::span<const double> levels,
                                               int N = kDefaultGridSize);

struct ZDerivativeBound {
  bool holds = false;
  double max_interior = 0.0;  ///< max |F_z| over the samples
  double bound = 0.0;         ///< sup over the leaf of |f_z| + |f_zbar|
  double margin = 0.0;        ///< bound + 1e-6 - max_interior
};

/// Checks max |F_z| <= sup_leaf (|f_z| + |f_zbar|) + 1e-6 at interior samples.
ZDerivativeBound zderiv_bound_check(const BoundaryData& f, const LeafFamily& family, double level,
                                    std::span<const Complex> samples, int N = kDefaultGridSize);

/// s0, s0 * ratio, ..., rungs entries.
std::vector<double> geometric_ladder(double s0, double ratio, int rungs);

}  // namespace crext

#endif  // CREXT_LEAFCAUCHY_HPP
