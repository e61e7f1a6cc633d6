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

#include "crext/extend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include <Eigen/SVD>

#include "crext/errors.hpp"
#include "crext/moments.hpp"

namespace crext {

namespace {

// All exponent vectors of length n summing to total, in lexicographic order.
void compositions(int n, int total, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  const int pos = static_cast<int>(current.size());
  if (pos == n - 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int a = total; a >= 0; --a) {
    current.push_back(a);
    compositions(n, total - a, current, out);
    current.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int n, int total) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  compositions(n, total, current, out);
  return out;
}

// Holomorphic basis {z^alpha w^k : |alpha| + 2k = d}.
std::vector<Exponent> weighted_basis(int n, int d) {
  std::vector<Exponent> basis;
  for (int k = 0; 2 * k <= d; ++k) {
    for (auto& alpha : compositions(n, d - 2 * k)) basis.emplace_back(alpha, std::vector<int>(n, 0), k);
  }
  return basis;
}

struct GradedSolution {
  Polynomial part;
  DegreeSolve stats;
};

GradedSolution solve_degree(const Polynomial& target, const Polynomial& Q, int d) {
  const int n = target.n();
  GradedSolution out{Polynomial(n), {}};
  out.stats.degree = d;

  const std::vector<Exponent> basis = weighted_basis(n, d);
  std::vector<Polynomial> images;
  images.reserve(basis.size());
  std::map<Exponent, Eigen::Index, GradedLexLess> rows;
  for (const Exponent& e : basis) {
    images.push_back(substitute_w(Polynomial::monomial(e, 1.0), Q));
    for (const auto& [re, c] : images.back().terms()) rows.try_emplace(re, 0);
  }
  for (const auto& [re, c] : target.terms()) rows.try_emplace(re, 0);
  Eigen::Index next = 0;
  for (auto& [re, idx] : rows) idx = next++;

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(next, static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(next);
  for (std::size_t col = 0; col < images.size(); ++col) {
    for (const auto& [re, c] : images[col].terms()) M(rows.at(re), static_cast<Eigen::Index>(col)) = c;
  }
  for (const auto& [re, c] : target.terms()) b(rows.at(re)) = c;

  // JacobiSVD: BDCSVD in Eigen 3.4.0 mis-solves some of these sparse, block-structured systems.
  Eigen::JacobiSVD<Eigen::MatrixXcd, Eigen::ColPivHouseholderQRPreconditioner> svd(
      M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const Eigen::VectorXcd c = svd.solve(b);
  const double smin = s(s.size() - 1);
  out.stats.condition_number = smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  out.stats.unknowns = static_cast<int>(basis.size());
  out.stats.equations = static_cast<int>(next);
  out.stats.residual = (M * c - b).cwiseAbs().maxCoeff();

  for (std::size_t col = 0; col < basis.size(); ++col) {
    out.part.add_term(basis[col], c(static_cast<Eigen::Index>(col)));
  }
  return out;
}

void require_boundary_data(const Polynomial& f, const char* op) {
  if (f.has_w()) throw InputError(std::string(op) + ": f must not contain w");
}

// Identifies why a failing f cannot extend; fills the structural fields.
void explain_failure(const Polynomial& f, const QuadricModel& model, Certificate& cert) {
  if (model.n == 1) {
    const BishopNormalForm nf = normalize(model);
    const Polynomial fu = linear_substitute(f, nf.T);
    const double lambda = nf.lambdas.front();
    if (lambda <= kInvolutionTolerance) {
      for (const auto& [e, c] : fu.terms()) {
        if (e.alpha[0] < e.beta[0]) {
          cert.offending = std::pair{e.alpha[0], e.beta[0]};
          cert.condition = "a_jk != 0 with j < k";
          return;
        }
      }
    } else {
      const InvarianceReport inv = check_involution_invariance(fu, lambda);
      if (!inv.invariant) {
        cert.involution_deviation = inv.deviation;
        cert.condition = "not involution-invariant";
      }
    }
    return;
  }
  const std::vector<CrViolation> violations = cr_check(f, model);
  if (!violations.empty()) {
    cert.cr_pair = std::pair{violations.front().j, violations.front().l};
    cert.cr_value = violations.front().value;
    cert.condition = "CR field X f != 0";
  }
}

}  // namespace

std::string to_string(ExtensionStatus s) {
  return s == ExtensionStatus::Extended ? "Extended" : "NotExtendible";
}

ExtensionResult extend_lambda0(const Polynomial& f) {
  if (f.n() != 1) throw InputError("extend_lambda0: requires n = 1");
  require_boundary_data(f, "extend_lambda0");

  ExtensionResult result;
  result.threshold = kExtensionTolerance * (1.0 + f.max_abs_coefficient());
  Polynomial P(1);
  for (const auto& [e, c] : f.terms()) {
    const int j = e.alpha[0];
    const int k = e.beta[0];
    if (j < k) {
      Certificate cert;
      cert.degree = j + k;
      cert.offending = std::pair{j, k};
      cert.condition = "a_jk != 0 with j < k";
      // Offending monomials are orthogonal to the image, so their
      // coefficients are exactly the graded least-squares residual.
      const Polynomial part = homogeneous_part(f, cert.degree);
      for (const auto& [e2, c2] : part.terms()) {
        if (e2.alpha[0] < e2.beta[0]) cert.residual = std::max(cert.residual, std::abs(c2));
      }
      result.status = ExtensionStatus::NotExtendible;
      result.certificate = std::move(cert);
      return result;
    }
    P.add_term(Exponent({j - k}, {0}, k), c);
  }
  result.status = ExtensionStatus::Extended;
  result.residual =
      max_coefficient_distance(substitute_w(P, mul(Polynomial::z(1, 0), Polynomial::zbar(1, 0))), f);
  result.P = std::move(P);
  return result;
}

InvarianceReport check_involution_invariance(const Polynomial& f, double lambda) {
  if (!(lambda > 0.0 && lambda < 0.5)) {
    throw InputError("check_involution_invariance: lambda must lie in (0, 1/2)");
  }
  InvarianceReport r;
  r.deviation = max_coefficient_distance(involution_pullback(f, lambda), f);
  r.invariant = r.deviation <= kInvolutionTolerance;
  return r;
}

ExtensionResult extend_general(const Polynomial& f, const QuadricModel& model, double tol) {
  if (f.n() != model.n) throw InputError("extend_general: f and model dimensions differ");
  require_boundary_data(f, "extend_general");
  if (model.E) throw InputError("extend_general: perturbed models (E present) are not supported");
  const ClassificationReport cls = classify(model);
  if (cls.classification != Classification::Elliptic) {
    throw InputError("extend_general: model is " + to_string(cls.classification) +
                     ", not elliptic");
  }

  const Polynomial Q = quadratic_part(model);
  ExtensionResult result;
  result.threshold = tol * (1.0 + f.max_abs_coefficient());

  Polynomial P(model.n);
  for (int d = 0; d <= f.degree(); ++d) {
    const Polynomial target = homogeneous_part(f, d);
    if (target.is_zero()) {
      result.degrees.push_back({d, 0, 0, 0.0, 0.0, false});
      continue;
    }
    GradedSolution sol = solve_degree(target, Q, d);
    sol.stats.conditioning_warning =
        sol.stats.residual > kConditioningWarning && sol.stats.residual < result.threshold;
    result.degrees.push_back(sol.stats);
    if (sol.stats.residual >= result.threshold) {
      Certificate cert;
      cert.degree = d;
      cert.residual = sol.stats.residual;
      explain_failure(f, model, cert);
      result.status = ExtensionStatus::NotExtendible;
      result.certificate = std::move(cert);
      return result;
    }
    P = add(P, sol.part);
  }
  result.status = ExtensionStatus::Extended;
  result.residual = max_coefficient_distance(substitute_w(P, Q), f);
  result.P = std::move(P);
  return result;
}

Polynomial restrict_to_plane(const Polynomial& P, std::span<const Complex> v) {
  if (static_cast<int>(v.size()) != P.n()) throw InputError("restrict_to_plane: direction has wrong length");
  if (!P.is_holomorphic()) throw InputError("restrict_to_plane: P must be holomorphic");
  double norm2 = 0.0;
  for (const Complex& c : v) norm2 += std::norm(c);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) throw InputError("restrict_to_plane: direction must be a unit vector");
  Eigen::MatrixXcd M(P.n(), 1);
  for (int j = 0; j < P.n(); ++j) M(j, 0) = v[j];
  return linear_substitute(P, M);
}

SliceReport slice_oracle(const Polynomial& f, const QuadricModel& model, const Polynomial& P,
                         std::span<const std::vector<Complex>> directions) {
  const Eigen::Index n = model.n;
  Eigen::MatrixXcd offdiag = model.B;
  offdiag.diagonal().setZero();
  if ((model.A - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > kHermitianTolerance ||
      offdiag.cwiseAbs().maxCoeff() > kHermitianTolerance ||
      model.B.diagonal().imag().cwiseAbs().maxCoeff() > kHermitianTolerance ||
      model.B.diagonal().real().minCoeff() < 0.0) {
    throw InputError("slice_oracle: model must be in Bishop normal form");
  }

  SliceReport report;
  for (const auto& v : directions) {
    if (static_cast<Eigen::Index>(v.size()) != n) throw InputError("slice_oracle: direction has wrong length");
    Complex mu = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) mu += model.B(j, j) * v[j] * v[j];

    // xi = e^{i psi} eta makes the restricted quadric |eta|^2 + lambda' (eta^2 + etabar^2).
    const double lambda_v = std::abs(mu);
    const double psi = lambda_v > 0.0 ? -0.5 * std::arg(mu) : 0.0;
    if (lambda_v >= 0.5) {
      throw NumericalFailure("slice_oracle: restricted model is not elliptic (lambda' = " +
                             std::to_string(lambda_v) + ")");
    }

    Eigen::MatrixXcd vcol(n, 1);
    for (Eigen::Index j = 0; j < n; ++j) vcol(j, 0) = v[j];
    Eigen::MatrixXcd rot(1, 1), unrot(1, 1);
    rot(0, 0) = std::polar(1.0, psi);
    unrot(0, 0) = std::polar(1.0, -psi);

    const Polynomial f_eta = linear_substitute(linear_substitute(f, vcol), rot);
    const double lambdas[] = {lambda_v};
    const ExtensionResult slice = extend_general(f_eta, QuadricModel::bishop(lambdas));

    SliceEntry entry;
    entry.direction = v;
    entry.restricted_lambda = lambda_v;
    entry.extended = slice.status == ExtensionStatus::Extended;
    if (entry.extended) {
      entry.deviation = max_coefficient_distance(linear_substitute(*slice.P, unrot),
                                                 restrict_to_plane(P, v));
    } else {
      entry.deviation = std::numeric_limits<double>::infinity();
    }
    report.max_deviation = std::max(report.max_deviation, entry.deviation);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

double verify_extension(const Polynomial& P, const Polynomial& f, const QuadricModel& model,
                        int sample_count, std::uint64_t seed, double radius) {
  if (!P.is_holomorphic()) throw InputError("verify_extension: P must be holomorphic");
  if (P.n() != model.n || f.n() != model.n) throw InputError("verify_extension: dimension mismatch");
  const double R = radius > 0.0 ? radius : default_delta_z(model);
  const Polynomial rho = q_polynomial(model);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::vector<Complex> z(model.n);
  double worst = 0.0;
  for (int s = 0; s < sample_count; ++s) {
    double norm2 = 0.0;
    for (auto& c : z) {
      c = {gauss(rng), gauss(rng)};
      norm2 += std::norm(c);
    }
    const double scale = R * std::pow(unit(rng), 1.0 / (2.0 * model.n)) / std::sqrt(norm2);
    for (auto& c : z) c *= scale;
    const Complex w = rho.evaluate(z);
    worst = std::max(worst, std::abs(P.evaluate(z, w) - f.evaluate(z)));
  }
  return worst;
}

}  // namespace crext
