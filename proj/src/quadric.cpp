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

#include "crext/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "crext/errors.hpp"

namespace crext {

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& A) { return 0.5 * (A + A.adjoint()); }

// Smallest eigenvalue of the Hermitian part of A.
double min_eigenvalue(const Eigen::MatrixXcd& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Orthonormalize columns in order (modified Gram-Schmidt, two passes).
void orthonormalize(Eigen::MatrixXcd& U) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < U.cols(); ++j) {
      for (Eigen::Index i = 0; i < j; ++i) {
        U.col(j) -= U.col(i).dot(U.col(j)) * U.col(i);
      }
      U.col(j).normalize();
    }
  }
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Degenerate: return "degenerate";
    case Classification::Elliptic: return "elliptic";
    case Classification::Parabolic: return "parabolic";
    case Classification::Hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

QuadricModel QuadricModel::create(Eigen::MatrixXcd A, Eigen::MatrixXcd B,
                                  std::optional<Polynomial> E) {
  const auto n = A.rows();
  if (n < 1 || A.cols() != n) throw InputError("model: A must be a nonempty square matrix");
  if (B.rows() != n || B.cols() != n) throw InputError("model: B must have the same shape as A");
  if (max_abs(A - A.adjoint()) > kHermitianTolerance) throw InputError("model: A is not Hermitian");
  if (max_abs(B - B.transpose()) > kHermitianTolerance) throw InputError("model: B is not symmetric");
  if (E) {
    if (E->n() != n) throw InputError("model: E has the wrong dimension");
    if (E->has_w()) throw InputError("model: E must not contain w");
    for (const auto& [e, c] : E->terms()) {
      if (e.total_degree() < 3) throw InputError("model: E has a term of degree < 3");
    }
    if (max_coefficient_distance(conjugate(*E), *E) > kHermitianTolerance) {
      throw InputError("model: E is not real-valued");
    }
    if (E->is_zero()) E.reset();
  }
  QuadricModel m;
  m.n = static_cast<int>(n);
  m.A = std::move(A);
  m.B = std::move(B);
  m.E = std::move(E);
  return m;
}

QuadricModel QuadricModel::bishop(std::span<const double> lambdas, std::optional<Polynomial> E) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) B(j, j) = lambdas[j];
  return create(Eigen::MatrixXcd::Identity(n, n), B, std::move(E));
}

NondegeneracyReport check_nondegenerate(const QuadricModel& model) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(model.A);
  const auto& s = svd.singularValues();
  NondegeneracyReport r;
  r.largest_singular_value = s.maxCoeff();
  r.smallest_singular_value = s.minCoeff();
  r.nondegenerate =
      r.smallest_singular_value > 1e-10 * std::max(r.largest_singular_value, 1.0);
  return r;
}

TakagiFactorization takagi(const Eigen::MatrixXcd& S) {
  const Eigen::Index n = S.rows();
  const Eigen::MatrixXd X = S.real();
  const Eigen::MatrixXd Y = S.imag();

  // S u = sigma conj(u) with u = a + ib  <=>  K (a; b) = sigma (a; b).
  // The spectrum of K is symmetric: (a; b) -> (-b; a) maps sigma to -sigma.
  Eigen::MatrixXd K(2 * n, 2 * n);
  K << X, -Y, -Y, -X;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  const Eigen::VectorXd& ev = es.eigenvalues();

  const double top = std::max(ev(2 * n - 1), 0.0);
  const double zero_cut = 1e-9 * std::max(1.0, top);

  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n, n);
  Eigen::Index positive = 0;
  for (Eigen::Index i = 2 * n - 1; i >= n; --i) {
    if (ev(i) <= zero_cut) break;
    const Eigen::VectorXd v = es.eigenvectors().col(i);
    U.col(positive++) = v.head(n).cast<std::complex<double>>() +
                        std::complex<double>(0, 1) * v.tail(n).cast<std::complex<double>>();
  }

  // Those vectors solve S v = sigma conj(v); the Takagi columns are conj(v).
  U = U.conjugate().eval();

  // The (near) null space of S is J-invariant in the real picture, so its real
  // eigenvectors do not give an orthonormal complex basis. Use the orthogonal
  // complement of the positive part instead; S annihilates it.
  if (positive < n) {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);
    if (positive > 0) {
      const auto Up = U.leftCols(positive);
      P -= Up * Up.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ps(P);
    U.rightCols(n - positive) = ps.eigenvectors().rightCols(n - positive);
  }
  orthonormalize(U);

  // Phase alignment: make each diagonal entry of U* S conj(U) real and >= 0.
  Eigen::MatrixXcd D = U.adjoint() * S * U.conjugate();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double arg = std::arg(D(j, j));
    if (std::abs(D(j, j)) > 0.0) U.col(j) *= std::polar(1.0, 0.5 * arg);
  }
  D = U.adjoint() * S * U.conjugate();

  TakagiFactorization t;
  t.sigma.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) t.sigma(j) = std::max(D(j, j).real(), 0.0);

  // Descending order.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return t.sigma(a) > t.sigma(b); });
  t.U.resize(n, n);
  Eigen::VectorXd sorted(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    t.U.col(j) = U.col(order[j]);
    sorted(j) = t.sigma(order[j]);
  }
  t.sigma = sorted;
  t.residual = max_abs(t.U * t.sigma.cast<std::complex<double>>().asDiagonal() * t.U.transpose() - S);
  return t;
}

BishopNormalForm normalize(const QuadricModel& model) {
  const Eigen::Index n = model.n;
  const double emin = min_eigenvalue(model.A);
  if (emin <= kPositiveDefiniteTolerance) {
    throw NotElliptic("normalize: A is not positive definite (eigenvalue " +
                          std::to_string(emin) + ")",
                      emin);
  }

  // A = L L*, T0 = L^{-*} gives T0* A T0 = I.
  Eigen::LLT<Eigen::MatrixXcd> llt(hermitian_part(model.A));
  if (llt.info() != Eigen::Success) throw NumericalFailure("normalize: Cholesky factorization failed");
  const Eigen::MatrixXcd Linv =
      llt.matrixL().solve(Eigen::MatrixXcd::Identity(n, n));
  const Eigen::MatrixXcd T0 = Linv.adjoint();

  Eigen::MatrixXcd Bp = T0.transpose() * model.B * T0;
  Bp = 0.5 * (Bp + Bp.transpose()).eval();

  const TakagiFactorization tk = takagi(Bp);

  // Ascending lambdas: reverse the descending Takagi order.
  Eigen::MatrixXcd U(n, n);
  BishopNormalForm nf;
  nf.lambdas.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    U.col(j) = tk.U.col(n - 1 - j);
    nf.lambdas[j] = tk.sigma(n - 1 - j);
  }
  nf.T = T0 * U.conjugate();

  Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) diag(j, j) = nf.lambdas[j];
  nf.hermitian_residual = max_abs(nf.T.adjoint() * model.A * nf.T - Eigen::MatrixXcd::Identity(n, n));
  nf.congruence_residual = max_abs(nf.T.transpose() * model.B * nf.T - diag);
  if (nf.hermitian_residual > kNormalFormFailure || nf.congruence_residual > kNormalFormFailure) {
    throw NumericalFailure("normalize: a-posteriori residual too large (" +
                           std::to_string(std::max(nf.hermitian_residual, nf.congruence_residual)) +
                           ")");
  }

  const double top = nf.lambdas.back();
  if (std::abs(top - 0.5) <= kPositiveDefiniteTolerance) {
    nf.classification = Classification::Parabolic;
  } else if (top < 0.5) {
    nf.classification = Classification::Elliptic;
  } else {
    nf.classification = Classification::Hyperbolic;
  }
  return nf;
}

ClassificationReport classify(const QuadricModel& model) {
  ClassificationReport r;
  r.nondegeneracy = check_nondegenerate(model);
  if (!r.nondegeneracy.nondegenerate) {
    r.classification = Classification::Degenerate;
    r.note = "A is singular";
    return r;
  }
  if (min_eigenvalue(model.A) <= kPositiveDefiniteTolerance) {
    r.classification = Classification::Hyperbolic;
    r.note = "A is nonsingular but not positive definite";
    return r;
  }
  BishopNormalForm nf = normalize(model);
  r.classification = nf.classification;
  r.lambdas = nf.lambdas;
  r.normal_form = std::move(nf);
  return r;
}

Eigen::MatrixXd real_quadratic_form(const QuadricModel& model) {
  const Eigen::Index n = model.n;
  auto q = [&](const Eigen::VectorXd& v) {
    const Eigen::VectorXcd z = v.head(n).cast<std::complex<double>>() +
                               std::complex<double>(0, 1) * v.tail(n).cast<std::complex<double>>();
    const std::complex<double> herm = z.dot(model.A * z);  // z* A z
    const std::complex<double> sym = (z.transpose() * model.B * z)(0, 0);
    return herm.real() + 2.0 * sym.real();
  };
  Eigen::MatrixXd S(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    const Eigen::VectorXd ei = Eigen::VectorXd::Unit(2 * n, i);
    S(i, i) = q(ei);
    for (Eigen::Index j = 0; j < i; ++j) {
      const Eigen::VectorXd ej = Eigen::VectorXd::Unit(2 * n, j);
      S(i, j) = S(j, i) = 0.5 * (q(ei + ej) - q(ei) - q(ej));
    }
  }
  return S;
}

bool ellipticity_oracle(const QuadricModel& model) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real_quadratic_form(model),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() > kPositiveDefiniteTolerance;
}

Polynomial quadratic_part(const QuadricModel& model) {
  const int n = model.n;
  Polynomial q(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Exponent herm(n);
      herm.beta[j] += 1;
      herm.alpha[k] += 1;
      q.add_term(herm, model.A(j, k));

      Exponent hol(n);
      hol.alpha[j] += 1;
      hol.alpha[k] += 1;
      q.add_term(hol, model.B(j, k));

      Exponent antihol(n);
      antihol.beta[j] += 1;
      antihol.beta[k] += 1;
      q.add_term(antihol, std::conj(model.B(j, k)));
    }
  }
  return q;
}

Polynomial q_polynomial(const QuadricModel& model) {
  Polynomial q = quadratic_part(model);
  return model.E ? add(q, *model.E) : q;
}

double default_delta_z(const QuadricModel& model) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(model.A), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (lo <= 0.0 || hi <= 0.0) return 0.5;
  return 0.5 * std::sqrt(lo / hi);
}

}  // namespace crext
