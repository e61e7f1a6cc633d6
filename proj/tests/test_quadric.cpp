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

#include <doctest.h>

#include <algorithm>

#include "crext/errors.hpp"
#include "crext/quadric.hpp"
#include "test_support.hpp"

using namespace crext;
using crext::testing::Rng;

namespace {

QuadricModel scalar_model(Complex a, Complex b) {
  Eigen::MatrixXcd A(1, 1), B(1, 1);
  A(0, 0) = a;
  B(0, 0) = b;
  return QuadricModel::create(A, B);
}

}  // namespace

TEST_CASE("model validation") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
  A(0, 1) = Complex(0, 1);  // not Hermitian without the conjugate partner
  CHECK_THROWS_AS(QuadricModel::create(A, B), InputError);
  A(1, 0) = Complex(0, -1);
  CHECK_NOTHROW(QuadricModel::create(A, B));
  B(0, 1) = 1.0;
  CHECK_THROWS_AS(QuadricModel::create(A, B), InputError);

  // E must be real-valued and of order >= 3.
  const Polynomial z = Polynomial::z(1, 0), zb = Polynomial::zbar(1, 0);
  const double l0[] = {0.0};
  CHECK_THROWS_AS(QuadricModel::bishop(l0, pow(z, 3)), InputError);
  CHECK_THROWS_AS(QuadricModel::bishop(l0, z * zb), InputError);
  CHECK_NOTHROW(QuadricModel::bishop(l0, pow(z * zb, 2)));
}

TEST_CASE("check_nondegenerate") {
  const double l[] = {0.0};
  CHECK(check_nondegenerate(QuadricModel::bishop(l)).nondegenerate);

  const QuadricModel zero = QuadricModel::create(Eigen::MatrixXcd::Zero(1, 1), Eigen::MatrixXcd::Zero(1, 1));
  CHECK_FALSE(check_nondegenerate(zero).nondegenerate);

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = 1e-13;
  const NondegeneracyReport r = check_nondegenerate(QuadricModel::create(A, Eigen::MatrixXcd::Zero(2, 2)));
  CHECK_FALSE(r.nondegenerate);
  CHECK(r.smallest_singular_value == doctest::Approx(1e-13).epsilon(1e-6));
}

TEST_CASE("normalize: examples") {
  SUBCASE("already normal") {
    const double l[] = {0.3, 0.1};
    const BishopNormalForm nf = normalize(QuadricModel::bishop(l));
    REQUIRE(nf.lambdas.size() == 2);
    CHECK(nf.lambdas[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(nf.lambdas[1] == doctest::Approx(0.3).epsilon(1e-14));
    // T is a phase-adjusted permutation.
    CHECK(std::abs(std::abs(nf.T(1, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(nf.T(0, 1)) - 1.0) < 1e-12);
  }
  SUBCASE("scalar") {
    const BishopNormalForm nf = normalize(scalar_model(4.0, 1.0));
    CHECK(std::abs(nf.T(0, 0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(nf.lambdas[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(nf.hermitian_residual < 1e-15);
    CHECK(nf.congruence_residual < 1e-15);
  }
  SUBCASE("not positive definite") {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2, 2);
    A(1, 1) = -1.0;
    const QuadricModel m = QuadricModel::create(A, Eigen::MatrixXcd::Zero(2, 2));
    CHECK_THROWS_AS(normalize(m), NotElliptic);
    try {
      normalize(m);
    } catch (const NotElliptic& e) {
      CHECK(e.eigenvalue() == doctest::Approx(-1.0));
    }
  }
}

TEST_CASE("normalize: residual invariants on random models") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const QuadricModel m = QuadricModel::create(crext::testing::random_positive_definite(rng, n),
                                                crext::testing::random_symmetric(rng, n));
    const BishopNormalForm nf = normalize(m);
    CHECK(nf.hermitian_residual < kNormalFormResidual);
    CHECK(nf.congruence_residual < kNormalFormResidual);
    CHECK(std::is_sorted(nf.lambdas.begin(), nf.lambdas.end()));
    CHECK(nf.lambdas.front() >= 0.0);
  }
}

TEST_CASE("normalize: repeated and zero Takagi values") {
  // B with a repeated nonzero value and a double zero.
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(4, 4);
  B(0, 0) = 0.2;
  B(1, 1) = Complex(0, 0.2);
  Rng rng(3);
  const Eigen::MatrixXcd U = crext::testing::random_unitary(rng, 4);
  const QuadricModel m = QuadricModel::create(Eigen::MatrixXcd::Identity(4, 4), U.transpose() * B * U);
  const BishopNormalForm nf = normalize(m);
  CHECK(nf.hermitian_residual < kNormalFormResidual);
  CHECK(nf.congruence_residual < kNormalFormResidual);
  CHECK(nf.lambdas[0] < 1e-12);
  CHECK(nf.lambdas[1] < 1e-12);
  CHECK(nf.lambdas[2] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(nf.lambdas[3] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("Bishop invariants are unchanged by unitary changes of variables") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    const Eigen::MatrixXcd A = crext::testing::random_positive_definite(rng, n);
    const Eigen::MatrixXcd B = crext::testing::random_symmetric(rng, n);
    const Eigen::MatrixXcd U = crext::testing::random_unitary(rng, n);
    Eigen::MatrixXcd A2 = U.adjoint() * A * U;
    A2 = 0.5 * (A2 + A2.adjoint()).eval();
    Eigen::MatrixXcd B2 = U.transpose() * B * U;
    B2 = 0.5 * (B2 + B2.transpose()).eval();
    const auto l1 = normalize(QuadricModel::create(A, B)).lambdas;
    const auto l2 = normalize(QuadricModel::create(A2, B2)).lambdas;
    for (int j = 0; j < n; ++j) CHECK(std::abs(l1[j] - l2[j]) < 1e-9);
  }
}

TEST_CASE("classify: examples") {
  CHECK(classify(scalar_model(1.0, 0.0)).classification == Classification::Elliptic);
  CHECK(classify(scalar_model(1.0, 0.0)).lambdas.at(0) == 0.0);
  CHECK(classify(scalar_model(1.0, 0.6)).classification == Classification::Hyperbolic);
  CHECK(classify(scalar_model(1.0, 0.5)).classification == Classification::Parabolic);
  CHECK(classify(scalar_model(0.0, 0.3)).classification == Classification::Degenerate);

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2, 2);
  A(1, 1) = -2.0;
  const ClassificationReport r = classify(QuadricModel::create(A, Eigen::MatrixXcd::Zero(2, 2)));
  CHECK(r.classification == Classification::Hyperbolic);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("ellipticity_oracle") {
  const double l0[] = {0.0, 0.0};
  CHECK(ellipticity_oracle(QuadricModel::bishop(l0)));
  const Eigen::MatrixXd S = real_quadratic_form(QuadricModel::bishop(l0));
  CHECK((S - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);

  // (1 + 2 lambda) x^2 + (1 - 2 lambda) y^2 with lambda = 0.6.
  const Eigen::MatrixXd S6 = real_quadratic_form(scalar_model(1.0, 0.6));
  CHECK(S6(0, 0) == doctest::Approx(2.2));
  CHECK(S6(1, 1) == doctest::Approx(-0.2));
  CHECK_FALSE(ellipticity_oracle(scalar_model(1.0, 0.6)));

  Rng rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    // Shrink B now and then so both verdicts occur.
    const double s = crext::testing::uniform(rng, 0.05, 1.0);
    const QuadricModel m = QuadricModel::create(crext::testing::random_positive_definite(rng, n),
                                                s * crext::testing::random_symmetric(rng, n));
    CHECK(ellipticity_oracle(m) == (classify(m).classification == Classification::Elliptic));
  }
}

TEST_CASE("q_polynomial") {
  const Polynomial z = Polynomial::z(1, 0), zb = Polynomial::zbar(1, 0);
  CHECK(max_coefficient_distance(q_polynomial(scalar_model(1.0, 0.0)), z * zb) == 0.0);

  const double l0[] = {0.0, 0.0};
  const Polynomial q2 = q_polynomial(QuadricModel::bishop(l0));
  const Polynomial expect =
      Polynomial::z(2, 0) * Polynomial::zbar(2, 0) + Polynomial::z(2, 1) * Polynomial::zbar(2, 1);
  CHECK(max_coefficient_distance(q2, expect) == 0.0);

  const Polynomial q3 = q_polynomial(scalar_model(1.0, 0.3));
  CHECK(max_coefficient_distance(q3, z * zb + scale(pow(z, 2) + pow(zb, 2), 0.3)) < 1e-16);

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const QuadricModel m = QuadricModel::create(crext::testing::random_positive_definite(rng, n),
                                                crext::testing::random_symmetric(rng, n));
    const Polynomial q = q_polynomial(m);
    CHECK(max_coefficient_distance(conjugate(q), q) < 1e-15);
    // Agrees with the real quadratic form.
    const auto pt = crext::testing::random_point(rng, n);
    Eigen::VectorXd v(2 * n);
    for (int j = 0; j < n; ++j) {
      v(j) = pt[j].real();
      v(n + j) = pt[j].imag();
    }
    CHECK(std::abs(q.evaluate(pt).real() - v.dot(real_quadratic_form(m) * v)) < 1e-12);
  }
}

TEST_CASE("normal form transforms Q into the Bishop quadric") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + trial % 3;
    const QuadricModel m = QuadricModel::create(crext::testing::random_positive_definite(rng, n),
                                                0.3 * crext::testing::random_symmetric(rng, n));
    const BishopNormalForm nf = normalize(m);
    const Polynomial transformed = linear_substitute(q_polynomial(m), nf.T);
    const QuadricModel target = QuadricModel::bishop(nf.lambdas);
    CHECK(max_coefficient_distance(transformed, q_polynomial(target)) < 1e-10);
  }
}

TEST_CASE("default_delta_z") {
  const double l[] = {0.1};
  CHECK(default_delta_z(QuadricModel::bishop(l)) == doctest::Approx(0.5));
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2, 2);
  A(1, 1) = 4.0;
  CHECK(default_delta_z(QuadricModel::create(A, Eigen::MatrixXcd::Zero(2, 2))) == doctest::Approx(0.25));
}
