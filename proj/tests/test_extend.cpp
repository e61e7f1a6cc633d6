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

#include <cmath>

#include "crext/errors.hpp"
#include "crext/extend.hpp"
#include "crext/moments.hpp"
#include "test_support.hpp"

using namespace crext;
using crext::testing::Rng;

namespace {

const Polynomial z1 = Polynomial::z(1, 0);
const Polynomial zb1 = Polynomial::zbar(1, 0);
const Polynomial w1 = Polynomial::w(1);

QuadricModel bishop1(double lambda) {
  const double l[] = {lambda};
  return QuadricModel::bishop(l);
}

QuadricModel random_elliptic(Rng& rng, int n) {
  // B scaled so that the largest Bishop invariant stays below 0.4.
  const Eigen::MatrixXcd A = crext::testing::random_positive_definite(rng, n);
  Eigen::MatrixXcd B = crext::testing::random_symmetric(rng, n);
  const QuadricModel probe = QuadricModel::create(A, B);
  const double top = normalize(probe).lambdas.back();
  const double target = crext::testing::uniform(rng, 0.0, 0.4);
  if (top > 0.0) B *= target / top;
  return QuadricModel::create(A, B);
}

}  // namespace

TEST_CASE("extend_lambda0: examples") {
  const ExtensionResult r1 = extend_lambda0(z1 * zb1);
  REQUIRE(r1.status == ExtensionStatus::Extended);
  CHECK(max_coefficient_distance(*r1.P, w1) == 0.0);

  const ExtensionResult r2 = extend_lambda0(zb1);
  CHECK(r2.status == ExtensionStatus::NotExtendible);
  REQUIRE(r2.certificate);
  CHECK(r2.certificate->offending == std::pair{0, 1});
  CHECK(r2.certificate->residual == 1.0);

  const ExtensionResult r3 = extend_lambda0(pow(z1, 3) * zb1 + scale(z1, 2.0));
  REQUIRE(r3.status == ExtensionStatus::Extended);
  CHECK(max_coefficient_distance(*r3.P, pow(z1, 2) * w1 + scale(z1, 2.0)) == 0.0);
  CHECK(r3.residual == 0.0);

  CHECK_THROWS_AS(extend_lambda0(w1), InputError);
}

TEST_CASE("check_involution_invariance") {
  const double lambda = 0.25;
  const Polynomial rho = z1 * zb1 + scale(pow(z1, 2) + pow(zb1, 2), lambda);
  CHECK(check_involution_invariance(rho, lambda).invariant);
  CHECK(check_involution_invariance(z1, lambda).invariant);
  const InvarianceReport bad = check_involution_invariance(pow(z1, 2) + pow(zb1, 2), lambda);
  CHECK_FALSE(bad.invariant);
  CHECK(bad.deviation > 1.0);
  CHECK_THROWS_AS(check_involution_invariance(z1, 0.5), InputError);
}

TEST_CASE("extend_general: n = 1 examples") {
  const double lambda = 0.25;
  const QuadricModel m = bishop1(lambda);
  const Polynomial rho = q_polynomial(m);

  const ExtensionResult a = extend_general(rho, m);
  REQUIRE(a.status == ExtensionStatus::Extended);
  CHECK(max_coefficient_distance(*a.P, w1) < 1e-12);

  const ExtensionResult b = extend_general(z1, m);
  REQUIRE(b.status == ExtensionStatus::Extended);
  CHECK(max_coefficient_distance(*b.P, z1) < 1e-12);

  const ExtensionResult c = extend_general(pow(z1, 2) + pow(zb1, 2), m);
  CHECK(c.status == ExtensionStatus::NotExtendible);
  REQUIRE(c.certificate);
  CHECK(c.certificate->degree == 2);
  CHECK(c.certificate->involution_deviation.has_value());

  const ExtensionResult d = extend_general(zb1, bishop1(0.0));
  REQUIRE(d.certificate);
  CHECK(d.certificate->offending == std::pair{0, 1});
}

TEST_CASE("extend_general: input validation") {
  CHECK_THROWS_AS(extend_general(z1, bishop1(0.6)), InputError);
  CHECK_THROWS_AS(extend_general(z1 + w1, bishop1(0.1)), InputError);
  const double l[] = {0.1};
  const QuadricModel perturbed = QuadricModel::bishop(l, pow(z1 * zb1, 2));
  CHECK_THROWS_AS(extend_general(z1, perturbed), InputError);
  const double l2[] = {0.1, 0.2};
  CHECK_THROWS_AS(extend_general(z1, QuadricModel::bishop(l2)), InputError);
}

TEST_CASE("extend_general: round trip, degree and linearity on random models") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const QuadricModel m = random_elliptic(rng, n);
    const Polynomial Q = quadratic_part(m);
    const Polynomial P = crext::testing::random_holomorphic(rng, n, 6, 6);
    const Polynomial P2 = crext::testing::random_holomorphic(rng, n, 6, 6);
    const Polynomial f = substitute_w(P, Q);
    const Polynomial g = substitute_w(P2, Q);

    const ExtensionResult r = extend_general(f, m);
    REQUIRE(r.status == ExtensionStatus::Extended);
    CHECK(max_coefficient_distance(*r.P, P) < 1e-9 * (1 + P.max_abs_coefficient()));
    CHECK(r.P->degree(Grading::Weighted) <= f.degree());
    CHECK(r.residual < 1e-10);

    const ExtensionResult rg = extend_general(g, m);
    const ExtensionResult rs = extend_general(add(f, scale(g, Complex(0.5, -2.0))), m);
    REQUIRE(rg.status == ExtensionStatus::Extended);
    REQUIRE(rs.status == ExtensionStatus::Extended);
    CHECK(max_coefficient_distance(*rs.P, add(*r.P, scale(*rg.P, Complex(0.5, -2.0)))) < 1e-9);
  }
}

TEST_CASE("extend_general agrees with the monomial map when lambda = 0") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial P = crext::testing::random_holomorphic(rng, 1, 8, 6);
    const Polynomial f = substitute_w(P, z1 * zb1);
    const ExtensionResult a = extend_lambda0(f);
    const ExtensionResult b = extend_general(f, bishop1(0.0));
    REQUIRE(a.status == ExtensionStatus::Extended);
    REQUIRE(b.status == ExtensionStatus::Extended);
    CHECK(max_coefficient_distance(*a.P, *b.P) < 1e-12);

    const Polynomial g = add(f, scale(pow(z1, trial % 3) * pow(zb1, trial % 3 + 1), 0.7));
    CHECK(extend_lambda0(g).status == ExtensionStatus::NotExtendible);
    CHECK(extend_general(g, bishop1(0.0)).status == ExtensionStatus::NotExtendible);
  }
}

TEST_CASE("structural filter in n >= 2") {
  Rng rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    const QuadricModel m = random_elliptic(rng, n);
    const Polynomial Q = quadratic_part(m);
    const Polynomial f = substitute_w(crext::testing::random_holomorphic(rng, n, 5, 5), Q);
    CHECK(cr_check(f, m).empty());

    const Polynomial generic = crext::testing::random_polynomial(rng, n, 4, 8);
    const ExtensionResult r = extend_general(generic, m);
    const bool cr = cr_check(generic, m).empty();
    CHECK((r.status == ExtensionStatus::Extended) == cr);
    if (r.status == ExtensionStatus::NotExtendible) {
      REQUIRE(r.certificate);
      CHECK(r.certificate->cr_pair.has_value());
      CHECK(r.certificate->cr_value.has_value());
    }
  }
}

TEST_CASE("restrict_to_plane") {
  const Polynomial P = Polynomial::z(2, 0) * Polynomial::z(2, 1);
  const Complex v[] = {M_SQRT1_2, M_SQRT1_2};
  CHECK(max_coefficient_distance(restrict_to_plane(P, v), scale(pow(z1, 2), 0.5)) < 1e-15);
  const Complex bad[] = {1.0, 1.0};
  CHECK_THROWS_AS(restrict_to_plane(P, bad), InputError);
}

TEST_CASE("slice_oracle") {
  // lambda = (0.1, 0.3) along e_2 restricts to lambda' = 0.3.
  const double l[] = {0.1, 0.3};
  const QuadricModel m = QuadricModel::bishop(l);
  const Polynomial Q = quadratic_part(m);
  Rng rng(53);
  const Polynomial P = crext::testing::random_holomorphic(rng, 2, 6, 8);
  const Polynomial f = substitute_w(P, Q);
  const ExtensionResult r = extend_general(f, m);
  REQUIRE(r.status == ExtensionStatus::Extended);

  std::vector<std::vector<Complex>> dirs{{0.0, 1.0}};
  for (int k = 0; k < 5; ++k) dirs.push_back(crext::testing::random_unit_vector(rng, 2));
  const SliceReport rep = slice_oracle(f, m, *r.P, dirs);
  REQUIRE(rep.entries.size() == dirs.size());
  CHECK(rep.entries[0].restricted_lambda == doctest::Approx(0.3));
  for (const SliceEntry& e : rep.entries) CHECK(e.extended);
  CHECK(rep.max_deviation < 1e-9);

  CHECK_THROWS_AS(slice_oracle(f, random_elliptic(rng, 2), *r.P, dirs), InputError);
}

TEST_CASE("verify_extension") {
  Rng rng(59);
  const QuadricModel m = random_elliptic(rng, 2);
  const Polynomial P = crext::testing::random_holomorphic(rng, 2, 6, 6);
  const Polynomial f = substitute_w(P, quadratic_part(m));
  CHECK(verify_extension(P, f, m, 100, 1) < 1e-12);
  CHECK(verify_extension(P, add(f, Polynomial::zbar(2, 0)), m, 100, 1) > 1e-3);
  CHECK(verify_extension(P, f, m, 50, 7) == verify_extension(P, f, m, 50, 7));
}
