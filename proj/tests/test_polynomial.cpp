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

#include "crext/errors.hpp"
#include "crext/polynomial.hpp"
#include "test_support.hpp"

using namespace crext;
using crext::testing::Rng;

namespace {

const Polynomial z1 = Polynomial::z(1, 0);
const Polynomial zb1 = Polynomial::zbar(1, 0);
const Polynomial w1 = Polynomial::w(1);

Complex at(const Polynomial& p, Complex z, Complex w = 0.0) { return p.evaluate({&z, 1}, w); }

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("add: inverse and disjoint supports") {
  CHECK((z1 + (-z1)).is_zero());
  const Polynomial s = z1 * zb1 + w1;
  CHECK(s.size() == 2);
  CHECK(s.coefficient(Exponent({1}, {1}, 0)) == Complex(1.0));
  CHECK(s.coefficient(Exponent({0}, {0}, 1)) == Complex(1.0));
  CHECK_THROWS_AS(add(z1, Polynomial::z(2, 0)), InputError);
}

TEST_CASE("mul: monomials and binomial square") {
  const Polynomial p = z1 * zb1;
  CHECK(p.size() == 1);
  CHECK(p.coefficient(Exponent({1}, {1}, 0)) == Complex(1.0));

  const Polynomial sq = pow(z1 + zb1, 2);
  CHECK(sq.size() == 3);
  CHECK(sq.coefficient(Exponent({2}, {0}, 0)) == Complex(1.0));
  CHECK(sq.coefficient(Exponent({1}, {1}, 0)) == Complex(2.0));
  CHECK(sq.coefficient(Exponent({0}, {2}, 0)) == Complex(1.0));
  CHECK_THROWS_AS(mul(z1, Polynomial::z(3, 1)), InputError);
}

TEST_CASE("ring operations agree with pointwise evaluation") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = crext::testing::uniform_int(rng, 1, 3);
    const Polynomial p = crext::testing::random_polynomial(rng, n, 4, 6, true);
    const Polynomial q = crext::testing::random_polynomial(rng, n, 4, 6, true);
    const Polynomial r = crext::testing::random_polynomial(rng, n, 3, 4, true);
    for (int k = 0; k < 20; ++k) {
      const auto z = crext::testing::random_point(rng, n);
      const Complex w = crext::testing::random_complex(rng);
      const Complex P = p.evaluate(z, w), Q = q.evaluate(z, w), R = r.evaluate(z, w);
      CHECK(rel_err(add(p, q).evaluate(z, w), P + Q) < 1e-12);
      CHECK(rel_err(mul(p, q).evaluate(z, w), P * Q) < 1e-12);
      CHECK(rel_err(mul(q, p).evaluate(z, w), P * Q) < 1e-12);
      CHECK(rel_err(mul(mul(p, q), r).evaluate(z, w), mul(p, mul(q, r)).evaluate(z, w)) < 1e-12);
      CHECK(rel_err(mul(p, add(q, r)).evaluate(z, w), P * Q + P * R) < 1e-12);
    }
  }
}

TEST_CASE("zero threshold prunes cancellation residue") {
  Polynomial p(1);
  p.add_term(Exponent({1}, {0}, 0), 1.0);
  p.add_term(Exponent({1}, {0}, 0), -1.0 + 1e-15);
  CHECK(p.is_zero());
}

TEST_CASE("conjugate") {
  const Polynomial c = conjugate(Polynomial::z(2, 0));
  CHECK(c.coefficient(Exponent({0, 0}, {1, 0}, 0)) == Complex(1.0));

  Polynomial p(1);
  p.add_term(Exponent({1}, {2}, 0), Complex(2, 1));
  const Polynomial pc = conjugate(p);
  CHECK(pc.size() == 1);
  CHECK(pc.coefficient(Exponent({2}, {1}, 0)) == Complex(2, -1));

  CHECK_THROWS_AS(conjugate(w1), InputError);

  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial g = crext::testing::random_polynomial(rng, 2, 4, 6);
    const Polynomial real_valued = add(g, conjugate(g));
    CHECK(max_coefficient_distance(conjugate(real_valued), real_valued) == 0.0);
    CHECK(max_coefficient_distance(conjugate(conjugate(g)), g) == 0.0);
    for (int k = 0; k < 20; ++k) {
      const auto z = crext::testing::random_point(rng, 2);
      CHECK(std::abs(real_valued.evaluate(z).imag()) < 1e-12 * (1 + std::abs(real_valued.evaluate(z))));
    }
  }
}

TEST_CASE("substitute_w") {
  const Polynomial Q = z1 * zb1;
  CHECK(max_coefficient_distance(substitute_w(w1, Q), Q) == 0.0);

  const Polynomial p = z1 * pow(w1, 2);
  const Polynomial s = substitute_w(p, Q);
  CHECK(s.size() == 1);
  CHECK(s.coefficient(Exponent({3}, {2}, 0)) == Complex(1.0));

  CHECK_THROWS_AS(substitute_w(w1, w1), InputError);

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = crext::testing::uniform_int(rng, 1, 3);
    const Polynomial P = crext::testing::random_polynomial(rng, n, 4, 6, true);
    const Polynomial q = crext::testing::random_polynomial(rng, n, 2, 4);
    const Polynomial composed = substitute_w(P, q);
    for (int k = 0; k < 20; ++k) {
      const auto z = crext::testing::random_point(rng, n);
      CHECK(rel_err(composed.evaluate(z), P.evaluate(z, q.evaluate(z))) < 1e-12);
    }
  }
}

TEST_CASE("homogeneous_part") {
  const Polynomial p = z1 + z1 * zb1;
  const Polynomial h = homogeneous_part(p, 2);
  CHECK(max_coefficient_distance(h, z1 * zb1) == 0.0);

  const Polynomial hol = pow(z1, 2) + w1 + pow(z1, 3);
  CHECK(max_coefficient_distance(homogeneous_part(hol, 2, Grading::Weighted), pow(z1, 2) + w1) == 0.0);

  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial q = crext::testing::random_polynomial(rng, 2, 6, 10, true);
    for (Grading g : {Grading::Ordinary, Grading::Weighted}) {
      Polynomial sum(2);
      for (int d = 0; d <= q.degree(g); ++d) sum = add(sum, homogeneous_part(q, d, g));
      CHECK(max_coefficient_distance(sum, q) == 0.0);
    }
  }
}

TEST_CASE("involution_pullback") {
  const double lambda = 0.3;
  CHECK(max_coefficient_distance(involution_pullback(z1, lambda), z1) == 0.0);

  const Polynomial rho = z1 * zb1 + scale(pow(z1, 2) + pow(zb1, 2), lambda);
  CHECK(max_coefficient_distance(involution_pullback(rho, lambda), rho) < 1e-14);

  CHECK_THROWS_AS(involution_pullback(z1, 0.0), InputError);
  CHECK_THROWS_AS(involution_pullback(Polynomial::z(2, 0), 0.2), InputError);

  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double lam = crext::testing::uniform(rng, 0.05, 0.49);
    const Polynomial p = crext::testing::random_polynomial(rng, 1, 5, 6);
    const Polynomial twice = involution_pullback(involution_pullback(p, lam), lam);
    CHECK(max_coefficient_distance(twice, p) < 1e-9 * (1 + p.max_abs_coefficient()));
  }
}

TEST_CASE("partial_derivative") {
  const Polynomial d = partial_derivative(z1 * pow(zb1, 2), Symbol::zbar(0));
  CHECK(max_coefficient_distance(d, scale(z1 * zb1, 2.0)) == 0.0);

  const Polynomial dw = partial_derivative(z1 * pow(w1, 2), Symbol::w());
  CHECK(max_coefficient_distance(dw, scale(z1 * w1, 2.0)) == 0.0);

  // Wirtinger derivatives against central differences in x and y.
  Rng rng(19);
  const double h = 1e-5;
  const Complex i(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    const Polynomial p = crext::testing::random_polynomial(rng, 1, 4, 6, true);
    const Complex z = crext::testing::random_complex(rng);
    const Complex w = crext::testing::random_complex(rng);
    const Complex fx = (at(p, z + h, w) - at(p, z - h, w)) / (2 * h);
    const Complex fy = (at(p, z + i * h, w) - at(p, z - i * h, w)) / (2 * h);
    const Complex fw = (at(p, z, w + h) - at(p, z, w - h)) / (2 * h);
    CHECK(std::abs(at(partial_derivative(p, Symbol::z(0)), z, w) - 0.5 * (fx - i * fy)) < 1e-6);
    CHECK(std::abs(at(partial_derivative(p, Symbol::zbar(0)), z, w) - 0.5 * (fx + i * fy)) < 1e-6);
    CHECK(std::abs(at(partial_derivative(p, Symbol::w()), z, w) - fw) < 1e-6);
  }
}

TEST_CASE("evaluate") {
  CHECK(std::abs(at(z1 * zb1, Complex(1, 1)) - 2.0) < 1e-15);
  CHECK(at(w1, 0.0, 3.0) == Complex(3.0));
  const Polynomial Q = z1 * zb1 + scale(pow(z1, 2) + pow(zb1, 2), 0.3);
  CHECK(std::abs(at(Q, 1.0) - 1.6) < 1e-15);
  const Complex pt[2] = {1.0, 2.0};
  CHECK_THROWS_AS(z1.evaluate(pt), InputError);
}

TEST_CASE("degree cap and exponent validation") {
  CHECK_THROWS_AS(pow(z1, 65), DegreeLimitError);
  CHECK_NOTHROW(pow(z1, 64));
  Polynomial p(2);
  CHECK_THROWS_AS(p.add_term(Exponent({1}, {0}, 0), 1.0), InputError);
  CHECK_THROWS_AS(p.add_term(Exponent({-1, 0}, {0, 0}, 0), 1.0), InputError);
}

TEST_CASE("linear_substitute matches evaluation at the mapped point") {
  Rng rng(23);
  const Polynomial p = crext::testing::random_polynomial(rng, 2, 4, 8, true);
  Eigen::MatrixXcd M = crext::testing::random_matrix(rng, 2).leftCols(1);
  const Polynomial q = linear_substitute(p, M);
  CHECK(q.n() == 1);
  for (int k = 0; k < 10; ++k) {
    const Complex u = crext::testing::random_complex(rng);
    const Complex w = crext::testing::random_complex(rng);
    const std::vector<Complex> z{M(0, 0) * u, M(1, 0) * u};
    CHECK(rel_err(at(q, u, w), p.evaluate(z, w)) < 1e-12);
  }
}

TEST_CASE("term order is graded lexicographic") {
  const Polynomial p = pow(z1, 2) + w1 + z1 + zb1 + Polynomial::constant(1, 1.0);
  std::vector<int> keys;
  for (const auto& [e, c] : p.terms()) keys.push_back(e.weighted_degree());
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(to_string(p) == "1 + zbar + z + w + z^2");
}
