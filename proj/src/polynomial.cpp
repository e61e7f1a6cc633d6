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

#include "crext/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "crext/errors.hpp"

namespace crext {

namespace {

int sum(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

void require_same_dimension(const Polynomial& p, const Polynomial& q, const char* op) {
  if (p.n() != q.n()) {
    throw InputError(std::string(op) + ": dimension mismatch (" + std::to_string(p.n()) +
                     " vs " + std::to_string(q.n()) + ")");
  }
}

void prune(Polynomial::TermMap& terms) {
  std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) <= kZeroThreshold; });
}

Exponent combine(const Exponent& a, const Exponent& b) {
  Exponent e(a.dimension());
  for (int j = 0; j < a.dimension(); ++j) {
    e.alpha[j] = a.alpha[j] + b.alpha[j];
    e.beta[j] = a.beta[j] + b.beta[j];
  }
  e.k = a.k + b.k;
  return e;
}

Complex int_pow(Complex base, int e) {
  Complex out = 1.0;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

// Builds a polynomial directly from a term map that may contain small entries.
Polynomial from_terms(int n, Polynomial::TermMap terms) {
  prune(terms);
  Polynomial p(n);
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

}  // namespace

int Exponent::z_degree() const noexcept { return sum(alpha); }
int Exponent::zbar_degree() const noexcept { return sum(beta); }
int Exponent::total_degree() const noexcept { return z_degree() + zbar_degree() + k; }
int Exponent::weighted_degree() const noexcept { return z_degree() + zbar_degree() + 2 * k; }

bool GradedLexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = a.weighted_degree();
  const int db = b.weighted_degree();
  if (da != db) return da < db;
  if (a.alpha != b.alpha) return a.alpha < b.alpha;
  if (a.beta != b.beta) return a.beta < b.beta;
  return a.k < b.k;
}

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1) throw InputError("polynomial dimension must be >= 1");
}

Polynomial Polynomial::constant(int n, Complex c) {
  Polynomial p(n);
  p.add_term(Exponent(n), c);
  return p;
}

Polynomial Polynomial::z(int n, int j, Complex c) {
  Exponent e(n);
  e.alpha.at(j) = 1;
  Polynomial p(n);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::zbar(int n, int j, Complex c) {
  Exponent e(n);
  e.beta.at(j) = 1;
  Polynomial p(n);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::w(int n, Complex c) {
  Exponent e(n);
  e.k = 1;
  Polynomial p(n);
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::monomial(Exponent e, Complex c) {
  Polynomial p(std::max(1, e.dimension()));
  p.add_term(e, c);
  return p;
}

void Polynomial::check_exponent(const Exponent& e) const {
  if (e.dimension() != n_ || static_cast<int>(e.beta.size()) != n_) {
    throw InputError("exponent length does not match polynomial dimension " + std::to_string(n_));
  }
  if (e.k < 0 || std::any_of(e.alpha.begin(), e.alpha.end(), [](int a) { return a < 0; }) ||
      std::any_of(e.beta.begin(), e.beta.end(), [](int b) { return b < 0; })) {
    throw InputError("negative exponent");
  }
  if (e.total_degree() > kMaxDegree) {
    throw DegreeLimitError("total degree " + std::to_string(e.total_degree()) +
                           " exceeds limit " + std::to_string(kMaxDegree));
  }
}

Complex Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

void Polynomial::add_term(const Exponent& e, Complex c) {
  check_exponent(e);
  auto [it, inserted] = terms_.try_emplace(e, Complex{});
  it->second += c;
  if (std::abs(it->second) <= kZeroThreshold) terms_.erase(it);
}

int Polynomial::degree(Grading grading) const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, grading == Grading::Weighted ? e.weighted_degree() : e.total_degree());
  }
  return d;
}

int Polynomial::zbar_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.zbar_degree());
  return d;
}

bool Polynomial::has_w() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.k > 0; });
}

bool Polynomial::is_holomorphic() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.zbar_degree() == 0; });
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::evaluate(std::span<const Complex> z, Complex w) const {
  if (static_cast<int>(z.size()) != n_) {
    throw InputError("evaluate: point has " + std::to_string(z.size()) + " coordinates, expected " +
                     std::to_string(n_));
  }
  Complex total = 0.0;
  for (const auto& [e, c] : terms_) {
    Complex m = c;
    for (int j = 0; j < n_; ++j) {
      if (e.alpha[j]) m *= int_pow(z[j], e.alpha[j]);
      if (e.beta[j]) m *= int_pow(std::conj(z[j]), e.beta[j]);
    }
    if (e.k) m *= int_pow(w, e.k);
    total += m;
  }
  return total;
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
  require_same_dimension(p, q, "add");
  Polynomial::TermMap terms = p.terms();
  for (const auto& [e, c] : q.terms()) terms[e] += c;
  return from_terms(p.n(), std::move(terms));
}

Polynomial subtract(const Polynomial& p, const Polynomial& q) {
  require_same_dimension(p, q, "subtract");
  Polynomial::TermMap terms = p.terms();
  for (const auto& [e, c] : q.terms()) terms[e] -= c;
  return from_terms(p.n(), std::move(terms));
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
  require_same_dimension(p, q, "mul");
  if (p.degree() + q.degree() > kMaxDegree) {
    throw DegreeLimitError("mul: product degree exceeds limit " + std::to_string(kMaxDegree));
  }
  Polynomial::TermMap terms;
  for (const auto& [ep, cp] : p.terms()) {
    for (const auto& [eq, cq] : q.terms()) terms[combine(ep, eq)] += cp * cq;
  }
  return from_terms(p.n(), std::move(terms));
}

Polynomial scale(const Polynomial& p, Complex c) {
  Polynomial::TermMap terms = p.terms();
  for (auto& [e, v] : terms) v *= c;
  return from_terms(p.n(), std::move(terms));
}

Polynomial pow(const Polynomial& p, int k) {
  if (k < 0) throw InputError("pow: negative exponent");
  if (!p.is_zero() && static_cast<long>(p.degree()) * k > kMaxDegree) {
    throw DegreeLimitError("pow: result degree exceeds limit " + std::to_string(kMaxDegree));
  }
  Polynomial result = Polynomial::constant(p.n(), 1.0);
  for (int i = 0; i < k; ++i) result = mul(result, p);
  return result;
}

Polynomial conjugate(const Polynomial& p) {
  if (p.has_w()) throw InputError("conjugate: polynomial contains w-terms");
  Polynomial out(p.n());
  for (const auto& [e, c] : p.terms()) out.add_term(Exponent(e.beta, e.alpha, 0), std::conj(c));
  return out;
}

Polynomial substitute_w(const Polynomial& p, const Polynomial& q) {
  require_same_dimension(p, q, "substitute_w");
  if (q.has_w()) throw InputError("substitute_w: replacement contains w");

  std::vector<Polynomial> powers{Polynomial::constant(p.n(), 1.0)};
  Polynomial::TermMap terms;
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(powers.size()) <= e.k) powers.push_back(mul(powers.back(), q));
    Exponent base(e.alpha, e.beta, 0);
    for (const auto& [eq, cq] : powers[e.k].terms()) {
      Exponent combined = combine(base, eq);
      if (combined.total_degree() > kMaxDegree) {
        throw DegreeLimitError("substitute_w: result degree exceeds limit " +
                               std::to_string(kMaxDegree));
      }
      terms[combined] += c * cq;
    }
  }
  return from_terms(p.n(), std::move(terms));
}

Polynomial homogeneous_part(const Polynomial& p, int d, Grading grading) {
  if (d < 0) throw InputError("homogeneous_part: negative degree");
  Polynomial out(p.n());
  for (const auto& [e, c] : p.terms()) {
    const int deg = grading == Grading::Weighted ? e.weighted_degree() : e.total_degree();
    if (deg == d) out.add_term(e, c);
  }
  return out;
}

Polynomial involution_pullback(const Polynomial& p, double lambda) {
  if (p.n() != 1) throw InputError("involution_pullback: requires n = 1");
  if (!(lambda > 0.0)) throw InputError("involution_pullback: lambda must be > 0");
  if (p.has_w()) throw InputError("involution_pullback: polynomial contains w-terms");

  const Polynomial image = add(Polynomial::z(1, 0, -1.0 / lambda), Polynomial::zbar(1, 0, -1.0));
  std::vector<Polynomial> powers{Polynomial::constant(1, 1.0)};
  Polynomial::TermMap terms;
  for (const auto& [e, c] : p.terms()) {
    while (static_cast<int>(powers.size()) <= e.beta[0]) powers.push_back(mul(powers.back(), image));
    Exponent base({e.alpha[0]}, {0}, 0);
    for (const auto& [ei, ci] : powers[e.beta[0]].terms()) terms[combine(base, ei)] += c * ci;
  }
  return from_terms(1, std::move(terms));
}

Polynomial partial_derivative(const Polynomial& p, Symbol s) {
  if (s.kind != Symbol::Kind::W && (s.index < 0 || s.index >= p.n())) {
    throw InputError("partial_derivative: symbol index out of range");
  }
  Polynomial out(p.n());
  for (const auto& [e, c] : p.terms()) {
    Exponent d = e;
    int power = 0;
    switch (s.kind) {
      case Symbol::Kind::Z: power = d.alpha[s.index]--; break;
      case Symbol::Kind::ZBar: power = d.beta[s.index]--; break;
      case Symbol::Kind::W: power = d.k--; break;
    }
    if (power > 0) out.add_term(d, c * static_cast<double>(power));
  }
  return out;
}

Polynomial linear_substitute(const Polynomial& p, const Eigen::MatrixXcd& M) {
  if (M.rows() != p.n()) throw InputError("linear_substitute: matrix rows must equal n");
  const int m = static_cast<int>(M.cols());

  // z_j and zbar_j expressed in the new variables.
  std::vector<Polynomial> zs, zbars;
  for (int j = 0; j < p.n(); ++j) {
    Polynomial zj(m), zbj(m);
    for (int k = 0; k < m; ++k) {
      zj = add(zj, Polynomial::z(m, k, M(j, k)));
      zbj = add(zbj, Polynomial::zbar(m, k, std::conj(M(j, k))));
    }
    zs.push_back(std::move(zj));
    zbars.push_back(std::move(zbj));
  }

  Polynomial out(m);
  for (const auto& [e, c] : p.terms()) {
    Exponent wpart(m);
    wpart.k = e.k;
    Polynomial term = Polynomial::monomial(wpart, c);
    for (int j = 0; j < p.n(); ++j) {
      if (e.alpha[j]) term = mul(term, pow(zs[j], e.alpha[j]));
      if (e.beta[j]) term = mul(term, pow(zbars[j], e.beta[j]));
    }
    out = add(out, term);
  }
  return out;
}

double max_coefficient_distance(const Polynomial& p, const Polynomial& q) {
  require_same_dimension(p, q, "max_coefficient_distance");
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c - q.coefficient(e)));
  for (const auto& [e, c] : q.terms()) {
    if (!p.terms().contains(e)) m = std::max(m, std::abs(c));
  }
  return m;
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string symbol_name(const char* base, int j, int n) {
  return n == 1 ? std::string(base) : std::string(base) + std::to_string(j + 1);
}

std::string monomial_text(const Exponent& e) {
  std::string out;
  auto append = [&out](const std::string& name, int power) {
    if (power == 0) return;
    if (!out.empty()) out += '*';
    out += name;
    if (power > 1) out += '^' + std::to_string(power);
  };
  const int n = e.dimension();
  for (int j = 0; j < n; ++j) append(symbol_name("z", j, n), e.alpha[j]);
  for (int j = 0; j < n; ++j) append(symbol_name("zbar", j, n), e.beta[j]);
  append("w", e.k);
  return out;
}

}  // namespace

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const std::string mono = monomial_text(e);
    // Display only: drop a component that is roundoff relative to the other.
    const double floor = kZeroThreshold * std::max(1.0, std::abs(c));
    const double re = std::abs(c.real()) <= floor ? 0.0 : c.real();
    const double im = std::abs(c.imag()) <= floor ? 0.0 : c.imag();
    std::string coeff;
    bool negative = false;
    if (im == 0.0) {
      negative = re < 0.0;
      coeff = format_number(std::abs(re));
      if (coeff == "1" && !mono.empty()) coeff.clear();
    } else if (re == 0.0) {
      negative = im < 0.0;
      coeff = format_number(std::abs(im)) + "i";
    } else {
      coeff = "(" + format_number(re) + (im < 0 ? "-" : "+") + format_number(std::abs(im)) + "i)";
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    os << coeff;
    if (!coeff.empty() && !mono.empty()) os << '*';
    os << mono;
    first = false;
  }
  return os.str();
}

}  // namespace crext
