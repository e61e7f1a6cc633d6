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

#ifndef CREXT_POLYNOMIAL_HPP
#define CREXT_POLYNOMIAL_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace crext {

using Complex = std::complex<double>;

/// Coefficients with modulus at or below this are dropped after every operation.
inline constexpr double kZeroThreshold = 1e-14;

/// Largest total degree any operation will produce.
inline constexpr int kMaxDegree = 64;

/// Powers of z_1..z_n (alpha), zbar_1..zbar_n (beta) and w (k) of one monomial.
struct Exponent {
  std::vector<int> alpha;
  std::vector<int> beta;
  int k = 0;

  Exponent() = default;
  explicit Exponent(int n) : alpha(n, 0), beta(n, 0) {}
  Exponent(std::vector<int> a, std::vector<int> b, int w_power)
      : alpha(std::move(a)), beta(std::move(b)), k(w_power) {}

  int dimension() const noexcept { return static_cast<int>(alpha.size()); }
  int z_degree() const noexcept;
  int zbar_degree() const noexcept;
  /// |alpha| + |beta| + k
  int total_degree() const noexcept;
  /// |alpha| + |beta| + 2k, the grading used for term ordering.
  int weighted_degree() const noexcept;

  friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Graded lexicographic order on (|alpha|+|beta|+2k, alpha, beta, k).
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

enum class Grading {
  Ordinary,  ///< |alpha| + |beta| + k
  Weighted,  ///< |alpha| + |beta| + 2k  (deg z = 1, deg w = 2)
};

/// One of the 2n+1 commuting symbols.
struct Symbol {
  enum class Kind { Z, ZBar, W };
  Kind kind = Kind::Z;
  int index = 0;

  static Symbol z(int j) { return {Kind::Z, j}; }
  static Symbol zbar(int j) { return {Kind::ZBar, j}; }
  static Symbol w() { return {Kind::W, 0}; }
};

/// Sparse polynomial in z, zbar, w with complex double coefficients.
///
/// Values are immutable once built through the free functions below; the
/// mutating members exist for construction only.
class Polynomial {
 public:
  using TermMap = std::map<Exponent, Complex, GradedLexLess>;

  explicit Polynomial(int n = 1);

  static Polynomial constant(int n, Complex c);
  static Polynomial z(int n, int j, Complex c = 1.0);
  static Polynomial zbar(int n, int j, Complex c = 1.0);
  static Polynomial w(int n, Complex c = 1.0);
  static Polynomial monomial(Exponent e, Complex c);

  int n() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Complex coefficient(const Exponent& e) const;

  /// Accumulates c into the coefficient of e, pruning the result.
  void add_term(const Exponent& e, Complex c);

  /// Largest total degree of a stored term, -1 for the zero polynomial.
  int degree(Grading grading = Grading::Ordinary) const;
  int zbar_degree() const;
  bool has_w() const;
  /// No zbar in any term.
  bool is_holomorphic() const;
  double max_abs_coefficient() const;

  Complex evaluate(std::span<const Complex> z, Complex w = 0.0) const;

 private:
  void check_exponent(const Exponent& e) const;

  int n_;
  TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial subtract(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial scale(const Polynomial& p, Complex c);
Polynomial pow(const Polynomial& p, int k);

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return subtract(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(Complex c, const Polynomial& p) { return scale(p, c); }
inline Polynomial operator-(const Polynomial& p) { return scale(p, -1.0); }

/// Swaps alpha and beta and conjugates coefficients. Refuses w-terms.
Polynomial conjugate(const Polynomial& p);

/// Replaces every w^k by q^k. q must not contain w.
Polynomial substitute_w(const Polynomial& p, const Polynomial& q);

Polynomial homogeneous_part(const Polynomial& p, int d, Grading grading = Grading::Ordinary);

/// Pullback under (z, zbar) -> (z, -z/lambda - zbar). n = 1, lambda > 0, no w.
Polynomial involution_pullback(const Polynomial& p, double lambda);

Polynomial partial_derivative(const Polynomial& p, Symbol s);

inline Complex evaluate(const Polynomial& p, std::span<const Complex> z, Complex w = 0.0) {
  return p.evaluate(z, w);
}

/// Linear change of variables z = M u (so zbar = conj(M) ubar), w untouched.
/// M is p.n() x m; the result lives in m variables.
Polynomial linear_substitute(const Polynomial& p, const Eigen::MatrixXcd& M);

/// Max coefficient modulus of p - q.
double max_coefficient_distance(const Polynomial& p, const Polynomial& q);

/// Human-readable form, e.g. "z^2*w + (0.5-1i)*zbar".
std::string to_string(const Polynomial& p);

}  // namespace crext

#endif  // CREXT_POLYNOMIAL_HPP
