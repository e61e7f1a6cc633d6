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

#include "crext/leafcauchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crext/errors.hpp"

namespace crext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kBoundaryExclusion = 0.05;
constexpr int kBoundaryProbes = 32;

std::string format_point(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

// Values of f at the grid points of the leaf.
std::vector<Complex> boundary_values(const BoundaryData& f, const LeafParametrization& leaf) {
  std::vector<Complex> out(leaf.size());
  for (int i = 0; i < leaf.size(); ++i) out[i] = f.value(leaf.point(i), leaf.level);
  return out;
}

std::vector<Complex> spectral_derivative(const std::vector<Complex>& v) {
  std::vector<double> re(v.size()), im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  const auto dre = crext::spectral_derivative(re);
  const auto dim = crext::spectral_derivative(im);
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = {dre[i], dim[i]};
  return out;
}

void check_interior(const LeafParametrization& leaf, Complex z, double inradius) {
  double winding = 0.0;
  double dist = std::numeric_limits<double>::infinity();
  const int N = leaf.size();
  for (int i = 0; i < N; ++i) {
    const Complex a = leaf.point(i) - z;
    const Complex b = leaf.point((i + 1) % N) - z;
    winding += std::arg(b / a);
    dist = std::min(dist, std::abs(a));
  }
  if (std::lround(winding / kTwoPi) != 1) {
    throw NearBoundary("point " + format_point(z) + " is not inside the leaf curve", z);
  }
  if (dist < kBoundaryExclusion * inradius) {
    throw NearBoundary("point " + format_point(z) + " is within " +
                           std::to_string(kBoundaryExclusion) + " * inradius of the leaf curve",
                       z);
  }
}

Complex cauchy_sum(const LeafParametrization& leaf, const std::vector<Complex>& fvals, Complex z) {
  Complex total = 0.0;
  for (int i = 0; i < leaf.size(); ++i) total += fvals[i] * leaf.tangent(i) / (leaf.point(i) - z);
  return total * leaf.step() / (kTwoPi * kI);
}

// (d/dz, d/dzbar) of z -> f(z, rho(z)) by central differences.
std::pair<Complex, Complex> wirtinger(const BoundaryData& f, const std::function<double(Complex)>& rho,
                                      Complex z, double h) {
  auto eval = [&](Complex p) { return f.value(p, rho(p)); };
  const Complex fx = (eval(z + h) - eval(z - h)) / (2.0 * h);
  const Complex fy = (eval(z + kI * h) - eval(z - kI * h)) / (2.0 * h);
  return {0.5 * (fx - kI * fy), 0.5 * (fx + kI * fy)};
}

}  // namespace

BoundaryData polynomial_data(const Polynomial& f) {
  if (f.n() != 1) throw InputError("polynomial data: requires n = 1");
  if (f.has_w()) throw InputError("polynomial data: f must not contain w");
  const Polynomial fz = partial_derivative(f, Symbol::z(0));
  const Polynomial fzbar = partial_derivative(f, Symbol::zbar(0));
  BoundaryData d;
  d.value = [f](Complex z, double) { return f.evaluate({&z, 1}); };
  d.dz = [fz](Complex z, double) { return fz.evaluate({&z, 1}); };
  d.dzbar = [fzbar](Complex z, double) { return fzbar.evaluate({&z, 1}); };
  d.description = "polynomial " + to_string(f);
  return d;
}

BoundaryData builtin_data(std::string_view name, Complex constant) {
  BoundaryData d;
  if (name == "sqrt-re-w") {
    d.value = [](Complex, double s) { return Complex(std::sqrt(std::max(s, 0.0)), 0.0); };
    d.description = "sqrt(Re w)";
  } else if (name == "constant") {
    d.value = [constant](Complex, double) { return constant; };
    d.dz = d.dzbar = [](Complex, double) { return Complex{}; };
    d.description = "constant";
  } else if (name == "identity") {
    d.value = [](Complex z, double) { return z; };
    d.dz = [](Complex, double) { return Complex(1.0); };
    d.dzbar = [](Complex, double) { return Complex{}; };
    d.description = "z";
  } else {
    throw InputError("unknown built-in data '" + std::string(name) + "'");
  }
  return d;
}

LeafFamily quadric_family(const QuadricModel& model) {
  if (model.n != 1) throw InputError("quadric family: requires n = 1");
  if (classify(model).classification != Classification::Elliptic) {
    throw InputError("quadric family: model is not elliptic");
  }
  const Polynomial rho = q_polynomial(model);
  LeafFamily fam;
  fam.name = "quadric";
  fam.rho = [rho](Complex z) { return rho.evaluate({&z, 1}).real(); };
  fam.leaf = [model](double s, int N) {
    if (!(s > 0.0)) throw InputError("leaf level must be positive");
    return solve_leaf(model, std::sqrt(s), N);
  };
  return fam;
}

LeafFamily radial_family(Polynomial rho, std::function<double(double)> radius_of_level,
                         std::string name) {
  if (rho.n() != 1) throw InputError("radial family: requires n = 1");
  LeafFamily fam;
  fam.name = std::move(name);
  fam.rho = [rho](Complex z) { return rho.evaluate({&z, 1}).real(); };
  fam.leaf = [rho, radius_of_level](double s, int N) {
    if (!(s > 0.0)) throw InputError("leaf level must be positive");
    return circle_leaf(rho, radius_of_level(s), s, N);
  };
  return fam;
}

LeafFamily radial_power_family(int m) {
  if (m < 1) throw InputError("radial power family: exponent must be >= 1");
  const Polynomial r2 = mul(Polynomial::z(1, 0), Polynomial::zbar(1, 0));
  return radial_family(pow(r2, m), [m](double s) { return std::pow(s, 1.0 / (2.0 * m)); },
                       "|z|^" + std::to_string(2 * m));
}

LeafExtension cauchy_extend(const BoundaryData& f, const LeafParametrization& leaf,
                            std::span<const Complex> points) {
  LeafExtension ext;
  ext.leaf = leaf;
  const double inradius = leaf.inradius();
  const std::vector<Complex> fvals = boundary_values(f, leaf);

  for (const Complex& z : points) check_interior(leaf, z, inradius);
  for (const Complex& z : points) ext.interior_values.emplace_back(z, cauchy_sum(leaf, fvals, z));

  // Boundary values with the singularity subtracted:
  //   F(zeta0) - f(zeta0) = (1/2 pi i) oint (f - f(zeta0)) / (zeta - zeta0) dzeta,
  // whose integrand extends smoothly to zeta0 with value f_theta(theta0).
  const std::vector<Complex> ftheta = spectral_derivative(fvals);
  const int N = leaf.size();
  const int stride = std::max(1, N / kBoundaryProbes);
  for (int i0 = 0; i0 < N; i0 += stride) {
    const Complex z0 = leaf.point(i0);
    Complex total = ftheta[i0];
    for (int i = 0; i < N; ++i) {
      if (i == i0) continue;
      total += (fvals[i] - fvals[i0]) * leaf.tangent(i) / (leaf.point(i) - z0);
    }
    ext.boundary_sup_error =
        std::max(ext.boundary_sup_error, std::abs(total * leaf.step() / (kTwoPi * kI)));
  }
  return ext;
}

std::vector<ContinuityRow> continuity_probe(const BoundaryData& f, const LeafFamily& family,
                                            std::span<const double> levels,
                                            std::optional<Complex> f0, int N) {
  if (levels.empty()) throw InputError("continuity_probe: empty ladder");
  std::vector<LeafParametrization> leaves;
  for (double s : levels) leaves.push_back(family.leaf(s, N));

  if (!f0) {
    const auto smallest = std::min_element(levels.begin(), levels.end()) - levels.begin();
    const std::vector<Complex> vals = boundary_values(f, leaves[smallest]);
    Complex mean = 0.0;
    for (const Complex& v : vals) mean += v;
    f0 = mean / static_cast<double>(vals.size());
  }

  std::vector<ContinuityRow> rows;
  for (const LeafParametrization& leaf : leaves) {
    ContinuityRow row{leaf.level, leaf.r, 0.0};
    for (const Complex& v : boundary_values(f, leaf)) row.sup_deviation = std::max(row.sup_deviation, std::abs(v - *f0));
    rows.push_back(row);
  }
  return rows;
}

NormalDerivativeReport normal_derivative_probe(const BoundaryData& f, const LeafFamily& family,
                                               std::span<const double> levels, int N) {
  if (levels.size() < 6) throw InputError("normal_derivative_probe: ladder needs at least 6 rungs");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0) || (i > 0 && !(levels[i] > levels[i - 1]))) {
      throw InputError("normal_derivative_probe: ladder must be positive and increasing");
    }
  }

  NormalDerivativeReport rep;
  rep.levels.assign(levels.begin(), levels.end());
  const Complex origin = 0.0;
  double fmax = 0.0;
  for (double s : levels) {
    const LeafExtension ext = cauchy_extend(f, family.leaf(s, N), {&origin, 1});
    rep.values.push_back(ext.interior_values.front().second);
    fmax = std::max(fmax, std::abs(rep.values.back()));
  }

  // Three-point derivative on the nonuniform grid.
  bool all_zero = true;
  for (std::size_t i = 1; i + 1 < levels.size(); ++i) {
    const double h1 = levels[i] - levels[i - 1];
    const double h2 = levels[i + 1] - levels[i];
    const Complex d = -h2 / (h1 * (h1 + h2)) * rep.values[i - 1] +
                      (h2 - h1) / (h1 * h2) * rep.values[i] +
                      h1 / (h2 * (h1 + h2)) * rep.values[i + 1];
    rep.fs_levels.push_back(levels[i]);
    rep.fs_magnitude.push_back(std::abs(d));
    if (std::abs(d) * levels[i] > 1e-9 * (1.0 + fmax)) all_zero = false;
  }

  if (all_zero) {
    rep.bounded = true;
    rep.exponent = 0.0;
    return rep;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < rep.fs_levels.size(); ++i) {
    if (!(rep.fs_magnitude[i] > 0.0)) continue;
    const double x = std::log(rep.fs_levels[i]);
    const double y = std::log(rep.fs_magnitude[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) throw NumericalFailure("normal_derivative_probe: too few nonzero rungs to fit");
  rep.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  rep.bounded = false;
  return rep;
}

ZDerivativeBound zderiv_bound_check(const BoundaryData& f, const LeafFamily& family, double level,
                                    std::span<const Complex> samples, int N) {
  const LeafParametrization leaf = family.leaf(level, N);
  const double inradius = leaf.inradius();
  const double h_boundary = 1e-5 * std::max(leaf.r, 1e-3);

  ZDerivativeBound out;
  for (int i = 0; i < leaf.size(); ++i) {
    const Complex z = leaf.point(i);
    Complex fz, fzbar;
    if (f.dz && f.dzbar) {
      fz = f.dz(z, leaf.level);
      fzbar = f.dzbar(z, leaf.level);
    } else {
      std::tie(fz, fzbar) = wirtinger(f, family.rho, z, h_boundary);
    }
    out.bound = std::max(out.bound, std::abs(fz) + std::abs(fzbar));
  }

  const double h = 1e-4 * inradius;
  std::vector<Complex> probes;
  for (const Complex& z : samples) {
    probes.push_back(z + h);
    probes.push_back(z - h);
  }
  const LeafExtension ext = cauchy_extend(f, leaf, probes);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Complex Fz = (ext.interior_values[2 * i].second - ext.interior_values[2 * i + 1].second) / (2.0 * h);
    out.max_interior = std::max(out.max_interior, std::abs(Fz));
  }
  out.margin = out.bound + 1e-6 - out.max_interior;
  out.holds = out.margin >= 0.0;
  return out;
}

std::vector<double> geometric_ladder(double s0, double ratio, int rungs) {
  if (!(s0 > 0.0) || !(ratio > 1.0) || rungs < 1) {
    throw InputError("geometric ladder: need s0 > 0, ratio > 1 and at least one rung");
  }
  std::vector<double> out;
  double s = s0;
  for (int i = 0; i < rungs; ++i, s *= ratio) out.push_back(s);
  return out;
}

}  // namespace crext
