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

#include "crext/moments.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "crext/errors.hpp"

namespace crext {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kNewtonIterations = 50;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void require_grid(int N) {
  if (N < 64 || !is_power_of_two(N)) {
    throw InputError("grid size must be a power of two >= 64, got " + std::to_string(N));
  }
}

std::vector<double> uniform_angles(int N) {
  std::vector<double> theta(N);
  for (int i = 0; i < N; ++i) theta[i] = kTwoPi * i / N;
  return theta;
}

}  // namespace

double LeafParametrization::step() const noexcept { return kTwoPi / size(); }

Complex LeafParametrization::point(int i) const { return r * phi[i] * std::polar(1.0, theta[i]); }

Complex LeafParametrization::tangent(int i) const {
  return r * Complex(phi_theta[i], phi[i]) * std::polar(1.0, theta[i]);
}

double LeafParametrization::inradius() const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) m = std::min(m, std::abs(point(i)));
  return m;
}

double LeafParametrization::residual() const {
  double worst = 0.0;
  for (int i = 0; i < size(); ++i) {
    const Complex z = point(i);
    worst = std::max(worst, std::abs(rho.evaluate({&z, 1}) - level) / (r * r));
  }
  return worst;
}

std::vector<double> spectral_derivative(std::span<const double> samples) {
  const int N = static_cast<int>(samples.size());
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<double> out(N);
  std::vector<fftw_complex> spec(N / 2 + 1);

  fftw_plan forward, backward;
  {
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(N, in.data(), spec.data(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(N, spec.data(), out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(forward);
  for (int k = 0; k <= N / 2; ++k) {
    // Multiply by i k / N; the Nyquist mode has no well-defined derivative.
    const double factor = (2 * k == N) ? 0.0 : static_cast<double>(k) / N;
    const double re = spec[k][0];
    const double im = spec[k][1];
    spec[k][0] = -im * factor;
    spec[k][1] = re * factor;
  }
  fftw_execute(backward);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  return out;
}

LeafParametrization circle_leaf(const Polynomial& rho, double radius, double level, int N) {
  require_grid(N);
  LeafParametrization leaf;
  leaf.lambda = 0.0;
  leaf.rho = rho;
  leaf.r = radius;
  leaf.level = level;
  leaf.theta = uniform_angles(N);
  leaf.phi.assign(N, 1.0);
  leaf.phi_theta.assign(N, 0.0);
  return leaf;
}

LeafParametrization solve_leaf(const QuadricModel& model, double r, int N) {
  if (model.n != 1) throw InputError("solve_leaf: requires n = 1");
  require_grid(N);
  if (!(r > 0.0)) throw InputError("solve_leaf: leaf label r must be positive");
  const ClassificationReport cls = classify(model);
  if (cls.classification != Classification::Elliptic) {
    throw InputError("solve_leaf: model is " + to_string(cls.classification) + ", not elliptic");
  }

  const double a = model.A(0, 0).real();
  const Complex b = model.B(0, 0);
  const Polynomial* E = model.E ? &*model.E : nullptr;
  Polynomial Ez(1), Ezbar(1);
  if (E) {
    Ez = partial_derivative(*E, Symbol::z(0));
    Ezbar = partial_derivative(*E, Symbol::zbar(0));
  }

  LeafParametrization leaf;
  leaf.lambda = cls.lambdas.front();
  leaf.rho = q_polynomial(model);
  leaf.r = r;
  leaf.level = r * r;
  leaf.theta = uniform_angles(N);
  leaf.phi.resize(N);

  const double r2 = r * r;
  for (int i = 0; i < N; ++i) {
    const Complex e = std::polar(1.0, leaf.theta[i]);
    // Q(r phi e^{i theta}) = r^2 phi^2 kappa(theta).
    const double kappa = a + 2.0 * (b * e * e).real();
    double phi = 1.0 / std::sqrt(kappa);
    double g = 0.0;
    bool converged = false;
    for (int it = 0; it < kNewtonIterations; ++it) {
      const Complex z = r * phi * e;
      g = phi * phi * kappa - 1.0;
      double dg = 2.0 * phi * kappa;
      if (E) {
        g += E->evaluate({&z, 1}).real() / r2;
        dg += (r * e * Ez.evaluate({&z, 1}) + r * std::conj(e) * Ezbar.evaluate({&z, 1})).real() / r2;
      }
      if (std::abs(g) <= 1e-15) {
        converged = true;
        break;
      }
      if (!(dg > 0.0)) break;
      const double next = phi - g / dg;
      if (!(next > 0.0) || !std::isfinite(next)) break;
      phi = next;
    }
    if (!converged && !(std::abs(g) < kLeafResidual)) {
      throw NumericalFailure("solve_leaf: Newton iteration did not converge at theta = " +
                             std::to_string(leaf.theta[i]) + " (leaf r = " + std::to_string(r) +
                             " outside the model's validity radius?)");
    }
    leaf.phi[i] = phi;
  }
  leaf.phi_theta = spectral_derivative(leaf.phi);
  return leaf;
}

Complex moment_integral(const Polynomial& f, const LeafParametrization& leaf, int ell) {
  if (ell < 0) throw InputError("moment_integral: ell must be >= 0");
  if (f.n() != 1) throw InputError("moment_integral: requires n = 1");
  if (f.has_w()) throw InputError("moment_integral: f must not contain w");
  Complex total = 0.0;
  for (int i = 0; i < leaf.size(); ++i) {
    const Complex z = leaf.point(i);
    Complex zl = 1.0;
    for (int p = 0; p < ell; ++p) zl *= z;
    total += f.evaluate({&z, 1}) * zl * leaf.tangent(i);
  }
  return total * leaf.step();
}

std::vector<double> default_leaf_ladder(const QuadricModel& model) {
  const double dz = default_delta_z(model);
  return {0.05 * dz, 0.1 * dz, 0.2 * dz, 0.4 * dz};
}

MomentReport check_moments(const Polynomial& f, const QuadricModel& model,
                           std::span<const double> leaves, int lmax, double tol, int N) {
  if (!(tol > 0.0)) throw InputError("check_moments: tolerance must be positive");
  std::vector<double> ladder(leaves.begin(), leaves.end());
  if (ladder.empty()) ladder = default_leaf_ladder(model);

  MomentReport report;
  report.tolerance = tol;
  report.lmax = lmax >= 0 ? lmax : std::max(f.degree(), 0) + 4;
  report.grid_size = N;
  for (double r : ladder) {
    const LeafParametrization leaf = solve_leaf(model, r, N);
    for (int ell = 0; ell <= report.lmax; ++ell) {
      const Complex m = moment_integral(f, leaf, ell);
      report.entries.push_back({r, ell, m});
      report.max_modulus = std::max(report.max_modulus, std::abs(m));
    }
  }
  report.pass = report.max_modulus < tol;
  return report;
}

std::vector<CrViolation> cr_check(const Polynomial& f, const QuadricModel& model) {
  if (model.n < 2) throw InputError("cr_check: requires n >= 2 (use check_moments for n = 1)");
  if (f.n() != model.n) throw InputError("cr_check: f has the wrong dimension");
  if (f.has_w()) throw InputError("cr_check: f must not contain w");

  const Polynomial rho = q_polynomial(model);
  std::vector<Polynomial> rho_bar, f_bar;
  for (int j = 0; j < model.n; ++j) {
    rho_bar.push_back(partial_derivative(rho, Symbol::zbar(j)));
    f_bar.push_back(partial_derivative(f, Symbol::zbar(j)));
  }

  std::vector<CrViolation> out;
  for (int j = 0; j < model.n; ++j) {
    for (int l = j + 1; l < model.n; ++l) {
      Polynomial xf = subtract(mul(rho_bar[j], f_bar[l]), mul(rho_bar[l], f_bar[j]));
      if (xf.max_abs_coefficient() >= 1e-12) out.push_back({j, l, std::move(xf)});
    }
  }
  return out;
}

}  // namespace crext
