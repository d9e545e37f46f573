#include "fracwave/semigroup_kernel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fracwave/util.hpp"

namespace fracwave {

namespace {

void validate_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("kernel: alpha must lie strictly inside (0,1)");
}

// Frequency symbol of the generator on the unit-time kernel: (i xi)^{1+alpha}
// for xi > 0, with negative real part -xi^{1+alpha} sin(alpha pi/2).
std::complex<double> generator_symbol(double xi, double alpha) {
  double arg = 0.5 * M_PI * (1.0 + alpha);
  double mag = std::pow(xi, 1.0 + alpha);
  return {mag * std::cos(arg), mag * std::sin(arg)};
}

// The trapezoidal sum on a uniform xi grid is an exact periodization: picking
// the alias period well past the window pushes the only discretization error
// into the far algebraic tail, where the analytic model accounts for it.
double alias_period(const GridSpec& y_grid) {
  double lo = std::abs(y_grid.x0);
  double hi = std::abs(y_grid.x_end());
  return 8.0 * (lo + hi + 30.0);
}

double frequency_cutoff(double alpha, double quad_tol) {
  return std::pow(std::log(1.0 / quad_tol) / std::sin(0.5 * M_PI * alpha),
                  1.0 / (1.0 + alpha));
}

// Integral of the two-term algebraic tail model from Y to infinity:
// K(1,y) ~ c1 y^{-(2+alpha)} + c2 y^{-(3+2alpha)} with c1 = 1/Gamma(-1-alpha)
// and c2 = 1/(2 Gamma(-2-2alpha)) (c2 vanishes when 2+2alpha is an integer).
double tail_mass_above(double y, double alpha) {
  if (y <= 0.0) throw std::invalid_argument("tail_mass_above: needs y > 0");
  double c1 = reciprocal_gamma(-1.0 - alpha);
  double c2 = 0.5 * reciprocal_gamma(-2.0 - 2.0 * alpha);
  return c1 * std::pow(y, -(1.0 + alpha)) / (1.0 + alpha) +
         c2 * std::pow(y, -(2.0 + 2.0 * alpha)) / (2.0 + 2.0 * alpha);
}

// Mass the periodization folds into the window from the far right tail.
double folded_tail_mass(const GridSpec& y_grid, double alpha) {
  double period = alias_period(y_grid);
  double s = 0.0;
  for (int m = 1; m <= 8; ++m) {
    double lo = y_grid.x0 + m * period;
    double hi = y_grid.x_end() + m * period;
    if (lo <= 0.0) continue;
    s += tail_mass_above(lo, alpha) - tail_mass_above(hi, alpha);
  }
  return s;
}

}  // namespace

double kernel_tail_asymptote_coeff(double alpha) {
  return reciprocal_gamma(-1.0 - alpha);
}

std::vector<double> kernel_quadrature(double alpha, const GridSpec& y_grid, double quad_tol,
                                      KernelMultiplier mult) {
  validate_alpha(alpha);
  validate_grid(y_grid);
  if (!(quad_tol > 1e-14) || !(quad_tol < 1e-3))
    throw std::invalid_argument("kernel: quad_tol must lie in (1e-14, 1e-3)");
  double xi_max = frequency_cutoff(alpha, quad_tol);
  if (xi_max > kXiMaxCap)
    throw std::invalid_argument("kernel: frequency cutoff exceeds the hard cap");
  double dxi = 2.0 * M_PI / alias_period(y_grid);
  std::size_t n_modes = static_cast<std::size_t>(std::ceil(xi_max / dxi));

  // Spectral samples c_m = mult(xi_m) exp((i xi_m)^{1+alpha}).
  std::vector<std::complex<double>> c(n_modes + 1);
  for (std::size_t m = 1; m <= n_modes; ++m) {
    double xi = dxi * static_cast<double>(m);
    std::complex<double> s = generator_symbol(xi, alpha);
    std::complex<double> factor = std::exp(s);
    switch (mult) {
      case KernelMultiplier::Identity: break;
      case KernelMultiplier::DY: factor *= std::complex<double>(0.0, xi); break;
      case KernelMultiplier::DT: factor *= s; break;
    }
    c[m] = factor;
  }
  double zero_mode = (mult == KernelMultiplier::Identity) ? 1.0 : 0.0;

  // K(y) = (dxi/pi) [ zero_mode/2 + Re sum_m c_m e^{i y m dxi} ], evaluated
  // with one complex exponential per node and a Horner pass over the modes.
  std::vector<double> out(y_grid.n);
  for (std::size_t i = 0; i < y_grid.n; ++i) {
    double y = y_grid.x(i);
    std::complex<double> z = std::exp(std::complex<double>(0.0, y * dxi));
    std::complex<double> acc = 0.0;
    for (std::size_t m = n_modes; m >= 1; --m) acc = acc * z + c[m];
    out[i] = dxi / M_PI * (0.5 * zero_mode + std::real(acc * z));
  }
  return out;
}

KernelProfile build_kernel_profile(double alpha, const GridSpec& y_grid, double quad_tol) {
  KernelProfile profile;
  profile.alpha = alpha;
  profile.y_grid = y_grid;
  profile.quad_tol = quad_tol;
  profile.values = kernel_quadrature(alpha, y_grid, quad_tol, KernelMultiplier::Identity);
  profile.xi_max = frequency_cutoff(alpha, quad_tol);

  double min_v = 0.0;
  for (double v : profile.values) min_v = std::min(min_v, v);
  if (min_v < -quad_tol)
    throw std::runtime_error("kernel profile: negative value beyond quad_tol");
  double mass = kernel_mass_estimate(profile);
  if (std::abs(mass - 1.0) > 10.0 * quad_tol)
    throw std::runtime_error(
        "kernel profile: window mass estimate misses 1 beyond 10*quad_tol; "
        "widen the y window or loosen quad_tol");
  return profile;
}

double kernel_mass_estimate(const KernelProfile& profile) {
  double trap = trapezoid(profile.values, profile.y_grid.dx);
  double y_hi = profile.y_grid.x_end();
  double tail = y_hi > 0.0 ? tail_mass_above(y_hi, profile.alpha) : 0.0;
  return trap + tail - folded_tail_mass(profile.y_grid, profile.alpha);
}

double kernel_l1_norm(const KernelProfile& profile) {
  std::vector<double> mag(profile.values.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(profile.values[i]);
  double trap = trapezoid(mag, profile.y_grid.dx);
  double y_hi = profile.y_grid.x_end();
  double tail = y_hi > 0.0 ? tail_mass_above(y_hi, profile.alpha) : 0.0;
  return trap + tail - folded_tail_mass(profile.y_grid, profile.alpha);
}

double kernel_tail_coefficient(const KernelProfile& profile) {
  double y_hi = profile.y_grid.x_end();
  if (y_hi <= 0.0)
    throw std::invalid_argument("kernel_tail_coefficient: window has no right tail");
  std::size_t count = std::max<std::size_t>(5, profile.y_grid.n / 50);
  double s = 0.0;
  std::size_t used = 0;
  for (std::size_t j = 0; j < count && j < profile.y_grid.n; ++j) {
    std::size_t i = profile.y_grid.n - 1 - j;
    double y = profile.y_grid.x(i);
    if (y <= 0.0) break;
    s += profile.values[i] * y * y;
    ++used;
  }
  if (used == 0) throw std::invalid_argument("kernel_tail_coefficient: no positive-y samples");
  return s / static_cast<double>(used);
}

double kernel_peak_bound(double alpha) {
  validate_alpha(alpha);
  double ap1 = 1.0 + alpha;
  return std::sqrt(2.0) * std::tgamma(1.0 / ap1) /
         (std::sqrt(M_PI) * ap1 * std::pow(std::sin(0.5 * M_PI * alpha), 1.0 / ap1));
}

double kernel_at(double t, double x, const KernelProfile& profile) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_at: t must be positive");
  double s = std::pow(t, 1.0 / (1.0 + profile.alpha));
  double ys = x / s;
  const GridSpec& g = profile.y_grid;
  if (ys < g.x0) return 0.0;  // super-exponential left side, below resolution
  if (ys > g.x_end()) {
    double c = kernel_tail_coefficient(profile);
    return c / (ys * ys) / s;
  }
  return interp_uniform(profile.values, g.x0, g.dx, ys) / s;
}

namespace {

double sample_extended(const Field& u, double x) {
  const GridSpec& g = u.grid;
  if (g.domain == Domain::Periodic) {
    double len = g.length();
    double rel = std::fmod(x - g.x0, len);
    if (rel < 0.0) rel += len;
    double sidx = rel / g.dx;
    std::size_t i = static_cast<std::size_t>(sidx);
    if (i >= g.n) i = g.n - 1;
    double w = sidx - static_cast<double>(i);
    std::size_t inext = (i + 1) % g.n;
    return u.values[i] * (1.0 - w) + u.values[inext] * w;
  }
  if (x <= g.x0) return g.pad_left;
  if (x >= g.x_end()) return g.pad_right;
  return interp_uniform(u.values, g.x0, g.dx, x);
}

}  // namespace

Field convolve_with_kernel(const Field& u0, double t, const KernelProfile& profile) {
  if (!(t > 0.0)) throw std::invalid_argument("convolve_with_kernel: t must be positive");
  validate_field(u0, u0.grid);
  double s = std::pow(t, 1.0 / (1.0 + profile.alpha));
  const GridSpec& yg = profile.y_grid;
  double dy = yg.dx;

  // Quadrature nodes: trapezoid over the tabulated window, then the two-term
  // algebraic tail model on a geometric grid past the right edge (without it
  // the truncated heavy tail leaves an O(edge^{-(1+alpha)}) convolution bias;
  // the left side is super-exponentially small and needs no extension).
  // Renormalizing by the total discrete mass makes constants exact.
  std::vector<double> nodes(yg.n);
  std::vector<double> weights(yg.n);
  for (std::size_t j = 0; j < yg.n; ++j) {
    nodes[j] = yg.x(j);
    double w = (j == 0 || j + 1 == yg.n) ? 0.5 : 1.0;
    weights[j] = w * dy * profile.values[j];
  }
  double edge = yg.x_end();
  if (edge > 0.0) {
    double c1 = reciprocal_gamma(-1.0 - profile.alpha);
    double c2 = 0.5 * reciprocal_gamma(-2.0 - 2.0 * profile.alpha);
    auto tail_k = [&](double y) {
      return c1 * std::pow(y, -(2.0 + profile.alpha)) +
             c2 * std::pow(y, -(3.0 + 2.0 * profile.alpha));
    };
    const double rho = 1.05;
    const double log_rho = std::log(rho);
    std::size_t first_tail = nodes.size();
    for (double y = edge; tail_mass_above(y, profile.alpha) > 1e-10; y *= rho) {
      nodes.push_back(y);
      weights.push_back(log_rho * y * tail_k(y));
    }
    if (nodes.size() > first_tail) {
      weights[first_tail] *= 0.5;
      weights.back() *= 0.5;
    }
  }

  double mass = 0.0;
  for (double w : weights) mass += w;
  if (!(mass > 0.0)) throw std::runtime_error("convolve_with_kernel: nonpositive window mass");

  Field out = make_field(u0.grid, u0.t + t);
  for (std::size_t i = 0; i < u0.grid.n; ++i) {
    double x = u0.grid.x(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      acc += weights[j] * sample_extended(u0, x - s * nodes[j]);
    }
    out.values[i] = acc / mass;
  }
  return out;
}

std::vector<double> convolve_with_kernel_derivative(const std::vector<double>& g,
                                                    const GridSpec& grid, double t,
                                                    const KernelProfile& profile,
                                                    const std::vector<double>& dvalues) {
  if (!(t > 0.0))
    throw std::invalid_argument("convolve_with_kernel_derivative: t must be positive");
  if (dvalues.size() != profile.y_grid.n)
    throw std::invalid_argument("convolve_with_kernel_derivative: derivative table mismatch");
  double s = std::pow(t, 1.0 / (1.0 + profile.alpha));
  const GridSpec& yg = profile.y_grid;
  double dy = yg.dx;

  // Center the derivative table so its discrete integral vanishes exactly;
  // the continuum integral of dK/dy is zero and this keeps constants inert.
  double raw_integral = trapezoid(dvalues, dy);
  double correction = raw_integral / (dy * static_cast<double>(yg.n - 1));

  Field gf;
  gf.t = 0.0;
  gf.grid = grid;
  gf.values = g;
  std::vector<double> out(grid.n, 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    double x = grid.x(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < yg.n; ++j) {
      double w = (j == 0 || j + 1 == yg.n) ? 0.5 : 1.0;
      acc += w * (dvalues[j] - correction) * sample_extended(gf, x - s * yg.x(j));
    }
    out[i] = acc * dy / s;
  }
  return out;
}

}  // namespace fracwave
