#include "fracwave/traveling_wave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fracwave/fft.hpp"
#include "fracwave/fractional_ops.hpp"
#include "fracwave/util.hpp"

namespace fracwave {

namespace {

constexpr double kNewtonTol = 1e-11;        // sup residual at convergence
constexpr std::size_t kNewtonMaxIters = 60;
constexpr double kFarRatio = 1.03;          // geometric stretch of the far grid
constexpr double kFarLimit = 3000.0;        // right end of the continuation
constexpr double kSlopeStationarity = 0.05; // tail-fit window tolerance

double profile_span(const TWSpec& spec) { return spec.phi_minus - spec.phi_plus; }

double left_mode_rate(const TWSpec& spec) {
  double hp = tw_h_prime(spec, spec.phi_minus);
  return std::pow(hp / spec.epsilon, 1.0 / spec.alpha);
}

std::size_t phase_index(const GridSpec& g) {
  double pos = -g.x0 / g.dx;
  auto m = static_cast<std::size_t>(std::llround(pos));
  if (std::abs(g.x0 + g.dx * static_cast<double>(m)) > 1e-9 * std::max(1.0, std::abs(g.x0)) ||
      m < 1 || m + 2 > g.n)
    throw std::invalid_argument("traveling wave: grid must contain xi = 0 strictly inside");
  return m;
}

// Precomputed pieces of the discrete profile equation. Left of the window the
// profile is closed by the linearized mode phi_minus - A e^{lambda xi} with
// A = (phi_minus - phi_0) e^{-lambda xi_0}; its memory contribution at node i
// collapses to E_i = e^{lambda dx i} tau_i with tau_i = sum_{k>i} g_k r^k,
// r = e^{-lambda dx}. tau is accumulated as an explicit tail sum of same-sign
// terms, never as a difference, so the huge e^{lambda dx i} factor meets a
// matching tiny tau_i at full relative precision.
struct TwSystem {
  std::size_t n = 0, m = 0;
  double dx = 0.0, dxa = 0.0;  // eps * dx^{-alpha}
  double lambda = 0.0, mid = 0.0;
  std::vector<double> g;    // n unshifted weights
  std::vector<double> gp;   // prefix sums of g
  std::vector<double> eE;   // E_i, all negative
};

TwSystem build_tw_system(const TWSpec& spec) {
  TwSystem sys;
  const GridSpec& grid = spec.grid;
  sys.n = grid.n;
  sys.m = phase_index(grid);
  sys.dx = grid.dx;
  sys.dxa = spec.epsilon * std::pow(grid.dx, -spec.alpha);
  sys.lambda = left_mode_rate(spec);
  sys.mid = 0.5 * (spec.phi_minus + spec.phi_plus);

  sys.g = gl_weights_order(spec.alpha, sys.n);
  sys.gp.resize(sys.n);
  double acc = 0.0;
  for (std::size_t k = 0; k < sys.n; ++k) {
    acc += sys.g[k];
    sys.gp[k] = acc;
  }

  double r = std::exp(-sys.lambda * sys.dx);
  // g_k r^k for k = 1..n-1, plus the remaining tail mass beyond the window.
  std::vector<double> gr(sys.n, 0.0);
  double gk = 1.0, rk = 1.0;
  for (std::size_t k = 1; k < sys.n; ++k) {
    gk *= (static_cast<double>(k) - 1.0 - spec.alpha) / static_cast<double>(k);
    rk *= r;
    gr[k] = gk * rk;
  }
  double tail = 0.0;
  {
    double gkx = gk, rkx = rk;
    for (std::size_t k = sys.n; k < 50000000; ++k) {
      gkx *= (static_cast<double>(k) - 1.0 - spec.alpha) / static_cast<double>(k);
      rkx *= r;
      double term = gkx * rkx;
      tail += term;
      if (std::abs(term) < 1e-320) break;
    }
  }
  std::vector<double> tau(sys.n);
  tau[sys.n - 1] = tail;
  for (std::size_t i = sys.n - 1; i >= 1; --i) tau[i - 1] = tau[i] + gr[i];
  sys.eE.resize(sys.n);
  for (std::size_t i = 0; i < sys.n; ++i) {
    // tau_i < 0 always (g_k < 0 for k >= 1); log-space keeps e^{lambda dx i}
    // from overflowing before it meets tau_i.
    sys.eE[i] = tau[i] == 0.0
                    ? 0.0
                    : -std::exp(sys.lambda * sys.dx * static_cast<double>(i) +
                                std::log(-tau[i]));
  }
  return sys;
}

// Residual layout: entry 0 is the phase row phi(0) - midpoint, entries i >= 1
// are the discrete equation eps D^alpha phi - h(phi) at node i.
void tw_residual(const TWSpec& spec, const TwSystem& sys, const std::vector<double>& phi,
                 std::vector<double>& out) {
  std::vector<double> conv = fft::linear_convolution(sys.g, phi);
  out.resize(sys.n);
  out[0] = phi[sys.m] - sys.mid;
  double a0 = spec.phi_minus - phi[0];
  for (std::size_t i = 1; i < sys.n; ++i) {
    double mem = conv[i] - spec.phi_minus * sys.gp[i] - a0 * sys.eE[i];
    out[i] = sys.dxa * mem - tw_h(spec, phi[i]);
  }
}

double residual_sup(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s = std::max(s, std::abs(v));
  return s;
}

// ---------------------------------------------------------------------------
// Far-field continuation: pointwise Weyl-Marchaud evaluation of D^alpha on a
// geometrically stretched grid to the right of the window, with exact
// product integration of the piecewise-linear interpolant and the same
// analytic closure left of the window.
// ---------------------------------------------------------------------------

struct FarPoint {
  double xi = 0.0;
  double phi = 0.0;
};

// Linear-in-phix decomposition of int_0^inf (phi(x) - phi(x - w)) w^{-1-a} dw
// over the known knots: integral = P * phix + Q.
void far_integral_coeffs(double x, const std::vector<double>& knot_xi,
                         const std::vector<double>& knot_phi, const TWSpec& spec,
                         double lambda, double& P, double& Q) {
  double alpha = spec.alpha;
  P = 0.0;
  Q = 0.0;
  std::size_t m = knot_xi.size();

  // First interval [last knot, x]: phi(x - w) interpolates between phix and
  // the last knot value; the w = 0 end is regular because the integrand
  // vanishes there.
  {
    double w_hi = x - knot_xi[m - 1];
    double c = std::pow(w_hi, -alpha) / (1.0 - alpha);
    P += c;
    Q -= c * knot_phi[m - 1];
  }
  // Interior intervals, scanned right to left.
  for (std::size_t j = m - 1; j >= 1; --j) {
    double w_lo = x - knot_xi[j];
    double w_hi = x - knot_xi[j - 1];
    double pa = knot_phi[j - 1], pb = knot_phi[j];
    double m0 = (std::pow(w_lo, -alpha) - std::pow(w_hi, -alpha)) / alpha;
    double m1 = (std::pow(w_hi, 1.0 - alpha) - std::pow(w_lo, 1.0 - alpha)) / (1.0 - alpha) -
                w_lo * m0;
    P += m0;
    Q += -pb * m0 - (pa - pb) * m1 / (w_hi - w_lo);
  }
  // Closure beyond the window: phi(s) = phi_minus - A e^{lambda s} for
  // s < xi_0, with A e^{lambda xi_0} = phi_minus - phi(xi_0).
  {
    double wc = x - knot_xi[0];
    double mc = std::pow(wc, -alpha) / alpha;
    P += mc;
    Q -= spec.phi_minus * mc;
    // (phi_minus - phi(xi_0)) * int_0^inf e^{-lambda v} (wc + v)^{-1-alpha} dv
    double v_max = 45.0 / lambda;
    const int intervals = 256;  // Simpson on a smooth decaying integrand
    double h = v_max / intervals;
    auto f = [&](double v) { return std::exp(-lambda * v) * std::pow(wc + v, -1.0 - alpha); };
    double s = f(0.0) + f(v_max);
    for (int k = 1; k < intervals; ++k) s += (k % 2 ? 4.0 : 2.0) * f(h * static_cast<double>(k));
    double jint = s * h / 3.0;
    Q += (spec.phi_minus - knot_phi[0]) * jint;
  }
}

void extend_far_field(const TWSpec& spec, double lambda, TWProfile& profile) {
  const GridSpec& g = spec.grid;
  double edge = g.x_end();
  if (edge <= 0.0) return;

  std::vector<double> knot_xi(g.n), knot_phi = profile.values;
  for (std::size_t i = 0; i < g.n; ++i) knot_xi[i] = g.x(i);

  double calpha = spec.alpha * frac_normalizer(spec.alpha);  // alpha / Gamma(1-alpha)
  double x = edge;
  double prev_phi = profile.values.back();
  while (x * kFarRatio <= kFarLimit) {
    x *= kFarRatio;
    double P, Q;
    far_integral_coeffs(x, knot_xi, knot_phi, spec, lambda, P, Q);
    // Solve eps * calpha * (P phix + Q) = h(phix); the left side is strictly
    // increasing in phix and h' < 0 near phi_plus, so Newton is safe.
    double phix = spec.phi_plus + (prev_phi - spec.phi_plus) * std::pow(kFarRatio, -spec.alpha);
    for (int it = 0; it < 50; ++it) {
      double f = spec.epsilon * calpha * (P * phix + Q) - tw_h(spec, phix);
      double fp = spec.epsilon * calpha * P - tw_h_prime(spec, phix);
      double step = f / fp;
      phix -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(phix))) break;
    }
    knot_xi.push_back(x);
    knot_phi.push_back(phix);
    profile.far_xi.push_back(x);
    profile.far_phi.push_back(phix);
    prev_phi = phix;
  }
}

}  // namespace

void validate_tw_spec(const TWSpec& spec) {
  if (!spec.flux.f || !spec.flux.f_prime)
    throw std::invalid_argument("traveling wave: spec needs a flux");
  if (!spec.flux.convex)
    throw std::invalid_argument("traveling wave: requires a convex flux");
  if (!(spec.phi_minus > spec.phi_plus))
    throw std::invalid_argument("traveling wave: need phi_minus > phi_plus");
  if (!(spec.epsilon > 0.0))
    throw std::invalid_argument("traveling wave: epsilon must be positive");
  if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0))
    throw std::invalid_argument("traveling wave: alpha must lie strictly inside (0,1)");
  validate_grid(spec.grid);
  if (spec.grid.domain != Domain::TruncatedLine)
    throw std::invalid_argument("traveling wave: grid must be a truncated line");
  double span = profile_span(spec);
  if (std::abs(spec.grid.pad_left - spec.phi_minus) > 1e-9 * std::max(1.0, span) ||
      std::abs(spec.grid.pad_right - spec.phi_plus) > 1e-9 * std::max(1.0, span))
    throw std::invalid_argument("traveling wave: grid pads must equal the end states");
  phase_index(spec.grid);
  validate_flux(spec.flux, spec.phi_plus, spec.phi_minus);
  if (!(tw_h_prime(spec, spec.phi_minus) > 0.0) || !(tw_h_prime(spec, spec.phi_plus) < 0.0))
    throw std::invalid_argument(
        "traveling wave: end states are degenerate (need h'(phi_minus) > 0 > h'(phi_plus))");
}

double wave_speed(const TWSpec& spec) {
  return (spec.flux.f(spec.phi_plus) - spec.flux.f(spec.phi_minus)) /
         (spec.phi_plus - spec.phi_minus);
}

double tw_h(const TWSpec& spec, double phi) {
  double c = wave_speed(spec);
  return -c * (phi - spec.phi_minus) + spec.flux.f(phi) - spec.flux.f(spec.phi_minus);
}

double tw_h_prime(const TWSpec& spec, double phi) {
  return -wave_speed(spec) + spec.flux.f_prime(phi);
}

void validate_tw_profile(const TWProfile& profile) {
  const TWSpec& spec = profile.spec;
  if (profile.values.size() != spec.grid.n)
    throw std::invalid_argument("traveling wave: profile length does not match grid");
  double span = profile_span(spec);
  double slack = 1e-10 * std::max(1.0, span);
  for (std::size_t i = 1; i < profile.values.size(); ++i)
    if (profile.values[i] > profile.values[i - 1] + slack)
      throw std::invalid_argument("traveling wave: profile is not monotone");
  double lo = spec.phi_plus - 1e-8 * span, hi = spec.phi_minus + 1e-8 * span;
  for (double v : profile.values)
    if (v < lo || v > hi)
      throw std::invalid_argument("traveling wave: profile leaves [phi_plus, phi_minus]");
  for (std::size_t i = 1; i < profile.far_phi.size(); ++i)
    if (profile.far_phi[i] > profile.far_phi[i - 1] + slack)
      throw std::invalid_argument("traveling wave: far field is not monotone");
}

double profile_residual_sup(const TWSpec& spec, const std::vector<double>& values) {
  validate_tw_spec(spec);
  if (values.size() != spec.grid.n)
    throw std::invalid_argument("traveling wave: values length does not match grid");
  TwSystem sys = build_tw_system(spec);
  std::vector<double> r;
  tw_residual(spec, sys, values, r);
  double s = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) s = std::max(s, std::abs(r[i]));
  return s;
}

TWProfile solve_profile(const TWSpec& spec) {
  validate_tw_spec(spec);
  TwSystem sys = build_tw_system(spec);
  std::size_t n = sys.n;
  double span = profile_span(spec);

  // Initial guess: the exact left mode anchored at the midpoint, matched to an
  // algebraic decay on the right.
  std::vector<double> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    double xi = spec.grid.x(i);
    if (xi <= 0.0)
      phi[i] = spec.phi_minus - 0.5 * span * std::exp(sys.lambda * xi);
    else
      phi[i] = spec.phi_plus + 0.5 * span * std::pow(1.0 + sys.lambda * xi, -spec.alpha);
  }

  std::vector<double> res, res_try, hp(n), a(n), b(n), delta(n), phi_try(n);
  tw_residual(spec, sys, phi, res);
  double sup = residual_sup(res);

  bool converged = sup < kNewtonTol;
  for (std::size_t iter = 0; iter < kNewtonMaxIters && !converged; ++iter) {
    for (std::size_t i = 0; i < n; ++i) hp[i] = tw_h_prime(spec, phi[i]);

    // Rows i >= 1 are lower triangular in columns >= 1 plus a dense column 0
    // (through the closure amplitude). Two forward substitutions give the
    // response to the residual and to column 0; the phase row then fixes
    // delta_0 (bordered solve).
    for (std::size_t i = 1; i < n; ++i) {
      double acc_a = -res[i];
      double acc_b = -sys.dxa * (sys.g[i] + sys.eE[i]);
      for (std::size_t j = 1; j < i; ++j) {
        double lij = sys.dxa * sys.g[i - j];
        acc_a -= lij * a[j];
        acc_b -= lij * b[j];
      }
      double diag = sys.dxa - hp[i];
      a[i] = acc_a / diag;
      b[i] = acc_b / diag;
    }
    if (std::abs(b[sys.m]) < 1e-14)
      throw std::runtime_error("traveling wave: phase condition is degenerate");
    double d0 = (-res[0] - a[sys.m]) / b[sys.m];
    delta[0] = d0;
    for (std::size_t i = 1; i < n; ++i) delta[i] = a[i] + b[i] * d0;

    // Backtracking line search on the sup residual.
    double step = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings < 30; ++halvings) {
      for (std::size_t i = 0; i < n; ++i) phi_try[i] = phi[i] + step * delta[i];
      tw_residual(spec, sys, phi_try, res_try);
      double sup_try = residual_sup(res_try);
      if (sup_try < sup * (1.0 - 1e-4 * step) || sup_try < kNewtonTol) {
        phi.swap(phi_try);
        res.swap(res_try);
        sup = sup_try;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw std::runtime_error("traveling wave: Newton line search stalled");
    converged = sup < kNewtonTol;
  }
  if (!converged)
    throw std::runtime_error("traveling wave: Newton did not reach the residual tolerance");

  TWProfile profile;
  profile.spec = spec;
  profile.values = phi;
  profile.residual_norm = sup;

  // Midpoint crossing by linear interpolation around the phase node.
  profile.phase_anchor = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if ((phi[i - 1] - sys.mid) * (phi[i] - sys.mid) <= 0.0 && phi[i - 1] != phi[i]) {
      double f = (phi[i - 1] - sys.mid) / (phi[i - 1] - phi[i]);
      profile.phase_anchor = spec.grid.x(i - 1) + f * spec.grid.dx;
      break;
    }
  }

  extend_far_field(spec, sys.lambda, profile);
  return profile;
}

// ---------------------------------------------------------------------------
// Tail exponent fits with slope-stationarity window selection.
// ---------------------------------------------------------------------------

namespace {

struct TailSamples {
  std::vector<double> x;  // abscissa of the fit (xi, or log xi)
  std::vector<double> y;  // log of the decaying quantity
};

// Longest window [a,b] whose centered local slopes stay within 5% of each
// other and whose abscissa range reaches the requested extent.
bool stationary_window(const std::vector<double>& xs, const std::vector<double>& ys,
                       double need_range, std::size_t& best_a, std::size_t& best_b,
                       double& best_range) {
  std::size_t n = xs.size();
  best_range = 0.0;
  bool found = false;
  if (n < 10) return false;
  std::vector<double> slope(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; ++j)
    slope[j] = (ys[j + 1] - ys[j - 1]) / (xs[j + 1] - xs[j - 1]);
  for (std::size_t a = 1; a + 8 < n; ++a) {
    double smin = slope[a], smax = slope[a];
    for (std::size_t b = a + 1; b + 1 < n; ++b) {
      smin = std::min(smin, slope[b]);
      smax = std::max(smax, slope[b]);
      double scale = std::max({std::abs(smin), std::abs(smax), 0.02});
      if (smax - smin > kSlopeStationarity * scale) break;
      double range = xs[b] - xs[a];
      if (range >= need_range && range > best_range) {
        best_range = range;
        best_a = a;
        best_b = b;
        found = true;
      }
    }
  }
  return found;
}

}  // namespace

TailFit tail_exponents(const TWProfile& profile) {
  const TWSpec& spec = profile.spec;
  const GridSpec& g = spec.grid;
  double span = profile_span(spec);
  double floor_v = 1e-13 * span;
  TailFit fit;

  // Right tail: log(phi - phi_plus) vs log xi over geometrically subsampled
  // window nodes plus the far-field continuation.
  {
    TailSamples s;
    double next_level = 0.3;
    for (std::size_t i = 0; i < g.n; ++i) {
      double xi = g.x(i);
      if (xi < next_level) continue;
      double d = profile.values[i] - spec.phi_plus;
      if (d > floor_v) {
        s.x.push_back(std::log(xi));
        s.y.push_back(std::log(d));
      }
      next_level = xi * 1.05;
    }
    for (std::size_t j = 0; j < profile.far_xi.size(); ++j) {
      double d = profile.far_phi[j] - spec.phi_plus;
      if (d > floor_v) {
        s.x.push_back(std::log(profile.far_xi[j]));
        s.y.push_back(std::log(d));
      }
    }
    std::size_t a = 0, b = 0;
    double got = 0.0;
    if (!stationary_window(s.x, s.y, std::log(10.0), a, b, got))
      throw std::runtime_error(
          "tail_exponents: right tail has no slope-stationary decade; extend the "
          "window or the far field past xi = " +
          std::to_string(g.x_end() * 10.0));
    std::vector<double> xs(s.x.begin() + a, s.x.begin() + b + 1);
    std::vector<double> ys(s.y.begin() + a, s.y.begin() + b + 1);
    LineFit lf = fit_line(xs, ys);
    fit.alpha_fit = -lf.slope;
    fit.right_window_lo = std::exp(s.x[a]);
    fit.right_window_hi = std::exp(s.x[b]);
    std::vector<double> amp(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j)
      amp[j] = std::exp(ys[j] + fit.alpha_fit * xs[j]);
    std::nth_element(amp.begin(), amp.begin() + amp.size() / 2, amp.end());
    fit.right_amplitude = amp[amp.size() / 2];
  }

  // Left tail: log(phi_minus - phi) vs xi (exponential decay, linear in xi).
  {
    TailSamples s;
    std::size_t stride = std::max<std::size_t>(1, g.n / 2000);
    for (std::size_t i = 0; i < g.n; i += stride) {
      double xi = g.x(i);
      if (xi > -2.0 * g.dx) break;
      double d = spec.phi_minus - profile.values[i];
      if (d > floor_v) {
        s.x.push_back(xi);
        s.y.push_back(std::log(d));
      }
    }
    std::size_t a = 0, b = 0;
    double got = 0.0;
    // A value decade corresponds to an abscissa range of ln(10)/lambda.
    double lambda = left_mode_rate(spec);
    if (!stationary_window(s.x, s.y, std::log(10.0) / lambda, a, b, got))
      throw std::runtime_error(
          "tail_exponents: left tail has no slope-stationary decade; extend the "
          "window left past xi = " +
          std::to_string(g.x0 - std::log(10.0) / lambda));
    std::vector<double> xs(s.x.begin() + a, s.x.begin() + b + 1);
    std::vector<double> ys(s.y.begin() + a, s.y.begin() + b + 1);
    LineFit lf = fit_line(xs, ys);
    fit.lambda_fit = lf.slope;
    fit.left_window_lo = s.x[a];
    fit.left_window_hi = s.x[b];
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Mittag-Leffler fundamental tail function v(z) = E_alpha(mu z^alpha), mu < 0.
// ---------------------------------------------------------------------------

namespace {

double ml_series(double x, double alpha) {
  // sum_j (-x)^j / Gamma(1 + alpha j), extended precision against the
  // cancellation that grows like e^{x^{1/alpha}}.
  long double sum = 0.0L;
  long double lx = std::log(static_cast<long double>(x));
  for (int j = 0; j <= 600; ++j) {
    long double lt = static_cast<long double>(j) * lx -
                     std::lgamma(1.0L + static_cast<long double>(alpha) * j);
    long double term = std::exp(lt);
    sum += (j % 2 == 0) ? term : -term;
    if (term < 1e-22L * std::abs(sum) && j > 3) break;
  }
  return static_cast<double>(sum);
}

double ml_asymptotic(double x, double alpha) {
  // sum_j (-1)^{j+1} x^{-j} / Gamma(1 - alpha j) with optimal truncation at
  // the smallest nonzero term (poles of Gamma zero out entire terms).
  double sum = 0.0;
  double last_mag = std::numeric_limits<double>::infinity();
  double xinv = 1.0 / x, xpow = 1.0;
  for (int j = 1; j <= 120; ++j) {
    xpow *= xinv;
    double rg = reciprocal_gamma(1.0 - alpha * static_cast<double>(j));
    double term = (j % 2 == 1 ? 1.0 : -1.0) * xpow * rg;
    double mag = std::abs(term);
    if (mag > 0.0) {
      if (mag >= last_mag) break;  // past the optimal truncation point
      sum += term;
      if (mag < 1e-20 * std::abs(sum)) break;
      last_mag = mag;
    }
  }
  return sum;
}

}  // namespace

double mittag_leffler_v(double z, double alpha, double mu) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("mittag_leffler_v: alpha must lie strictly inside (0,1)");
  if (!(mu < 0.0)) throw std::invalid_argument("mittag_leffler_v: mu must be < 0");
  if (z < 0.0) throw std::invalid_argument("mittag_leffler_v: z must be >= 0");
  if (z == 0.0) return 1.0;

  double x = -mu * std::pow(z, alpha);
  // Error-balanced crossover: the series loses e^{x^{1/alpha}} * eps to
  // cancellation while the asymptotic floor falls like e^{-x^{1/alpha}}; both
  // are near their best around x^{1/alpha} = 18.4, blended over +/- 7%.
  double x_star = std::pow(18.4, alpha);
  double lo = 0.93 * x_star, hi = 1.07 * x_star;
  if (x <= lo) return ml_series(x, alpha);
  if (x >= hi) return ml_asymptotic(x, alpha);
  double u = (x - lo) / (hi - lo);
  double w = u * u * (3.0 - 2.0 * u);
  return (1.0 - w) * ml_series(x, alpha) + w * ml_asymptotic(x, alpha);
}

double mittag_leffler_v_tail_constant(double alpha, double mu) {
  if (!(mu < 0.0))
    throw std::invalid_argument("mittag_leffler_v_tail_constant: mu must be < 0");
  return -frac_normalizer(alpha) / mu;  // -1 / (mu Gamma(1 - alpha))
}

}  // namespace fracwave
