// Traveling-wave module: reduced flux algebra, the damped-Newton profile
// solve, tail exponent fits, viscosity rescaling, and the Mittag-Leffler
// fundamental solution against independent oracles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fracwave/grid.hpp>
#include <fracwave/traveling_wave.hpp>
#include <fracwave/util.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "test_support.hpp"

using namespace fracwave;

namespace {

constexpr double kTinyTol = 1e-12;

TWSpec wave_spec(double alpha, double eps, double x0, double x1, double dx) {
  TWSpec s;
  s.flux = burgers_flux();
  s.epsilon = eps;
  s.alpha = alpha;
  s.grid.domain = Domain::TruncatedLine;
  s.grid.x0 = x0;
  s.grid.dx = dx;
  s.grid.n = static_cast<std::size_t>(std::lround((x1 - x0) / dx)) + 1;
  s.grid.pad_left = s.phi_minus;
  s.grid.pad_right = s.phi_plus;
  return s;
}

// Evaluate a profile anywhere: pads left of the window, linear interpolation
// inside, and the geometric far-field continuation to the right.
double eval_profile(const TWProfile& p, double xi) {
  const GridSpec& g = p.spec.grid;
  if (xi <= g.x0) return g.pad_left;
  if (xi <= g.x_end()) return interp_uniform(p.values, g.x0, g.dx, xi);
  for (std::size_t i = 1; i < p.far_xi.size(); ++i)
    if (p.far_xi[i] >= xi) {
      double w = (xi - p.far_xi[i - 1]) / (p.far_xi[i] - p.far_xi[i - 1]);
      return (1.0 - w) * p.far_phi[i - 1] + w * p.far_phi[i];
    }
  return g.pad_right;
}

}  // namespace

TEST_CASE("wave speed and reduced flux vanish at the end states") {
  TWSpec s = wave_spec(0.5, 1.0, -56.0, 40.0, 0.02);
  CHECK(wave_speed(s) == doctest::Approx(0.5).epsilon(kTinyTol));
  CHECK(std::abs(tw_h(s, s.phi_minus)) <= kTinyTol);
  CHECK(std::abs(tw_h(s, s.phi_plus)) <= kTinyTol);
  // h(u) = u(u-1)/2 for the 1 -> 0 Burgers wave
  CHECK(tw_h(s, 0.5) == doctest::Approx(-0.125).epsilon(kTinyTol));
  CHECK(tw_h_prime(s, 1.0) == doctest::Approx(0.5).epsilon(kTinyTol));
  CHECK(tw_h_prime(s, 0.0) == doctest::Approx(-0.5).epsilon(kTinyTol));

  TWSpec sym = s;
  sym.phi_plus = -1.0;
  sym.grid.pad_right = -1.0;
  CHECK(std::abs(wave_speed(sym)) <= kTinyTol);

  TWSpec quartic = s;
  quartic.flux = quartic_flux();
  CHECK(wave_speed(quartic) == doctest::Approx(1.0).epsilon(kTinyTol));
  CHECK(tw_h_prime(quartic, 1.0) == doctest::Approx(3.0).epsilon(kTinyTol));
  CHECK(tw_h_prime(quartic, 0.0) == doctest::Approx(-1.0).epsilon(kTinyTol));
}

TEST_CASE("spec validation rejects ill-posed wave problems") {
  TWSpec base = wave_spec(0.5, 1.0, -56.0, 40.0, 0.02);
  CHECK_NOTHROW(validate_tw_spec(base));

  TWSpec s = base;
  s.flux = FluxFn{};
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  s = base;
  s.flux.f = [](double u) { return std::sin(u); };
  s.flux.f_prime = [](double u) { return std::cos(u); };
  s.flux.label = "sine";
  s.flux.convex = false;
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  s = base;
  s.phi_minus = 0.0;
  s.phi_plus = 1.0;
  s.grid.pad_left = 0.0;
  s.grid.pad_right = 1.0;
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  s = base;
  s.epsilon = 0.0;
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);
  s.epsilon = -1.0;
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  s = base;
  for (double a : {0.0, 1.0, 1.2, -0.3}) {
    s.alpha = a;
    CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);
  }

  s = base;
  s.grid.domain = Domain::Periodic;
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  s = base;
  s.grid.pad_left = 0.9;
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  // no node lands exactly on xi = 0
  s = wave_spec(0.5, 1.0, -56.01, 40.0, 0.02);
  CHECK_THROWS_WITH_AS(validate_tw_spec(s),
                       "traveling wave: grid must contain xi = 0 strictly inside",
                       std::invalid_argument);
  // xi = 0 on the boundary is not strictly inside
  s = wave_spec(0.5, 1.0, 0.0, 40.0, 0.02);
  CHECK_THROWS_AS(validate_tw_spec(s), std::invalid_argument);

  // linear flux makes the speed equal f' everywhere, so both end states
  // lose their attracting/repelling character
  s = base;
  s.flux = linear_flux(0.5);
  CHECK_THROWS_WITH_AS(
      validate_tw_spec(s),
      "traveling wave: end states are degenerate (need h'(phi_minus) > 0 > h'(phi_plus))",
      std::invalid_argument);
}

TEST_CASE("unit-viscosity profile solves to a monotone connection") {
  TWProfile p = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, 0.02));
  CHECK(p.residual_norm <= 1e-12);
  CHECK_NOTHROW(validate_tw_profile(p));
  CHECK(std::abs(p.phase_anchor) <= 0.05);
  for (std::size_t i = 1; i < p.values.size(); ++i)
    CHECK(p.values[i] <= p.values[i - 1] + kTinyTol);
  for (double v : p.values) {
    CHECK(v >= -1e-9);
    CHECK(v <= 1.0 + 1e-9);
  }
  // frozen interior samples of the converged profile
  CHECK(eval_profile(p, -1.0) == doctest::Approx(0.522150).epsilon(1e-4));
  CHECK(eval_profile(p, 1.0) == doctest::Approx(0.479393).epsilon(1e-4));

  // far-field continuation starts at the window edge and reaches decades out
  REQUIRE(p.far_xi.size() >= 2);
  CHECK(p.far_xi.front() >= p.spec.grid.x_end() - kTinyTol);
  CHECK(p.far_xi.back() >= 1000.0);
  for (std::size_t i = 1; i < p.far_xi.size(); ++i) CHECK(p.far_xi[i] > p.far_xi[i - 1]);
  for (std::size_t i = 1; i < p.far_phi.size(); ++i)
    CHECK(p.far_phi[i] <= p.far_phi[i - 1] + kTinyTol);
  CHECK(p.far_phi.back() <= 0.05);

  // the public residual diagnostic agrees with the converged norm
  CHECK(profile_residual_sup(p.spec, p.values) <= 1e-12);
  std::vector<double> short_values(p.values.begin(), p.values.end() - 1);
  CHECK_THROWS_AS(profile_residual_sup(p.spec, short_values), std::invalid_argument);
}

TEST_CASE("profile validation rejects tampered output") {
  TWProfile p = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, 0.08));
  CHECK_NOTHROW(validate_tw_profile(p));

  TWProfile bad = p;
  bad.values.pop_back();
  CHECK_THROWS_AS(validate_tw_profile(bad), std::invalid_argument);

  bad = p;
  std::size_t mid = bad.values.size() / 2;
  std::swap(bad.values[mid], bad.values[mid + 40]);
  CHECK_THROWS_AS(validate_tw_profile(bad), std::invalid_argument);

  bad = p;
  bad.values[0] = 1.2;  // monotone but outside [phi_plus, phi_minus]
  CHECK_THROWS_AS(validate_tw_profile(bad), std::invalid_argument);

  bad = p;
  REQUIRE(bad.far_phi.size() >= 2);
  bad.far_phi[1] = bad.far_phi[0] + 1.0;
  CHECK_THROWS_AS(validate_tw_profile(bad), std::invalid_argument);
}

TEST_CASE("profiles converge at first order under grid refinement") {
  TWProfile ref = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, 0.005));
  std::vector<double> errs;
  for (double dx : {0.08, 0.04, 0.02}) {
    TWProfile p = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, dx));
    double worst = 0.0;
    for (std::size_t i = 0; i < p.spec.grid.n; ++i) {
      double r = interp_uniform(ref.values, ref.spec.grid.x0, ref.spec.grid.dx,
                                p.spec.grid.x(i));
      worst = std::max(worst, std::abs(p.values[i] - r));
    }
    errs.push_back(worst);
  }
  // measured 5.2e-4 / 2.4e-4 / 1.0e-4: each halving cuts the error by ~2
  for (std::size_t k = 1; k < errs.size(); ++k) {
    CHECK(errs[k] < errs[k - 1]);
    double ratio = errs[k - 1] / errs[k];
    CHECK(ratio >= 1.4);
    CHECK(ratio <= 3.2);
  }
}

TEST_CASE("viscosity rescaling commutes exactly on scaled grids") {
  TWSpec s1 = wave_spec(0.5, 1.0, -56.0, 40.0, 0.02);
  TWProfile p1 = solve_profile(s1);

  double eps = 0.25;
  double scale = std::pow(eps, 1.0 / s1.alpha);  // contraction factor 1/16
  TWSpec se = s1;
  se.epsilon = eps;
  se.grid.x0 = s1.grid.x0 * scale;
  se.grid.dx = s1.grid.dx * scale;
  TWProfile pe = solve_profile(se);

  REQUIRE(pe.values.size() == p1.values.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < p1.values.size(); ++i)
    worst = std::max(worst, std::abs(pe.values[i] - p1.values[i]));
  CHECK(worst <= kTinyTol);
}

TEST_CASE("profiles steepen toward the shock as viscosity vanishes") {
  TWProfile p1 = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, 0.02));
  TWProfile p03 = solve_profile(wave_spec(0.5, 0.3, -6.0, 6.0, 0.01));
  TWProfile p01 = solve_profile(wave_spec(0.5, 0.1, -2.0, 4.0, 0.0025));
  CHECK(p03.residual_norm <= 1e-10);
  CHECK(p01.residual_norm <= 1e-10);

  // phi_eps(xi) = phi_1(xi / eps^{1/alpha}); the smallest viscosity is
  // evaluated through that exact rescaling on the far grid
  auto rescaled = [&p1](double eps, double xi) {
    return eval_profile(p1, xi * std::pow(eps, -2.0));
  };
  std::vector<double> left = {eval_profile(p1, -1.0), eval_profile(p03, -1.0),
                              eval_profile(p01, -1.0), rescaled(0.03, -1.0)};
  std::vector<double> right = {eval_profile(p1, 1.0), eval_profile(p03, 1.0),
                               eval_profile(p01, 1.0), rescaled(0.03, 1.0)};
  for (std::size_t k = 1; k < left.size(); ++k) {
    CHECK(left[k] >= left[k - 1] - kTinyTol);   // climbs toward phi_minus = 1
    CHECK(right[k] <= right[k - 1] + kTinyTol);  // falls toward phi_plus = 0
  }
  CHECK(left.back() >= 1.0 - 1e-6);
  CHECK(right.back() <= 0.05);
  CHECK(right.back() > 0.0);
  // frozen samples from the calibrated solves
  CHECK(left[1] == doctest::Approx(0.811452).epsilon(2e-3));
  CHECK(right[2] == doctest::Approx(0.123830).epsilon(2e-3));
  // the direct small-viscosity solve agrees with the rescaled unit profile
  CHECK(std::abs(eval_profile(p01, 1.0) - rescaled(0.1, 1.0)) <= 5e-3);
}

TEST_CASE("tail fits recover the exponential rate and algebraic exponent") {
  struct Row {
    double eps, x0, lambda_target;
  };
  // left window -(12/lambda + 8) keeps a decade of exponential tail visible
  std::vector<Row> rows = {{1.0, -56.0, 0.25}, {0.5, -20.0, 1.0}, {0.25, -11.0, 4.0}};
  std::vector<double> amp_per_eps;
  for (const Row& r : rows) {
    TWProfile p = solve_profile(wave_spec(0.5, r.eps, r.x0, 40.0, 0.02));
    TailFit fit = tail_exponents(p);
    CHECK(std::abs(fit.lambda_fit - r.lambda_target) <= 0.1 * r.lambda_target);
    CHECK(std::abs(fit.alpha_fit - 0.5) <= 0.05);
    CHECK(fit.right_window_hi >= 10.0 * fit.right_window_lo);
    CHECK(fit.right_amplitude > 0.0);
    amp_per_eps.push_back(fit.right_amplitude / r.eps);
  }
  // far-field amplitude scales linearly with the viscosity
  for (double r : amp_per_eps) CHECK(std::abs(r / amp_per_eps[0] - 1.0) <= 0.2);
}

TEST_CASE("tail fits demand a decade of usable tail per side") {
  // left window too short for one value decade of the exponential mode
  TWProfile p = solve_profile(wave_spec(0.5, 1.0, -8.0, 40.0, 0.02));
  CHECK_THROWS_AS(tail_exponents(p), std::runtime_error);

  // stripping the far-field continuation starves the algebraic fit
  TWProfile q = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, 0.04));
  q.far_xi.clear();
  q.far_phi.clear();
  CHECK_THROWS_AS(tail_exponents(q), std::runtime_error);
}

TEST_CASE("under-resolved transitions stall the damped Newton solve") {
  // eps = 0.1 compresses the transition to width ~ eps^{1/alpha} = 0.01,
  // half a cell at dx = 0.02
  CHECK_THROWS_AS(solve_profile(wave_spec(0.5, 0.1, -8.48, 40.0, 0.02)),
                  std::runtime_error);
}

TEST_CASE("fundamental solution matches the half-order closed form") {
  // E_{1/2}(-x) = erfcx(x), so v(z) = erfcx(|mu| sqrt(z)) at alpha = 1/2
  CHECK(mittag_leffler_v(0.0, 0.5, -0.5) == 1.0);
  struct Probe {
    double z, rel_tol;
  };
  // the series and asymptotic branches are near machine accuracy; the
  // error-balanced crossover blend carries a ~1e-3 seam
  std::vector<Probe> probes = {{1e-4, 1e-10}, {1e-2, 1e-10}, {1.0, 1e-10},
                               {10.0, 1e-10}, {60.0, 1e-9},  {70.0, 5e-3},
                               {80.0, 5e-3},  {85.0, 5e-3},  {200.0, 1e-3},
                               {1e4, 1e-5}};
  for (const Probe& pr : probes) {
    double v = mittag_leffler_v(pr.z, 0.5, -0.5);
    double exact = testsup::erfcx(0.5 * std::sqrt(pr.z));
    CHECK(std::abs(v - exact) / exact <= pr.rel_tol);
  }
}

TEST_CASE("fundamental solution matches the spectral oracle off half order") {
  struct Probe {
    double alpha, z, rel_tol;
  };
  // the 1e-4 entry sits at the spectral oracle's own quadrature floor
  std::vector<Probe> probes = {{0.25, 0.5, 1e-9}, {0.25, 5.0, 1e-9}, {0.25, 1e3, 5e-4},
                               {0.75, 0.5, 1e-9}, {0.75, 5.0, 1e-9}, {0.75, 200.0, 1e-4}};
  for (const Probe& pr : probes) {
    double v = mittag_leffler_v(pr.z, pr.alpha, -0.5);
    double exact = testsup::ml_neg(pr.alpha, 0.5 * std::pow(pr.z, pr.alpha));
    CHECK(std::abs(v - exact) / exact <= pr.rel_tol);
  }
}

TEST_CASE("fundamental solution is positive and strictly decreasing") {
  for (double alpha : {0.25, 0.5, 0.75}) {
    double prev = mittag_leffler_v(0.0, alpha, -0.5);
    CHECK(prev == 1.0);
    for (int k = -4; k <= 8; ++k) {
      double v = mittag_leffler_v(std::pow(10.0, 0.5 * k), alpha, -0.5);
      CHECK(v > 0.0);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("fundamental solution tail constant and derivative limit") {
  // z^alpha v(z) -> -1/(mu Gamma(1-alpha)); at alpha = 1/2, mu = -1/2 the
  // constant is 2/sqrt(pi)
  double c = mittag_leffler_v_tail_constant(0.5, -0.5);
  CHECK(c == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(kTinyTol));
  CHECK(std::abs(std::sqrt(1e4) * mittag_leffler_v(1e4, 0.5, -0.5) / c - 1.0) <= 5e-4);
  // off half order the constant is approached at rate O(z^{-alpha}), so the
  // deviation shrinks across the last decade and lands under 2% at z_hi
  for (double alpha : {0.25, 0.75}) {
    double ca = mittag_leffler_v_tail_constant(alpha, -0.5);
    double z_hi = std::pow(200.0, 1.0 / alpha);
    auto dev = [&](double z) {
      return std::abs(std::pow(z, alpha) * mittag_leffler_v(z, alpha, -0.5) / ca - 1.0);
    };
    CHECK(dev(z_hi) <= 2e-2);
    CHECK(dev(z_hi) < dev(z_hi / 10.0));
    CHECK(dev(z_hi / 10.0) <= 8e-2);
  }

  // v'(z) z^{1-alpha} -> mu / Gamma(alpha) as z -> 0+; the approach is
  // O(z^alpha), so the probe shrinks as alpha does
  struct Probe {
    double alpha, z;
  };
  for (const Probe& pr : std::vector<Probe>{{0.25, 1e-8}, {0.5, 1e-4}, {0.75, 1e-4}}) {
    double h = pr.z / 100.0;
    double d = (mittag_leffler_v(pr.z + h, pr.alpha, -0.5) -
                mittag_leffler_v(pr.z - h, pr.alpha, -0.5)) /
               (2.0 * h);
    double target = -0.5 / std::tgamma(pr.alpha);
    CHECK(std::abs(d * std::pow(pr.z, 1.0 - pr.alpha) - target) / std::abs(target) <=
          2e-2);
  }
}

TEST_CASE("fundamental solution rejects bad arguments") {
  for (double a : {0.0, 1.0, -0.5, 1.5})
    CHECK_THROWS_AS(mittag_leffler_v(1.0, a, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(mittag_leffler_v(1.0, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mittag_leffler_v(1.0, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(mittag_leffler_v(-1.0, 0.5, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(mittag_leffler_v_tail_constant(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mittag_leffler_v_tail_constant(0.5, 0.3), std::invalid_argument);
}

TEST_CASE("profile tail dominates the Mittag-Leffler lower bound") {
  TWProfile p = solve_profile(wave_spec(0.5, 1.0, -56.0, 40.0, 0.02));
  double xi_inf = 20.0;
  double w0 = eval_profile(p, xi_inf);
  REQUIRE(w0 > 0.0);
  // W(z) = phi(xi_inf + z) - phi_plus sits above W(0) v(z) with mu = h'(phi_plus)/eps
  for (double z : {0.5, 1.0, 2.0, 5.0, 10.0, 15.0}) {
    double lower = w0 * mittag_leffler_v(z, 0.5, -0.5);
    CHECK(eval_profile(p, xi_inf + z) >= lower - kTinyTol);
  }
  // two-sided algebraic envelope: z^alpha W(z) stays within a fixed band
  for (double z : {5.0, 10.0, 20.0, 35.0}) {
    double scaled = std::sqrt(z) * eval_profile(p, xi_inf + z);
    CHECK(scaled >= 1.0 / 3.0);
    CHECK(scaled <= 3.0);
  }
}
