// Traveling-wave profile eps * D^alpha[phi] = h(phi) connecting phi_minus to
// phi_plus: damped-Newton solve with an analytic exponential left-tail
// closure, geometric-grid continuation into the algebraic right tail, tail
// exponent fits, and the Mittag-Leffler fundamental solution v(z).
#pragma once

#include <cstddef>
#include <vector>

#include "fracwave/grid.hpp"

namespace fracwave {

struct TWSpec {
  FluxFn flux;          // convex
  double phi_minus = 1.0;
  double phi_plus = 0.0;  // phi_minus > phi_plus
  double epsilon = 1.0;   // > 0
  double alpha = 0.5;     // one-sided fractional order in (0,1)
  GridSpec grid;          // TruncatedLine with pads phi_minus, phi_plus
};

void validate_tw_spec(const TWSpec& spec);

// Rankine-Hugoniot speed c = (f(phi_plus) - f(phi_minus))/(phi_plus - phi_minus).
double wave_speed(const TWSpec& spec);

// h(phi) = -c (phi - phi_minus) + f(phi) - f(phi_minus); h(phi_pm) = 0,
// h'(phi_minus) > 0 > h'(phi_plus) for convex f.
double tw_h(const TWSpec& spec, double phi);
double tw_h_prime(const TWSpec& spec, double phi);

struct TWProfile {
  TWSpec spec;
  std::vector<double> values;   // phi at the uniform grid nodes
  double residual_norm = 0.0;   // sup |discrete residual| at convergence
  double phase_anchor = 0.0;    // xi where phi crosses the midpoint
  // Far-field continuation on a geometrically stretched grid past the window,
  // for algebraic-tail fits that need decades of range.
  std::vector<double> far_xi;
  std::vector<double> far_phi;
};

void validate_tw_profile(const TWProfile& profile);

// Newton solve of the discretized profile equation with the phase condition
// phi(0) = (phi_minus + phi_plus)/2. The memory left of the window is closed
// with the linearized mode phi_minus - A e^{lambda xi}; the resulting system
// is lower triangular plus one dense column and the phase row.
TWProfile solve_profile(const TWSpec& spec);

// Discrete residual of given values under the spec's grid (diagnostic; also
// used for the resolution-halving consistency check).
double profile_residual_sup(const TWSpec& spec, const std::vector<double>& values);

struct TailFit {
  double lambda_fit = 0.0;      // left: slope of log(phi_minus - phi) vs xi
  double alpha_fit = 0.0;       // right: -slope of log(phi - phi_plus) vs log xi
  double right_amplitude = 0.0; // median of (phi - phi_plus) * xi^alpha_fit
  double left_window_lo = 0.0, left_window_hi = 0.0;
  double right_window_lo = 0.0, right_window_hi = 0.0;
};

// Fit windows are auto-selected by local-slope stationarity (within 5%);
// rejects profiles without at least one decade of usable tail per side,
// reporting the window that would be required.
TailFit tail_exponents(const TWProfile& profile);

// v(z) = E_alpha(mu z^alpha) for mu < 0: power series in the small-|mu z^alpha|
// regime, asymptotic series in the large regime, with an error-balanced
// crossover; v(0) = 1 exactly.
double mittag_leffler_v(double z, double alpha, double mu);

// Asymptotic constant: z^alpha v(z) -> -1/(mu Gamma(1-alpha)) as z -> infinity.
double mittag_leffler_v_tail_constant(double alpha, double mu);

}  // namespace fracwave
