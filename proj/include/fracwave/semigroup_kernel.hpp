// Self-similar semigroup kernel K(t, x) = t^{-1/(1+alpha)} K(1, x t^{-1/(1+alpha)}):
// oscillatory-integral tabulation of the unit profile, pointwise evaluation
// with the documented tail model, and kernel convolution of sampled data.
#pragma once

#include <cstddef>
#include <vector>

#include "fracwave/grid.hpp"

namespace fracwave {

// Tabulated unit-time profile K(1, y) on a uniform y grid with quadrature
// metadata. Invariants (enforced by build_kernel_profile): values bounded
// below by -quad_tol, and estimated total mass within 10*quad_tol of 1.
struct KernelProfile {
  double alpha = 0.5;
  GridSpec y_grid;
  std::vector<double> values;
  double quad_tol = 1e-8;
  double xi_max = 0.0;
};

// Frequency truncation cap; quadratures requesting more are rejected.
inline constexpr double kXiMaxCap = 1.0e4;

// Builds K(1, .) on y_grid by trapezoidal inversion of exp((i xi)^{1+alpha})
// over |xi| <= xi_max(quad_tol). The xi spacing is tied to an alias period of
// 8x the window span, so the only discretization error is tail aliasing.
// quad_tol must lie in (1e-14, 1e-3).
KernelProfile build_kernel_profile(double alpha, const GridSpec& y_grid, double quad_tol);

// Same quadrature with a spectral multiplier, for the profile's y- and
// t-derivatives (used by the mild solver and the self-similarity identity).
enum class KernelMultiplier { Identity, DY, DT };
std::vector<double> kernel_quadrature(double alpha, const GridSpec& y_grid, double quad_tol,
                                      KernelMultiplier mult);

// K(t, x) for t > 0 by self-similar scaling of the profile: interpolated in
// the window, C/y^2 model beyond the right edge (C fitted at the outermost
// samples), zero beyond the left edge (super-exponential side).
double kernel_at(double t, double x, const KernelProfile& profile);

// Trapezoidal window mass plus the analytic algebraic-tail estimate, with the
// aliased-in tail mass subtracted; should sit within 10*quad_tol of 1.
double kernel_mass_estimate(const KernelProfile& profile);

// Discrete L1 norm of the profile (|values| window integral + tail estimate).
double kernel_l1_norm(const KernelProfile& profile);

// Coefficient of the C/y^2 diagnostic tail model fitted at the window edge.
double kernel_tail_coefficient(const KernelProfile& profile);

// Peak bound sqrt(2) Gamma(1/(1+alpha)) / (sqrt(pi) (1+alpha) sin^{1/(1+alpha)}(alpha pi/2)).
double kernel_peak_bound(double alpha);

// Coefficient of the true leading right-tail asymptote K(1,y) ~ c y^{-(2+alpha)}.
double kernel_tail_asymptote_coeff(double alpha);

// u(t) = K(t) * u0: quadrature over the scaled profile grid extended past the
// right window edge by the analytic algebraic-tail model, renormalized by the
// total discrete kernel mass so constants are reproduced exactly.
Field convolve_with_kernel(const Field& u0, double t, const KernelProfile& profile);

// Convolution against the scaled derivative profile dK(t)/dx * g, used by the
// Duhamel term of the mild solver. dvalues must come from kernel_quadrature
// with KernelMultiplier::DY on profile.y_grid.
std::vector<double> convolve_with_kernel_derivative(const std::vector<double>& g,
                                                    const GridSpec& grid, double t,
                                                    const KernelProfile& profile,
                                                    const std::vector<double>& dvalues);

}  // namespace fracwave
