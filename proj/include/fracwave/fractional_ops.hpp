// Discrete fractional operators: shifted Grünwald–Letnikov weights, the
// one-sided derivative-of-order-(1+alpha) apply, its adjoint, the skewed
// Riesz–Feller combination, and their exact Fourier symbols.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fracwave/grid.hpp"

namespace fracwave {

// Shifted Grünwald–Letnikov weights w_k = (-1)^k binom(alpha+1, k) for the
// operator d/dx D^alpha (order alpha+1), via the stable recurrence
// w_0 = 1, w_k = w_{k-1} (k - alpha - 2)/k.
std::vector<double> gl_weights(double alpha, std::size_t count);

// Same recurrence for an arbitrary order sigma in (0, 2]; gl_weights(alpha, n)
// equals gl_weights_order(alpha + 1, n).
std::vector<double> gl_weights_order(double sigma, std::size_t count);

// Sum of |w_k| over all k for order sigma in (1,2]: w_1 = -sigma is the only
// negative weight and the weights sum to zero, so the value is exactly 2*sigma.
inline double gl_weight_abs_sum(double sigma) { return 2.0 * sigma; }

// Splitting of the Riesz–Feller operator into left and right one-sided parts:
// D^beta_gamma = p * GL_left(beta) + q * GL_right(beta). Both coefficients are
// nonnegative exactly when |gamma| <= min(beta, 2-beta).
struct Splitting {
  double p = 0.0;
  double q = 0.0;
};
Splitting splitting_coeffs(const FracParams& params);

// Largest deviation between the closed-form splitting and a least-squares fit
// of the exact symbol over xi in [-8, 8]; build-time validation hook.
double splitting_ls_residual(const FracParams& params);

// Exact Fourier symbol of the operator on e^{i xi x}:
//   OneSided(alpha):        (i xi)^{1+alpha}            (principal branch)
//   RieszFeller(beta,gamma): -|xi|^beta e^{-i sign(xi) gamma pi/2}
// The two coincide for beta = 1+alpha, gamma = 1-alpha. Real part <= 0.
std::complex<double> exact_symbol(double xi, const FracParams& params);

// Eigenvalue of the discrete (grid) operator on e^{i xi x} at spacing dx.
std::complex<double> discrete_symbol(double xi, double dx, const FracParams& params);

// Operator applies. Periodic grids use the exact circulant eigenvalues (the
// fully folded weight sum); truncated-line grids use a Toeplitz apply with the
// constant-pad closure, exact because the weights sum to zero.
Field apply_dx_caputo(const Field& u, const FracParams& params, const GridSpec& grid);
Field apply_dx_caputo_adjoint(const Field& u, const FracParams& params, const GridSpec& grid);
Field apply_riesz_feller(const Field& u, const FracParams& params, const GridSpec& grid);

// Reusable operator with the weight spectrum (truncated line) or circulant
// eigenvalues (periodic) precomputed once; time steppers apply it thousands
// of times. apply() is safe to call concurrently on distinct outputs.
class FracOperator {
 public:
  FracOperator(const GridSpec& grid, double order, double p, double q);
  void apply(const std::vector<double>& u, std::vector<double>& out) const;

 private:
  GridSpec grid_;
  double order_;
  double p_, q_;
  std::size_t fft_n_ = 0;
  std::vector<std::complex<double>> w_hat_;     // truncated line
  std::vector<std::complex<double>> transfer_;  // periodic

  void apply_left(const std::vector<double>& u, double pad_l, double pad_r, double coeff,
                  std::vector<double>& out) const;
};

// One-shot convenience wrapper around FracOperator.
void apply_frac_raw(const std::vector<double>& u, std::vector<double>& out,
                    const GridSpec& grid, double order, double p, double q);

}  // namespace fracwave
