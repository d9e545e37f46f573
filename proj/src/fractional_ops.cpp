#include "fracwave/fractional_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracwave/fft.hpp"
#include "fracwave/util.hpp"

namespace fracwave {

namespace {

void validate_params(const FracParams& p) {
  if (!(p.beta > 1.0) || !(p.beta <= 2.0))
    throw std::invalid_argument("frac params: order must lie in (1,2]");
  if (std::abs(p.gamma) > std::min(p.beta, 2.0 - p.beta) + 1e-14)
    throw std::invalid_argument("frac params: |gamma| exceeds min(beta, 2-beta)");
}

// Symbol of the left-memory shifted stencil on e^{i theta k}: the absolutely
// convergent folded weight sum equals e^{i theta}(1 - e^{-i theta})^beta.
std::complex<double> stencil_symbol_left(double theta, double beta) {
  std::complex<double> one_minus = 1.0 - std::exp(std::complex<double>(0.0, -theta));
  if (std::abs(one_minus) == 0.0) return 0.0;
  return std::exp(std::complex<double>(0.0, theta)) * std::pow(one_minus, beta);
}

}  // namespace

std::vector<double> gl_weights_order(double sigma, std::size_t count) {
  if (!(sigma > 0.0) || !(sigma <= 2.0))
    throw std::invalid_argument("gl_weights_order: order must lie in (0,2]");
  if (count == 0) throw std::invalid_argument("gl_weights_order: empty weight request");
  std::vector<double> w(count);
  w[0] = 1.0;
  for (std::size_t k = 1; k < count; ++k)
    w[k] = w[k - 1] * ((static_cast<double>(k) - 1.0 - sigma) / static_cast<double>(k));
  return w;
}

std::vector<double> gl_weights(double alpha, std::size_t count) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("gl_weights: alpha must lie strictly inside (0,1)");
  if (count < 2) throw std::invalid_argument("gl_weights: need at least 2 weights");
  return gl_weights_order(alpha + 1.0, count);
}

Splitting splitting_coeffs(const FracParams& params) {
  validate_params(params);
  if (params.kind == FracKind::OneSided) return {1.0, 0.0};
  double beta = params.beta;
  double gamma = params.gamma;
  if (beta == 2.0) return {0.5, 0.5};  // 0/0 limit: centered second difference
  double theta = 0.5 * M_PI * beta;
  double phi = 0.5 * M_PI * gamma;
  double den = std::sin(2.0 * theta);  // sin(beta pi) < 0 on (1,2)
  Splitting s;
  s.p = -std::sin(theta - phi) / den;
  s.q = -std::sin(theta + phi) / den;
  // Clamp the tiny negative round-off at the admissibility boundary.
  if (s.p < 0.0 && s.p > -1e-12) s.p = 0.0;
  if (s.q < 0.0 && s.q > -1e-12) s.q = 0.0;
  if (s.p < 0.0 || s.q < 0.0)
    throw std::invalid_argument("splitting_coeffs: negative coefficient (inadmissible skew)");
  return s;
}

std::complex<double> exact_symbol(double xi, const FracParams& params) {
  validate_params(params);
  if (xi == 0.0) return 0.0;
  if (params.kind == FracKind::OneSided)
    return std::pow(std::complex<double>(0.0, xi), params.beta);
  double sgn = xi > 0 ? 1.0 : -1.0;
  std::complex<double> phase =
      std::exp(std::complex<double>(0.0, -sgn * 0.5 * M_PI * params.gamma));
  return -std::pow(std::abs(xi), params.beta) * phase;
}

std::complex<double> discrete_symbol(double xi, double dx, const FracParams& params) {
  Splitting s = splitting_coeffs(params);
  double theta = xi * dx;
  std::complex<double> left = stencil_symbol_left(theta, params.beta);
  double scale = std::pow(dx, -params.beta);
  return scale * (s.p * left + s.q * std::conj(left));
}

double splitting_ls_residual(const FracParams& params) {
  Splitting s = splitting_coeffs(params);
  // Least-squares fit of p, q from the exact symbol over xi in [-8, 8].
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (int m = -80; m <= 80; ++m) {
    if (m == 0) continue;
    double xi = 0.1 * static_cast<double>(m);
    std::complex<double> left = std::pow(std::complex<double>(0.0, xi), params.beta);
    std::complex<double> right = std::pow(std::complex<double>(0.0, -xi), params.beta);
    std::complex<double> target = exact_symbol(xi, params);
    a11 += std::norm(left);
    a22 += std::norm(right);
    a12 += std::real(left * std::conj(right));
    b1 += std::real(std::conj(left) * target);
    b2 += std::real(std::conj(right) * target);
  }
  double det = a11 * a22 - a12 * a12;
  double p_hat = (b1 * a22 - b2 * a12) / det;
  double q_hat = (a11 * b2 - a12 * b1) / det;
  return std::max(std::abs(p_hat - s.p), std::abs(q_hat - s.q));
}

FracOperator::FracOperator(const GridSpec& grid, double order, double p, double q)
    : grid_(grid), order_(order), p_(p), q_(q) {
  validate_grid(grid);
  if (!(order > 0.0) || !(order <= 2.0))
    throw std::invalid_argument("FracOperator: order must lie in (0,2]");
  if (grid.domain == Domain::Periodic) {
    std::size_t bins = grid.n / 2 + 1;
    transfer_.resize(bins);
    double scale = std::pow(grid.dx, -order);
    for (std::size_t j = 0; j < bins; ++j) {
      double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(grid.n);
      std::complex<double> left = stencil_symbol_left(theta, order);
      transfer_[j] = scale * (p * left + q * std::conj(left));
    }
  } else {
    std::vector<double> w = gl_weights_order(order, grid.n + 1);
    fft_n_ = fft::good_size(2 * grid.n + 1);
    std::vector<double> padded(fft_n_, 0.0);
    std::copy(w.begin(), w.end(), padded.begin());
    fft::forward_r2c(padded, w_hat_);
  }
}

// One-sided (left-memory) apply with exact constant-pad closure: with
// v = u - pad_left the result is dx^{-order} times (w * v)_{i+1}, plus the
// single boundary term w_0 (pad_right - pad_left) in the last row.
void FracOperator::apply_left(const std::vector<double>& u, double pad_l, double pad_r,
                              double coeff, std::vector<double>& out) const {
  std::size_t n = grid_.n;
  std::vector<double> padded(fft_n_, 0.0);
  for (std::size_t j = 0; j < n; ++j) padded[j] = u[j] - pad_l;
  std::vector<std::complex<double>> spec;
  fft::forward_r2c(padded, spec);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= w_hat_[j];
  std::vector<double> conv;
  fft::backward_c2r(spec, conv, fft_n_);
  double scale = coeff * std::pow(grid_.dx, -order_);
  for (std::size_t i = 0; i < n; ++i) out[i] += scale * conv[i + 1];
  out[n - 1] += scale * (pad_r - pad_l);  // w_0 = 1 on the lone beyond-edge sample
}

void FracOperator::apply(const std::vector<double>& u, std::vector<double>& out) const {
  if (u.size() != grid_.n) throw std::invalid_argument("FracOperator: size mismatch");
  out.assign(grid_.n, 0.0);
  if (grid_.domain == Domain::Periodic) {
    std::vector<std::complex<double>> spec;
    fft::forward_r2c(u, spec);
    for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= transfer_[j];
    fft::backward_c2r(spec, out, grid_.n);
    return;
  }
  if (p_ != 0.0) apply_left(u, grid_.pad_left, grid_.pad_right, p_, out);
  if (q_ != 0.0) {
    // Right-memory apply = left apply on the reversed samples with swapped pads.
    std::vector<double> rev(u.rbegin(), u.rend());
    std::vector<double> tmp(grid_.n, 0.0);
    apply_left(rev, grid_.pad_right, grid_.pad_left, q_, tmp);
    for (std::size_t i = 0; i < grid_.n; ++i) out[i] += tmp[grid_.n - 1 - i];
  }
}

void apply_frac_raw(const std::vector<double>& u, std::vector<double>& out,
                    const GridSpec& grid, double order, double p, double q) {
  FracOperator op(grid, order, p, q);
  op.apply(u, out);
}

namespace {

Field apply_with_splitting(const Field& u, const FracParams& params, const GridSpec& grid,
                           double p, double q) {
  validate_field(u, grid);
  Field out = make_field(grid, u.t);
  apply_frac_raw(u.values, out.values, grid, params.beta, p, q);
  return out;
}

}  // namespace

Field apply_dx_caputo(const Field& u, const FracParams& params, const GridSpec& grid) {
  if (params.kind != FracKind::OneSided)
    throw std::invalid_argument("apply_dx_caputo: expected one-sided params");
  return apply_with_splitting(u, params, grid, 1.0, 0.0);
}

Field apply_dx_caputo_adjoint(const Field& u, const FracParams& params, const GridSpec& grid) {
  if (params.kind != FracKind::OneSided)
    throw std::invalid_argument("apply_dx_caputo_adjoint: expected one-sided params");
  return apply_with_splitting(u, params, grid, 0.0, 1.0);
}

Field apply_riesz_feller(const Field& u, const FracParams& params, const GridSpec& grid) {
  if (params.kind != FracKind::RieszFeller)
    throw std::invalid_argument("apply_riesz_feller: expected Riesz-Feller params");
  Splitting s = splitting_coeffs(params);
  return apply_with_splitting(u, params, grid, s.p, s.q);
}

}  // namespace fracwave
