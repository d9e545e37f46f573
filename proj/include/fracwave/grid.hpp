// Core spatial types: uniform 1-D grids, sampled fields, fractional-order
// parameter sets, and flux descriptions shared by every solver module.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracwave {

enum class Domain { Periodic, TruncatedLine };

// Uniform grid of n nodes x_i = x0 + i*dx. Periodic grids identify x0+n*dx
// with x0. Truncated-line grids treat samples outside the window as the
// constant pad values (far-field states).
struct GridSpec {
  Domain domain = Domain::TruncatedLine;
  double x0 = 0.0;
  double dx = 1.0;
  std::size_t n = 0;
  double pad_left = 0.0;
  double pad_right = 0.0;

  double x(std::size_t i) const { return x0 + dx * static_cast<double>(i); }
  double x_end() const { return x0 + dx * static_cast<double>(n - 1); }
  double length() const { return dx * static_cast<double>(n); }
};

inline void validate_grid(const GridSpec& g) {
  if (!(g.dx > 0.0)) throw std::invalid_argument("grid: dx must be positive");
  if (g.n < 4) throw std::invalid_argument("grid: need at least 4 nodes");
  if (!std::isfinite(g.x0) || !std::isfinite(g.pad_left) || !std::isfinite(g.pad_right))
    throw std::invalid_argument("grid: non-finite parameter");
}

// Spatial sample vector u(t, x_i) with its timestamp and grid.
struct Field {
  double t = 0.0;
  std::vector<double> values;
  GridSpec grid;
};

inline Field make_field(const GridSpec& g, double t = 0.0) {
  Field f;
  f.t = t;
  f.grid = g;
  f.values.assign(g.n, 0.0);
  return f;
}

inline Field sample_field(const GridSpec& g, const std::function<double(double)>& fn,
                          double t = 0.0) {
  Field f = make_field(g, t);
  for (std::size_t i = 0; i < g.n; ++i) f.values[i] = fn(g.x(i));
  return f;
}

inline void validate_field(const Field& u, const GridSpec& g) {
  if (u.values.size() != g.n)
    throw std::invalid_argument("field: length does not match grid");
  for (double v : u.values)
    if (!std::isfinite(v)) throw std::invalid_argument("field: non-finite value");
}

// Fractional operator selector. OneSided(alpha) is the left-memory derivative
// of order alpha in (0,1) composed with d/dx; RieszFeller(beta, gamma) is the
// skewed operator of order beta in (1,2] with asymmetry gamma,
// |gamma| <= min(beta, 2-beta). OneSided(alpha) coincides with
// RieszFeller(1+alpha, 1-alpha).
enum class FracKind { OneSided, RieszFeller };

struct FracParams {
  FracKind kind = FracKind::OneSided;
  double alpha = 0.5;  // OneSided order
  double beta = 1.5;   // RieszFeller order (also 1+alpha for OneSided)
  double gamma = 0.5;  // RieszFeller asymmetry (1-alpha for OneSided)

  double order() const { return beta; }
};

inline FracParams one_sided(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("one_sided: alpha must lie strictly inside (0,1)");
  FracParams p;
  p.kind = FracKind::OneSided;
  p.alpha = alpha;
  p.beta = 1.0 + alpha;
  p.gamma = 1.0 - alpha;
  return p;
}

inline FracParams riesz_feller(double beta, double gamma) {
  if (!(beta > 1.0) || !(beta <= 2.0))
    throw std::invalid_argument("riesz_feller: beta must lie in (1,2]");
  if (std::abs(gamma) > std::min(beta, 2.0 - beta) + 1e-14)
    throw std::invalid_argument("riesz_feller: need |gamma| <= min(beta, 2-beta)");
  FracParams p;
  p.kind = FracKind::RieszFeller;
  p.alpha = beta - 1.0;
  p.beta = beta;
  p.gamma = gamma;
  return p;
}

// Adjoint operator has the mirrored asymmetry (conjugate symbol).
inline FracParams adjoint_params(const FracParams& p) {
  FracParams a = p;
  a.kind = FracKind::RieszFeller;
  a.gamma = -p.gamma;
  return a;
}

// Scalar flux with derivative; f_prime must match f to 1e-6 relative by
// central differences on the data range (see validate_flux).
struct FluxFn {
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::string label;
  bool convex = false;
};

FluxFn burgers_flux();
FluxFn zero_flux();
FluxFn quartic_flux();   // f(u) = u^4, convex on u >= 0 data
FluxFn linear_flux(double a);
FluxFn flux_by_label(const std::string& label);
void validate_flux(const FluxFn& flux, double lo, double hi);

}  // namespace fracwave
