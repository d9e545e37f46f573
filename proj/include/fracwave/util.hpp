// Small numeric helpers shared across modules: gamma-function utilities,
// norms, least-squares fitting, interpolation, and a bounded thread pool.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracwave {

// 1/Gamma(x), finite for every real x (zero at the poles x = 0, -1, -2, ...).
// Uses the reflection formula for x <= 0 so no overflow or sign juggling.
double reciprocal_gamma(double x);

// d_sigma = 1/Gamma(1 - sigma), the normalization of the fractional integral.
inline double frac_normalizer(double sigma) { return reciprocal_gamma(1.0 - sigma); }

// Generalized binomial coefficient binom(sigma, k) via log-gamma with sign
// tracking; used only as a test oracle cross-check for the weight recurrence.
double generalized_binomial(double sigma, unsigned k);

double l1_norm(const std::vector<double>& v, double dx);
double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx);
double sup_norm(const std::vector<double>& v);
double sup_distance(const std::vector<double>& a, const std::vector<double>& b);

// Total variation including the jumps to the constant pads.
double total_variation(const std::vector<double>& v, double pad_left, double pad_right);

double trapezoid(const std::vector<double>& v, double dx);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Piecewise-linear interpolation on a uniform grid starting at x0 with
// spacing dx; clamps to the end values outside the range.
double interp_uniform(const std::vector<double>& v, double x0, double dx, double x);

// Bisection for a continuous scalar function with a sign change on [lo, hi].
double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol);

// Runs fn(0..count-1), possibly concurrently. Worker count is capped by the
// FRACWAVE_THREADS environment variable (default: hardware concurrency).
// Tasks must write only to disjoint preallocated slots so results do not
// depend on the thread count.
void run_parallel(std::size_t count, const std::function<void(std::size_t)>& fn);

std::size_t thread_budget();

}  // namespace fracwave
