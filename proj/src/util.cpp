#include "fracwave/util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace fracwave {

double reciprocal_gamma(double x) {
  // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x)/pi, stable for x <= 0.5 and
  // exactly zero at the poles. Direct lgamma otherwise.
  if (x > 0.5) return std::exp(-std::lgamma(x));
  return std::exp(std::lgamma(1.0 - x)) * std::sin(M_PI * x) / M_PI;
}

double generalized_binomial(double sigma, unsigned k) {
  // binom(sigma, k) = Gamma(sigma+1) / (Gamma(k+1) Gamma(sigma-k+1)); the last
  // factor changes sign for k > sigma+1, handled through 1/Gamma.
  double kk = static_cast<double>(k);
  return std::exp(std::lgamma(sigma + 1.0) - std::lgamma(kk + 1.0)) *
         reciprocal_gamma(sigma - kk + 1.0);
}

double l1_norm(const std::vector<double>& v, double dx) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s * dx;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * dx;
}

double sup_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sup_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

double total_variation(const std::vector<double>& v, double pad_left, double pad_right) {
  if (v.empty()) return std::abs(pad_right - pad_left);
  double s = std::abs(v.front() - pad_left);
  for (std::size_t i = 1; i < v.size(); ++i) s += std::abs(v[i] - v[i - 1]);
  s += std::abs(pad_right - v.back());
  return s;
}

double trapezoid(const std::vector<double>& v, double dx) {
  if (v.size() < 2) return 0.0;
  double s = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
  return s * dx;
}

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_line: need at least two points");
  double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_tot = syy - sy * sy / n;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double interp_uniform(const std::vector<double>& v, double x0, double dx, double x) {
  if (v.empty()) throw std::invalid_argument("interp_uniform: empty data");
  double s = (x - x0) / dx;
  if (s <= 0.0) return v.front();
  if (s >= static_cast<double>(v.size() - 1)) return v.back();
  std::size_t i = static_cast<std::size_t>(s);
  double w = s - static_cast<double>(i);
  return v[i] * (1.0 - w) + v[i + 1] * w;
}

double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  double flo = fn(lo);
  double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0))
    throw std::invalid_argument("bisect: no sign change on the bracket");
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::size_t thread_budget() {
  std::size_t n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("FRACWAVE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
  }
  return n;
}

void run_parallel(std::size_t count, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          errors[w] = std::current_exception();
          failed.store(true);
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) {
    for (auto& e : errors)
      if (e) { first_error = e; break; }
    if (first_error) std::rethrow_exception(first_error);
  }
}

}  // namespace fracwave
