#include "fracwave/entropy_reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracwave/util.hpp"

namespace fracwave {

namespace {

// Sonic state in [lo, hi]: the minimizer of convex f, found by bisection on
// f'. Returns lo or hi when f' does not change sign inside.
double sonic_state(double lo, double hi, const FluxFn& flux) {
  double dlo = flux.f_prime(lo), dhi = flux.f_prime(hi);
  if (dlo >= 0.0) return lo;
  if (dhi <= 0.0) return hi;
  return bisect([&](double u) { return flux.f_prime(u); }, lo, hi,
                1e-14 * std::max(1.0, hi - lo));
}

}  // namespace

double godunov_flux(double ul, double ur, const FluxFn& flux) {
  if (!flux.convex)
    throw std::invalid_argument("godunov_flux: requires a convex flux");
  if (ul <= ur) {
    double us = sonic_state(ul, ur, flux);
    return flux.f(us);
  }
  return std::max(flux.f(ul), flux.f(ur));
}

Trajectory godunov_evolve(const Field& u0, const FluxFn& flux, double t_end, double cfl) {
  validate_field(u0, u0.grid);
  if (!(t_end > 0.0)) throw std::invalid_argument("godunov_evolve: t_end must be > 0");
  if (!(cfl > 0.0) || !(cfl < 1.0))
    throw std::invalid_argument("godunov_evolve: cfl must lie in (0,1)");
  const GridSpec& g = u0.grid;

  double lo = *std::min_element(u0.values.begin(), u0.values.end());
  double hi = *std::max_element(u0.values.begin(), u0.values.end());
  if (g.domain == Domain::TruncatedLine) {
    lo = std::min({lo, g.pad_left, g.pad_right});
    hi = std::max({hi, g.pad_left, g.pad_right});
  }
  validate_flux(flux, lo, hi);
  double amax = 0.0;
  const int samples = 65;
  for (int i = 0; i < samples; ++i) {
    double u = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    amax = std::max(amax, std::abs(flux.f_prime(u)));
  }
  double dt = amax > 0.0 ? cfl * g.dx / amax : t_end;
  std::size_t n_steps = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12)));
  dt = t_end / static_cast<double>(n_steps);

  Trajectory traj;
  traj.dt = dt;
  std::vector<double> u = u0.values;
  traj.step_times.push_back(0.0);
  traj.step_sups.push_back(sup_norm(u));
  {
    Field f0;
    f0.t = 0.0;
    f0.grid = g;
    f0.values = u;
    traj.frames.push_back(std::move(f0));
  }

  std::size_t n = g.n;
  std::vector<double> unew(n);
  for (std::size_t s = 1; s <= n_steps; ++s) {
    double ghost_l = g.domain == Domain::Periodic ? u[n - 1] : g.pad_left;
    double flux_prev = godunov_flux(ghost_l, u[0], flux);
    for (std::size_t i = 0; i < n; ++i) {
      double ur;
      if (i + 1 < n) ur = u[i + 1];
      else ur = g.domain == Domain::Periodic ? u[0] : g.pad_right;
      double flux_next = godunov_flux(u[i], ur, flux);
      unew[i] = u[i] - dt / g.dx * (flux_next - flux_prev);
      flux_prev = flux_next;
    }
    u.swap(unew);
    traj.step_times.push_back(dt * static_cast<double>(s));
    traj.step_sups.push_back(sup_norm(u));
  }
  Field fin;
  fin.t = t_end;
  fin.grid = g;
  fin.values = u;
  traj.frames.push_back(std::move(fin));
  return traj;
}

double exact_riemann(const RiemannData& data, const FluxFn& flux, double t, double x) {
  if (!flux.convex)
    throw std::invalid_argument("exact_riemann: requires a convex flux");
  if (t < 0.0) throw std::invalid_argument("exact_riemann: t must be >= 0");
  double ul = data.u_left, ur = data.u_right;
  if (t == 0.0 || ul == ur) return x <= data.x_jump ? ul : ur;
  double rel = (x - data.x_jump) / t;

  if (ul > ur) {
    // Shock with Rankine-Hugoniot speed; the shock line itself takes the
    // left state.
    double speed = (flux.f(ul) - flux.f(ur)) / (ul - ur);
    return rel <= speed ? ul : ur;
  }

  // Rarefaction: u(x,t) = (f')^{-1}(rel) between the edge speeds.
  double sl = flux.f_prime(ul), sr = flux.f_prime(ur);
  if (rel <= sl) return ul;
  if (rel >= sr) return ur;
  return bisect([&](double u) { return flux.f_prime(u) - rel; }, ul, ur,
                1e-14 * std::max(1.0, std::abs(ur - ul)));
}

}  // namespace fracwave
