// Viscous Cauchy problem du/dt + d/dx f(u) = eps * (fractional operator) u:
// method-of-lines solver (local Lax-Friedrichs + explicit RK2 under a dual
// CFL), Duhamel/mild fixed-point solver, and the maximum-principle,
// L1-contraction, and entropy-residual checks.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracwave/grid.hpp"
#include "fracwave/semigroup_kernel.hpp"

namespace fracwave {

enum class Scheme { MethodOfLines, MildFixedPoint };

struct EvolutionConfig {
  double epsilon = 0.1;   // viscosity, >= 0
  double t_end = 1.0;     // > 0
  double cfl = 0.45;      // in (0,1)
  Scheme scheme = Scheme::MethodOfLines;
  GridSpec grid;
  FracParams params;
  FluxFn flux;
  std::size_t n_frames = 9;  // stored snapshots including t=0 and t_end
};

void validate_evolution_config(const EvolutionConfig& cfg);

// Time step satisfying both restrictions:
// dt = cfl * min(dx / max|f'|, dx^beta / (eps * (p+q) * sum|w_k|)).
double stable_time_step(const EvolutionConfig& cfg, double u_lo, double u_hi);

struct Trajectory {
  std::vector<Field> frames;        // n_frames snapshots, frames[0] at t=0
  std::vector<double> step_times;   // every accepted step
  std::vector<double> step_sups;    // sup norm after every step
  double dt = 0.0;
};

Trajectory evolve(const Field& u0, const EvolutionConfig& cfg);

struct MaxPrincipleReport {
  std::vector<double> times;
  std::vector<double> sup_norms;
  bool monotone = false;
  double max_increase = 0.0;  // worst per-step sup-norm growth observed
};
MaxPrincipleReport max_principle_report(const Trajectory& traj);

struct L1ContractionReport {
  std::vector<double> times;
  std::vector<double> l1_distances;
  bool contractive = false;
  double max_increase = 0.0;  // worst per-step distance growth observed
  double slack = 0.0;         // allowed per-step slack 1e-8 + 10*dx*dt
};
L1ContractionReport l1_contraction_report(const Field& u0, const Field& v0,
                                          const EvolutionConfig& cfg);

// Kruzhkov entropy pair eta(u) = |u - k|, q(u) = sign(u - k)(f(u) - f(k)).
struct EntropyPair {
  double k = 0.0;
  FluxFn flux;
  double eta(double u) const { return std::abs(u - k); }
  double q(double u) const {
    double s = (u > k) - (u < k);
    return s * (flux.f(u) - flux.f(k));
  }
};

// Smooth space-time bump phi(t,x) = B((t-t_c)/r_t) B((x-x_c)/r_x) with
// B(s) = exp(1 - 1/(1-s^2)) on |s|<1; compactly supported, nonnegative.
struct TestBump {
  double t_center = 0.5, t_radius = 0.25;
  double x_center = 0.0, x_radius = 1.0;
  double phi(double t, double x) const;
  double dphi_dt(double t, double x) const;
  double dphi_dx(double t, double x) const;
};

// Space-time quadrature of eta(u) phi_t + q(u) phi_x + eps eta(u) A* phi over
// the trajectory; must stay above -C(dx + dt) for entropy-consistent schemes.
// Rejects bumps whose support touches the domain boundary in x or t.
double entropy_residual(const Trajectory& traj, const EntropyPair& pair,
                        const TestBump& bump, const EvolutionConfig& cfg);

}  // namespace fracwave
