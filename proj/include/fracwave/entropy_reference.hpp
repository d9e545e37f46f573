// Inviscid entropy reference: first-order Godunov scheme with the exact
// Riemann-fan flux for convex f, and the closed-form Riemann solution.
#pragma once

#include "fracwave/grid.hpp"
#include "fracwave/viscous_evolution.hpp"

namespace fracwave {

struct RiemannData {
  double u_left = 1.0;
  double u_right = 0.0;
  double x_jump = 0.0;
};

// Godunov numerical flux for convex f: min over [ul, ur] when ul <= ur,
// max over {ul, ur} otherwise (the sonic point handles transonic fans).
double godunov_flux(double ul, double ur, const FluxFn& flux);

Trajectory godunov_evolve(const Field& u0, const FluxFn& flux, double t_end, double cfl);

// Entropy solution of the Riemann problem for convex flux: shock with the
// jump-speed line closed on the left (returns u_left for x <= x_jump + c t),
// rarefaction fan via f'^{-1} otherwise. t = 0 returns the initial pattern.
double exact_riemann(const RiemannData& data, const FluxFn& flux, double t, double x);

}  // namespace fracwave
