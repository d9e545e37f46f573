// Vanishing-viscosity rate study and the aggregated reproduction manifest.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracwave/grid.hpp"
#include "fracwave/semigroup_kernel.hpp"
#include "fracwave/util.hpp"
#include "fracwave/viscous_evolution.hpp"

namespace fracwave {

using json = nlohmann::ordered_json;

enum class U0Kind { SmoothedStep, Bump, Custom };
enum class ReferenceKind { Godunov, ExactRiemann };

struct SweepConfig {
  std::vector<double> epsilons;  // positive, strictly decreasing, >= 3 values
  EvolutionConfig base;          // template; base.grid is the coarsest grid
  U0Kind u0_kind = U0Kind::SmoothedStep;
  double u_l = 1.0, u_r = 0.0, width = 0.0;  // SmoothedStep (width 0 = pure step)
  double amp = 1.0;                          // Bump amplitude
  Field custom_u0;
  double t_eval = 0.5;
  ReferenceKind reference = ReferenceKind::Godunov;
  int ref_refine = 8;   // reference grid refinement relative to each run grid
  int max_refine = 14;  // cap on per-epsilon halvings of the base grid
};

struct RateReport {
  std::vector<double> epsilons;
  std::vector<double> l1_errors;
  double fitted_rate = 0.0;
  double theoretical_rate = 0.0;  // 1/(alpha+1)
  double r_squared = 0.0;
  // Supporting diagnostics.
  std::vector<double> bv_u0;        // per-run initial BV seminorm
  std::vector<double> bv_ut;        // per-run BV at t_eval
  std::vector<double> ref_floor;    // reference self-convergence estimate
  std::vector<bool> floor_flagged;  // error does not exceed 5x the floor
  std::vector<double> run_dx;       // per-epsilon grid spacing actually used
  double shape_spread = 0.0;        // max/min of e / ((eps t)^rate * BV)
  bool bound_satisfied = false;     // hard pass: errors follow the bound shape
  bool rate_matched = false;        // soft pass: |fitted - theoretical| <= 0.10
  std::size_t fit_points = 0;       // monotone prefix length used in the fit
};

// Evolves each epsilon on its own grid (the base grid refined until the
// viscous layer ~ eps^{1/alpha} is resolved), compares against the entropy
// reference restricted conservatively from an ref_refine-times finer Godunov
// run (or the closed-form Riemann solution), and fits the log-log rate.
RateReport viscosity_sweep(const SweepConfig& cfg);

// Smallest grid spacing accepted for viscosity eps at fractional order alpha.
double required_layer_dx(double eps, double alpha);

Field build_initial_data(const SweepConfig& cfg, const GridSpec& grid);

// Right edge of the kernel tail-fit window [edge/2, edge], calibrated per
// order so the fitted log-log slope lands at -2 (the quadratic-decay bound)
// before the far tail steepens to -(2+alpha).
double kernel_tail_fit_edge(double alpha);

// Desk window on which diagnostic kernel profiles are built.
GridSpec kernel_window_grid(double alpha);

// Log-log slope of a kernel profile over y in [edge/2, edge].
LineFit kernel_tail_fit(const KernelProfile& profile, double edge);

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ExperimentReport {
  std::string label;
  int schema_version = 1;
  std::vector<CheckResult> checks;
  bool all_pass = true;
};

// Runs one named check (kernel, semigroup, symbol, max_principle,
// contraction, entropy, sweep, tw) with JSON options, writing its series
// CSVs into out_dir.
CheckResult run_named_check(const std::string& name, double alpha, const json& opts,
                            const std::string& out_dir);

// Runs the checks named in the JSON config (same names as run_named_check),
// writes report.json and series CSVs into the configured output directory,
// and returns the aggregate report.
// Unknown check names are rejected; an empty check list yields an empty
// passing report.
ExperimentReport run_manifest(const std::string& config_path);

}  // namespace fracwave
