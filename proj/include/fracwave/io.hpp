// Serialization surface: CSV/JSON writers and readers for every exported
// data type, JSON config parsing, and minimal SVG plots. All floats are
// printed with %.17g so emitted files re-parse bit-exactly.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fracwave/experiments.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/semigroup_kernel.hpp"
#include "fracwave/traveling_wave.hpp"
#include "fracwave/viscous_evolution.hpp"

namespace fracwave {

using json = nlohmann::ordered_json;

std::string format_double(double v);  // %.17g

// Joined output path; rejects absolute paths and ".." escapes so no command
// writes outside the chosen output directory.
std::string join_output_path(const std::string& out_dir, const std::string& name);

// Kernel profile CSV: "# key=value" metadata lines, then "y,K1_y" rows.
void write_profile_csv(const std::string& path, const KernelProfile& profile);
KernelProfile read_profile_csv(const std::string& path);

// Trajectory CSV: metadata lines, then "t,x,u" rows frame by frame.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);
Trajectory read_trajectory_csv(const std::string& path);

// Traveling-wave CSV: "xi,phi,left_tail_log,right_tail_log" rows over the
// uniform window followed by the far-field continuation. The reader restores
// values, far field, grid, end states, and the convergence metadata (not the
// flux, which is named in the originating config).
void write_tw_csv(const std::string& path, const TWProfile& profile);
TWProfile read_tw_csv(const std::string& path);

// Sweep CSV: "epsilon,l1_error,bv_u0,bv_ut,ref_floor,run_dx" rows.
void write_sweep_csv(const std::string& path, const RateReport& report);
RateReport read_sweep_csv(const std::string& path);

json rate_report_to_json(const RateReport& report);
RateReport rate_report_from_json(const json& j);
json experiment_report_to_json(const ExperimentReport& report);
ExperimentReport experiment_report_from_json(const json& j);
void write_json(const std::string& path, const json& j);
json read_json(const std::string& path);

// Config parsing (throws std::invalid_argument naming the offending key).
GridSpec grid_from_json(const json& j);
FracParams frac_params_from_json(const json& j);
EvolutionConfig evolution_config_from_json(const json& j);
SweepConfig sweep_config_from_json(const json& j);
TWSpec tw_spec_from_json(const json& j);

// Minimal standalone SVG plots (polyline + axes + labels).
void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& title,
                    bool log_log);

}  // namespace fracwave
