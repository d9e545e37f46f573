// Command-line surface: one subcommand per library module. Exit codes:
// 0 = success/pass, 1 = a check failed or a solver error, 2 = usage or
// config error (unknown flag, bad numeric domain, unreadable config).
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fracwave/entropy_reference.hpp"
#include "fracwave/experiments.hpp"
#include "fracwave/grid.hpp"
#include "fracwave/io.hpp"
#include "fracwave/semigroup_kernel.hpp"
#include "fracwave/traveling_wave.hpp"
#include "fracwave/util.hpp"
#include "fracwave/viscous_evolution.hpp"

namespace {

using fracwave::json;

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string("config: missing key '") + key + "'");
  return j.at(key);
}

// Initial data described by a config object: {"kind": "step"|"bump"|"custom",
// "center", "width", "amp", "values"}. Step states come from the grid pads.
fracwave::Field field_from_json(const fracwave::GridSpec& g, const json& j) {
  std::string kind = j.value("kind", std::string("step"));
  double center = j.value("center", 0.0);
  double width = j.value("width", 0.0);
  if (kind == "step" || kind == "smoothed_step") {
    if (width < 0.0) throw std::invalid_argument("u0: width must be >= 0");
    if (width == 0.0)
      return fracwave::sample_field(
          g, [&](double x) { return x <= center ? g.pad_left : g.pad_right; });
    return fracwave::sample_field(g, [&](double x) {
      return g.pad_right +
             (g.pad_left - g.pad_right) * 0.5 * (1.0 - std::tanh((x - center) / width));
    });
  }
  if (kind == "bump") {
    double amp = j.value("amp", 1.0);
    double radius = width > 0.0 ? width : 1.0;
    return fracwave::sample_field(g, [&](double x) {
      double s = (x - center) / radius;
      double r2 = s * s;
      return r2 >= 1.0 ? 0.0 : amp * std::exp(1.0 - 1.0 / (1.0 - r2));
    });
  }
  if (kind == "custom") {
    std::vector<double> values = need(j, "values").get<std::vector<double>>();
    if (values.size() != g.n)
      throw std::invalid_argument("u0: custom values length does not match grid n");
    fracwave::Field f = fracwave::make_field(g);
    f.values = std::move(values);
    return f;
  }
  throw std::invalid_argument("u0: unknown kind '" + kind + "' (step, bump, or custom)");
}

std::string resolve_out_dir(const std::string& flag, const json& cfg) {
  std::string dir = !flag.empty() ? flag : cfg.value("out_dir", std::string("out"));
  std::filesystem::create_directories(dir);
  return dir;
}

void write_series(const std::string& path, const std::string& header,
                  const std::vector<double>& a, const std::vector<double>& b) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << header << "\n";
  for (std::size_t i = 0; i < a.size(); ++i)
    out << fracwave::format_double(a[i]) << "," << fracwave::format_double(b[i]) << "\n";
}

int run_kernel(double alpha, const std::string& out_path) {
  fracwave::GridSpec g;
  g.domain = fracwave::Domain::TruncatedLine;
  g.x0 = -12.0;
  g.dx = 0.005;
  g.n = static_cast<std::size_t>(std::lround((48.0 - g.x0) / g.dx)) + 1;
  fracwave::KernelProfile profile = fracwave::build_kernel_profile(alpha, g, 1e-7);
  std::filesystem::path parent = std::filesystem::path(out_path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  fracwave::write_profile_csv(out_path, profile);
  std::cout << "kernel: alpha=" << alpha
            << " mass=" << fracwave::format_double(fracwave::kernel_mass_estimate(profile))
            << " min=" << fracwave::format_double(
                              *std::min_element(profile.values.begin(), profile.values.end()))
            << " -> " << out_path << "\n";
  return 0;
}

int run_evolve(const std::string& config_path, const std::string& out_flag) {
  json cfg = fracwave::read_json(config_path);
  fracwave::EvolutionConfig ec = fracwave::evolution_config_from_json(need(cfg, "evolution"));
  fracwave::Field u0 = field_from_json(ec.grid, cfg.value("u0", json::object()));
  std::string out_dir = resolve_out_dir(out_flag, cfg);
  fracwave::Trajectory traj = fracwave::evolve(u0, ec);
  fracwave::write_trajectory_csv(fracwave::join_output_path(out_dir, "evolve.csv"), traj);
  std::cout << "evolve: steps=" << traj.step_times.size() - 1 << " dt=" << traj.dt
            << " final_sup=" << fracwave::format_double(traj.step_sups.back()) << " -> "
            << out_dir << "/evolve.csv\n";
  return 0;
}

int run_contraction(const std::string& config_path, const std::string& out_flag) {
  json cfg = fracwave::read_json(config_path);
  fracwave::EvolutionConfig ec = fracwave::evolution_config_from_json(need(cfg, "evolution"));
  fracwave::Field u0 = field_from_json(ec.grid, need(cfg, "u0"));
  fracwave::Field v0 = field_from_json(ec.grid, need(cfg, "v0"));
  std::string out_dir = resolve_out_dir(out_flag, cfg);
  fracwave::L1ContractionReport rep = fracwave::l1_contraction_report(u0, v0, ec);
  write_series(fracwave::join_output_path(out_dir, "contraction.csv"), "t,l1_distance",
               rep.times, rep.l1_distances);
  std::cout << "contraction: " << (rep.contractive ? "contractive" : "NOT contractive")
            << " worst_step_increase=" << fracwave::format_double(rep.max_increase)
            << " slack=" << fracwave::format_double(rep.slack) << "\n";
  return rep.contractive ? 0 : 1;
}

int run_entropy(const std::string& config_path, double k, const std::string& out_flag) {
  json cfg = fracwave::read_json(config_path);
  fracwave::EvolutionConfig ec = fracwave::evolution_config_from_json(need(cfg, "evolution"));
  fracwave::Field u0 = field_from_json(ec.grid, cfg.value("u0", json::object()));
  std::string out_dir = resolve_out_dir(out_flag, cfg);

  fracwave::EntropyPair pair;
  pair.k = k;
  pair.flux = ec.flux;
  fracwave::TestBump bump;
  json jb = cfg.value("bump", json::object());
  bump.t_center = jb.value("t_center", 0.5 * ec.t_end);
  bump.t_radius = jb.value("t_radius", 0.35 * ec.t_end);
  bump.x_center = jb.value("x_center", 0.0);
  bump.x_radius = jb.value("x_radius", 1.0);

  fracwave::Trajectory traj = fracwave::evolve(u0, ec);
  double residual = fracwave::entropy_residual(traj, pair, bump, ec);
  write_series(fracwave::join_output_path(out_dir, "entropy.csv"), "k,residual", {k},
               {residual});
  std::cout << "entropy: k=" << k << " residual=" << fracwave::format_double(residual)
            << " (dx+dt=" << fracwave::format_double(ec.grid.dx + traj.dt) << ")\n";
  return 0;
}

int run_sweep(const std::string& config_path, const std::string& out_flag) {
  json cfg = fracwave::read_json(config_path);
  fracwave::SweepConfig sc = fracwave::sweep_config_from_json(cfg);
  std::string out_dir = resolve_out_dir(out_flag, cfg);
  fracwave::RateReport rep = fracwave::viscosity_sweep(sc);
  fracwave::write_sweep_csv(fracwave::join_output_path(out_dir, "sweep.csv"), rep);
  fracwave::write_json(fracwave::join_output_path(out_dir, "sweep.json"),
                       fracwave::rate_report_to_json(rep));
  fracwave::write_svg_plot(fracwave::join_output_path(out_dir, "sweep_rate.svg"), rep.epsilons,
                           rep.l1_errors, "L1 error vs viscosity", true);
  std::cout << "sweep: fitted_rate=" << fracwave::format_double(rep.fitted_rate)
            << " theoretical=" << fracwave::format_double(rep.theoretical_rate)
            << " r2=" << fracwave::format_double(rep.r_squared) << " fit_points="
            << rep.fit_points << "/" << rep.epsilons.size() << "\n";
  if (rep.fit_points < rep.epsilons.size())
    std::cout << "sweep: warning: errors non-monotone past point " << rep.fit_points
              << " (reference floor suspected); fit used the monotone prefix\n";
  return (rep.rate_matched && rep.bound_satisfied) ? 0 : 1;
}

int run_tw(const std::string& config_path, const std::string& out_flag) {
  json cfg = fracwave::read_json(config_path);
  fracwave::TWSpec spec = fracwave::tw_spec_from_json(cfg);
  std::string out_dir = resolve_out_dir(out_flag, cfg);
  fracwave::TWProfile prof = fracwave::solve_profile(spec);
  fracwave::validate_tw_profile(prof);
  fracwave::write_tw_csv(fracwave::join_output_path(out_dir, "tw.csv"), prof);
  fracwave::TailFit tails = fracwave::tail_exponents(prof);
  std::cout << "tw: residual=" << fracwave::format_double(prof.residual_norm)
            << " lambda_fit=" << fracwave::format_double(tails.lambda_fit)
            << " alpha_fit=" << fracwave::format_double(tails.alpha_fit)
            << " amplitude=" << fracwave::format_double(tails.right_amplitude) << "\n";
  return 0;
}

int run_manifest_cmd(const std::string& config_path) {
  fracwave::ExperimentReport rep = fracwave::run_manifest(config_path);
  for (const fracwave::CheckResult& c : rep.checks)
    std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << c.name
              << " measured=" << fracwave::format_double(c.measured)
              << " threshold=" << fracwave::format_double(c.threshold) << " " << c.detail
              << "\n";
  std::cout << "manifest: " << (rep.all_pass ? "all checks passed" : "SOME CHECKS FAILED")
            << " (" << rep.checks.size() << " checks)\n";
  return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fracwave: scalar conservation laws with fractional viscosity.\n"
      "Config files are JSON; schemas are documented in docs/formats.md."};
  app.require_subcommand(1);

  double alpha = 0.5;
  std::string kernel_out;
  auto* kernel = app.add_subcommand(
      "kernel", "Tabulate the unit-time kernel profile K(1,.) to a CSV file");
  kernel->add_option("--alpha", alpha, "fractional order in (0,1)")->required();
  kernel->add_option("--out", kernel_out, "output CSV path")->required();

  std::string config_path, out_dir;
  double entropy_k = 0.5;
  auto* evolve_cmd = app.add_subcommand(
      "evolve", "March an initial-value problem; config keys: evolution{...}, u0{...}, out_dir");
  auto* contraction = app.add_subcommand(
      "contraction", "Lockstep two data sets, report discrete L1 contraction; keys: evolution, u0, v0");
  auto* entropy = app.add_subcommand(
      "entropy", "Kruzhkov entropy residual for one k; keys: evolution, u0, bump");
  auto* sweep = app.add_subcommand(
      "sweep", "Vanishing-viscosity rate study; keys: epsilons, base{...}, u0, reference");
  auto* tw = app.add_subcommand(
      "tw", "Traveling-wave profile solve; keys: flux, phi_minus, phi_plus, epsilon, alpha, grid");
  auto* manifest = app.add_subcommand(
      "manifest", "Run the named checks and write report.json; keys: checks[], alpha, out_dir");
  for (CLI::App* cmd : {evolve_cmd, contraction, entropy, sweep, tw, manifest})
    cmd->add_option("--config", config_path, "JSON config file")->required();
  for (CLI::App* cmd : {evolve_cmd, contraction, entropy, sweep, tw})
    cmd->add_option("--out", out_dir, "output directory (overrides config out_dir)");
  entropy->add_option("--k", entropy_k, "Kruzhkov entropy level");

  try {
    app.parse(argc, argv);
    if (kernel->parsed()) return run_kernel(alpha, kernel_out);
    if (evolve_cmd->parsed()) return run_evolve(config_path, out_dir);
    if (contraction->parsed()) return run_contraction(config_path, out_dir);
    if (entropy->parsed()) return run_entropy(config_path, entropy_k, out_dir);
    if (sweep->parsed()) return run_sweep(config_path, out_dir);
    if (tw->parsed()) return run_tw(config_path, out_dir);
    if (manifest->parsed()) return run_manifest_cmd(config_path);
    std::cerr << app.help();
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
