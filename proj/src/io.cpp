// Serialization: CSV/JSON writers and readers, config parsing, SVG plots.
#include "fracwave/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracwave {
namespace {

void put_meta(std::ostream& out, const std::string& key, const std::string& value) {
  out << "# " << key << "=" << value << "\n";
}

void put_meta_d(std::ostream& out, const std::string& key, double value) {
  put_meta(out, key, format_double(value));
}

struct CsvDoc {
  std::map<std::string, std::string> meta;
  std::string header;
  std::vector<std::vector<double>> rows;
};

CsvDoc read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  CsvDoc doc;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      while (!key.empty() && key.front() == ' ') key.erase(key.begin());
      while (!key.empty() && key.back() == ' ') key.pop_back();
      doc.meta[key] = line.substr(eq + 1);
      continue;
    }
    if (!header_seen) {
      doc.header = line;
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    doc.rows.push_back(std::move(row));
  }
  return doc;
}

const std::string& meta_str(const CsvDoc& doc, const std::string& key, const std::string& path) {
  auto it = doc.meta.find(key);
  if (it == doc.meta.end())
    throw std::invalid_argument(path + ": missing metadata line '# " + key + "='");
  return it->second;
}

double meta_d(const CsvDoc& doc, const std::string& key, const std::string& path) {
  return std::stod(meta_str(doc, key, path));
}

std::size_t meta_n(const CsvDoc& doc, const std::string& key, const std::string& path) {
  return static_cast<std::size_t>(std::stoul(meta_str(doc, key, path)));
}

std::string domain_name(Domain d) {
  return d == Domain::Periodic ? "periodic" : "line";
}

Domain domain_from_name(const std::string& s) {
  if (s == "periodic") return Domain::Periodic;
  if (s == "line") return Domain::TruncatedLine;
  throw std::invalid_argument("unknown domain '" + s + "' (periodic or line)");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

// JSON field access that names the offending key in the error message.
const json& need(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw std::invalid_argument(std::string(what) + ": missing key '" + key + "'");
  return j.at(key);
}

double need_d(const json& j, const char* key, const char* what) {
  const json& v = need(j, key, what);
  if (!v.is_number())
    throw std::invalid_argument(std::string(what) + ": key '" + key + "' must be a number");
  return v.get<double>();
}

double opt_d(const json& j, const char* key, double fallback, const char* what) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw std::invalid_argument(std::string(what) + ": key '" + key + "' must be a number");
  return j.at(key).get<double>();
}

std::string opt_s(const json& j, const char* key, const std::string& fallback, const char* what) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw std::invalid_argument(std::string(what) + ": key '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_output_path(const std::string& out_dir, const std::string& name) {
  namespace fs = std::filesystem;
  fs::path p(name);
  if (p.is_absolute())
    throw std::invalid_argument("output name must be relative to the output directory: " + name);
  for (const auto& part : p)
    if (part == "..")
      throw std::invalid_argument("output name may not escape the output directory: " + name);
  return (fs::path(out_dir) / p).string();
}

void write_profile_csv(const std::string& path, const KernelProfile& profile) {
  std::ofstream out = open_out(path);
  put_meta_d(out, "alpha", profile.alpha);
  put_meta_d(out, "quad_tol", profile.quad_tol);
  put_meta_d(out, "xi_max", profile.xi_max);
  put_meta_d(out, "x0", profile.y_grid.x0);
  put_meta_d(out, "dx", profile.y_grid.dx);
  put_meta(out, "n", std::to_string(profile.y_grid.n));
  out << "y,K1_y\n";
  for (std::size_t i = 0; i < profile.y_grid.n; ++i)
    out << format_double(profile.y_grid.x(i)) << "," << format_double(profile.values[i]) << "\n";
}

KernelProfile read_profile_csv(const std::string& path) {
  CsvDoc doc = read_csv(path);
  KernelProfile p;
  p.alpha = meta_d(doc, "alpha", path);
  p.quad_tol = meta_d(doc, "quad_tol", path);
  p.xi_max = meta_d(doc, "xi_max", path);
  p.y_grid.domain = Domain::TruncatedLine;
  p.y_grid.x0 = meta_d(doc, "x0", path);
  p.y_grid.dx = meta_d(doc, "dx", path);
  p.y_grid.n = meta_n(doc, "n", path);
  if (doc.rows.size() != p.y_grid.n)
    throw std::invalid_argument(path + ": row count does not match metadata n");
  p.values.resize(p.y_grid.n);
  for (std::size_t i = 0; i < p.y_grid.n; ++i) p.values[i] = doc.rows[i].at(1);
  return p;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  if (traj.frames.empty()) throw std::invalid_argument("trajectory: no frames to write");
  const GridSpec& g = traj.frames.front().grid;
  std::ofstream out = open_out(path);
  put_meta(out, "domain", domain_name(g.domain));
  put_meta_d(out, "x0", g.x0);
  put_meta_d(out, "dx", g.dx);
  put_meta(out, "n", std::to_string(g.n));
  put_meta_d(out, "pad_left", g.pad_left);
  put_meta_d(out, "pad_right", g.pad_right);
  put_meta(out, "frames", std::to_string(traj.frames.size()));
  put_meta_d(out, "dt", traj.dt);
  out << "t,x,u\n";
  for (const Field& f : traj.frames)
    for (std::size_t i = 0; i < g.n; ++i)
      out << format_double(f.t) << "," << format_double(g.x(i)) << ","
          << format_double(f.values[i]) << "\n";
}

Trajectory read_trajectory_csv(const std::string& path) {
  CsvDoc doc = read_csv(path);
  GridSpec g;
  g.domain = domain_from_name(meta_str(doc, "domain", path));
  g.x0 = meta_d(doc, "x0", path);
  g.dx = meta_d(doc, "dx", path);
  g.n = meta_n(doc, "n", path);
  g.pad_left = meta_d(doc, "pad_left", path);
  g.pad_right = meta_d(doc, "pad_right", path);
  std::size_t frames = meta_n(doc, "frames", path);
  if (doc.rows.size() != frames * g.n)
    throw std::invalid_argument(path + ": row count does not match frames*n");
  Trajectory traj;
  traj.dt = meta_d(doc, "dt", path);
  traj.frames.reserve(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    Field field = make_field(g, doc.rows[f * g.n].at(0));
    for (std::size_t i = 0; i < g.n; ++i) field.values[i] = doc.rows[f * g.n + i].at(2);
    traj.frames.push_back(std::move(field));
  }
  return traj;
}

void write_tw_csv(const std::string& path, const TWProfile& profile) {
  const GridSpec& g = profile.spec.grid;
  std::ofstream out = open_out(path);
  put_meta_d(out, "alpha", profile.spec.alpha);
  put_meta_d(out, "epsilon", profile.spec.epsilon);
  put_meta_d(out, "phi_minus", profile.spec.phi_minus);
  put_meta_d(out, "phi_plus", profile.spec.phi_plus);
  put_meta_d(out, "residual_norm", profile.residual_norm);
  put_meta_d(out, "phase_anchor", profile.phase_anchor);
  put_meta_d(out, "x0", g.x0);
  put_meta_d(out, "dx", g.dx);
  put_meta(out, "n", std::to_string(g.n));
  put_meta(out, "far_n", std::to_string(profile.far_xi.size()));
  out << "xi,phi,left_tail_log,right_tail_log\n";
  auto tail_logs = [&](double phi) {
    double left = std::log(std::max(profile.spec.phi_minus - phi, 1e-300));
    double right = std::log(std::max(phi - profile.spec.phi_plus, 1e-300));
    return std::pair<double, double>(left, right);
  };
  for (std::size_t i = 0; i < g.n; ++i) {
    auto [l, r] = tail_logs(profile.values[i]);
    out << format_double(g.x(i)) << "," << format_double(profile.values[i]) << ","
        << format_double(l) << "," << format_double(r) << "\n";
  }
  for (std::size_t i = 0; i < profile.far_xi.size(); ++i) {
    auto [l, r] = tail_logs(profile.far_phi[i]);
    out << format_double(profile.far_xi[i]) << "," << format_double(profile.far_phi[i]) << ","
        << format_double(l) << "," << format_double(r) << "\n";
  }
}

TWProfile read_tw_csv(const std::string& path) {
  CsvDoc doc = read_csv(path);
  TWProfile p;
  p.spec.alpha = meta_d(doc, "alpha", path);
  p.spec.epsilon = meta_d(doc, "epsilon", path);
  p.spec.phi_minus = meta_d(doc, "phi_minus", path);
  p.spec.phi_plus = meta_d(doc, "phi_plus", path);
  p.residual_norm = meta_d(doc, "residual_norm", path);
  p.phase_anchor = meta_d(doc, "phase_anchor", path);
  GridSpec g;
  g.domain = Domain::TruncatedLine;
  g.x0 = meta_d(doc, "x0", path);
  g.dx = meta_d(doc, "dx", path);
  g.n = meta_n(doc, "n", path);
  g.pad_left = p.spec.phi_minus;
  g.pad_right = p.spec.phi_plus;
  p.spec.grid = g;
  std::size_t far_n = meta_n(doc, "far_n", path);
  if (doc.rows.size() != g.n + far_n)
    throw std::invalid_argument(path + ": row count does not match n + far_n");
  p.values.resize(g.n);
  for (std::size_t i = 0; i < g.n; ++i) p.values[i] = doc.rows[i].at(1);
  p.far_xi.resize(far_n);
  p.far_phi.resize(far_n);
  for (std::size_t i = 0; i < far_n; ++i) {
    p.far_xi[i] = doc.rows[g.n + i].at(0);
    p.far_phi[i] = doc.rows[g.n + i].at(1);
  }
  return p;
}

void write_sweep_csv(const std::string& path, const RateReport& report) {
  std::ofstream out = open_out(path);
  put_meta_d(out, "fitted_rate", report.fitted_rate);
  put_meta_d(out, "theoretical_rate", report.theoretical_rate);
  put_meta_d(out, "r_squared", report.r_squared);
  put_meta_d(out, "shape_spread", report.shape_spread);
  put_meta(out, "bound_satisfied", report.bound_satisfied ? "1" : "0");
  put_meta(out, "rate_matched", report.rate_matched ? "1" : "0");
  put_meta(out, "fit_points", std::to_string(report.fit_points));
  std::string flags;
  for (std::size_t i = 0; i < report.floor_flagged.size(); ++i)
    flags += (i ? "," : "") + std::string(report.floor_flagged[i] ? "1" : "0");
  put_meta(out, "floor_flagged", flags);
  out << "epsilon,l1_error,bv_u0,bv_ut,ref_floor,run_dx\n";
  for (std::size_t i = 0; i < report.epsilons.size(); ++i)
    out << format_double(report.epsilons[i]) << "," << format_double(report.l1_errors[i]) << ","
        << format_double(report.bv_u0[i]) << "," << format_double(report.bv_ut[i]) << ","
        << format_double(report.ref_floor[i]) << "," << format_double(report.run_dx[i]) << "\n";
}

RateReport read_sweep_csv(const std::string& path) {
  CsvDoc doc = read_csv(path);
  RateReport r;
  r.fitted_rate = meta_d(doc, "fitted_rate", path);
  r.theoretical_rate = meta_d(doc, "theoretical_rate", path);
  r.r_squared = meta_d(doc, "r_squared", path);
  r.shape_spread = meta_d(doc, "shape_spread", path);
  r.bound_satisfied = meta_str(doc, "bound_satisfied", path) == "1";
  r.rate_matched = meta_str(doc, "rate_matched", path) == "1";
  r.fit_points = meta_n(doc, "fit_points", path);
  {
    std::stringstream ss(meta_str(doc, "floor_flagged", path));
    std::string cell;
    while (std::getline(ss, cell, ',')) r.floor_flagged.push_back(cell == "1");
  }
  for (const auto& row : doc.rows) {
    r.epsilons.push_back(row.at(0));
    r.l1_errors.push_back(row.at(1));
    r.bv_u0.push_back(row.at(2));
    r.bv_ut.push_back(row.at(3));
    r.ref_floor.push_back(row.at(4));
    r.run_dx.push_back(row.at(5));
  }
  return r;
}

json rate_report_to_json(const RateReport& report) {
  json j;
  j["epsilons"] = report.epsilons;
  j["l1_errors"] = report.l1_errors;
  j["fitted_rate"] = report.fitted_rate;
  j["theoretical_rate"] = report.theoretical_rate;
  j["r_squared"] = report.r_squared;
  j["bv_u0"] = report.bv_u0;
  j["bv_ut"] = report.bv_ut;
  j["ref_floor"] = report.ref_floor;
  j["floor_flagged"] = report.floor_flagged;
  j["run_dx"] = report.run_dx;
  j["shape_spread"] = report.shape_spread;
  j["bound_satisfied"] = report.bound_satisfied;
  j["rate_matched"] = report.rate_matched;
  j["fit_points"] = report.fit_points;
  return j;
}

RateReport rate_report_from_json(const json& j) {
  RateReport r;
  r.epsilons = j.at("epsilons").get<std::vector<double>>();
  r.l1_errors = j.at("l1_errors").get<std::vector<double>>();
  r.fitted_rate = j.at("fitted_rate").get<double>();
  r.theoretical_rate = j.at("theoretical_rate").get<double>();
  r.r_squared = j.at("r_squared").get<double>();
  r.bv_u0 = j.at("bv_u0").get<std::vector<double>>();
  r.bv_ut = j.at("bv_ut").get<std::vector<double>>();
  r.ref_floor = j.at("ref_floor").get<std::vector<double>>();
  r.floor_flagged = j.at("floor_flagged").get<std::vector<bool>>();
  r.run_dx = j.at("run_dx").get<std::vector<double>>();
  r.shape_spread = j.at("shape_spread").get<double>();
  r.bound_satisfied = j.at("bound_satisfied").get<bool>();
  r.rate_matched = j.at("rate_matched").get<bool>();
  r.fit_points = j.at("fit_points").get<std::size_t>();
  return r;
}

json experiment_report_to_json(const ExperimentReport& report) {
  json j;
  j["label"] = report.label;
  j["schema_version"] = report.schema_version;
  j["all_pass"] = report.all_pass;
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["measured"] = c.measured;
    jc["threshold"] = c.threshold;
    jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  return j;
}

ExperimentReport experiment_report_from_json(const json& j) {
  ExperimentReport r;
  r.label = j.at("label").get<std::string>();
  r.schema_version = j.at("schema_version").get<int>();
  r.all_pass = j.at("all_pass").get<bool>();
  for (const auto& jc : j.at("checks")) {
    CheckResult c;
    c.name = jc.at("name").get<std::string>();
    c.pass = jc.at("pass").get<bool>();
    c.measured = jc.at("measured").get<double>();
    c.threshold = jc.at("threshold").get<double>();
    c.detail = jc.at("detail").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  return r;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config parse error in " + path + ": " + e.what());
  }
}

GridSpec grid_from_json(const json& j) {
  GridSpec g;
  g.domain = domain_from_name(opt_s(j, "domain", "line", "grid"));
  g.x0 = need_d(j, "x0", "grid");
  g.dx = need_d(j, "dx", "grid");
  double n = need_d(j, "n", "grid");
  if (!(n >= 4.0) || n != std::floor(n))
    throw std::invalid_argument("grid: key 'n' must be an integer >= 4");
  g.n = static_cast<std::size_t>(n);
  g.pad_left = opt_d(j, "pad_left", 0.0, "grid");
  g.pad_right = opt_d(j, "pad_right", 0.0, "grid");
  validate_grid(g);
  return g;
}

FracParams frac_params_from_json(const json& j) {
  std::string kind = opt_s(j, "kind", "one_sided", "params");
  if (kind == "one_sided") return one_sided(need_d(j, "alpha", "params"));
  if (kind == "riesz_feller")
    return riesz_feller(need_d(j, "beta", "params"), need_d(j, "gamma", "params"));
  throw std::invalid_argument("params: unknown kind '" + kind +
                              "' (one_sided or riesz_feller)");
}

EvolutionConfig evolution_config_from_json(const json& j) {
  EvolutionConfig cfg;
  cfg.epsilon = need_d(j, "epsilon", "evolution");
  cfg.t_end = need_d(j, "t_end", "evolution");
  cfg.cfl = opt_d(j, "cfl", 0.45, "evolution");
  std::string scheme = opt_s(j, "scheme", "mol", "evolution");
  if (scheme == "mol")
    cfg.scheme = Scheme::MethodOfLines;
  else if (scheme == "mild")
    cfg.scheme = Scheme::MildFixedPoint;
  else
    throw std::invalid_argument("evolution: unknown scheme '" + scheme + "' (mol or mild)");
  cfg.grid = grid_from_json(need(j, "grid", "evolution"));
  cfg.params = frac_params_from_json(need(j, "params", "evolution"));
  cfg.flux = flux_by_label(opt_s(j, "flux", "burgers", "evolution"));
  cfg.n_frames = static_cast<std::size_t>(opt_d(j, "n_frames", 9.0, "evolution"));
  return cfg;
}

SweepConfig sweep_config_from_json(const json& j) {
  SweepConfig cfg;
  const json& eps = need(j, "epsilons", "sweep");
  if (!eps.is_array()) throw std::invalid_argument("sweep: key 'epsilons' must be an array");
  cfg.epsilons = eps.get<std::vector<double>>();
  cfg.base = evolution_config_from_json(need(j, "base", "sweep"));
  std::string kind = opt_s(j, "u0", "smoothed_step", "sweep");
  if (kind == "smoothed_step" || kind == "step")
    cfg.u0_kind = U0Kind::SmoothedStep;
  else if (kind == "bump")
    cfg.u0_kind = U0Kind::Bump;
  else if (kind == "custom")
    cfg.u0_kind = U0Kind::Custom;
  else
    throw std::invalid_argument("sweep: unknown u0 '" + kind +
                                "' (smoothed_step, bump, or custom)");
  cfg.u_l = opt_d(j, "u_l", 1.0, "sweep");
  cfg.u_r = opt_d(j, "u_r", 0.0, "sweep");
  cfg.width = opt_d(j, "width", 0.0, "sweep");
  cfg.amp = opt_d(j, "amp", 1.0, "sweep");
  cfg.t_eval = opt_d(j, "t_eval", 0.5, "sweep");
  std::string ref = opt_s(j, "reference", "godunov", "sweep");
  if (ref == "godunov")
    cfg.reference = ReferenceKind::Godunov;
  else if (ref == "exact")
    cfg.reference = ReferenceKind::ExactRiemann;
  else
    throw std::invalid_argument("sweep: unknown reference '" + ref + "' (godunov or exact)");
  cfg.ref_refine = static_cast<int>(opt_d(j, "ref_refine", 8.0, "sweep"));
  cfg.max_refine = static_cast<int>(opt_d(j, "max_refine", 14.0, "sweep"));
  if (j.contains("custom_u0")) {
    const json& c = j.at("custom_u0");
    cfg.custom_u0.grid = grid_from_json(need(c, "grid", "custom_u0"));
    cfg.custom_u0.values = need(c, "values", "custom_u0").get<std::vector<double>>();
  }
  return cfg;
}

TWSpec tw_spec_from_json(const json& j) {
  TWSpec spec;
  spec.flux = flux_by_label(opt_s(j, "flux", "burgers", "tw"));
  spec.phi_minus = opt_d(j, "phi_minus", 1.0, "tw");
  spec.phi_plus = opt_d(j, "phi_plus", 0.0, "tw");
  spec.epsilon = need_d(j, "epsilon", "tw");
  spec.alpha = need_d(j, "alpha", "tw");
  spec.grid = grid_from_json(need(j, "grid", "tw"));
  return spec;
}

void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys, const std::string& title, bool log_log) {
  if (xs.size() != ys.size()) throw std::invalid_argument("svg plot: xs/ys length mismatch");
  std::vector<double> px, py;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (log_log && (xs[i] <= 0.0 || ys[i] <= 0.0)) continue;
    px.push_back(log_log ? std::log10(xs[i]) : xs[i]);
    py.push_back(log_log ? std::log10(ys[i]) : ys[i]);
  }
  if (px.empty()) throw std::invalid_argument("svg plot: no plottable points");
  double x_lo = *std::min_element(px.begin(), px.end());
  double x_hi = *std::max_element(px.begin(), px.end());
  double y_lo = *std::min_element(py.begin(), py.end());
  double y_hi = *std::max_element(py.begin(), py.end());
  if (x_hi - x_lo < 1e-12) { x_lo -= 1.0; x_hi += 1.0; }
  if (y_hi - y_lo < 1e-12) { y_lo -= 1.0; y_hi += 1.0; }
  const double W = 640, H = 420, ML = 70, MR = 20, MT = 40, MB = 50;
  auto sx = [&](double v) { return ML + (v - x_lo) / (x_hi - x_lo) * (W - ML - MR); };
  auto sy = [&](double v) { return H - MB - (v - y_lo) / (y_hi - y_lo) * (H - MT - MB); };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };
  std::ofstream out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << title << (log_log ? " (log-log)" : "")
      << "</text>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
      << H - MB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << ML << "\" y=\"" << H - MB + 18
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(x_lo) << "</text>\n";
  out << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 18
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(x_hi)
      << "</text>\n";
  out << "<text x=\"" << ML - 6 << "\" y=\"" << H - MB
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(y_lo)
      << "</text>\n";
  out << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(y_hi)
      << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < px.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", sx(px[i]), sy(py[i]));
    out << (i ? " " : "") << buf;
  }
  out << "\"/>\n";
  for (std::size_t i = 0; i < px.size(); ++i) {
    char bx[32], by[32];
    std::snprintf(bx, sizeof bx, "%.2f", sx(px[i]));
    std::snprintf(by, sizeof by, "%.2f", sy(py[i]));
    out << "<circle cx=\"" << bx << "\" cy=\"" << by << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace fracwave
