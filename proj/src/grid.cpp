#include "fracwave/grid.hpp"

#include <cmath>

namespace fracwave {

FluxFn burgers_flux() {
  FluxFn fl;
  fl.f = [](double u) { return 0.5 * u * u; };
  fl.f_prime = [](double u) { return u; };
  fl.label = "burgers";
  fl.convex = true;
  return fl;
}

FluxFn zero_flux() {
  FluxFn fl;
  fl.f = [](double) { return 0.0; };
  fl.f_prime = [](double) { return 0.0; };
  fl.label = "zero";
  fl.convex = true;  // trivially convex (affine)
  return fl;
}

FluxFn quartic_flux() {
  FluxFn fl;
  fl.f = [](double u) { return u * u * u * u; };
  fl.f_prime = [](double u) { return 4.0 * u * u * u; };
  fl.label = "quartic";
  fl.convex = true;  // convex on nonnegative data, which is how it is used
  return fl;
}

FluxFn linear_flux(double a) {
  FluxFn fl;
  fl.f = [a](double u) { return a * u; };
  fl.f_prime = [a](double) { return a; };
  fl.label = "linear";
  fl.convex = true;
  return fl;
}

FluxFn flux_by_label(const std::string& label) {
  if (label == "burgers") return burgers_flux();
  if (label == "zero") return zero_flux();
  if (label == "quartic") return quartic_flux();
  if (label == "linear") return linear_flux(1.0);
  throw std::invalid_argument("flux_by_label: unknown flux '" + label + "'");
}

void validate_flux(const FluxFn& flux, double lo, double hi) {
  if (!flux.f || !flux.f_prime) throw std::invalid_argument("flux: missing callable");
  if (!(hi >= lo)) throw std::invalid_argument("flux: empty validation range");
  double span = std::max(hi - lo, 1.0);
  double h = 1e-5 * span;
  const int samples = 17;
  for (int i = 0; i < samples; ++i) {
    double u = lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
    double fd = (flux.f(u + h) - flux.f(u - h)) / (2.0 * h);
    double fp = flux.f_prime(u);
    double scale = std::max({std::abs(fd), std::abs(fp), 1.0});
    if (std::abs(fd - fp) > 1e-6 * scale)
      throw std::invalid_argument("flux: f_prime disagrees with central differences of f");
    if (!std::isfinite(flux.f(u)) || !std::isfinite(fp))
      throw std::invalid_argument("flux: non-finite evaluation");
  }
}

}  // namespace fracwave
