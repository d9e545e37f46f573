#include "fracwave/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace fracwave::fft {

namespace {

// Plans are created once per size under a lock with FFTW_UNALIGNED so they can
// be executed on any caller buffer; fftw_execute_dft_* on distinct arrays is
// safe to run concurrently.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan_r2c(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> in(n, 0.0);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                                     reinterpret_cast<fftw_complex*>(out.data()),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fft: r2c plan creation failed");
  cache.emplace(n, p);
  return p;
}

fftw_plan get_plan_c2r(std::size_t n) {
  static std::map<std::size_t, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> in(n / 2 + 1);
  std::vector<double> out(n, 0.0);
  fftw_plan p = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                                     reinterpret_cast<fftw_complex*>(in.data()),
                                     out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fft: c2r plan creation failed");
  cache.emplace(n, p);
  return p;
}

}  // namespace

std::size_t good_size(std::size_t min_size) {
  for (std::size_t n = min_size;; ++n) {
    std::size_t m = n;
    for (std::size_t f : {2, 3, 5})
      while (m % f == 0) m /= f;
    if (m == 1) return n;
  }
}

void forward_r2c(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
  std::size_t n = in.size();
  out.resize(n / 2 + 1);
  fftw_plan p = get_plan_r2c(n);
  fftw_execute_dft_r2c(p, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void backward_c2r(const std::vector<std::complex<double>>& in, std::vector<double>& out,
                  std::size_t n) {
  if (in.size() != n / 2 + 1) throw std::invalid_argument("fft: wrong spectrum length");
  out.resize(n);
  fftw_plan p = get_plan_c2r(n);
  // c2r destroys its input; work on a copy so callers can reuse spectra.
  std::vector<std::complex<double>> tmp(in);
  fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(tmp.data()), out.data());
  double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
}

std::vector<double> linear_convolution(const std::vector<double>& a,
                                       const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::size_t full = a.size() + b.size() - 1;
  std::size_t n = good_size(full);
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.begin(), a.end(), pa.begin());
  std::copy(b.begin(), b.end(), pb.begin());
  std::vector<std::complex<double>> fa, fb;
  forward_r2c(pa, fa);
  forward_r2c(pb, fb);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> out;
  backward_c2r(fa, out, n);
  out.resize(full);
  return out;
}

}  // namespace fracwave::fft
