// Thin FFTW3 wrapper: cached plans, real transforms, and the linear
// convolution used by the Toeplitz operator applies. Plan creation is
// serialized; execution on caller-owned arrays is concurrency-safe.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fracwave::fft {

// Smallest size >= min_size of the form 2^a * 3^b * 5^c (fast FFTW sizes).
std::size_t good_size(std::size_t min_size);

// Forward real-to-complex transform, out has n/2+1 bins, X_j = sum x_k e^{-2pi i jk/n}.
void forward_r2c(const std::vector<double>& in, std::vector<std::complex<double>>& out);

// Inverse complex-to-real transform of n/2+1 bins into n samples, normalized
// so backward(forward(x)) == x.
void backward_c2r(const std::vector<std::complex<double>>& in, std::vector<double>& out,
                  std::size_t n);

// Full linear convolution: result has a.size()+b.size()-1 entries.
std::vector<double> linear_convolution(const std::vector<double>& a,
                                       const std::vector<double>& b);

}  // namespace fracwave::fft
