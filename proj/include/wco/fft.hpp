#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wco::fft {

// Unnormalized DFT, out_k = sum_j in_j exp(-2 pi i jk/M). Thread-safe.
std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in);
// Unnormalized inverse, out_j = sum_k in_k exp(+2 pi i jk/M). Thread-safe.
std::vector<std::complex<double>> backward(std::span<const std::complex<double>> in);

}  // namespace wco::fft
