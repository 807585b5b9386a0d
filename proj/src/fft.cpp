#include "wco/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace wco::fft {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are cached per (size, sign) and never destroyed.
fftw_plan plan_for(int n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                 reinterpret_cast<fftw_complex*>(b.data()), sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(std::make_pair(n, sign), p);
  return p;
}

std::vector<std::complex<double>> run(std::span<const std::complex<double>> in, int sign) {
  std::vector<std::complex<double>> src(in.begin(), in.end());
  std::vector<std::complex<double>> out(in.size());
  if (in.empty()) return out;
  fftw_plan p = plan_for(static_cast<int>(in.size()), sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(src.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<std::complex<double>> forward(std::span<const std::complex<double>> in) {
  return run(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> backward(std::span<const std::complex<double>> in) {
  return run(in, FFTW_BACKWARD);
}

}  // namespace wco::fft
