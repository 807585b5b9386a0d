#pragma once

#include <functional>
#include <vector>

#include "wco/taylor_series.hpp"

namespace wco {

/// Samples x(t_i), t_i = i dt, i = 0..n, of a signal supported on [0, T], T = n dt.
struct TimeSignal {
  double dt = 0.0;
  std::vector<complex> samples;

  TimeSignal() = default;
  TimeSignal(double step, std::vector<complex> values);  // validates
  double support_end() const { return dt * static_cast<double>(samples.size() - 1); }
  double time(std::size_t i) const { return dt * static_cast<double>(i); }
};

struct HalfPlaneSamples {
  std::vector<complex> points;
  std::vector<complex> values;

  HalfPlaneSamples() = default;
  HalfPlaneSamples(std::vector<complex> z, std::vector<complex> v);  // validates Re z > 0
};

using Evaluator = std::function<complex(complex)>;

/// (1/sqrt(2 pi)) int_0^T x(t) exp(-z t) dt by Gauss-Legendre on local
/// quintic interpolants of the samples.
complex fourier_laplace(const TimeSignal& x, complex z);
/// Serial reference of the same quadrature.
complex fourier_laplace_serial(const TimeSignal& x, complex z);

/// Transform of chi_[0,2pi](t) e^{-t} sin t in closed form.
complex example_g_closed(complex z);

/// (2 sqrt(pi) / (1 + z)) F((1 - z)/(1 + z)).
complex cayley_to_disk(const Evaluator& f, complex z);
/// (1 / (sqrt(pi) (1 + s))) k((1 - s)/(1 + s)).
complex cayley_from_disk(const TaylorSeries& k, complex s, const Settings& cfg = default_settings());
complex cayley_from_disk(const Evaluator& k, complex s);

/// rho = cayley_to_disk(example_g_closed) in closed form, and its Taylor
/// series recovered from samples on |z| = 0.99.
complex rho_closed(complex z);
TaylorSeries rho_series(int order = 2048);

/// Mean of log|k| on the r-circle minus log|k(0)|.
double outerness_defect(const TaylorSeries& k, double r, std::size_t m);
double outerness_defect(const Evaluator& k, double r, std::size_t m);

struct Section4Signals {
  TimeSignal f;
  TimeSignal g;
  TimeSignal h;
};
/// The compactly supported example pair and h = (f + g)/2 on [0, 2 pi].
Section4Signals section4_pair(double dt = 2.0 * 3.14159265358979323846 / 4096.0);

/// x(t) = (e^{a t}/2 pi) int F(a + i w) e^{i w t} dw on [0, T], Hann-windowed,
/// truncated to n frequencies per side; `samples` output intervals.
TimeSignal inverse_laplace_bromwich(const Evaluator& f, double a, double horizon, std::size_t n,
                                    std::size_t samples = 512);

}  // namespace wco
