#include "wco/halfplane.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "wco/error.hpp"
#include "wco/kernels.hpp"

namespace wco {
namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * kPi);

using Gauss = boost::math::quadrature::gauss<double, 8>;

// 8-point Gauss-Legendre rule on [0, 1].
struct Rule {
  std::array<double, 8> u;
  std::array<double, 8> w;
};

const Rule& unit_rule() {
  static const Rule rule = [] {
    Rule r{};
    const auto& x = Gauss::abscissa();
    const auto& w = Gauss::weights();
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi = x[i], wi = w[i];
      if (xi == 0.0) {
        r.u[k] = 0.5, r.w[k++] = 0.5 * wi;
        continue;
      }
      r.u[k] = 0.5 * (1.0 - xi), r.w[k++] = 0.5 * wi;
      r.u[k] = 0.5 * (1.0 + xi), r.w[k++] = 0.5 * wi;
    }
    return r;
  }();
  return rule;
}

// C[o][k] = dt int_0^1 exp(-z u dt) L_k(o + u) du, where L_k are the Lagrange
// basis polynomials on the stencil nodes 0..deg and the cell starts at node o.
struct CellWeights {
  int deg = 0;
  std::vector<std::vector<complex>> c;
};

CellWeights cell_weights(const TimeSignal& x, complex z) {
  const std::size_t n = x.samples.size() - 1;
  CellWeights cw;
  cw.deg = static_cast<int>(std::min<std::size_t>(5, n));
  const int deg = cw.deg;
  const double dt = x.dt;
  const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * std::abs(z) * dt / (2.0 * kPi))));
  const Rule& rule = unit_rule();
  cw.c.assign(static_cast<std::size_t>(deg), std::vector<complex>(static_cast<std::size_t>(deg) + 1));
  for (int o = 0; o < deg; ++o)
    for (int p = 0; p < panels; ++p)
      for (std::size_t q = 0; q < rule.u.size(); ++q) {
        const double u = (p + rule.u[q]) / panels;
        const complex e = std::exp(-z * (u * dt)) * (rule.w[q] * dt / panels);
        const double s = o + u;
        for (int k = 0; k <= deg; ++k) {
          double l = 1.0;
          for (int m = 0; m <= deg; ++m)
            if (m != k) l *= (s - m) / static_cast<double>(k - m);
          cw.c[static_cast<std::size_t>(o)][static_cast<std::size_t>(k)] += e * l;
        }
      }
  return cw;
}

complex cell_term(const TimeSignal& x, const CellWeights& cw, complex z, std::size_t i) {
  const std::size_t n = x.samples.size() - 1;
  const std::size_t deg = static_cast<std::size_t>(cw.deg);
  const std::size_t start = std::min(i >= 2 ? i - 2 : 0, n - deg);
  const auto& c = cw.c[i - start];
  complex acc = 0.0;
  for (std::size_t k = 0; k <= deg; ++k) acc += c[k] * x.samples[start + k];
  return std::exp(-z * x.time(i)) * acc;
}

double defect_from_values(complex k0, std::vector<complex> v) {
  if (std::abs(k0) <= 1e-12) throw ZeroAtOrigin("outerness defect needs k(0) != 0");
  for (complex& x : v) {
    const double a = std::abs(x);
    if (a <= 1e-12) throw ZeroOnContour("|k| below 1e-12 on the defect contour");
    x = std::log(a);
  }
  return kernels::parallel::sum(v).real() / static_cast<double>(v.size()) - std::log(std::abs(k0));
}

void check_abscissa(const TimeSignal& x, complex z) {
  if (!(z.real() > -1.0 / x.dt))
    throw DomainError("transform abscissa Re z = " + std::to_string(z.real()) + " below -1/dt");
}

}  // namespace

TimeSignal::TimeSignal(double step, std::vector<complex> values) : dt(step), samples(std::move(values)) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvariantError("time step must be positive");
  if (samples.size() < 2) throw InvariantError("a time signal needs at least two samples");
  for (const complex& v : samples)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw InvariantError("non-finite signal sample");
}

HalfPlaneSamples::HalfPlaneSamples(std::vector<complex> z, std::vector<complex> v)
    : points(std::move(z)), values(std::move(v)) {
  if (points.size() != values.size()) throw InvariantError("points and values differ in length");
  for (const complex& p : points)
    if (!(p.real() > 0.0)) throw InvariantError("half-plane sample with Re z <= 0");
}

complex fourier_laplace(const TimeSignal& x, complex z) {
  check_abscissa(x, z);
  const CellWeights cw = cell_weights(x, z);
  const std::size_t cells = x.samples.size() - 1;
  return kInvSqrt2Pi * kernels::chunked_sum(cells, [&](std::size_t i) { return cell_term(x, cw, z, i); });
}

complex fourier_laplace_serial(const TimeSignal& x, complex z) {
  check_abscissa(x, z);
  const CellWeights cw = cell_weights(x, z);
  complex acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.samples.size(); ++i) acc += cell_term(x, cw, z, i);
  return kInvSqrt2Pi * acc;
}

complex example_g_closed(complex z) {
  const complex u = 1.0 + z;
  for (const complex u0 : {complex(0, 1), complex(0, -1)}) {
    const complex eps = u - u0;
    if (std::abs(eps) < 1e-6) {
      // 1 - exp(-2 pi u) and 1 + u^2 both vanish at u0; divide out eps.
      const complex num = 2 * kPi - 2 * kPi * kPi * eps + (4 * kPi * kPi * kPi / 3) * eps * eps;
      return kInvSqrt2Pi * num / (2.0 * u0 + eps);
    }
  }
  return kInvSqrt2Pi * (1.0 - std::exp(-2 * kPi * u)) / (1.0 + u * u);
}

complex cayley_to_disk(const Evaluator& f, complex z) {
  if (std::abs(z) >= 1.0 || z == complex(-1.0)) throw DomainError("Cayley transform needs |z| < 1");
  return 2.0 * kSqrtPi / (1.0 + z) * f((1.0 - z) / (1.0 + z));
}

complex cayley_from_disk(const Evaluator& k, complex s) {
  if (!(s.real() > 0.0)) throw DomainError("inverse Cayley transform needs Re s > 0");
  return 1.0 / (kSqrtPi * (1.0 + s)) * k((1.0 - s) / (1.0 + s));
}

complex cayley_from_disk(const TaylorSeries& k, complex s, const Settings& cfg) {
  if (!(s.real() > 0.0)) throw DomainError("inverse Cayley transform needs Re s > 0");
  const complex w = (1.0 - s) / (1.0 + s);
  if (std::abs(w) > cfg.r_work) throw DomainError("inverse Cayley transform: |(1-s)/(1+s)| beyond r_work");
  return 1.0 / (kSqrtPi * (1.0 + s)) * eval_unchecked(k, w);
}

complex rho_closed(complex z) {
  const complex u = 1.0 + z;
  return std::sqrt(2.0) * u * (1.0 - std::exp(-4 * kPi / u)) / (u * u + 4.0);
}

TaylorSeries rho_series(int order) {
  std::size_t m = 16;
  while (m < 4 * static_cast<std::size_t>(order)) m *= 2;
  const double r = 0.99;
  const std::vector<complex> nodes = circle_nodes(r, m);
  std::vector<complex> v(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = rho_closed(nodes[j]);
  return coeffs_from_circle(CircleSamples(r, std::move(v)), order, default_settings(), true).with_label("rho");
}

double outerness_defect(const Evaluator& k, double r, std::size_t m) {
  const std::vector<complex> nodes = circle_nodes(r, m);
  std::vector<complex> v(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(m); ++j)
    v[static_cast<std::size_t>(j)] = k(nodes[static_cast<std::size_t>(j)]);
  return defect_from_values(k(0.0), v);
}

double outerness_defect(const TaylorSeries& k, double r, std::size_t m) {
  return defect_from_values(k[0], sample_circle(k, r, m).values);
}

Section4Signals section4_pair(double dt) {
  if (!(dt > 0.0)) throw InvariantError("time step must be positive");
  const auto n = static_cast<std::size_t>(std::max(1.0, std::round(2 * kPi / dt)));
  const double step = 2 * kPi / static_cast<double>(n);
  std::vector<complex> f(n + 1), g(n + 1), h(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = step * static_cast<double>(i);
    const double e = std::exp(-t), s = std::sin(t), c = std::cos(t);
    g[i] = e * s;
    f[i] = e * (2.0 - 2.0 * c - s);
    h[i] = e * (1.0 - c);
  }
  return {TimeSignal(step, std::move(f)), TimeSignal(step, std::move(g)), TimeSignal(step, std::move(h))};
}

TimeSignal inverse_laplace_bromwich(const Evaluator& f, double a, double horizon, std::size_t n,
                                    std::size_t samples) {
  if (!(a > 0.0)) throw DomainError("Bromwich abscissa must be positive");
  if (!(horizon > 0.0) || n == 0 || samples == 0) throw InvariantError("Bromwich grid must be non-empty");
  const double period = 4.0 * horizon;
  const double dw = 2 * kPi / period;
  const std::size_t count = 2 * n + 1;
  std::vector<double> omega(count);
  std::vector<complex> weight(count);
  double peak = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double idx = static_cast<double>(k) - static_cast<double>(n);
    omega[k] = idx * dw;
    const complex v = f(complex(a, omega[k]));
    peak = std::max(peak, std::abs(v));
    const double hann = 0.5 * (1.0 + std::cos(kPi * idx / static_cast<double>(n + 1)));
    weight[k] = v * hann;
  }
  const double edge = std::max(std::abs(f(complex(a, omega.front()))), std::abs(f(complex(a, omega.back()))));
  if (edge > 1e-2 * peak)
    throw DecayError("|F| at the frequency cutoff is " + std::to_string(edge / peak) + " of its peak");
  std::vector<double> times(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) times[i] = horizon * static_cast<double>(i) / static_cast<double>(samples);
  std::vector<complex> x = kernels::parallel::fourier_sum(omega, weight, times);
  for (std::size_t i = 0; i <= samples; ++i) x[i] *= std::exp(a * times[i]) * dw / (2 * kPi);
  return TimeSignal(horizon / static_cast<double>(samples), std::move(x));
}

}  // namespace wco
