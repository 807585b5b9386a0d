#include "wco/example_report.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

namespace wco {
namespace {

constexpr double kPi = std::numbers::pi;

ExampleCheck make_check(std::string name, double residual, double tol, std::string detail = {}) {
  return ExampleCheck{std::move(name), residual, tol, residual < tol, std::move(detail)};
}

std::vector<complex> right_half_points(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(0.0, 2.0), im(-6.0, 6.0);
  std::vector<complex> z(n);
  for (auto& v : z) v = {re(rng), im(rng)};
  return z;
}

std::vector<complex> disk_points(std::size_t n, double rmax, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<complex> z(n);
  for (auto& v : z) v = std::polar(rmax * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
  return z;
}

double derivative_error(double dt) {
  const Section4Signals s = section4_pair(dt);
  double err = 0.0;
  for (std::size_t i = 1; i + 1 < s.h.samples.size(); ++i) {
    const complex d = (s.h.samples[i + 1] - s.h.samples[i - 1]) / (2.0 * dt);
    err = std::max(err, std::abs(d - (s.g.samples[i] - s.h.samples[i])));
  }
  return err;
}

}  // namespace

bool ExampleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.pass; });
}

ExampleReport run_example_report(const Settings& cfg) {
  ExampleReport rep;
  const Section4Signals s = section4_pair();

  const auto zs = right_half_points(20, 4);
  double e_g = 0.0, e_f = 0.0;
  for (const complex& z : zs) {
    const complex fg = example_g_closed(z);
    e_g = std::max(e_g, std::abs(fourier_laplace(s.g, z) - fg));
    e_f = std::max(e_f, std::abs(fourier_laplace(s.f, z) - fg * (1.0 - z) / (1.0 + z)));
  }
  rep.checks.push_back(make_check("transform_g_closed_form", e_g, 1e-8, "20 points, 0 <= Re z <= 2"));
  rep.checks.push_back(make_check("transform_f_relation", e_f, 1e-8, "Ff = Fg (1 - z)/(1 + z)"));

  double e_lin = 0.0;
  for (std::size_t i = 0; i < s.f.samples.size(); ++i)
    e_lin = std::max(e_lin, std::abs(s.f.samples[i] - (2.0 * s.h.samples[i] - s.g.samples[i])));
  rep.checks.push_back(make_check("f_equals_2h_minus_g", e_lin, 1e-12));

  const double dts[3] = {2.0 * kPi / 1024.0, 2.0 * kPi / 4096.0, 2.0 * kPi / 16384.0};
  double errs[3];
  for (int i = 0; i < 3; ++i) errs[i] = derivative_error(dts[i]);
  const double order = std::min(std::log(errs[0] / errs[1]), std::log(errs[1] / errs[2])) / std::log(4.0);
  {
    std::ostringstream d;
    d.precision(3);
    d << "errors " << errs[0] << ", " << errs[1] << ", " << errs[2] << "; observed order " << order;
    rep.checks.push_back(make_check("h_prime_equals_g_minus_h", std::abs(order - 2.0), 0.2, d.str()));
  }

  double e_conv = 0.0;
  using Gauss = boost::math::quadrature::gauss<double, 20>;
  for (std::size_t i = 0; i < s.f.samples.size(); i += 16) {
    const double t = s.f.time(i);
    const double integral = t > 0.0 ? Gauss::integrate([](double x) { return std::sin(x); }, 0.0, std::min(t, 2.0 * kPi)) : 0.0;
    const complex conv = 2.0 * std::exp(-t) * integral - s.g.samples[i];
    e_conv = std::max(e_conv, std::abs(conv - s.f.samples[i]));
  }
  rep.checks.push_back(make_check("convolution_form_of_f", e_conv, 1e-8));

  const Evaluator rho = rho_closed;
  double min_rho = std::numeric_limits<double>::infinity();
  for (const complex& z : disk_grid(cfg.r_work, cfg.grid_radii, cfg.grid_angles)) min_rho = std::min(min_rho, std::abs(rho(z)));
  rep.checks.push_back(make_check("rho_min_modulus_positive", min_rho > 0.0 ? 0.0 : 1.0, 0.5,
                                  "min |rho| = " + std::to_string(min_rho)));
  const TaylorSeries rs = rho_series();
  const int zeros = count_zeros(rs, cfg.r_work, cfg);
  rep.checks.push_back(make_check("rho_zero_count", zeros, 0.5, "zeros in |z| < r_work: " + std::to_string(zeros)));
  const double defect = outerness_defect(rho, 0.999, 4096);
  rep.checks.push_back(make_check("rho_outerness_defect", defect, 0.01, "r = 0.999, 4096 samples"));

  double e_cay = 0.0;
  for (const complex& z : disk_points(100, 0.95, 5)) {
    const Evaluator back = [&](complex w) { return cayley_from_disk(rho, w); };
    e_cay = std::max(e_cay, std::abs(cayley_to_disk(back, z) - rho(z)) / std::max(1.0, std::abs(rho(z))));
  }
  rep.checks.push_back(make_check("cayley_round_trip", e_cay, 1e-12, "100 points"));

  double e_phi = 0.0;
  const Evaluator rho_sigma = [&](complex w) { return rho(w) * w; };
  for (const complex& z : zs) {
    const complex want = example_g_closed(z) * (1.0 - z) / (1.0 + z);
    e_phi = std::max(e_phi, std::abs(cayley_from_disk(rho_sigma, z) - want));
  }
  rep.checks.push_back(make_check("inverse_cayley_of_rho_sigma", e_phi, 1e-9));

  const TimeSignal ex = inverse_laplace_bromwich([](complex z) { return 1.0 / (1.0 + z); }, 0.3, 5.0, 200000, 500);
  double e_brom = 0.0;
  for (std::size_t i = 0; i < ex.samples.size(); ++i) {
    const double t = ex.time(i);
    if (t < 0.1 || t > 5.0) continue;
    e_brom = std::max(e_brom, std::abs(ex.samples[i] - std::exp(-t)) / std::exp(-t));
  }
  rep.checks.push_back(make_check("bromwich_exponential", e_brom, 1e-4, "relative, t in [0.1, 5]"));
  return rep;
}

}  // namespace wco
