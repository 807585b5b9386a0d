#include "wco/taylor_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "wco/error.hpp"
#include "wco/fft.hpp"
#include "wco/kernels.hpp"

namespace wco {
namespace {

bool is_pow2(std::size_t m) { return m >= 2 && (m & (m - 1)) == 0; }

std::size_t next_pow2(std::size_t m) {
  std::size_t p = 2;
  while (p < m) p <<= 1;
  return p;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

// ---- TaylorSeries ------------------------------------------------------------

TaylorSeries::TaylorSeries(std::vector<complex> coeffs, std::string label)
    : coeffs_(std::move(coeffs)), label_(std::move(label)) {
  if (coeffs_.size() < 2)
    throw InvariantError("TaylorSeries needs order >= 1 (got " +
                         std::to_string(static_cast<long>(coeffs_.size()) - 1) + ")");
  for (const complex& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InvariantError("TaylorSeries coefficient is not finite");
}

TaylorSeries TaylorSeries::constant(complex c, int order) {
  std::vector<complex> v(static_cast<std::size_t>(std::max(order, 1)) + 1);
  v[0] = c;
  return TaylorSeries(std::move(v));
}

TaylorSeries TaylorSeries::identity(int order) { return monomial(1, 1.0, order); }

TaylorSeries TaylorSeries::monomial(int power, complex c, int order) {
  const int n = std::max({order, power, 1});
  std::vector<complex> v(static_cast<std::size_t>(n) + 1);
  v[static_cast<std::size_t>(power)] = c;
  return TaylorSeries(std::move(v));
}

TaylorSeries TaylorSeries::with_label(std::string label) const {
  TaylorSeries t = *this;
  t.label_ = std::move(label);
  return t;
}

TaylorSeries TaylorSeries::resized(int order) const {
  std::vector<complex> v = coeffs_;
  v.resize(static_cast<std::size_t>(std::max(order, 1)) + 1);
  return TaylorSeries(std::move(v), label_);
}

double TaylorSeries::norm() const {
  double s = 0.0;
  for (const complex& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

double TaylorSeries::max_abs_coeff() const {
  double m = 0.0;
  for (const complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

TaylorSeries operator+(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = std::max(a.order(), b.order());
  std::vector<complex> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = a[i] + b[i];
  return TaylorSeries(std::move(v));
}

TaylorSeries operator-(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = std::max(a.order(), b.order());
  std::vector<complex> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = a[i] - b[i];
  return TaylorSeries(std::move(v));
}

TaylorSeries operator*(complex s, const TaylorSeries& a) {
  std::vector<complex> v(a.coeffs().begin(), a.coeffs().end());
  for (complex& c : v) c *= s;
  return TaylorSeries(std::move(v), a.label());
}

double coeff_distance(const TaylorSeries& a, const TaylorSeries& b) {
  double d = 0.0;
  for (int n = 0; n <= std::max(a.order(), b.order()); ++n) d = std::max(d, std::abs(a[n] - b[n]));
  return d;
}

// ---- CircleSamples -----------------------------------------------------------

CircleSamples::CircleSamples(double r, std::vector<complex> v) : radius(r), values(std::move(v)) {
  if (!(r > 0.0 && r < 1.0)) throw InvariantError("CircleSamples radius must lie in (0,1)");
  if (!is_pow2(values.size()))
    throw InvariantError("CircleSamples count must be a power of two >= 2 (got " +
                         std::to_string(values.size()) + ")");
}

complex CircleSamples::node(std::size_t j) const {
  return std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                static_cast<double>(values.size()));
}

std::vector<complex> circle_nodes(double r, std::size_t m) {
  std::vector<complex> z(m);
  for (std::size_t j = 0; j < m; ++j)
    z[j] = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m));
  return z;
}

std::size_t contour_size(int order, const Settings& cfg) {
  return std::max(next_pow2(cfg.contour_samples), next_pow2(2 * static_cast<std::size_t>(order) + 2));
}

std::vector<complex> disk_grid(double r, int radii, int angles) {
  std::vector<complex> z;
  z.reserve(static_cast<std::size_t>(radii * angles) + 1);
  z.emplace_back(0.0, 0.0);
  for (int i = 1; i <= radii; ++i) {
    const double rho = r * static_cast<double>(i) / radii;
    for (int j = 0; j < angles; ++j)
      z.push_back(std::polar(rho, 2.0 * std::numbers::pi * j / angles));
  }
  return z;
}

// ---- evaluation and algebra --------------------------------------------------

complex eval_unchecked(const TaylorSeries& s, complex z) { return kernels::horner(s.coeffs(), z); }

complex eval_derivative_unchecked(const TaylorSeries& s, complex z) {
  return kernels::horner_dd(s.coeffs(), z).d1;
}

complex eval(const TaylorSeries& s, complex z, const Settings& cfg) {
  if (std::abs(z) > cfg.r_work * (1.0 + 1e-12))
    throw DomainError("eval at |z| = " + fmt(std::abs(z)) + " outside the working radius " +
                      fmt(cfg.r_work));
  return eval_unchecked(s, z);
}

TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b) {
  const int n = std::max(a.order(), b.order());
  std::vector<complex> v(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= std::min(a.order(), n); ++i) {
    const complex ai = a[i];
    if (ai == complex{}) continue;
    for (int j = 0; j <= std::min(b.order(), n - i); ++j) v[static_cast<std::size_t>(i + j)] += ai * b[j];
  }
  return TaylorSeries(std::move(v));
}

TaylorSeries div(const TaylorSeries& a, const TaylorSeries& b, const Settings& cfg) {
  const complex b0 = b[0];
  if (std::abs(b0) <= cfg.eps_unit)
    throw DivisionByNonUnit("divisor has |b(0)| = " + fmt(std::abs(b0)));
  const int n = std::max(a.order(), b.order());
  std::vector<complex> q(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    complex acc = a[k];
    for (int j = 1; j <= std::min(k, b.order()); ++j) acc -= b[j] * q[static_cast<std::size_t>(k - j)];
    q[static_cast<std::size_t>(k)] = acc / b0;
  }
  return TaylorSeries(std::move(q));
}

TaylorSeries compose(const TaylorSeries& outer, const TaylorSeries& inner, double r,
                     const Settings& cfg) {
  const int n = std::max(outer.order(), inner.order());
  const std::size_t m = contour_size(n, cfg);
  const CircleSamples in = sample_circle(inner, r, m);
  double sup = 0.0;
  for (const complex& w : in.values) sup = std::max(sup, std::abs(w));
  if (sup > cfg.r_work)
    throw RangeError("inner function reaches |w| = " + fmt(sup) + " on the r = " + fmt(r) +
                     " circle, beyond the working radius " + fmt(cfg.r_work));
  CircleSamples out(r, kernels::parallel::eval_many(outer.coeffs(), in.values));
  return coeffs_from_circle(out, n, cfg, /*chop=*/true);
}

TaylorSeries derivative(const TaylorSeries& s) {
  std::vector<complex> v(static_cast<std::size_t>(s.order()) + 1);
  for (int k = 1; k <= s.order(); ++k) v[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * s[k];
  return TaylorSeries(std::move(v));
}

TaylorSeries series_exp(const TaylorSeries& s) {
  const int n = s.order();
  std::vector<complex> h(static_cast<std::size_t>(n) + 1);
  h[0] = std::exp(s[0]);
  for (int k = 1; k <= n; ++k) {
    complex acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * s[j] * h[static_cast<std::size_t>(k - j)];
    h[static_cast<std::size_t>(k)] = acc / static_cast<double>(k);
  }
  return TaylorSeries(std::move(h));
}

TaylorSeries series_log(const TaylorSeries& s, const Settings& cfg) {
  const complex s0 = s[0];
  if (std::abs(s0) <= cfg.eps_unit) throw DivisionByNonUnit("log of a series vanishing at 0");
  const int n = s.order();
  std::vector<complex> l(static_cast<std::size_t>(n) + 1);
  l[0] = std::log(s0);
  for (int k = 1; k <= n; ++k) {
    complex acc = static_cast<double>(k) * s[k];
    for (int j = 1; j < k; ++j) acc -= static_cast<double>(j) * l[static_cast<std::size_t>(j)] * s[k - j];
    l[static_cast<std::size_t>(k)] = acc / (static_cast<double>(k) * s0);
  }
  return TaylorSeries(std::move(l));
}

// ---- circle transport --------------------------------------------------------

CircleSamples sample_circle(const TaylorSeries& s, double r, std::size_t m) {
  std::vector<complex> a(m);
  double rn = 1.0;
  for (int n = 0; n <= s.order(); ++n) {
    a[static_cast<std::size_t>(n) % m] += s[n] * rn;
    rn *= r;
  }
  return CircleSamples(r, fft::backward(a));
}

namespace {

struct Modes {
  std::vector<complex> v;  // DFT / M
  double scale = 0.0;      // max |sample|
};

Modes modes_of(const CircleSamples& cs) {
  Modes md;
  md.v = fft::forward(cs.values);
  const double inv = 1.0 / static_cast<double>(cs.size());
  for (complex& c : md.v) c *= inv;
  for (const complex& x : cs.values) md.scale = std::max(md.scale, std::abs(x));
  return md;
}

double negative_ratio(const Modes& md) {
  const std::size_t m = md.v.size();
  double neg = 0.0;
  for (std::size_t k = m / 2; k < m; ++k) neg = std::max(neg, std::abs(md.v[k]));
  return md.scale > 0.0 ? neg / md.scale : 0.0;
}

}  // namespace

double negative_mode_ratio(const CircleSamples& cs) { return negative_ratio(modes_of(cs)); }

TaylorSeries coeffs_from_circle(const CircleSamples& cs, int order, const Settings& cfg, bool chop) {
  const std::size_t m = cs.size();
  if (order < 1 || m < 2 * static_cast<std::size_t>(order) + 2)
    throw InvariantError("coeffs_from_circle needs M >= 2N+2 (M = " + std::to_string(m) +
                         ", N = " + std::to_string(order) + ")");
  const Modes md = modes_of(cs);
  const double alias = negative_ratio(md);
  if (alias > cfg.alias_tol)
    throw AliasError("negative-frequency modes reach " + fmt(alias) +
                     " of the sample scale (threshold " + fmt(cfg.alias_tol) + ")");
  std::vector<complex> v(md.v.begin(), md.v.begin() + order + 1);
  if (chop) {
    double big = 0.0;
    for (const complex& c : v) big = std::max(big, std::abs(c));
    std::size_t last = 0;
    for (std::size_t k = 0; k < v.size(); ++k)
      if (std::abs(v[k]) > cfg.chop_tol * big) last = k;
    for (std::size_t k = last + 1; k < v.size(); ++k) v[k] = 0.0;
  }
  double rn = 1.0;
  for (complex& c : v) {
    c /= rn;
    rn *= cs.radius;
  }
  return TaylorSeries(std::move(v));
}

complex cauchy_interior(const CircleSamples& cs, complex w) {
  const std::size_t m = cs.size();
  const double snap = 1e-13 * cs.radius;
  const std::vector<complex> nodes = circle_nodes(cs.radius, m);
  for (std::size_t j = 0; j < m; ++j)
    if (std::abs(nodes[j] - w) < snap) return cs.values[j];
  return kernels::chunked_sum(m, [&](std::size_t j) {
           return cs.values[j] * nodes[j] / (nodes[j] - w);
         }) /
         static_cast<double>(m);
}

// ---- zeros and moduli --------------------------------------------------------

int count_zeros(const TaylorSeries& s, double r, const Settings& cfg) {
  std::size_t m = contour_size(s.order(), cfg);
  constexpr std::size_t kMaxSamples = std::size_t{1} << 18;
  for (;;) {
    const CircleSamples cs = sample_circle(s, r, m);
    const auto low = kernels::parallel::argmin_abs(cs.values);
    if (low.value <= cfg.eps_contour)
      throw ZeroOnContour("|s| = " + fmt(low.value) + " on the r = " + fmt(r) +
                          " contour; perturb the radius");
    double total = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double d = std::arg(cs.values[(j + 1) % m] / cs.values[j]);
      total += d;
      worst = std::max(worst, std::abs(d));
    }
    if (worst <= std::numbers::pi / 4 || m >= kMaxSamples)
      return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
    m *= 2;
  }
}

MinModulus min_modulus(const TaylorSeries& s, double r, int radii, int angles) {
  const std::vector<complex> grid = disk_grid(r, radii, angles);
  const std::vector<complex> vals = kernels::parallel::eval_many(s.coeffs(), grid);
  const auto best = kernels::parallel::argmin_abs(vals);
  return {best.value, grid[best.index]};
}

// ---- named series ------------------------------------------------------------

namespace series {

TaylorSeries exp(int order) {
  std::vector<complex> v(static_cast<std::size_t>(order) + 1);
  double f = 1.0;
  for (int n = 0; n <= order; ++n) {
    v[static_cast<std::size_t>(n)] = 1.0 / f;
    f *= n + 1;
  }
  return TaylorSeries(std::move(v), "exp");
}

TaylorSeries geometric(int order) {
  return TaylorSeries(std::vector<complex>(static_cast<std::size_t>(order) + 1, 1.0), "geometric");
}

TaylorSeries sin(int order) {
  std::vector<complex> v(static_cast<std::size_t>(order) + 1);
  double f = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n % 2 == 1) v[static_cast<std::size_t>(n)] = ((n / 2) % 2 == 0 ? 1.0 : -1.0) / f;
    f *= n + 1;
  }
  return TaylorSeries(std::move(v), "sin");
}

TaylorSeries cos(int order) {
  std::vector<complex> v(static_cast<std::size_t>(order) + 1);
  double f = 1.0;
  for (int n = 0; n <= order; ++n) {
    if (n % 2 == 0) v[static_cast<std::size_t>(n)] = ((n / 2) % 2 == 0 ? 1.0 : -1.0) / f;
    f *= n + 1;
  }
  return TaylorSeries(std::move(v), "cos");
}

TaylorSeries koebe(int order, double theta) {
  std::vector<complex> v(static_cast<std::size_t>(order) + 1);
  for (int n = 1; n <= order; ++n)
    v[static_cast<std::size_t>(n)] = static_cast<double>(n) * std::polar(1.0, (n - 1) * theta);
  return TaylorSeries(std::move(v), theta == 0.0 ? "koebe" : "koebe_rot");
}

TaylorSeries polynomial(std::vector<complex> coeffs, int order) {
  if (static_cast<int>(coeffs.size()) - 1 < std::max(order, 1))
    coeffs.resize(static_cast<std::size_t>(std::max(order, 1)) + 1);
  return TaylorSeries(std::move(coeffs));
}

}  // namespace series
}  // namespace wco
