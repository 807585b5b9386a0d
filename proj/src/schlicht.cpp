#include "wco/schlicht.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wco/error.hpp"
#include "wco/kernels.hpp"

namespace wco {
namespace {

constexpr double kPi = std::numbers::pi;

bool zero_free(const TaylorSeries& s, double r, const Settings& cfg) {
  try {
    return count_zeros(s, r, cfg) == 0;
  } catch (const ZeroOnContour&) {
    return false;
  }
}

TaylorSeries shift_down(const TaylorSeries& s) {  // s(z)/z for s(0) = 0
  std::vector<complex> c(static_cast<std::size_t>(s.order()) + 1);
  for (int n = 0; n < s.order(); ++n) c[static_cast<std::size_t>(n)] = s[n + 1];
  return TaylorSeries(std::move(c));
}

// sigma / (1 - c sigma)
TaylorSeries mobius_shift(const TaylorSeries& sigma, complex c, const Settings& cfg) {
  if (c == complex{}) return sigma;
  return div(sigma, TaylorSeries::constant(1.0, sigma.order()) - c * sigma, cfg);
}

bool admissible(const TaylorSeries& sigma, complex c, const Settings& cfg) {
  if (c == complex{}) return true;
  if (std::abs(c) > cfg.c_bound) return false;
  return zero_free(sigma - TaylorSeries::constant(1.0 / c, sigma.order()), cfg.r_work, cfg);
}

// Lexicographic preference: smaller |a2 + c|, then smaller |c|, then smaller arg c.
struct Score {
  double miss;
  double size;
  double angle;
};

int compare(const Score& a, const Score& b, double tol) {
  if (std::abs(a.miss - b.miss) > tol) return a.miss < b.miss ? -1 : 1;
  if (std::abs(a.size - b.size) > tol) return a.size < b.size ? -1 : 1;
  if (std::abs(a.angle - b.angle) > tol) return a.angle < b.angle ? -1 : 1;
  return 0;
}

}  // namespace

// ---- ZeroFreeUnit ---------------------------------------------------------------

ZeroFreeUnit::ZeroFreeUnit(TaylorSeries k, TaylorSeries h, const Settings& cfg)
    : k_(std::move(k)), h_(std::move(h)) {
  if (std::abs(h_[0] - 1.0) >= 1e-12) throw InvariantError("zero-free unit needs h(0) = 1");
  const MinModulus mm = min_modulus(h_, cfg.r_work, cfg.grid_radii, cfg.grid_angles);
  if (!(mm.value > 0.0)) throw InvariantError("zero-free unit vanishes on the working disk");
  int zeros = 0;
  try {
    zeros = count_zeros(h_, cfg.r_work, cfg);
  } catch (const ZeroOnContour& e) {
    throw InvariantError(std::string("zero-free unit: ") + e.what());
  }
  if (zeros != 0) throw InvariantError("zero-free unit has " + std::to_string(zeros) + " zeros in the working disk");
}

ZeroFreeUnit ZeroFreeUnit::from_exponent(const TaylorSeries& k, const Settings& cfg) {
  std::vector<complex> zk(static_cast<std::size_t>(k.order()) + 1);
  for (int j = 1; j <= k.order(); ++j) zk[static_cast<std::size_t>(j)] = k[j - 1];
  return ZeroFreeUnit(k, series_exp(TaylorSeries(std::move(zk))), cfg);
}

ZeroFreeUnit ZeroFreeUnit::from_values(const TaylorSeries& h, const Settings& cfg) {
  if (std::abs(h[0]) <= cfg.eps_unit) throw InvariantError("zero-free unit needs h(0) != 0");
  const TaylorSeries hn = complex(1.0) / h[0] * h;
  const TaylorSeries l = series_log(hn, cfg);
  return ZeroFreeUnit(shift_down(l), hn, cfg);
}

// ---- SchlichtFunction -----------------------------------------------------------

SchlichtFunction::SchlichtFunction(TaylorSeries s, const Settings& cfg) : s_(std::move(s)) {
  if (std::abs(s_[0]) >= 1e-12 || std::abs(s_[1] - 1.0) >= 1e-12)
    throw InvariantError("schlicht function needs s(0) = 0 and s'(0) = 1");
  const MeromorphicRatio mu{s_, TaylorSeries::constant(1.0, s_.order())};
  std::optional<Collision> col;
  try {
    col = is_injective_ratio(mu, 0.9, 2048, cfg);
  } catch (const ConvergenceError& e) {
    throw InvariantError(std::string("schlicht function: injectivity undecided: ") + e.what());
  }
  if (col)
    throw InvariantError("schlicht function is not injective: s(z0) = s(z1) at z0 = (" +
                         std::to_string(col->z0.real()) + ", " + std::to_string(col->z0.imag()) + ")");
}

std::vector<int> SchlichtFunction::coefficient_warnings() const {
  std::vector<int> bad;
  for (int n = 2; n <= std::min(16, s_.order()); ++n)
    if (std::abs(s_[n]) > n + 0.1) bad.push_back(n);
  return bad;
}

TaylorSeries catalog_series(const std::string& kind, complex param, int order) {
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  if (kind == "identity") {
    c[1] = 1.0;
  } else if (kind == "mobius") {  // z / (1 - b z)
    complex p = 1.0;
    for (int n = 1; n <= order; ++n, p *= param) c[static_cast<std::size_t>(n)] = p;
  } else if (kind == "koebe") {
    return series::koebe(order, param.real());
  } else if (kind == "symmetric_koebe") {  // z / (1 + z^2)
    for (int n = 1; n <= order; n += 2) c[static_cast<std::size_t>(n)] = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  } else {
    throw ParseError("unknown catalog kind '" + kind + "'");
  }
  return TaylorSeries(std::move(c));
}

namespace {

struct CatalogSpec {
  const char* name;
  const char* kind;
  complex param;
};

const CatalogSpec kCatalog[] = {
    {"z", "identity", 0.0},
    {"mobius(0.5)", "mobius", 0.5},
    {"mobius(-0.3+0.4i)", "mobius", complex(-0.3, 0.4)},
    {"mobius(0.9i)", "mobius", complex(0.0, 0.9)},
    {"mobius(-0.9)", "mobius", -0.9},
    {"koebe", "koebe", 0.0},
    {"koebe(pi/2)", "koebe", kPi / 2},
    {"koebe(2pi/3)", "koebe", 2 * kPi / 3},
    {"z/(1+z^2)", "symmetric_koebe", 0.0},
};

}  // namespace

std::vector<CatalogEntry> schlicht_catalog(int order, const Settings& cfg) {
  std::vector<CatalogEntry> out;
  for (const CatalogSpec& s : kCatalog)
    out.push_back({s.name, SchlichtFunction(catalog_series(s.kind, s.param, order).with_label(s.name), cfg)});
  return out;
}

SchlichtFunction catalog_entry(const std::string& name, int order, const Settings& cfg) {
  for (const CatalogSpec& s : kCatalog)
    if (name == s.name) return SchlichtFunction(catalog_series(s.kind, s.param, order).with_label(s.name), cfg);
  throw ParseError("unknown catalog entry '" + name + "'");
}

// ---- forward map and its inverse ----------------------------------------------------

Plane make_pair(const ZeroFreeUnit& h, const SchlichtFunction& sigma, const Settings& cfg) {
  return Plane(mul(h.h(), sigma.s()), h.h(), cfg);
}

TaylorSeries distinguished_element(const Plane& v, const Settings& cfg) {
  const TaylorSeries& f = v.f();
  const TaylorSeries& g = v.g();
  const double scale = std::max(f.norm(), g.norm());
  if (std::max(std::abs(f[0]), std::abs(g[0])) <= cfg.eps_unit * scale)
    throw DegeneratePlane("both basis elements vanish at the origin");
  const complex d = g[0] * f[1] - f[0] * g[1];
  if (std::abs(d) <= cfg.eps_unit * scale * scale)
    throw DegeneratePlane("every element vanishing at the origin has zero derivative there");
  return (g[0] / d) * f - (f[0] / d) * g;
}

complex choose_alpha(const Plane& v, double r, const Settings& cfg) {
  const TaylorSeries& f = v.f();
  const TaylorSeries& g = v.g();
  const std::vector<complex> grid = disk_grid(r, cfg.grid_radii, cfg.grid_angles);
  const auto fv = kernels::parallel::eval_many(f.coeffs(), grid);
  const auto gv = kernels::parallel::eval_many(g.coeffs(), grid);

  std::vector<complex> cloud;
  double mu_max = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double nv = std::hypot(std::abs(fv[k]), std::abs(gv[k]));
    if (std::abs(gv[k]) < 1e-8 * nv) continue;
    cloud.push_back(fv[k] / gv[k]);
    mu_max = std::max(mu_max, std::abs(cloud.back()));
  }

  std::vector<complex> cand;
  for (int m = 1; m <= 8; ++m)
    for (int j = 0; j < 8; ++j) cand.push_back(std::polar(std::ldexp(1.0 + mu_max, m), 2 * kPi * j / 8));

  // Holes of the sample cloud at several scales, most isolated first.
  if (!cloud.empty()) {
    std::vector<double> mags(cloud.size());
    for (std::size_t k = 0; k < cloud.size(); ++k) mags[k] = std::abs(cloud[k]);
    std::sort(mags.begin(), mags.end());
    struct Hole {
      double dist;
      std::size_t idx;
      complex z;
    };
    std::vector<Hole> holes;
    for (double q : {0.5, 0.75, 0.9, 1.0}) {
      const double cap = mags[std::min(mags.size() - 1, static_cast<std::size_t>(q * (mags.size() - 1)))];
      double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
      for (const complex& w : cloud) {
        if (std::abs(w) > cap) continue;
        x0 = std::min(x0, w.real()), x1 = std::max(x1, w.real());
        y0 = std::min(y0, w.imag()), y1 = std::max(y1, w.imag());
      }
      constexpr int kSide = 16;
      for (int a = 0; a < kSide; ++a)
        for (int b = 0; b < kSide; ++b) {
          const complex z(x0 + (x1 - x0) * (a + 0.5) / kSide, y0 + (y1 - y0) * (b + 0.5) / kSide);
          double dmin = 1e300;
          for (const complex& w : cloud) dmin = std::min(dmin, std::abs(w - z));
          holes.push_back({dmin, holes.size(), z});
        }
    }
    std::sort(holes.begin(), holes.end(), [](const Hole& a, const Hole& b) {
      return a.dist != b.dist ? a.dist > b.dist : a.idx < b.idx;
    });
    for (const Hole& h : holes) cand.push_back(h.z);
  }

  const std::size_t budget = std::min(cand.size(), static_cast<std::size_t>(cfg.alpha_budget));
  for (std::size_t k = 0; k < budget; ++k)
    if (zero_free(f - cand[k] * g, r, cfg)) return cand[k];
  throw AlphaSearchFailed("no alpha outside mu(D_r) among " + std::to_string(budget) +
                          " candidates (max sampled |mu| = " + std::to_string(mu_max) + ")");
}

// ---- Moebius classes ------------------------------------------------------------

CanonicalForm canonicalize(const SchlichtFunction& sigma, const Settings& cfg) {
  const TaylorSeries& s = sigma.s();
  const complex a2 = sigma.a2();
  const complex target = -a2;
  const double tol = cfg.c_refine_tol;
  auto score = [&](complex c) { return Score{std::abs(a2 + c), std::abs(c), c == complex{} ? 0.0 : std::arg(c)}; };
  auto finish = [&](complex c, bool tie) {
    return CanonicalForm{SchlichtFunction(mobius_shift(s, c, cfg), cfg), c, tie};
  };

  if (std::abs(a2) <= tol) return finish(0.0, false);
  if (admissible(s, target, cfg)) return finish(target, false);

  // The admissible set is bounded by the curve 1/sigma(r' e^{it}); the best
  // shift is its point nearest to -a2, taken just outside the working radius.
  const double rb = cfg.r_work + 1e-3;
  const std::size_t m = 4096;
  const CircleSamples cs = sample_circle(s, rb, m);
  auto curve = [&](double t) { return 1.0 / eval_unchecked(s, std::polar(rb, t)); };
  std::size_t best = 0;
  double bd = 1e300;
  for (std::size_t j = 0; j < m; ++j) {
    const double d = std::abs(1.0 / cs.values[j] - target);
    if (d < bd) bd = d, best = j;
  }
  const double h = 2 * kPi / static_cast<double>(m);
  double lo = h * (static_cast<double>(best) - 1.0), hi = h * (static_cast<double>(best) + 1.0);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double t1 = hi - gr * (hi - lo), t2 = lo + gr * (hi - lo);
  double d1 = std::abs(curve(t1) - target), d2 = std::abs(curve(t2) - target);
  while (hi - lo > 1e-13) {
    if (d1 < d2) {
      hi = t2, t2 = t1, d2 = d1;
      t1 = hi - gr * (hi - lo);
      d1 = std::abs(curve(t1) - target);
    } else {
      lo = t1, t1 = t2, d1 = d2;
      t2 = lo + gr * (hi - lo);
      d2 = std::abs(curve(t2) - target);
    }
  }
  const complex cb = curve(0.5 * (lo + hi));

  complex chosen = 0.0;
  bool tie = false;
  const complex projected = target * std::min(1.0, cfg.c_bound / std::abs(target));
  for (const complex c : {cb, projected}) {
    if (!admissible(s, c, cfg)) continue;
    const int cmp = compare(score(c), score(chosen), tol);
    if (cmp < 0) chosen = c;
    tie = tie || (cmp == 0 && c != chosen);
  }
  return finish(chosen, tie);
}

std::optional<complex> schlicht_equiv(const SchlichtFunction& sigma, const SchlichtFunction& tau,
                                      const Settings& cfg) {
  const int n = std::max(sigma.s().order(), tau.s().order());
  const TaylorSeries one = TaylorSeries::constant(1.0, n);
  const TaylorSeries qs = div(one, shift_down(sigma.s().resized(n)), cfg);
  const TaylorSeries qt = div(one, shift_down(tau.s().resized(n)), cfg);
  const TaylorSeries d = qs - qt;
  const double scale = std::max({1.0, qs.max_abs_coeff(), qt.max_abs_coeff()});
  const double tol = cfg.equiv_tol * scale;
  const complex c = d[1];
  if (std::abs(d[0]) > tol) return std::nullopt;
  for (int k = 2; k < n; ++k)
    if (std::abs(d[k]) > tol) return std::nullopt;
  if (std::abs(c) <= tol) return complex{};
  if (!zero_free(sigma.s() - TaylorSeries::constant(1.0 / c, sigma.s().order()), cfg.r_work, cfg))
    return std::nullopt;
  return c;
}

DecompositionRecord decompose_plane(const Plane& v, const Settings& cfg) {
  const bool swapped = std::abs(v.f()[0]) > std::abs(v.g()[0]);
  const Plane p = swapped ? v.swapped() : v;
  const TaylorSeries& f = p.f();
  const TaylorSeries& g = p.g();
  const double scale = std::max(f.norm(), g.norm());
  if (std::abs(g[0]) <= cfg.eps_unit * scale) throw DegeneratePlane("both basis elements vanish at the origin");

  const complex alpha = choose_alpha(p, cfg.r_work, cfg);
  const complex mu0 = f[0] / g[0];
  const TaylorSeries num = f - mu0 * g;
  const TaylorSeries den = f - alpha * g;
  const TaylorSeries s0 = div(num, den, cfg);
  if (std::abs(s0[1]) <= cfg.eps_unit) throw DegeneratePlane("the ratio is critical at the origin");
  const complex lambda = 1.0 / s0[1];
  std::vector<complex> sc(s0.coeffs().begin(), s0.coeffs().end());
  for (complex& x : sc) x *= lambda;
  sc[0] = 0.0;
  sc[1] = 1.0;
  const SchlichtFunction sigma(TaylorSeries(std::move(sc)), cfg);
  const TaylorSeries G = (1.0 / den[0]) * den;

  CanonicalForm cf = canonicalize(sigma, cfg);
  TaylorSeries h = cf.c == complex{} ? G : mul(TaylorSeries::constant(1.0, G.order()) - cf.c * sigma.s(), G);
  ZeroFreeUnit unit = ZeroFreeUnit::from_values(h, cfg);
  const Plane back = make_pair(unit, cf.tau, cfg);
  const double res = plane_distance(back, v);

  return DecompositionRecord{std::move(unit), std::move(cf.tau), sigma, alpha, lambda, cf.c, G, swapped, cf.tie, res};
}

}  // namespace wco
