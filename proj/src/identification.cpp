#include "wco/identification.hpp"

#include <algorithm>
#include <cmath>

#include "wco/error.hpp"
#include "wco/kernels.hpp"

namespace wco {
namespace {

bool zero_free(const TaylorSeries& s, double r, const Settings& cfg) {
  try {
    return count_zeros(s, r, cfg) == 0;
  } catch (const ZeroOnContour&) {
    return false;
  }
}

double sup(const std::vector<complex>& v) {
  double m = 0.0;
  for (const complex& x : v) m = std::max(m, std::abs(x));
  return m;
}

// f = a 1 and g = b z with nothing else: the data are A1 and Az up to scale.
std::optional<std::pair<complex, complex>> canonical_scales(const TaylorSeries& f, const TaylorSeries& g) {
  auto only = [](const TaylorSeries& s, int k) {
    for (int n = 0; n <= s.order(); ++n)
      if (n != k && s[n] != complex{}) return false;
    return s[k] != complex{};
  };
  if (only(f, 0) && only(g, 1)) return std::pair{f[0], g[1]};
  return std::nullopt;
}

WCOperator make_operator(TaylorSeries psi, TaylorSeries phi, const Settings& cfg) {
  try {
    return WCOperator(std::move(psi), std::move(phi), cfg);
  } catch (const InvariantError& e) {
    throw InvalidImage(std::string("recovered symbol: ") + e.what());
  }
}

double image_residual(const WCOperator& a, const Plane& v, const std::vector<complex>& af,
                      const std::vector<complex>& ag, double r, const Settings& cfg) {
  const std::size_t m = af.size();
  const CircleSamples rf = sample_circle(apply(a, v.f(), cfg), r, m);
  const CircleSamples rg = sample_circle(apply(a, v.g(), cfg), r, m);
  double res = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    res = std::max({res, std::abs(rf.values[j] - af[j]), std::abs(rg.values[j] - ag[j])});
  return res / std::max(1.0, std::max(sup(af), sup(ag)));
}

struct Inversion {
  std::vector<complex> phi;
  std::vector<complex> psi;
  std::vector<BranchSample> log;
};

class Inverter {
 public:
  Inverter(const Plane& v, const Settings& cfg) : f_(v.f()), g_(v.g()), cfg_(cfg) {
    df_ = derivative(f_);
    dg_ = derivative(g_);
    grid_ = disk_grid(cfg.r_work, cfg.grid_radii, cfg.grid_angles);
    fgrid_ = kernels::parallel::eval_many(f_.coeffs(), grid_);
    ggrid_ = kernels::parallel::eval_many(g_.coeffs(), grid_);
  }

  complex grid_seed(complex a, complex b) const {
    std::vector<double> d(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k)
      d[k] = std::abs(fgrid_[k] * b - ggrid_[k] * a) / std::hypot(std::abs(fgrid_[k]), std::abs(ggrid_[k]));
    return grid_[kernels::parallel::argmin(d).index];
  }

  // Newton on F(w) = f(w) b - g(w) a.
  bool newton(complex a, complex b, complex& w, int& iters, double& cond) const {
    double last = 1e300;
    for (iters = 1; iters <= cfg_.newton_max_iter; ++iters) {
      const complex fw = eval_unchecked(f_, w), gw = eval_unchecked(g_, w);
      const complex dF = eval_unchecked(df_, w) * b - eval_unchecked(dg_, w) * a;
      if (dF == complex{}) return false;
      const complex step = (fw * b - gw * a) / dF;
      w -= step;
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > 1.0) return false;
      last = std::abs(step);
      if (last <= 1e-14) break;
    }
    iters = std::min(iters, cfg_.newton_max_iter);
    // Rounding in F can keep the step from settling below 1e-14.
    if (last > 1e-11) return false;
    cond = 1.0 / std::abs(eval_unchecked(df_, w) * b - eval_unchecked(dg_, w) * a);
    return true;
  }

  Inversion run(const CircleSamples& af, const CircleSamples& ag) const {
    const std::size_t m = af.size();
    Inversion out;
    out.phi.resize(m);
    out.psi.resize(m);
    out.log.resize(m);
    const double lim = cfg_.r_work * (1.0 + 1e-12);
    complex w = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const complex a0 = af.values[j], b0 = ag.values[j];
      const double nv = std::hypot(std::abs(a0), std::abs(b0));
      const complex a = a0 / nv, b = b0 / nv;
      BranchSample& rec = out.log[j];
      rec.z = af.node(j);
      int it = 0;
      double cond = 0.0;
      complex trial = j == 0 ? grid_seed(a, b) : w;
      bool ok = newton(a, b, trial, it, cond) && std::abs(trial) <= lim;
      if (!ok && j > 0) {
        rec.reseeded = true;
        trial = grid_seed(a, b);
        ok = newton(a, b, trial, it, cond) && std::abs(trial) <= lim;
      }
      if (!ok)
        throw NewtonDivergence("no preimage in the working disk at z = (" + std::to_string(rec.z.real()) +
                               ", " + std::to_string(rec.z.imag()) + ")");
      w = trial;
      const complex fw = eval_unchecked(f_, w), gw = eval_unchecked(g_, w);
      rec.used_f = std::abs(fw) >= std::abs(gw);
      rec.w = w;
      rec.iterations = it;
      rec.condition = cond;
      out.phi[j] = w;
      out.psi[j] = rec.used_f ? a0 / fw : b0 / gw;
    }
    return out;
  }

 private:
  const TaylorSeries& f_;
  const TaylorSeries& g_;
  const Settings& cfg_;
  TaylorSeries df_ = TaylorSeries::zero();
  TaylorSeries dg_ = TaylorSeries::zero();
  std::vector<complex> grid_, fgrid_, ggrid_;
};

}  // namespace

WCOperator identify_canonical(const TaylorSeries& a1, const TaylorSeries& az, const Settings& cfg) {
  const int n = std::max(a1.order(), az.order());
  if (a1.is_zero()) return WCOperator::zero(n);
  if (std::abs(a1[0]) > cfg.eps_unit && zero_free(a1, cfg.r_work, cfg))
    return make_operator(a1.resized(n), div(az.resized(n), a1.resized(n), cfg), cfg);

  // Circle quotient; the contour is moved off any zero of A1.
  const std::size_t m = contour_size(n, cfg);
  const double scale = std::max(1.0, a1.max_abs_coeff());
  for (int t = 0; t < 8; ++t) {
    const double r = cfg.r_contour * (1.0 - 0.01 * t);
    const CircleSamples s1 = sample_circle(a1, r, m);
    const CircleSamples sz = sample_circle(az, r, m);
    if (sup(s1.values) == 0.0) continue;
    double lo = 1e300;
    for (const complex& v : s1.values) lo = std::min(lo, std::abs(v));
    if (lo <= cfg.eps_contour * scale) continue;
    std::vector<complex> q(m);
    for (std::size_t j = 0; j < m; ++j) q[j] = sz.values[j] / s1.values[j];
    TaylorSeries phi = TaylorSeries::zero(n);
    try {
      phi = coeffs_from_circle(CircleSamples(r, std::move(q)), n, cfg, true);
    } catch (const AliasError& e) {
      throw InvalidImage(std::string("Az/A1 has poles in the disk: ") + e.what());
    }
    return make_operator(a1.resized(n), std::move(phi), cfg);
  }
  throw InvalidImage("A1 vanishes on every trial contour");
}

IdentificationResult identify(const Plane& v, const CircleSamples& af, const CircleSamples& ag,
                              const Settings& cfg) {
  if (af.size() != ag.size() || af.radius != ag.radius)
    throw InvariantError("image samples must share one contour");
  const double r = af.radius;
  const std::size_t m = af.size();
  const int n = std::clamp(static_cast<int>(m / 2) - 1, 1, cfg.order);
  IdentificationResult out{WCOperator::zero(n), 0.0, r, false, {}};

  const double scale = std::max(sup(af.values), sup(ag.values));
  auto finish = [&](WCOperator op) {
    out.residual = image_residual(op, v, af.values, ag.values, r, cfg);
    out.op = std::move(op);
    if (!(out.residual < cfg.tol_id))
      throw NotAWCOImage("no operator reproduces the images: residual " + std::to_string(out.residual));
    return out;
  };
  if (scale == 0.0) return finish(WCOperator::zero(n));

  auto recover = [&](const CircleSamples& cs) {
    try {
      return coeffs_from_circle(cs, n, cfg, true);
    } catch (const AliasError& e) {
      throw NotAWCOImage(std::string("recovered symbol is not analytic: ") + e.what());
    }
  };

  const auto canon = canonical_scales(v.f(), v.g());
  const auto canon_swapped = canonical_scales(v.g(), v.f());
  if (canon || canon_swapped) {
    const auto [c1, cz] = canon ? *canon : *canon_swapped;
    const CircleSamples& s1 = canon ? af : ag;
    const CircleSamples& sz = canon ? ag : af;
    std::vector<complex> a1(m), az(m);
    for (std::size_t j = 0; j < m; ++j) a1[j] = s1.values[j] / c1, az[j] = sz.values[j] / cz;
    out.canonical = true;
    WCOperator op = WCOperator::zero(n);
    try {
      op = identify_canonical(recover(CircleSamples(r, a1)), recover(CircleSamples(r, az)), cfg);
    } catch (const InvalidImage& e) {
      throw NotAWCOImage(e.what());
    }
    return finish(std::move(op));
  }

  const SeparationVerdict verdict = separating_verdict(v, cfg);
  if (!verdict.separating)
    throw NotSeparating(std::string("identification needs a separating plane (") + to_string(verdict.reason) + ")");

  bool degenerate_sample = false;
  for (std::size_t j = 0; j < m; ++j)
    degenerate_sample = degenerate_sample ||
                        std::hypot(std::abs(af.values[j]), std::abs(ag.values[j])) <= 1e-10 * scale;
  if (degenerate_sample)
    throw NotAWCOImage("images vanish together on the contour; resample on another radius");

  const Inverter inv(v, cfg);
  Inversion res = inv.run(af, ag);
  WCOperator op = WCOperator::zero(n);
  try {
    op = WCOperator(recover(CircleSamples(r, std::move(res.psi))), recover(CircleSamples(r, std::move(res.phi))), cfg);
  } catch (const InvariantError& e) {
    throw NotAWCOImage(std::string("recovered symbol leaves the disk: ") + e.what());
  }
  out.branch_log = std::move(res.log);
  return finish(std::move(op));
}

IdentificationResult identify(const Plane& v, const TaylorSeries& af, const TaylorSeries& ag,
                              const Settings& cfg) {
  const int n = std::max(af.order(), ag.order());
  const bool both_zero = af.is_zero() && ag.is_zero();
  if (both_zero) return IdentificationResult{WCOperator::zero(n), 0.0, cfg.r_contour, false, {}};

  // Samples where the images vanish together cannot be inverted; move the contour.
  const std::size_t m = contour_size(n, cfg);
  const double scale = std::max(af.max_abs_coeff(), ag.max_abs_coeff());
  for (int t = 0; t < 8; ++t) {
    const double r = cfg.r_contour * (1.0 - 0.01 * t);
    const CircleSamples sf = sample_circle(af, r, m);
    const CircleSamples sg = sample_circle(ag, r, m);
    bool clear = true;
    for (std::size_t j = 0; j < m && clear; ++j)
      clear = std::hypot(std::abs(sf.values[j]), std::abs(sg.values[j])) > 1e-10 * scale;
    if (clear || canonical_scales(v.f(), v.g()) || canonical_scales(v.g(), v.f())) {
      Settings local = cfg;
      local.order = n;
      return identify(v, sf, sg, local);
    }
  }
  throw NotAWCOImage("images vanish together on every trial contour");
}

CircleSamples simulate_channel(const WCOperator& b, const CircleSamples& k) {
  const std::size_t m = k.size();
  std::vector<complex> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const complex z = k.node(j);
    const complex w = eval_unchecked(b.phi(), z);
    if (std::abs(w) >= k.radius) {
      bool node = false;
      for (std::size_t i = 0; i < m && !node; ++i) node = std::abs(k.node(i) - w) < 1e-13 * k.radius;
      if (!node)
        throw RangeError("phi maps a node to |w| = " + std::to_string(std::abs(w)) + " outside the sampled radius");
    }
    out[j] = eval_unchecked(b.psi(), z) * cauchy_interior(k, w);
  }
  return CircleSamples(k.radius, std::move(out));
}

}  // namespace wco
