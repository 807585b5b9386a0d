#include "wco/separation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "wco/error.hpp"
#include "wco/kernels.hpp"

namespace wco {
namespace {

using Vec = std::vector<complex>;

Vec padded(const TaylorSeries& s, std::size_t len) {
  Vec v(len);
  for (std::size_t k = 0; k < len; ++k) v[k] = s[static_cast<int>(k)];
  return v;
}

complex dot(const Vec& a, const Vec& b) {  // conj(a) . b
  complex s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double vnorm(const Vec& a) { return std::sqrt(std::real(dot(a, a))); }

void axpy(Vec& y, complex a, const Vec& x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}

// Orthonormal basis of span{a, b} (two passes of Gram-Schmidt).
std::array<Vec, 2> orthonormal(Vec a, Vec b) {
  const double na = vnorm(a);
  for (complex& c : a) c /= na;
  for (int pass = 0; pass < 2; ++pass) axpy(b, -dot(a, b), a);
  const double nb = vnorm(b);
  for (complex& c : b) c /= nb;
  return {std::move(a), std::move(b)};
}

Vec residual(const std::array<Vec, 2>& q, Vec u) {
  for (int pass = 0; pass < 2; ++pass)
    for (const Vec& qi : q) axpy(u, -dot(qi, u), qi);
  return u;
}

std::size_t common_len(std::initializer_list<const TaylorSeries*> xs) {
  int n = 0;
  for (const TaylorSeries* s : xs) n = std::max(n, s->order());
  return static_cast<std::size_t>(n) + 1;
}

TaylorSeries normalized(const TaylorSeries& s) {
  const double n = s.norm();
  return n > 0.0 ? complex(1.0 / n) * s : s;
}

double vnorm2(complex a, complex b) { return std::sqrt(std::norm(a) + std::norm(b)); }

struct NewtonResult {
  complex root;
  bool converged = false;
};

// Newton on a polynomial given by coefficients.
NewtonResult newton_poly(std::span<const complex> c, complex w, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const auto e = kernels::horner_dd(c, w);
    if (e.value == complex{}) return {w, true};
    if (e.d1 == complex{}) return {w, false};
    const complex step = e.value / e.d1;
    w -= step;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > 10.0) return {w, false};
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(w))) return {w, true};
  }
  return {w, false};
}

// Coefficients (in w) of Q(z, w) = g(z) f[z,w] - f(z) g[z,w], where f[z,w] is
// the divided difference; Q(z, w) (z - w) = f(z) g(w) - f(w) g(z).
Vec deflated_in_w(const TaylorSeries& f, const TaylorSeries& g, complex z) {
  const int n = std::max(f.order(), g.order());
  Vec bf(static_cast<std::size_t>(n) + 1), bg(static_cast<std::size_t>(n) + 1);
  complex af = 0.0, ag = 0.0;
  for (int k = n; k >= 0; --k) {
    af = af * z + f[k];
    ag = ag * z + g[k];
    bf[static_cast<std::size_t>(k)] = af;
    bg[static_cast<std::size_t>(k)] = ag;
  }
  const complex fz = bf[0], gz = bg[0];
  Vec q(static_cast<std::size_t>(std::max(n, 1)));
  for (int k = 0; k < n; ++k)
    q[static_cast<std::size_t>(k)] = gz * bf[static_cast<std::size_t>(k + 1)] - fz * bg[static_cast<std::size_t>(k + 1)];
  return q;
}

double chordal(const TaylorSeries& f, const TaylorSeries& g, complex z0, complex z1) {
  const complex f0 = eval_unchecked(f, z0), g0 = eval_unchecked(g, z0);
  const complex f1 = eval_unchecked(f, z1), g1 = eval_unchecked(g, z1);
  return std::abs(f0 * g1 - f1 * g0) / (vnorm2(f0, g0) * vnorm2(f1, g1));
}

class CollisionRefiner {
 public:
  CollisionRefiner(const TaylorSeries& f, const TaylorSeries& g, double r, const Settings& cfg)
      : f_(f), g_(g), r_(r), cfg_(cfg) {}

  std::optional<Collision> accept(complex z0, complex z1) const {
    const double lim = r_ * (1.0 + 1e-12);
    if (std::abs(z0) > lim || std::abs(z1) > lim) return std::nullopt;
    if (std::abs(z0 - z1) <= 1e-6) return std::nullopt;
    const double d = chordal(f_, g_, z0, z1);
    if (d >= 1e-10) return std::nullopt;
    return Collision{z0, z1, d};
  }

  // Partner of a fixed z, sought by Newton on Q(z, .) from `seed`.
  std::optional<Collision> partner(complex z, complex seed) const {
    const Vec q = deflated_in_w(f_, g_, z);
    const NewtonResult nr = newton_poly(q, seed, cfg_.newton_max_iter);
    if (!nr.converged) return std::nullopt;
    return accept(z, nr.root);
  }

  // Critical point of mu near `seed`, then a nearby collision pair around it.
  std::optional<Collision> around_critical(complex seed) const {
    complex z = seed;
    bool ok = false;
    for (int it = 0; it < cfg_.newton_max_iter; ++it) {
      const auto ef = kernels::horner_dd(f_.coeffs(), z);
      const auto eg = kernels::horner_dd(g_.coeffs(), z);
      const complex w = ef.d1 * eg.value - ef.value * eg.d1;
      const complex dw = ef.d2 * eg.value - ef.value * eg.d2;
      if (w == complex{}) {
        ok = true;
        break;
      }
      if (dw == complex{}) break;
      const complex step = w / dw;
      z -= step;
      if (std::abs(z) > 2.0) break;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) {
        ok = true;
        break;
      }
    }
    if (!ok || std::abs(z) >= r_) return std::nullopt;
    const double delta = std::min(0.05, 0.5 * (r_ - std::abs(z)));
    for (const complex dir : {complex(1, 0), complex(0, 1), complex(-1, 0), complex(0, -1)}) {
      if (auto c = partner(z + delta * dir, z - delta * dir)) return c;
    }
    return std::nullopt;
  }

 private:
  const TaylorSeries& f_;
  const TaylorSeries& g_;
  double r_;
  const Settings& cfg_;
};

}  // namespace

// ---- Plane ---------------------------------------------------------------------

Plane::Plane(TaylorSeries f, TaylorSeries g, const Settings& cfg) : f_(std::move(f)), g_(std::move(g)) {
  const double s2 = independence(f_, g_);
  if (!(s2 > cfg.eps_rank))
    throw DegeneratePlane("basis is numerically dependent (second singular value " +
                          std::to_string(s2) + ")");
}

double independence(const TaylorSeries& f, const TaylorSeries& g) {
  const std::size_t len = common_len({&f, &g});
  Vec u = padded(f, len), v = padded(g, len);
  const double nu = vnorm(u), nv = vnorm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  for (complex& c : u) c /= nu;
  for (complex& c : v) c /= nv;
  const complex c = dot(u, v);
  Vec w = v;
  axpy(w, -c, u);
  return vnorm(w) / std::sqrt(1.0 + std::abs(c));
}

double plane_distance(const Plane& a, const Plane& b) {
  const std::size_t len = common_len({&a.f(), &a.g(), &b.f(), &b.g()});
  const auto qa = orthonormal(padded(a.f(), len), padded(a.g(), len));
  const auto qb = orthonormal(padded(b.f(), len), padded(b.g(), len));
  // Singular values of (I - Pa) Qb are the sines of the principal angles.
  const Vec r0 = residual(qa, qb[0]), r1 = residual(qa, qb[1]);
  const double a00 = std::real(dot(r0, r0)), a11 = std::real(dot(r1, r1));
  const complex a01 = dot(r0, r1);
  const double tr = a00 + a11, det = a00 * a11 - std::norm(a01);
  const double lmax = 0.5 * (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
  return std::sqrt(std::max(0.0, lmax));
}

double span_residual(const Plane& p, const TaylorSeries& u) {
  const std::size_t len = common_len({&p.f(), &p.g(), &u});
  const auto q = orthonormal(padded(p.f(), len), padded(p.g(), len));
  const Vec uu = padded(u, len);
  const double nu = vnorm(uu);
  return nu > 0.0 ? vnorm(residual(q, uu)) / nu : 0.0;
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::OK: return "OK";
    case Reason::CommonZero: return "CommonZero";
    case Reason::NonInjectiveRatio: return "NonInjectiveRatio";
    case Reason::Degenerate: return "Degenerate";
  }
  return "Degenerate";
}

Reason reason_from_string(const std::string& s) {
  if (s == "OK") return Reason::OK;
  if (s == "CommonZero") return Reason::CommonZero;
  if (s == "NonInjectiveRatio") return Reason::NonInjectiveRatio;
  if (s == "Degenerate") return Reason::Degenerate;
  throw ParseError("unknown verdict reason '" + s + "'");
}

std::vector<complex> sunflower(double r, std::size_t n) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = r * std::sqrt((static_cast<double>(k) + 0.5) / static_cast<double>(n));
    z[k] = std::polar(rho, golden * static_cast<double>(k));
  }
  return z;
}

// ---- common zeros --------------------------------------------------------------

std::optional<complex> has_common_zero(const Plane& v, double r, const Settings& cfg) {
  const TaylorSeries f = normalized(v.f()), g = normalized(v.g());
  const int radii = cfg.grid_radii, angles = cfg.grid_angles;
  const std::vector<complex> grid = disk_grid(r, radii, angles);
  const Vec fv = kernels::parallel::eval_many(f.coeffs(), grid);
  const Vec gv = kernels::parallel::eval_many(g.coeffs(), grid);

  auto neighbours = [&](std::size_t idx) {
    std::vector<std::size_t> out;
    if (idx == 0) {
      for (int j = 0; j < angles; ++j) out.push_back(1 + static_cast<std::size_t>(j));
      return out;
    }
    const int ring = static_cast<int>((idx - 1) / static_cast<std::size_t>(angles)) + 1;
    const int j = static_cast<int>((idx - 1) % static_cast<std::size_t>(angles));
    auto at = [&](int i, int jj) {
      return 1 + static_cast<std::size_t>((i - 1) * angles + ((jj + angles) % angles));
    };
    out.push_back(at(ring, j - 1));
    out.push_back(at(ring, j + 1));
    out.push_back(ring == 1 ? 0 : at(ring - 1, j));
    if (ring < radii) out.push_back(at(ring + 1, j));
    return out;
  };

  struct Seed {
    double m;
    std::size_t idx;
  };
  std::vector<Seed> seeds;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto nb = neighbours(i);
    bool fmin = true, gmin = true;
    for (std::size_t k : nb) {
      fmin = fmin && std::abs(fv[i]) <= std::abs(fv[k]);
      gmin = gmin && std::abs(gv[i]) <= std::abs(gv[k]);
    }
    if (fmin || gmin) seeds.push_back({std::max(std::abs(fv[i]), std::abs(gv[i])), i});
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    return a.m != b.m ? a.m < b.m : a.idx < b.idx;
  });
  if (seeds.size() > 32) seeds.resize(32);

  const double lim = r * (1.0 + 1e-9);
  auto certified = [&](complex z) {
    return std::abs(z) <= lim &&
           std::max(std::abs(eval_unchecked(f, z)), std::abs(eval_unchecked(g, z))) < cfg.common_zero_tol;
  };
  for (const Seed& s : seeds) {
    const complex z0 = grid[s.idx];
    if (certified(z0)) return z0;
    const bool f_smaller = std::abs(fv[s.idx]) <= std::abs(gv[s.idx]);
    bool refined = false;
    for (const TaylorSeries* h : f_smaller ? std::array{&f, &g} : std::array{&g, &f}) {
      const NewtonResult nr = newton_poly(h->coeffs(), z0, cfg.newton_max_iter);
      refined = refined || nr.converged;
      if (certified(nr.root)) return nr.root;
    }
    if (!refined && s.m < 1e-6)
      throw ConvergenceError("common-zero refinement failed near z = (" + std::to_string(z0.real()) +
                             ", " + std::to_string(z0.imag()) + ")");
  }
  return std::nullopt;
}

// ---- injectivity ---------------------------------------------------------------

std::optional<Collision> is_injective_ratio(const MeromorphicRatio& mu, double r, std::size_t n,
                                            const Settings& cfg) {
  const TaylorSeries f = normalized(mu.num), g = normalized(mu.den);
  const std::vector<complex> pts = sunflower(r, n);
  const Vec fv = kernels::parallel::eval_many(f.coeffs(), pts);
  const Vec gv = kernels::parallel::eval_many(g.coeffs(), pts);
  const Vec dfv = kernels::parallel::eval_many(derivative(f).coeffs(), pts);
  const Vec dgv = kernels::parallel::eval_many(derivative(g).coeffs(), pts);
  Vec wr(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) wr[k] = dfv[k] * gv[k] - fv[k] * dgv[k];

  const kernels::PairScanInput in{pts, fv, gv, wr};
  const auto hits = kernels::parallel::chordal_hits(in, cfg.eps_chordal, 8);
  const auto smallest = kernels::parallel::smallest_pairs(in, 24);

  const CollisionRefiner refine(f, g, r, cfg);
  auto try_pair = [&](const kernels::PairCandidate& c) -> std::optional<Collision> {
    if (c.i == c.j) return refine.around_critical(pts[c.i]);
    if (auto hit = refine.accept(pts[c.i], pts[c.j])) return hit;
    if (auto p = refine.partner(pts[c.i], pts[c.j])) return p;
    return refine.partner(pts[c.j], pts[c.i]);
  };
  for (const auto& c : hits)
    if (auto col = try_pair(c)) return col;
  for (const auto& c : smallest)
    if (auto col = try_pair(c)) return col;
  if (!hits.empty())
    throw ConvergenceError("near-collision with chordal discriminant " + std::to_string(hits.front().score) +
                           " could not be refined");
  return std::nullopt;
}

// ---- verdicts ------------------------------------------------------------------

SeparationVerdict separating_verdict(const Plane& v, const Settings& cfg) {
  return separating_verdict(v.f(), v.g(), cfg.r_verdict, cfg.injectivity_samples, cfg);
}

SeparationVerdict separating_verdict(const TaylorSeries& f, const TaylorSeries& g, const Settings& cfg) {
  return separating_verdict(f, g, cfg.r_verdict, cfg.injectivity_samples, cfg);
}

SeparationVerdict separating_verdict(const TaylorSeries& f, const TaylorSeries& g, double r,
                                     std::size_t n, const Settings& cfg) {
  SeparationVerdict out;
  out.radius = r;
  out.samples = n;
  if (!(independence(f, g) > cfg.eps_rank)) {
    out.reason = Reason::Degenerate;
    out.note = "basis is numerically dependent";
    return out;
  }
  const Plane plane(f, g, cfg);

  try {
    if (auto z0 = has_common_zero(plane, r, cfg)) {
      out.reason = Reason::CommonZero;
      out.common_zero = *z0;
      out.witness = Witness{PointEvalOperator(1.0, *z0, cfg), PointEvalOperator(0.0, *z0, cfg)};
      return out;
    }
  } catch (const ConvergenceError& e) {
    out.reason = Reason::CommonZero;
    out.suspect = true;
    out.note = e.what();
    return out;
  }

  auto collision_witness = [&](complex z0, complex z1) {
    const complex g0 = eval(g, z0, cfg), g1 = eval(g, z1, cfg);
    if (std::max(std::abs(g0), std::abs(g1)) > 1e-8 * std::max(1.0, g.norm()))
      return Witness{PointEvalOperator(g1, z0, cfg), PointEvalOperator(g0, z1, cfg)};
    const complex f0 = eval(f, z0, cfg), f1 = eval(f, z1, cfg);
    return Witness{PointEvalOperator(f1, z0, cfg), PointEvalOperator(f0, z1, cfg)};
  };

  try {
    if (auto col = is_injective_ratio({f, g}, r, n, cfg)) {
      out.reason = Reason::NonInjectiveRatio;
      out.collision = *col;
      out.witness = collision_witness(col->z0, col->z1);
      return out;
    }
  } catch (const ConvergenceError& e) {
    out.reason = Reason::NonInjectiveRatio;
    out.suspect = true;
    out.note = e.what();
    return out;
  }

  out.separating = true;
  out.reason = Reason::OK;
  return out;
}

std::pair<PointEvalOperator, PointEvalOperator> singleton_witness(const TaylorSeries& f,
                                                                  const Settings& cfg) {
  if (f.is_zero()) return {PointEvalOperator(1.0, 0.0, cfg), PointEvalOperator(2.0, 0.0, cfg)};
  const double floor = 1e-8 * std::max(1.0, f.norm());
  const std::array<complex, 8> tries = {complex(0, 0),  complex(0.5, 0), complex(0.25, 0),
                                        complex(-0.5, 0), complex(0, 0.5), complex(0, -0.5),
                                        complex(0.75, 0), complex(-0.25, 0)};
  for (const complex z0 : tries) {
    const complex f0 = eval(f, z0, cfg);
    if (std::abs(f0) <= floor) continue;
    const complex z1 = z0 == complex(0.5, 0) ? complex(0.25, 0) : complex(0.5, 0);
    return {PointEvalOperator(eval(f, z1, cfg) / f0, z0, cfg), PointEvalOperator(1.0, z1, cfg)};
  }
  // A non-zero polynomial cannot vanish at eight points unless it has large
  // degree; fall back to the grid maximum.
  const auto grid = disk_grid(cfg.r_verdict, 16, 16);
  const auto vals = kernels::parallel::eval_many(f.coeffs(), grid);
  std::size_t best = 0;
  for (std::size_t k = 1; k < vals.size(); ++k)
    if (std::abs(vals[k]) > std::abs(vals[best])) best = k;
  const complex z0 = grid[best];
  const complex z1 = z0 * 0.5 + complex(0.0, 0.1);
  return {PointEvalOperator(eval(f, z1, cfg) / vals[best], z0, cfg), PointEvalOperator(1.0, z1, cfg)};
}

WitnessCheck check_witness(const TaylorSeries& f, const TaylorSeries& g, const Witness& w, double tol,
                           const Settings& cfg) {
  WitnessCheck out;
  const std::array<TaylorSeries, 2> pair = {f, g};
  const std::array<TaylorSeries, 2> probe = {TaylorSeries::constant(1.0), TaylorSeries::identity()};
  out.gap_on_pair = restriction_gap(w.e1, w.e2, pair, cfg);
  out.gap_on_probe = restriction_gap(w.e1, w.e2, probe, cfg);
  out.valid = out.gap_on_pair < tol && out.gap_on_probe >= tol;
  return out;
}

}  // namespace wco
