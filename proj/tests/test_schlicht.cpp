#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wco/error.hpp"
#include "wco/schlicht.hpp"

using namespace wco;

namespace {

constexpr int kN = 256;

TaylorSeries z_(int n = kN) { return TaylorSeries::identity(n); }
TaylorSeries one_(int n = kN) { return TaylorSeries::constant(1.0, n); }

// e^{a z} coefficients a^n / n!
TaylorSeries exp_az(complex a, int n = kN) {
  std::vector<complex> c(static_cast<std::size_t>(n) + 1);
  complex t = 1.0;
  for (int k = 0; k <= n; ++k) {
    c[static_cast<std::size_t>(k)] = t;
    t *= a / static_cast<double>(k + 1);
  }
  return TaylorSeries(std::move(c));
}

ZeroFreeUnit random_unit(std::mt19937& rng, int n = kN) {
  std::normal_distribution<double> nd;
  std::vector<complex> k(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j < 3; ++j) k[static_cast<std::size_t>(j)] = complex(nd(rng), nd(rng)) * (0.3 / (j + 1));
  return ZeroFreeUnit::from_exponent(TaylorSeries(std::move(k)));
}

}  // namespace

TEST_CASE("zero-free units") {
  const auto u = ZeroFreeUnit::from_exponent(TaylorSeries::constant(0.3, kN));
  CHECK(coeff_distance(u.h(), exp_az(0.3)) < 1e-15);
  const auto back = ZeroFreeUnit::from_values(u.h());
  CHECK(coeff_distance(back.k(), u.k()) < 1e-13);
  CHECK(coeff_distance(ZeroFreeUnit::from_values(complex(2.0) * u.h()).h(), u.h()) < 1e-15);
  CHECK_THROWS_AS(ZeroFreeUnit::from_values(one_() - complex(1.2) * z_()), InvariantError);
  CHECK(coeff_distance(ZeroFreeUnit::one(4).h(), one_(4)) == 0.0);
}

TEST_CASE("schlicht invariants") {
  CHECK_THROWS_AS(SchlichtFunction(one_() + z_()), InvariantError);
  CHECK_THROWS_AS(SchlichtFunction(complex(2.0) * z_()), InvariantError);
  CHECK_THROWS_AS(SchlichtFunction(z_() + complex(0.8) * TaylorSeries::monomial(2, 1.0, kN)), InvariantError);
  const SchlichtFunction k(series::koebe(kN));
  CHECK(k.coefficient_warnings().empty());
  CHECK(k.a2() == complex(2.0));
  const auto cat = schlicht_catalog(kN);
  CHECK(cat.size() >= 8);
  for (const auto& e : cat) CHECK(e.sigma.coefficient_warnings().empty());
  // z/(1+z^2) from its geometric expansion
  const TaylorSeries sk = catalog_series("symmetric_koebe", 0.0, 9);
  CHECK(sk[1] == complex(1.0));
  CHECK(sk[3] == complex(-1.0));
  CHECK(sk[5] == complex(1.0));
  CHECK(sk[4] == complex(0.0));
  CHECK_THROWS_AS(catalog_series("nope", 0.0, 4), ParseError);
}

TEST_CASE("forward map") {
  const Plane p = make_pair(ZeroFreeUnit::one(kN), SchlichtFunction(z_()));
  CHECK(coeff_distance(p.f(), z_()) == 0.0);
  CHECK(coeff_distance(p.g(), one_()) == 0.0);

  const auto h = ZeroFreeUnit::from_exponent(TaylorSeries::constant(0.3, kN));
  const Plane pk = make_pair(h, SchlichtFunction(series::koebe(kN)));
  CHECK(separating_verdict(pk).separating);

  std::mt19937 rng(5);
  const auto cat = schlicht_catalog(kN);
  for (int t = 0; t < 25; ++t) {
    const auto u = random_unit(rng);
    const auto& s = cat[static_cast<std::size_t>(t) % cat.size()].sigma;
    const Plane v = make_pair(u, s);
    CHECK(separating_verdict(v).separating);
    CHECK(coeff_distance(distinguished_element(v), mul(u.h(), s.s())) < 1e-10);
  }
}

TEST_CASE("distinguished element") {
  CHECK(coeff_distance(distinguished_element(Plane(one_(), z_())), z_()) < 1e-15);
  CHECK(coeff_distance(distinguished_element(Plane(series::cos(64), series::sin(64))), series::sin(64)) < 1e-15);
  CHECK(coeff_distance(distinguished_element(Plane(z_() + one_(), one_())), z_()) < 1e-15);
  CHECK_THROWS_AS(distinguished_element(Plane(z_(), TaylorSeries::monomial(2, 1.0, kN))), DegeneratePlane);
  CHECK_THROWS_AS(distinguished_element(Plane(one_(), TaylorSeries::monomial(2, 1.0, kN))), DegeneratePlane);

  // distinct canonical data give distinct distinguished elements
  const auto cat = schlicht_catalog(kN);
  const auto h1 = ZeroFreeUnit::from_exponent(TaylorSeries::constant(0.3, kN));
  const auto h2 = ZeroFreeUnit::from_exponent(TaylorSeries::constant(-0.2, kN));
  for (std::size_t a = 0; a < cat.size(); ++a)
    for (std::size_t b = 0; b < cat.size(); ++b) {
      const auto ua = distinguished_element(make_pair(h1, cat[a].sigma));
      const auto ub = distinguished_element(make_pair(b % 2 ? h1 : h2, cat[b].sigma));
      if (a == b && b % 2) continue;
      CHECK(coeff_distance(ua, ub) > 1e-6);
    }
}

TEST_CASE("choose alpha") {
  const auto cfg = default_settings();
  // mu = z
  const Plane pz(z_(), one_());
  CHECK(count_zeros(z_() - complex(2.0) * one_(), cfg.r_work) == 0);
  const complex a = choose_alpha(pz);
  CHECK(std::abs(a) > cfg.r_work);  // outside mu(D_r) = D_r
  // mu = tan: every |alpha| >= 2 avoids tan(D_0.9)
  const Plane pt(series::sin(64), series::cos(64));
  for (int j = 0; j < 8; ++j) CHECK(count_zeros(series::sin(64) - std::polar(2.0, j * M_PI / 4) * series::cos(64), 0.9) == 0);
  CHECK(count_zeros(series::sin(64) - choose_alpha(pt, 0.9) * series::cos(64), 0.9) == 0);
  // mu = 1/(z - 0.5): the image of D_r is the outside of a circle whose
  // inside is the disk on the diameter [1/(-r-0.5), 1/(r-0.5)].
  const Plane pp(one_(), z_() - complex(0.5) * one_());
  const complex ap = choose_alpha(pp);
  const double lo = 1.0 / (-cfg.r_work - 0.5), hi = 1.0 / (cfg.r_work - 0.5);
  CHECK(std::abs(ap - 0.5 * (lo + hi)) < 0.5 * (hi - lo));
  CHECK(count_zeros(one_() - ap * (z_() - complex(0.5) * one_()), cfg.r_work) == 0);

  Settings tiny = cfg;
  tiny.alpha_budget = 0;
  CHECK_THROWS_AS(choose_alpha(pz, tiny), AlphaSearchFailed);
}

TEST_CASE("equivalence") {
  const SchlichtFunction z(z_());
  const SchlichtFunction m(catalog_series("mobius", 0.5, kN));
  const SchlichtFunction k(series::koebe(kN));
  CHECK(schlicht_equiv(z, z).value() == complex(0.0));
  const auto c = schlicht_equiv(z, m);
  REQUIRE(c.has_value());
  CHECK(std::abs(*c - 0.5) < 1e-10);
  CHECK(std::abs(schlicht_equiv(m, z).value() + 0.5) < 1e-10);
  CHECK_FALSE(schlicht_equiv(z, k).has_value());

  const auto cat = schlicht_catalog(kN);
  for (const auto& a : cat)
    for (const auto& b : cat) {
      const auto ab = schlicht_equiv(a.sigma, b.sigma);
      const auto ba = schlicht_equiv(b.sigma, a.sigma);
      CHECK(ab.has_value() == ba.has_value());
      if (ab && ba) CHECK(std::abs(*ab + *ba) < 1e-9);
    }
}

TEST_CASE("canonical section") {
  const auto c0 = canonicalize(SchlichtFunction(z_()));
  CHECK(c0.c == complex(0.0));
  CHECK(coeff_distance(c0.tau.s(), z_()) == 0.0);

  const auto cm = canonicalize(SchlichtFunction(catalog_series("mobius", 0.5, kN)));
  CHECK(std::abs(cm.c + 0.5) < 1e-12);
  CHECK(coeff_distance(cm.tau.s(), z_()) < 1e-12);

  // k/(1+2k) = z/(1+z^2)
  const auto ck = canonicalize(SchlichtFunction(series::koebe(kN)));
  CHECK(std::abs(ck.c + 2.0) < 1e-12);
  CHECK(coeff_distance(ck.tau.s(), catalog_series("symmetric_koebe", 0.0, kN)) < 1e-9);
  CHECK(count_zeros(series::koebe(kN) + complex(0.5) * one_(), default_settings().r_work) == 0);

  for (const auto& e : schlicht_catalog(kN)) {
    const auto once = canonicalize(e.sigma);
    CHECK(std::abs(once.tau.a2()) < 1e-9);
    CHECK(canonicalize(once.tau).c == complex(0.0));
    const auto eq = schlicht_equiv(e.sigma, once.tau);
    REQUIRE(eq.has_value());
    CHECK(std::abs(*eq - once.c) < 1e-9);
  }

  // a bound below |a2| forces the constrained optimum onto |c| = c_bound
  Settings tight = default_settings();
  tight.c_bound = 1.0;
  const auto cb = canonicalize(SchlichtFunction(series::koebe(kN)), tight);
  CHECK(std::abs(cb.c + 1.0) < 1e-12);
  CHECK(std::abs(cb.tau.a2() - 1.0) < 1e-12);
}

TEST_CASE("decomposition round trip") {
  const auto cfg = default_settings();
  const auto r1 = decompose_plane(Plane(one_(), z_()));
  CHECK(coeff_distance(r1.h.h(), one_()) < 1e-12);
  CHECK(coeff_distance(r1.tau.s(), z_()) < 1e-12);
  CHECK(r1.span_residual < 1e-8);
  CHECK(r1.swapped);
  CHECK(count_zeros(z_() - r1.alpha * one_(), cfg.r_work) == 0);

  std::mt19937 rng(11);
  const auto cat = schlicht_catalog(kN);
  for (std::size_t t = 0; t < cat.size(); ++t) {
    const auto u = random_unit(rng);
    const auto can = canonicalize(cat[t].sigma);
    const Plane v = make_pair(u, can.tau);
    const auto rec = decompose_plane(v);
    CAPTURE(cat[t].name);
    CHECK(coeff_distance(rec.h.h(), u.h()) < 1e-7);
    CHECK(coeff_distance(rec.tau.s(), can.tau.s()) < 1e-7);
    CHECK(rec.span_residual < 1e-8);
    const auto sw = decompose_plane(v.swapped());
    CHECK(coeff_distance(sw.h.h(), rec.h.h()) < 1e-8);
    CHECK(coeff_distance(sw.tau.s(), rec.tau.s()) < 1e-8);
    // a generic basis of the same plane
    const Plane mixed(v.f() + complex(0.3, -0.7) * v.g(), complex(2.0) * v.g() - complex(0.1) * v.f());
    const auto mx = decompose_plane(mixed);
    CHECK(coeff_distance(mx.h.h(), u.h()) < 1e-7);
    CHECK(coeff_distance(mx.tau.s(), can.tau.s()) < 1e-7);
  }
}
