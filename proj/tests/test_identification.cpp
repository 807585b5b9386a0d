#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wco/error.hpp"
#include "wco/identification.hpp"
#include "wco/schlicht.hpp"

using namespace wco;

namespace {

constexpr int kN = 256;

TaylorSeries z_(int n = kN) { return TaylorSeries::identity(n); }
TaylorSeries one_(int n = kN) { return TaylorSeries::constant(1.0, n); }

struct RandomOps {
  std::mt19937 rng;
  explicit RandomOps(unsigned seed) : rng(seed) {}

  complex cn() {
    std::normal_distribution<double> nd;
    return complex(nd(rng), nd(rng));
  }

  TaylorSeries poly(int deg, double decay) {
    std::vector<complex> c(static_cast<std::size_t>(deg) + 1);
    for (int k = 0; k <= deg; ++k) c[static_cast<std::size_t>(k)] = cn() * std::pow(decay, k);
    return series::polynomial(c, kN);
  }

  // Random polynomial scaled to sup-norm `bound` on the unit circle.
  TaylorSeries contraction(int deg, double bound) {
    const TaylorSeries p = poly(deg, 1.0);
    double s = 0.0;
    for (int j = 0; j < 512; ++j) s = std::max(s, std::abs(eval_unchecked(p, std::polar(1.0, 2 * M_PI * j / 512))));
    return complex(bound / s) * p;
  }

  WCOperator op(int psi_deg = 8, double bound = 0.8) {
    std::uniform_int_distribution<int> d(1, 3);
    return WCOperator(poly(psi_deg, 0.7), contraction(d(rng), bound));
  }
};

std::array<TaylorSeries, 3> probe3() {
  return {one_(), z_(), TaylorSeries::monomial(2, 1.0, kN)};
}

}  // namespace

TEST_CASE("canonical identification") {
  const TaylorSeries a1 = one_() + z_();
  const TaylorSeries az = complex(0.5) * mul(z_(), a1);
  const WCOperator op = identify_canonical(a1, az);
  CHECK(coeff_distance(op.psi(), a1) < 1e-15);
  CHECK(coeff_distance(op.phi(), complex(0.5) * z_()) < 1e-15);
  CHECK(identify_canonical(TaylorSeries::zero(kN), TaylorSeries::zero(kN)).is_zero());

  RandomOps rnd(1);
  for (int t = 0; t < 100; ++t) {
    const WCOperator a = rnd.op();
    const WCOperator b = identify_canonical(apply(a, one_()), apply(a, z_()));
    CHECK(coeff_distance(b.psi(), a.psi()) < 1e-9);
    CHECK(coeff_distance(b.phi(), a.phi()) < 1e-9);
  }

  // psi vanishing at the origin forces the contour quotient
  const TaylorSeries psi = z_() - complex(0.2, 0.1) * one_() + complex(0.0) * z_();
  const WCOperator c(mul(psi, z_()), complex(0.3) * z_() + complex(0.2) * one_());
  const WCOperator d = identify_canonical(apply(c, one_()), apply(c, z_()));
  CHECK(coeff_distance(d.phi(), c.phi()) < 1e-9);

  // phi with a pole is not an admissible image
  CHECK_THROWS_AS(identify_canonical(z_() - complex(0.5) * one_(), one_()), InvalidImage);
  // |phi| reaching past the disk
  CHECK_THROWS_AS(identify_canonical(one_(), complex(1.5) * z_()), InvalidImage);
}

TEST_CASE("identification through the canonical plane") {
  RandomOps rnd(2);
  const WCOperator a = rnd.op();
  const Plane v(one_(), z_());
  const auto r = identify(v, apply(a, one_()), apply(a, z_()));
  CHECK(r.canonical);
  const WCOperator b = identify_canonical(apply(a, one_()), apply(a, z_()));
  CHECK(coeff_distance(r.op.psi(), b.psi()) < 1e-12);
  CHECK(coeff_distance(r.op.phi(), b.phi()) < 1e-12);

  // basis order swapped and rescaled
  const Plane w(complex(2.0) * z_(), complex(0.5) * one_());
  const auto r2 = identify(w, apply(a, complex(2.0) * z_()), apply(a, complex(0.5) * one_()));
  CHECK(coeff_distance(r2.op.phi(), a.phi()) < 1e-9);

  // Af = 1, Ag = 0 on span{1, z} is the image of C_0 ...
  const auto c0 = identify(v, one_(), TaylorSeries::zero(kN));
  CHECK(coeff_distance(c0.op.phi(), TaylorSeries::zero(kN)) < 1e-15);
  CHECK(coeff_distance(c0.op.psi(), one_()) < 1e-15);
  // ... but sending z to 1 and 1 to 0 is no operator's action
  CHECK_THROWS_AS(identify(Plane(z_(), one_()), one_(), TaylorSeries::zero(kN)), NotAWCOImage);
}

TEST_CASE("general identification round trip") {
  const auto h = ZeroFreeUnit::from_exponent(TaylorSeries::constant(0.3, kN));
  const Plane v = make_pair(h, SchlichtFunction(series::koebe(kN)));
  const WCOperator a(one_() + complex(0.5) * z_(), complex(0.6) * z_() + complex(0.2) * TaylorSeries::monomial(2, 1.0, kN));
  const auto r = identify(v, apply(a, v.f()), apply(a, v.g()));
  CHECK_FALSE(r.canonical);
  CHECK(r.residual < 1e-6);
  CHECK(coeff_distance(r.op.psi(), a.psi()) < 1e-6);
  CHECK(coeff_distance(r.op.phi(), a.phi()) < 1e-6);
  CHECK(r.branch_log.size() == contour_size(kN));
  for (const auto& b : r.branch_log) CHECK(b.iterations <= default_settings().newton_max_iter);

  const auto cat = schlicht_catalog(kN);
  RandomOps rnd(3);
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto u = ZeroFreeUnit::from_exponent(rnd.poly(2, 0.2));
    const Plane p = make_pair(u, cat[static_cast<std::size_t>(t) % cat.size()].sigma);
    const WCOperator x = rnd.op();
    const auto rec = identify(p, apply(x, p.f()), apply(x, p.g()));
    CHECK(rec.residual < 1e-6);
    CHECK(equal_on(x, rec.op, probe3(), 1e-6));
  }

  // images not produced by any single operator
  const WCOperator y = rnd.op();
  try {
    identify(v, apply(a, v.f()), apply(y, v.g()));
    FAIL("mixed images accepted");
  } catch (const Error& e) {
    const std::string n = e.name();
    CHECK((n == "NotAWCOImage" || n == "NewtonDivergence"));
  }
  // non-separating planes are refused
  CHECK_THROWS_AS(identify(Plane(one_(), TaylorSeries::monomial(2, 1.0, kN)), apply(a, one_()),
                           apply(a, TaylorSeries::monomial(2, 1.0, kN))),
                  NotSeparating);
  // the zero operator
  const auto z = identify(v, TaylorSeries::zero(kN), TaylorSeries::zero(kN));
  CHECK(z.op.is_zero());
}

TEST_CASE("non-separating planes admit distinct operators with equal images") {
  const TaylorSeries z2 = TaylorSeries::monomial(2, 1.0, kN);
  const auto verdict = separating_verdict(one_(), z2);
  REQUIRE(verdict.witness.has_value());
  const WCOperator e1 = verdict.witness->e1.as_wco(kN);
  const WCOperator e2 = verdict.witness->e2.as_wco(kN);
  const std::array<TaylorSeries, 2> pair = {one_(), z2};
  CHECK(equal_on(e1, e2, pair, 1e-8));
  CHECK_FALSE(equal_on(e1, e2, probe3(), 1e-8));
}

TEST_CASE("channel simulation") {
  const CircleSamples k = sample_circle(series::exp(kN), 0.9, 1024);
  const auto same = simulate_channel(WCOperator::identity(kN), k);
  for (std::size_t j = 0; j < k.size(); ++j) CHECK(std::abs(same.values[j] - k.values[j]) < 1e-12);

  const CircleSamples kz = sample_circle(z_(), 0.9, 1024);
  const WCOperator half(one_(), complex(0.5) * z_());
  const auto hz = simulate_channel(half, kz);
  double err = 0.0;
  for (std::size_t j = 0; j < kz.size(); ++j) err = std::max(err, std::abs(hz.values[j] - 0.5 * kz.values[j]));
  CHECK(err < 1e-12);

  RandomOps rnd(6);
  for (int t = 0; t < 5; ++t) {
    const WCOperator b = rnd.op(6, 0.8);
    const TaylorSeries f = rnd.poly(32, 0.9);
    const CircleSamples fs = sample_circle(f, 0.9, 1024);
    const auto sim = simulate_channel(b, fs);
    const auto ref = sample_circle(apply(b, coeffs_from_circle(fs, 64)), 0.9, 1024);
    double e = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) e = std::max(e, std::abs(sim.values[j] - ref.values[j]));
    CHECK(e < 1e-9);

    // composition of channels
    const WCOperator b2 = rnd.op(6, 0.8);
    const auto two = simulate_channel(b, simulate_channel(b2, fs));
    const auto prod = simulate_channel(product(b, b2), fs);
    double ec = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) ec = std::max(ec, std::abs(two.values[j] - prod.values[j]));
    CHECK(ec < 1e-8);
  }
  CHECK_THROWS_AS(simulate_channel(WCOperator(one_(), complex(0.5) * one_() + complex(0.4) * z_()), sample_circle(z_(), 0.5, 64)), RangeError);
}
