#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "wco/error.hpp"
#include "wco/io.hpp"

using namespace wco;
using io::json;

namespace {

TaylorSeries random_series(unsigned seed, int order) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<complex> c(static_cast<std::size_t>(order) + 1);
  for (auto& x : c) x = {nd(rng) / 3.0, nd(rng) * 1e-7};
  return TaylorSeries(c, "random");
}

}  // namespace

TEST_CASE("series round trip through text") {
  const TaylorSeries s = random_series(1, 40);
  const json j = json::parse(io::to_json(s).dump());
  CHECK(j["order"] == 40);
  CHECK(j["label"] == "random");
  const TaylorSeries back = io::series_from(j);
  CHECK(coeff_distance(s, back) < 1e-15);
  CHECK(back.label() == "random");
}

TEST_CASE("malformed documents are ParseErrors") {
  CHECK_THROWS_AS(io::series_from(json::parse(R"({"order": 3})")), ParseError);
  CHECK_THROWS_AS(io::series_from(json::parse(R"({"order": 3, "coeffs": [[1, 0], [0, 1]]})")), ParseError);
  CHECK_THROWS_AS(io::series_from(json::parse(R"({"coeffs": [[1, 0], [0]]})")), ParseError);
  CHECK_THROWS_AS(io::complex_from(json::parse(R"("x")")), ParseError);
  CHECK_THROWS_AS(io::settings_from(json::parse(R"({"ordre": 3})")), ParseError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("operators, planes and witnesses") {
  const WCOperator a(TaylorSeries::constant(complex(1.0, 0.5), 8), complex(0.4) * TaylorSeries::identity(8));
  const WCOperator b = io::operator_from(json::parse(io::to_json(a).dump()));
  CHECK(coeff_distance(a.psi(), b.psi()) == 0.0);
  CHECK(coeff_distance(a.phi(), b.phi()) == 0.0);

  const PointEvalOperator e(complex(2.0, -1.0), complex(0.1, 0.3));
  const PointEvalOperator e2 = io::point_eval_from(json::parse(io::to_json(e).dump()));
  CHECK(e2.alpha == e.alpha);
  CHECK(e2.z0 == e.z0);

  const TaylorSeries z = TaylorSeries::identity(8), z2 = TaylorSeries::monomial(2, 1.0, 8);
  const SeparationVerdict v = separating_verdict(z, z2);
  const json doc = json::parse(io::to_json(v).dump());
  CHECK(doc["reason"] == "CommonZero");
  CHECK(doc["separating"] == false);
  const Witness w = io::witness_from(doc);
  CHECK(check_witness(z, z2, w).valid);

  const Plane p = io::plane_from(json::parse(io::to_json(Plane(z, z2)).dump()));
  CHECK(coeff_distance(p.g(), z2) == 0.0);
}

TEST_CASE("settings and probe records") {
  const Settings s = io::settings_from(json::parse(R"({"order": 64, "tol_id": 1e-5})"));
  CHECK(s.order == 64);
  CHECK(s.tol_id == 1e-5);
  CHECK(s.r_work == default_settings().r_work);
  const Settings t = io::settings_from(io::to_json(s));
  CHECK(t.order == 64);
  CHECK(t.c_bound == s.c_bound);

  const TaylorSeries one = TaylorSeries::constant(1.0, 4), z = TaylorSeries::identity(4);
  json probe{{"plane", io::to_json(Plane(one, z))},
             {"Af", io::to_json(one)},
             {"Ag", io::to_json(sample_circle(z, 0.9, 16))}};
  const io::ProbeRecord rec = io::probe_from(json::parse(probe.dump()));
  CHECK(std::holds_alternative<TaylorSeries>(rec.af));
  CHECK(std::holds_alternative<CircleSamples>(rec.ag));
  CHECK(std::get<CircleSamples>(rec.ag).radius == 0.9);
}

TEST_CASE("catalog file matches the built-in catalog") {
  const json doc = io::read_json_file(WCO_DATA_DIR "/schlicht_catalog.json");
  const auto from_file = io::catalog_from(doc, 256);
  const auto builtin = schlicht_catalog(256);
  REQUIRE(from_file.size() == builtin.size());
  for (std::size_t i = 0; i < builtin.size(); ++i) {
    CHECK(from_file[i].name == builtin[i].name);
    CHECK(coeff_distance(from_file[i].sigma.s(), builtin[i].sigma.s()) < 1e-15);
  }
  const auto again = io::catalog_from(json::parse(io::catalog_document(builtin).dump()), 256);
  CHECK(coeff_distance(again[5].sigma.s(), builtin[5].sigma.s()) < 1e-15);
}

TEST_CASE("signal CSV") {
  const Section4Signals s = section4_pair(2 * M_PI / 256);
  std::stringstream buf;
  io::write_signal_csv(buf, s.g);
  const TimeSignal back = io::read_signal_csv(buf);
  CHECK(back.samples.size() == s.g.samples.size());
  CHECK(std::abs(back.dt - s.g.dt) < 1e-15);
  double err = 0.0;
  for (std::size_t i = 0; i < back.samples.size(); ++i) err = std::max(err, std::abs(back.samples[i] - s.g.samples[i]));
  CHECK(err == 0.0);

  std::stringstream bad_header("time,re,im\n0,1,0\n1,1,0\n");
  CHECK_THROWS_AS(io::read_signal_csv(bad_header), ParseError);
  std::stringstream uneven("t,re,im\n0,1,0\n0.1,1,0\n0.3,1,0\n");
  CHECK_THROWS_AS(io::read_signal_csv(uneven), ParseError);
  std::stringstream garbage("t,re,im\n0,1,0\n0.1,x,0\n");
  CHECK_THROWS_AS(io::read_signal_csv(garbage), ParseError);
}

TEST_CASE("half-plane CSV") {
  const HalfPlaneSamples h({complex(1.0, 2.0), complex(0.5, -1.0)}, {complex(0.25, 0.0), complex(-1.0, 3.0)});
  std::stringstream buf;
  io::write_halfplane_csv(buf, h);
  const HalfPlaneSamples back = io::read_halfplane_csv(buf);
  CHECK(back.points == h.points);
  CHECK(back.values == h.values);
  std::stringstream left("re_z,im_z,re_v,im_v\n-1,0,1,0\n");
  CHECK_THROWS_AS(io::read_halfplane_csv(left), ParseError);
}
