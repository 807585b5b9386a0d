#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <omp.h>

#include "wco/kernels.hpp"

using namespace wco::kernels;

namespace {

std::vector<complex> random_values(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<complex> v(n);
  for (auto& x : v) x = {nd(rng), nd(rng)};
  return v;
}

}  // namespace

TEST_CASE("horner variants") {
  const std::vector<complex> c{1.0, 2.0, 3.0};
  const complex z(0.5, -0.25);
  CHECK(std::abs(horner(c, z) - (1.0 + 2.0 * z + 3.0 * z * z)) < 1e-15);
  const ValueDeriv d = horner_dd(c, z);
  CHECK(std::abs(d.d1 - (2.0 + 6.0 * z)) < 1e-15);
  CHECK(std::abs(d.d2 - 6.0) < 1e-15);
}

TEST_CASE("serial and parallel kernels agree") {
  const auto coeffs = random_values(40, 1);
  auto pts = random_values(3000, 2);
  for (auto& p : pts) p *= 0.3;
  const auto a = serial::eval_many(coeffs, pts), b = parallel::eval_many(coeffs, pts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  const auto v = random_values(5000, 3);
  CHECK(serial::argmin_abs(v).index == parallel::argmin_abs(v).index);
  std::vector<double> re(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) re[i] = v[i].real();
  CHECK(serial::argmin(re).index == parallel::argmin(re).index);
  const complex s1 = serial::sum(v), s2 = parallel::sum(v);
  CHECK(std::abs(s1 - s2) < 1e-10);

  const auto f = random_values(400, 4), g = random_values(400, 5), w = random_values(400, 6);
  const auto zs = random_values(400, 7);
  const PairScanInput in{zs, f, g, w};
  const auto p1 = serial::smallest_pairs(in, 24), p2 = parallel::smallest_pairs(in, 24);
  REQUIRE(p1.size() == p2.size());
  for (std::size_t i = 0; i < p1.size(); ++i) {
    CHECK(p1[i].i == p2[i].i);
    CHECK(p1[i].j == p2[i].j);
  }
  const auto h1 = serial::chordal_hits(in, 0.05, 8), h2 = parallel::chordal_hits(in, 0.05, 8);
  REQUIRE(h1.size() == h2.size());
  for (std::size_t i = 0; i < h1.size(); ++i) CHECK(h1[i].score == h2[i].score);

  std::vector<double> om(300), ts(50);
  for (std::size_t k = 0; k < om.size(); ++k) om[k] = 0.1 * static_cast<double>(k);
  for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = 0.05 * static_cast<double>(k);
  const auto wt = random_values(om.size(), 8);
  const auto x1 = serial::fourier_sum(om, wt, ts), x2 = parallel::fourier_sum(om, wt, ts);
  for (std::size_t k = 0; k < ts.size(); ++k) CHECK(std::abs(x1[k] - x2[k]) < 1e-10);
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  const auto v = random_values(10000, 9);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const complex one = parallel::sum(v);
  const complex chunk1 = chunked_sum(v.size(), [&](std::size_t i) { return v[i]; });
  omp_set_num_threads(4);
  const complex four = parallel::sum(v);
  const complex chunk4 = chunked_sum(v.size(), [&](std::size_t i) { return v[i]; });
  omp_set_num_threads(saved);
  CHECK(one == four);
  CHECK(chunk1 == chunk4);
}
