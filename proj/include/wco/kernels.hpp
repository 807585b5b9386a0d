#pragma once

// Data-parallel inner loops. Every kernel exists twice: `serial::` is the
// plain reference kept for testing, `parallel::` is the OpenMP version the
// library uses. Parallel reductions combine fixed-size chunks in index
// order, so results do not depend on the thread count or schedule.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wco::kernels {

using complex = std::complex<double>;

// Horner evaluation of sum c_n z^n.
inline complex horner(std::span<const complex> c, complex z) {
  complex acc = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) acc = acc * z + c[n];
  return acc;
}

struct ValueDeriv {
  complex value;
  complex d1;
  complex d2;
};

// Value plus first and second derivative in one pass.
inline ValueDeriv horner_dd(std::span<const complex> c, complex z) {
  complex p = 0.0, dp = 0.0, ddp = 0.0;
  for (std::size_t n = c.size(); n-- > 0;) {
    ddp = ddp * z + 2.0 * dp;
    dp = dp * z + p;
    p = p * z + c[n];
  }
  return {p, dp, ddp};
}

struct ArgMin {
  std::size_t index = 0;
  double value = 0.0;
};

// Candidate collision (i, j), i < j or i == j (diagonal / critical point).
struct PairCandidate {
  std::size_t i = 0;
  std::size_t j = 0;
  double score = 0.0;
  friend bool operator<(const PairCandidate& a, const PairCandidate& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

struct PairScanInput {
  std::span<const complex> points;
  std::span<const complex> f;        // f(points), normalized basis
  std::span<const complex> g;
  std::span<const complex> wronskian;  // f'g - fg' at points
};

inline constexpr std::size_t kChunk = 256;

namespace serial {

std::vector<complex> eval_many(std::span<const complex> coeffs,
                               std::span<const complex> points);
ArgMin argmin_abs(std::span<const complex> values);
ArgMin argmin(std::span<const double> values);
// The `keep` smallest deflated chordal discriminants
//   |f_i g_j - f_j g_i| / (|v_i| |v_j| |z_i - z_j|)   (i < j)
//   |W_i| / |v_i|^2                                  (i == j)
std::vector<PairCandidate> smallest_pairs(const PairScanInput& in, std::size_t keep);
// Pairs (i < j) with raw chordal discriminant below `threshold`.
std::vector<PairCandidate> chordal_hits(const PairScanInput& in, double threshold,
                                        std::size_t keep);
complex sum(std::span<const complex> values);
// x_t = sum_k F_k exp(i w_k t) for every t in `times`.
std::vector<complex> fourier_sum(std::span<const double> omegas,
                                 std::span<const complex> weights,
                                 std::span<const double> times);

}  // namespace serial

namespace parallel {

std::vector<complex> eval_many(std::span<const complex> coeffs,
                               std::span<const complex> points);
ArgMin argmin_abs(std::span<const complex> values);
ArgMin argmin(std::span<const double> values);
std::vector<PairCandidate> smallest_pairs(const PairScanInput& in, std::size_t keep);
std::vector<PairCandidate> chordal_hits(const PairScanInput& in, double threshold,
                                        std::size_t keep);
complex sum(std::span<const complex> values);
std::vector<complex> fourier_sum(std::span<const double> omegas,
                                 std::span<const complex> weights,
                                 std::span<const double> times);

}  // namespace parallel

// Deterministic chunked sum of term(i), i in [0, n). Chunks of kChunk are
// summed sequentially and the partials are added in chunk order.
template <class Term>
complex chunked_sum(std::size_t n, const Term& term) {
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<complex> partial(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    complex acc = 0.0;
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(c)] = acc;
  }
  complex total = 0.0;
  for (const complex& p : partial) total += p;
  return total;
}

}  // namespace wco::kernels
