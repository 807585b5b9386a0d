#include "wco/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace wco::kernels {
namespace {

using Heap = std::priority_queue<PairCandidate>;  // max-heap on (score, i, j)

void offer(Heap& heap, const PairCandidate& c, std::size_t keep) {
  if (keep == 0) return;
  if (heap.size() < keep) {
    heap.push(c);
  } else if (c < heap.top()) {
    heap.pop();
    heap.push(c);
  }
}

std::vector<PairCandidate> drain(Heap& heap) {
  std::vector<PairCandidate> out;
  out.reserve(heap.size());
  while (!heap.empty()) {
    out.push_back(heap.top());
    heap.pop();
  }
  std::sort(out.begin(), out.end());
  return out;
}

double vnorm(complex a, complex b) { return std::sqrt(std::norm(a) + std::norm(b)); }

// All candidates contributed by row i: the diagonal term and j > i.
template <class Sink>
void scan_row(const PairScanInput& in, std::size_t i, Sink&& sink) {
  const std::size_t n = in.points.size();
  const double ni = vnorm(in.f[i], in.g[i]);
  if (!in.wronskian.empty()) {
    const double d = std::abs(in.wronskian[i]) / (ni * ni);
    sink(PairCandidate{i, i, d}, d);
  }
  for (std::size_t j = i + 1; j < n; ++j) {
    const double nj = vnorm(in.f[j], in.g[j]);
    const double raw = std::abs(in.f[i] * in.g[j] - in.f[j] * in.g[i]) / (ni * nj);
    const double sep = std::abs(in.points[i] - in.points[j]);
    sink(PairCandidate{i, j, raw / sep}, raw);
  }
}

template <class Cmp>
ArgMin argmin_generic(std::size_t n, const Cmp& value_of) {
  ArgMin best{0, n ? value_of(0) : 0.0};
  for (std::size_t i = 1; i < n; ++i) {
    const double v = value_of(i);
    if (v < best.value) best = {i, v};
  }
  return best;
}

template <class Cmp>
ArgMin argmin_chunked(std::size_t n, const Cmp& value_of) {
  if (n == 0) return {};
  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<ArgMin> partial(chunks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    ArgMin best{lo, value_of(lo)};
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double v = value_of(i);
      if (v < best.value) best = {i, v};
    }
    partial[static_cast<std::size_t>(c)] = best;
  }
  ArgMin best = partial.front();
  for (const ArgMin& p : partial)
    if (p.value < best.value) best = p;  // chunk order keeps lowest index on ties
  return best;
}

}  // namespace

namespace serial {

std::vector<complex> eval_many(std::span<const complex> coeffs,
                               std::span<const complex> points) {
  std::vector<complex> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = horner(coeffs, points[i]);
  return out;
}

ArgMin argmin_abs(std::span<const complex> values) {
  return argmin_generic(values.size(), [&](std::size_t i) { return std::abs(values[i]); });
}

ArgMin argmin(std::span<const double> values) {
  return argmin_generic(values.size(), [&](std::size_t i) { return values[i]; });
}

std::vector<PairCandidate> smallest_pairs(const PairScanInput& in, std::size_t keep) {
  Heap heap;
  for (std::size_t i = 0; i < in.points.size(); ++i)
    scan_row(in, i, [&](const PairCandidate& c, double) { offer(heap, c, keep); });
  return drain(heap);
}

std::vector<PairCandidate> chordal_hits(const PairScanInput& in, double threshold,
                                        std::size_t keep) {
  Heap heap;
  for (std::size_t i = 0; i < in.points.size(); ++i)
    scan_row(in, i, [&](const PairCandidate& c, double raw) {
      if (c.i != c.j && raw < threshold) offer(heap, {c.i, c.j, raw}, keep);
    });
  return drain(heap);
}

complex sum(std::span<const complex> values) {
  complex acc = 0.0;
  for (const complex& v : values) acc += v;
  return acc;
}

std::vector<complex> fourier_sum(std::span<const double> omegas,
                                 std::span<const complex> weights,
                                 std::span<const double> times) {
  std::vector<complex> out(times.size());
  for (std::size_t t = 0; t < times.size(); ++t) {
    complex acc = 0.0;
    for (std::size_t k = 0; k < omegas.size(); ++k)
      acc += weights[k] * std::polar(1.0, omegas[k] * times[t]);
    out[t] = acc;
  }
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<complex> eval_many(std::span<const complex> coeffs,
                               std::span<const complex> points) {
  std::vector<complex> out(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(points.size()); ++i)
    out[static_cast<std::size_t>(i)] = horner(coeffs, points[static_cast<std::size_t>(i)]);
  return out;
}

ArgMin argmin_abs(std::span<const complex> values) {
  return argmin_chunked(values.size(), [&](std::size_t i) { return std::abs(values[i]); });
}

ArgMin argmin(std::span<const double> values) {
  return argmin_chunked(values.size(), [&](std::size_t i) { return values[i]; });
}

std::vector<PairCandidate> smallest_pairs(const PairScanInput& in, std::size_t keep) {
  const auto n = static_cast<std::ptrdiff_t>(in.points.size());
  std::vector<PairCandidate> merged;
#pragma omp parallel
  {
    Heap local;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      scan_row(in, static_cast<std::size_t>(i),
               [&](const PairCandidate& c, double) { offer(local, c, keep); });
    auto mine = drain(local);
#pragma omp critical
    merged.insert(merged.end(), mine.begin(), mine.end());
  }
  std::sort(merged.begin(), merged.end());
  if (merged.size() > keep) merged.resize(keep);
  return merged;
}

std::vector<PairCandidate> chordal_hits(const PairScanInput& in, double threshold,
                                        std::size_t keep) {
  const auto n = static_cast<std::ptrdiff_t>(in.points.size());
  std::vector<PairCandidate> merged;
#pragma omp parallel
  {
    Heap local;
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i)
      scan_row(in, static_cast<std::size_t>(i), [&](const PairCandidate& c, double raw) {
        if (c.i != c.j && raw < threshold) offer(local, {c.i, c.j, raw}, keep);
      });
    auto mine = drain(local);
#pragma omp critical
    merged.insert(merged.end(), mine.begin(), mine.end());
  }
  std::sort(merged.begin(), merged.end());
  if (merged.size() > keep) merged.resize(keep);
  return merged;
}

complex sum(std::span<const complex> values) {
  return chunked_sum(values.size(), [&](std::size_t i) { return values[i]; });
}

std::vector<complex> fourier_sum(std::span<const double> omegas,
                                 std::span<const complex> weights,
                                 std::span<const double> times) {
  std::vector<complex> out(times.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < static_cast<std::ptrdiff_t>(times.size()); ++t) {
    complex acc = 0.0;
    const double tt = times[static_cast<std::size_t>(t)];
    for (std::size_t k = 0; k < omegas.size(); ++k)
      acc += weights[k] * std::polar(1.0, omegas[k] * tt);
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

}  // namespace parallel
}  // namespace wco::kernels
