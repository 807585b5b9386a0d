#include "wco/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wco/error.hpp"

namespace wco {

WCOperator::WCOperator(TaylorSeries psi, TaylorSeries phi, const Settings& cfg)
    : psi_(std::move(psi)), phi_(std::move(phi)), r_check_(cfg.r_contour) {
  const CircleSamples cs = sample_circle(phi_, r_check_, contour_size(phi_.order(), cfg));
  double sup = 0.0;
  for (const complex& w : cs.values) sup = std::max(sup, std::abs(w));
  if (sup > 1.0 - cfg.delta_disk)
    throw InvariantError("phi leaves the disk: max |phi| = " + std::to_string(sup) +
                         " on the r = " + std::to_string(r_check_) + " circle");
}

WCOperator WCOperator::identity(int order) {
  return WCOperator(TaylorSeries::constant(1.0, order), TaylorSeries::identity(order));
}

WCOperator WCOperator::zero(int order) {
  return WCOperator(TaylorSeries::zero(order), TaylorSeries::identity(order));
}

PointEvalOperator::PointEvalOperator(complex a, complex z, const Settings& cfg) : alpha(a), z0(z) {
  if (std::abs(z0) > cfg.r_work)
    throw InvariantError("point evaluation at |z0| = " + std::to_string(std::abs(z0)) +
                         " beyond the working radius");
}

WCOperator PointEvalOperator::as_wco(int order) const {
  return WCOperator(TaylorSeries::constant(alpha, order), TaylorSeries::constant(z0, order));
}

TaylorSeries apply(const WCOperator& a, const TaylorSeries& f, const Settings& cfg) {
  return mul(a.psi(), compose(f, a.phi(), cfg.r_contour, cfg));
}

TaylorSeries apply_point_eval(const PointEvalOperator& e, const TaylorSeries& f, const Settings& cfg) {
  return TaylorSeries::constant(e.alpha * eval(f, e.z0, cfg), f.order());
}

TaylorSeries apply(const Operator& a, const TaylorSeries& f, const Settings& cfg) {
  return std::visit(
      [&](const auto& op) -> TaylorSeries {
        if constexpr (std::is_same_v<std::decay_t<decltype(op)>, WCOperator>)
          return apply(op, f, cfg);
        else
          return apply_point_eval(op, f, cfg);
      },
      a);
}

WCOperator product(const WCOperator& outer, const WCOperator& inner, const Settings& cfg) {
  TaylorSeries psi = mul(outer.psi(), compose(inner.psi(), outer.phi(), cfg.r_contour, cfg));
  TaylorSeries phi = compose(inner.phi(), outer.phi(), cfg.r_contour, cfg);
  return WCOperator(std::move(psi), std::move(phi), cfg);
}

double restriction_gap(const Operator& a1, const Operator& a2, std::span<const TaylorSeries> xs,
                       const Settings& cfg) {
  double gap = 0.0;
  for (const TaylorSeries& f : xs) {
    const TaylorSeries d = apply(a1, f, cfg) - apply(a2, f, cfg);
    const CircleSamples cs = sample_circle(d, cfg.r_contour, contour_size(d.order(), cfg));
    for (const complex& v : cs.values) gap = std::max(gap, std::abs(v));
  }
  return gap;
}

bool equal_on(const Operator& a1, const Operator& a2, std::span<const TaylorSeries> xs, double tol,
              const Settings& cfg) {
  return restriction_gap(a1, a2, xs, cfg) < tol;
}

}  // namespace wco
