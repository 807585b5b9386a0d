#pragma once

#include <span>
#include <variant>
#include <vector>

#include "wco/taylor_series.hpp"

namespace wco {

/// Weighted composition operator f -> psi * (f o phi). The symbol phi must
/// keep the r_check circle inside |w| <= 1 - delta_disk.
class WCOperator {
 public:
  WCOperator(TaylorSeries psi, TaylorSeries phi, const Settings& cfg = default_settings());

  static WCOperator identity(int order = 1);
  static WCOperator zero(int order = 1);

  const TaylorSeries& psi() const { return psi_; }
  const TaylorSeries& phi() const { return phi_; }
  double r_check() const { return r_check_; }
  bool is_zero(double tol = 0.0) const { return psi_.is_zero(tol); }

 private:
  TaylorSeries psi_;
  TaylorSeries phi_;
  double r_check_;
};

/// alpha * C_{z0}: f -> the constant function alpha f(z0).
struct PointEvalOperator {
  complex alpha;
  complex z0;

  PointEvalOperator(complex alpha, complex z0, const Settings& cfg = default_settings());
  /// The same operator as an element of the weighted composition family.
  WCOperator as_wco(int order = 1) const;
};

using Operator = std::variant<WCOperator, PointEvalOperator>;

TaylorSeries apply(const WCOperator& a, const TaylorSeries& f,
                   const Settings& cfg = default_settings());
TaylorSeries apply_point_eval(const PointEvalOperator& e, const TaylorSeries& f,
                              const Settings& cfg = default_settings());
TaylorSeries apply(const Operator& a, const TaylorSeries& f,
                   const Settings& cfg = default_settings());

/// The operator `outer` o `inner`: (psi_o * (psi_i o phi_o), phi_i o phi_o).
WCOperator product(const WCOperator& outer, const WCOperator& inner,
                   const Settings& cfg = default_settings());

/// Max discrepancy of a1 f and a2 f on the r_contour circle, over f in xs.
double restriction_gap(const Operator& a1, const Operator& a2, std::span<const TaylorSeries> xs,
                       const Settings& cfg = default_settings());
bool equal_on(const Operator& a1, const Operator& a2, std::span<const TaylorSeries> xs, double tol,
              const Settings& cfg = default_settings());

}  // namespace wco
