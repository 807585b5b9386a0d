#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wco/operators.hpp"
#include "wco/taylor_series.hpp"

namespace wco {

/// Two-dimensional subspace span{f, g}; construction requires the normalized
/// coefficient rows to have second singular value above eps_rank.
class Plane {
 public:
  Plane(TaylorSeries f, TaylorSeries g, const Settings& cfg = default_settings());

  const TaylorSeries& f() const { return f_; }
  const TaylorSeries& g() const { return g_; }
  Plane swapped() const { return Plane(g_, f_, Unchecked{}); }

 private:
  struct Unchecked {};
  Plane(TaylorSeries f, TaylorSeries g, Unchecked) : f_(std::move(f)), g_(std::move(g)) {}
  TaylorSeries f_;
  TaylorSeries g_;
};

/// Second singular value of the 2 x (N+1) matrix of normalized coefficient rows.
double independence(const TaylorSeries& f, const TaylorSeries& g);
/// Sine of the largest principal angle between two planes (coefficient l2).
double plane_distance(const Plane& a, const Plane& b);
/// Distance of `u` from span{p.f, p.g}, relative to |u|.
double span_residual(const Plane& p, const TaylorSeries& u);

/// mu = num/den as a map into the Riemann sphere.
struct MeromorphicRatio {
  TaylorSeries num;
  TaylorSeries den;
};

struct Collision {
  complex z0;
  complex z1;
  double discriminant = 0.0;  // chordal |f0 g1 - f1 g0| / (|v0| |v1|)
};

enum class Reason { OK, CommonZero, NonInjectiveRatio, Degenerate };
const char* to_string(Reason r);
Reason reason_from_string(const std::string& s);

struct Witness {
  PointEvalOperator e1;
  PointEvalOperator e2;
};

struct SeparationVerdict {
  bool separating = false;
  Reason reason = Reason::Degenerate;
  std::optional<Witness> witness;
  std::optional<complex> common_zero;
  std::optional<Collision> collision;
  double radius = 0.0;
  std::size_t samples = 0;
  bool suspect = false;  // refinement did not converge; treated as non-separating
  std::string note;
};

/// Common zero of f and g in |z| <= r, refined to max(|f|,|g|) < common_zero_tol
/// on the normalized basis. ConvergenceError if a strong candidate will not refine.
std::optional<complex> has_common_zero(const Plane& v, double r,
                                       const Settings& cfg = default_settings());

/// A verified collision mu(z0) = mu(z1), z0 != z1, |z0|,|z1| <= r, or none.
std::optional<Collision> is_injective_ratio(const MeromorphicRatio& mu, double r, std::size_t n,
                                            const Settings& cfg = default_settings());

SeparationVerdict separating_verdict(const Plane& v, const Settings& cfg = default_settings());
/// Same, accepting a possibly dependent pair (reported as Degenerate).
SeparationVerdict separating_verdict(const TaylorSeries& f, const TaylorSeries& g,
                                     const Settings& cfg = default_settings());
SeparationVerdict separating_verdict(const TaylorSeries& f, const TaylorSeries& g, double r,
                                     std::size_t n, const Settings& cfg = default_settings());

/// Two distinct scaled evaluations agreeing on {f}.
std::pair<PointEvalOperator, PointEvalOperator> singleton_witness(
    const TaylorSeries& f, const Settings& cfg = default_settings());

struct WitnessCheck {
  double gap_on_pair = 0.0;   // restriction gap on {f, g}
  double gap_on_probe = 0.0;  // restriction gap on {1, z}
  bool valid = false;
};
/// Independent re-validation: the witness must agree on {f, g} and differ on {1, z}.
WitnessCheck check_witness(const TaylorSeries& f, const TaylorSeries& g, const Witness& w,
                           double tol = 1e-8, const Settings& cfg = default_settings());

/// Quasi-uniform (sunflower) points in |z| <= r.
std::vector<complex> sunflower(double r, std::size_t n);

}  // namespace wco
