#pragma once

#include <string>
#include <vector>

#include "wco/separation.hpp"
#include "wco/taylor_series.hpp"

namespace wco {

/// h(z) = exp(z k(z)): zero-free on |z| <= r_work with h(0) = 1.
class ZeroFreeUnit {
 public:
  static ZeroFreeUnit from_exponent(const TaylorSeries& k, const Settings& cfg = default_settings());
  /// Recovers k from a materialized h; h(0) is divided out first.
  static ZeroFreeUnit from_values(const TaylorSeries& h, const Settings& cfg = default_settings());
  static ZeroFreeUnit one(int order = 1) { return from_exponent(TaylorSeries::zero(order)); }

  const TaylorSeries& k() const { return k_; }
  const TaylorSeries& h() const { return h_; }

 private:
  ZeroFreeUnit(TaylorSeries k, TaylorSeries h, const Settings& cfg);
  TaylorSeries k_;
  TaylorSeries h_;
};

/// Normalized univalent s: s(0) = 0, s'(0) = 1, injective on |z| <= 0.9.
class SchlichtFunction {
 public:
  explicit SchlichtFunction(TaylorSeries s, const Settings& cfg = default_settings());

  const TaylorSeries& s() const { return s_; }
  complex a2() const { return s_[2]; }
  /// Coefficients with |c_n| > n + 0.1 for n <= 16 (should be empty).
  std::vector<int> coefficient_warnings() const;

 private:
  TaylorSeries s_;
};

struct CatalogEntry {
  std::string name;
  SchlichtFunction sigma;
};

/// Built-in schlicht examples: z, Moebius z/(1 - b z), Koebe rotations, z/(1 + z^2).
std::vector<CatalogEntry> schlicht_catalog(int order = 256, const Settings& cfg = default_settings());
/// One catalog entry by name; ParseError for unknown names.
SchlichtFunction catalog_entry(const std::string& name, int order = 256, const Settings& cfg = default_settings());
/// Catalog entry from a kind tag and parameters ("identity", "mobius", "koebe", "symmetric_koebe").
TaylorSeries catalog_series(const std::string& kind, complex param, int order);

Plane make_pair(const ZeroFreeUnit& h, const SchlichtFunction& sigma, const Settings& cfg = default_settings());

/// The unique u in V with u(0) = 0, u'(0) = 1.
TaylorSeries distinguished_element(const Plane& v, const Settings& cfg = default_settings());

/// alpha outside mu(|z| <= r), certified by count_zeros(f - alpha g, r) = 0.
complex choose_alpha(const Plane& v, double r, const Settings& cfg = default_settings());
inline complex choose_alpha(const Plane& v, const Settings& cfg = default_settings()) {
  return choose_alpha(v, cfg.r_work, cfg);
}

struct CanonicalForm {
  SchlichtFunction tau;
  complex c;          // tau = sigma / (1 - c sigma)
  bool tie = false;   // the minimizer was not unique at the working resolution
};

/// Representative of the Moebius class of sigma with the smallest |a2| among
/// admissible shifts |c| <= c_bound.
CanonicalForm canonicalize(const SchlichtFunction& sigma, const Settings& cfg = default_settings());

/// c with z/sigma - z/tau = c z (and sigma - 1/c zero-free), or none.
std::optional<complex> schlicht_equiv(const SchlichtFunction& sigma, const SchlichtFunction& tau,
                                      const Settings& cfg = default_settings());

struct DecompositionRecord {
  ZeroFreeUnit h;
  SchlichtFunction tau;
  SchlichtFunction sigma;  // before canonicalization
  complex alpha;
  complex lambda;
  complex c;
  TaylorSeries G;
  bool swapped = false;  // basis order was exchanged so that |g(0)| >= |f(0)|
  bool tie = false;
  double span_residual = 0.0;
};

DecompositionRecord decompose_plane(const Plane& v, const Settings& cfg = default_settings());

}  // namespace wco
