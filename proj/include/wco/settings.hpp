#pragma once

#include <cstddef>

namespace wco {

/// Numerical defaults shared by every module. Equality of functions always
/// means a max coefficient (or max sample) discrepancy below a tolerance here.
struct Settings {
  int order = 256;                   // default truncation order N
  double r_work = 0.95;              // evaluation domain |z| <= r_work
  double r_contour = 0.9;            // sampling circle for compose/apply/equal_on/identify
  double r_verdict = 0.9;            // radius for separation verdicts
  std::size_t contour_samples = 2048;
  int grid_radii = 64;               // disk scans: grid_radii x grid_angles + origin
  int grid_angles = 64;
  std::size_t injectivity_samples = 2048;

  double eps_unit = 1e-12;
  double eps_contour = 1e-8;
  double eps_rank = 1e-10;
  double eps_chordal = 1e-7;
  double delta_disk = 1e-6;
  double alias_tol = 1e-8;           // relative size of negative-frequency modes
  double chop_tol = 1e-15;           // trailing modes below this (relative) are dropped
  double common_zero_tol = 1e-9;
  double tol_id = 1e-6;
  double equiv_tol = 1e-9;
  double c_bound = 4.0;              // admissible Mobius shifts |c| <= c_bound
  double c_refine_tol = 1e-9;
  int alpha_budget = 512;
  int newton_max_iter = 60;
};

// X-macro over every field, for serialization and command-line overrides.
#define WCO_SETTINGS_FIELDS(X)                                                          \
  X(order) X(r_work) X(r_contour) X(r_verdict) X(contour_samples) X(grid_radii)        \
  X(grid_angles) X(injectivity_samples) X(eps_unit) X(eps_contour) X(eps_rank)          \
  X(eps_chordal) X(delta_disk) X(alias_tol) X(chop_tol) X(common_zero_tol) X(tol_id)    \
  X(equiv_tol) X(c_bound) X(c_refine_tol) X(alpha_budget) X(newton_max_iter)

inline const Settings& default_settings() {
  static const Settings s{};
  return s;
}

}  // namespace wco
