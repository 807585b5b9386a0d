#pragma once

#include <vector>

#include "wco/operators.hpp"
#include "wco/separation.hpp"

namespace wco {

/// Per-sample record of the inversion of mu along the contour.
struct BranchSample {
  complex z;
  complex w;              // phi(z)
  int iterations = 0;
  double condition = 0.0;  // |d w / d data|, 1/|F'(w)| on normalized data
  bool used_f = true;     // psi taken from Af/f(w) rather than Ag/g(w)
  bool reseeded = false;  // continuation failed and the grid seed was used
};

struct IdentificationResult {
  WCOperator op;
  double residual = 0.0;  // max image mismatch on the r_contour circle
  double radius = 0.0;    // contour used for the inversion
  bool canonical = false;
  std::vector<BranchSample> branch_log;
};

/// psi = A1, phi = Az/A1.
WCOperator identify_canonical(const TaylorSeries& a1, const TaylorSeries& az,
                              const Settings& cfg = default_settings());

/// Recovers A from Af, Ag for a separating plane V = span{f, g}.
IdentificationResult identify(const Plane& v, const TaylorSeries& af, const TaylorSeries& ag,
                              const Settings& cfg = default_settings());
IdentificationResult identify(const Plane& v, const CircleSamples& af, const CircleSamples& ag,
                              const Settings& cfg = default_settings());

/// psi(z_j) k(phi(z_j)) on the nodes of k, interior values by the Cauchy integral.
CircleSamples simulate_channel(const WCOperator& b, const CircleSamples& k);

}  // namespace wco
