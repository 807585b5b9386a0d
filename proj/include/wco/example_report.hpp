#pragma once

#include <string>
#include <vector>

#include "wco/halfplane.hpp"

namespace wco {

struct ExampleCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct ExampleReport {
  std::vector<ExampleCheck> checks;
  bool all_pass() const;
};

/// Regression run of the compactly supported example: transform closed forms,
/// time-domain identities, zero-freeness and outerness of rho, Cayley round trip.
ExampleReport run_example_report(const Settings& cfg = default_settings());

}  // namespace wco
