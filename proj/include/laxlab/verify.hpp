#pragma once

#include <string>
#include <vector>

#include "laxlab/lax_config.hpp"

namespace laxlab {

struct CheckResult {
  std::string suite;
  std::string name;
  double residual;
  double bound;
  bool passed() const { return residual < bound; }
};

/// Runs the cross-module property suite on a configuration: algebraic
/// identities, flow factorization and isospectrality, elliptic identities,
/// surface relations, lattice coincidence and the Toeplitz detector
/// controls. Each entry reports a measured residual against its bound.
std::vector<CheckResult> run_verification(const LaxConfig& config);

}  // namespace laxlab
