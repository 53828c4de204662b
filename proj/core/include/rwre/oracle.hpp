#pragma once

#include <optional>
#include <vector>

#include "rwre/distribution.hpp"

// Closed-form references used by acceptance tests. The 1-D criteria are the
// classical ones: with rho = omega(-1)/omega(+1), the walk is transient to
// the right iff E[log rho] < 0, and its speed is (1-E[rho])/(1+E[rho]) when
// E[rho] < 1 and zero otherwise (mirrored for the left). These formulas are
// quarantined here so that only tests depend on them.

namespace rwre {

enum class OneDClass { kTransientPlus, kTransientMinus, kRecurrent };

struct OneDVerdict {
  OneDClass classification = OneDClass::kRecurrent;
  double e_log_rho = 0;
  double e_rho = 0;
  double e_inv_rho = 0;
  double speed = 0;
};

// Exact moment computation for deterministic / finite-mixture 1-D specs.
// Dirichlet has no implemented closed form and is rejected.
OneDVerdict oneD_classify(const DistributionSpec& spec);

struct HomogeneousOracle {
  std::vector<double> drift;
  std::optional<std::vector<double>> direction;  // drift/|drift| when nonzero
};

HomogeneousOracle homogeneous_oracle(const std::vector<double>& probs, int d);

}  // namespace rwre
