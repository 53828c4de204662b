#pragma once

#include <string>
#include <vector>

// Distribution families for the site law mu on the (2d-1)-simplex. A site's
// transition vector lists probabilities in the fixed direction order
// (+e1, -e1, +e2, -e2, ..., +ed, -ed); every serialization and every CDF
// inversion in the walk sampler relies on that order.

namespace rwre {

enum class Family {
  kDeterministic,          // point mass at one transition vector
  kFiniteMixture,          // finitely many vectors with mixture weights
  kDirichlet,              // Dirichlet with 2d positive concentrations
  kDriftPerturbedUniform,  // 1/(2d) + epsilon_j, sum(epsilon) = 0
};

std::string family_name(Family family);
Family family_from_name(const std::string& name);

struct DistributionSpec {
  Family family = Family::kDeterministic;
  int d = 0;
  std::vector<std::vector<double>> vectors;  // deterministic (1) / mixture (m)
  std::vector<double> weights;               // mixture weights
  std::vector<double> concentration;         // dirichlet parameters
  std::vector<double> epsilon;               // drift perturbation
};

// Validated factories. All throw std::invalid_argument with a specific
// message on dimension mismatches, negative probabilities, weights that do
// not sum to one, or nonpositive concentrations.
DistributionSpec make_deterministic(int d, std::vector<double> probs);
DistributionSpec make_finite_mixture(int d, std::vector<std::vector<double>> vectors,
                                     std::vector<double> weights);
DistributionSpec make_dirichlet(int d, std::vector<double> concentration);
DistributionSpec make_drift_perturbed_uniform(int d, std::vector<double> epsilon);

void validate_spec(const DistributionSpec& spec);

struct EllipticityReport {
  bool holds = false;
  std::string witness;  // empty when holds
};

// Strict ellipticity: mu puts mass one on vectors with all entries > 0.
EllipticityReport validate_strict_ellipticity(const DistributionSpec& spec);

}  // namespace rwre
