#include "rwre/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace rwre {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_probability_vector(const std::vector<double>& p, int d, const std::string& what) {
  if (static_cast<int>(p.size()) != 2 * d)
    throw std::invalid_argument(what + ": expected " + std::to_string(2 * d) + " entries, got " +
                                std::to_string(p.size()));
  double sum = 0;
  for (double v : p) {
    if (v < 0) throw std::invalid_argument(what + ": negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw std::invalid_argument(what + ": probabilities sum to " + std::to_string(sum));
}

}  // namespace

std::string family_name(Family family) {
  switch (family) {
    case Family::kDeterministic: return "deterministic";
    case Family::kFiniteMixture: return "finite-mixture";
    case Family::kDirichlet: return "dirichlet";
    case Family::kDriftPerturbedUniform: return "drift-perturbed-uniform";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "deterministic") return Family::kDeterministic;
  if (name == "finite-mixture") return Family::kFiniteMixture;
  if (name == "dirichlet") return Family::kDirichlet;
  if (name == "drift-perturbed-uniform") return Family::kDriftPerturbedUniform;
  throw std::invalid_argument("unknown distribution family '" + name + "'");
}

DistributionSpec make_deterministic(int d, std::vector<double> probs) {
  DistributionSpec spec;
  spec.family = Family::kDeterministic;
  spec.d = d;
  spec.vectors.push_back(std::move(probs));
  validate_spec(spec);
  return spec;
}

DistributionSpec make_finite_mixture(int d, std::vector<std::vector<double>> vectors,
                                     std::vector<double> weights) {
  DistributionSpec spec;
  spec.family = Family::kFiniteMixture;
  spec.d = d;
  spec.vectors = std::move(vectors);
  spec.weights = std::move(weights);
  validate_spec(spec);
  return spec;
}

DistributionSpec make_dirichlet(int d, std::vector<double> concentration) {
  DistributionSpec spec;
  spec.family = Family::kDirichlet;
  spec.d = d;
  spec.concentration = std::move(concentration);
  validate_spec(spec);
  return spec;
}

DistributionSpec make_drift_perturbed_uniform(int d, std::vector<double> epsilon) {
  DistributionSpec spec;
  spec.family = Family::kDriftPerturbedUniform;
  spec.d = d;
  spec.epsilon = std::move(epsilon);
  validate_spec(spec);
  return spec;
}

void validate_spec(const DistributionSpec& spec) {
  if (spec.d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (spec.d > 16) throw std::invalid_argument("dimension must be <= 16");
  switch (spec.family) {
    case Family::kDeterministic:
      if (spec.vectors.size() != 1)
        throw std::invalid_argument("deterministic spec needs exactly one vector");
      check_probability_vector(spec.vectors[0], spec.d, "deterministic vector");
      break;
    case Family::kFiniteMixture: {
      if (spec.vectors.empty()) throw std::invalid_argument("mixture needs at least one vector");
      if (spec.vectors.size() != spec.weights.size())
        throw std::invalid_argument("mixture has " + std::to_string(spec.vectors.size()) +
                                    " vectors but " + std::to_string(spec.weights.size()) +
                                    " weights");
      for (std::size_t i = 0; i < spec.vectors.size(); ++i)
        check_probability_vector(spec.vectors[i], spec.d,
                                 "mixture component " + std::to_string(i));
      double sum = 0;
      for (double w : spec.weights) {
        if (w < 0) throw std::invalid_argument("negative mixture weight");
        sum += w;
      }
      if (std::abs(sum - 1.0) > kSumTolerance)
        throw std::invalid_argument("mixture weights sum to " + std::to_string(sum));
      break;
    }
    case Family::kDirichlet:
      if (static_cast<int>(spec.concentration.size()) != 2 * spec.d)
        throw std::invalid_argument("dirichlet needs 2d concentration parameters");
      for (double a : spec.concentration)
        if (!(a > 0)) throw std::invalid_argument("dirichlet concentrations must be positive");
      break;
    case Family::kDriftPerturbedUniform: {
      if (static_cast<int>(spec.epsilon.size()) != 2 * spec.d)
        throw std::invalid_argument("perturbation vector needs 2d entries");
      double sum = 0;
      double floor = -1.0 / (2.0 * spec.d);
      for (double e : spec.epsilon) {
        if (e <= floor)
          throw std::invalid_argument("perturbation entry must exceed -1/(2d)");
        sum += e;
      }
      if (std::abs(sum) > kSumTolerance)
        throw std::invalid_argument("perturbation entries must sum to 0");
      break;
    }
  }
}

EllipticityReport validate_strict_ellipticity(const DistributionSpec& spec) {
  EllipticityReport report;
  switch (spec.family) {
    case Family::kDeterministic:
    case Family::kFiniteMixture:
      for (std::size_t c = 0; c < spec.vectors.size(); ++c) {
        if (spec.family == Family::kFiniteMixture && spec.weights[c] == 0.0) continue;
        for (std::size_t j = 0; j < spec.vectors[c].size(); ++j) {
          if (spec.vectors[c][j] <= 0.0) {
            report.holds = false;
            report.witness = "component " + std::to_string(c) + " entry " + std::to_string(j) +
                             " = " + std::to_string(spec.vectors[c][j]);
            return report;
          }
        }
      }
      report.holds = true;
      return report;
    case Family::kDirichlet:
      report.holds = true;  // all entries positive almost surely
      return report;
    case Family::kDriftPerturbedUniform: {
      double uniform = 1.0 / (2.0 * spec.d);
      for (std::size_t j = 0; j < spec.epsilon.size(); ++j) {
        if (uniform + spec.epsilon[j] <= 0.0) {
          report.holds = false;
          report.witness = "entry " + std::to_string(j);
          return report;
        }
      }
      report.holds = true;
      return report;
    }
  }
  return report;
}

}  // namespace rwre
