#include "rwre/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace rwre {

OneDVerdict oneD_classify(const DistributionSpec& spec) {
  if (spec.d != 1) throw std::invalid_argument("oneD_classify: spec must be one-dimensional");
  if (spec.family == Family::kDirichlet)
    throw std::invalid_argument("oneD_classify: dirichlet family unsupported (no closed form)");

  std::vector<std::pair<double, double>> support;  // (weight, p_plus)
  switch (spec.family) {
    case Family::kDeterministic:
      support.emplace_back(1.0, spec.vectors[0][0]);
      break;
    case Family::kFiniteMixture:
      for (std::size_t c = 0; c < spec.vectors.size(); ++c)
        support.emplace_back(spec.weights[c], spec.vectors[c][0]);
      break;
    case Family::kDriftPerturbedUniform:
      support.emplace_back(1.0, 0.5 + spec.epsilon[0]);
      break;
    case Family::kDirichlet:
      break;
  }

  OneDVerdict v;
  for (auto [w, p] : support) {
    if (p <= 0.0 || p >= 1.0)
      throw std::invalid_argument("oneD_classify: spec must be strictly elliptic");
    double rho = (1.0 - p) / p;
    v.e_log_rho += w * std::log(rho);
    v.e_rho += w * rho;
    v.e_inv_rho += w / rho;
  }

  constexpr double kTol = 1e-12;
  if (v.e_log_rho < -kTol) {
    v.classification = OneDClass::kTransientPlus;
    v.speed = v.e_rho < 1.0 ? (1.0 - v.e_rho) / (1.0 + v.e_rho) : 0.0;
  } else if (v.e_log_rho > kTol) {
    v.classification = OneDClass::kTransientMinus;
    v.speed = v.e_inv_rho < 1.0 ? -(1.0 - v.e_inv_rho) / (1.0 + v.e_inv_rho) : 0.0;
  } else {
    v.classification = OneDClass::kRecurrent;
    v.speed = 0.0;
  }
  return v;
}

HomogeneousOracle homogeneous_oracle(const std::vector<double>& probs, int d) {
  if (static_cast<int>(probs.size()) != 2 * d)
    throw std::invalid_argument("homogeneous_oracle: expected 2d probabilities");
  HomogeneousOracle out;
  out.drift.assign(d, 0.0);
  for (int axis = 0; axis < d; ++axis)
    out.drift[axis] = probs[2 * axis] - probs[2 * axis + 1];
  double norm = 0;
  for (double v : out.drift) norm += v * v;
  norm = std::sqrt(norm);
  if (norm > 0) {
    std::vector<double> dir(out.drift);
    for (double& v : dir) v /= norm;
    out.direction = std::move(dir);
  }
  return out;
}

}  // namespace rwre
