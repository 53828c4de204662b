#include "rwre/environment.hpp"

#include "rwre/rng.hpp"

namespace rwre {

Environment::Environment(DistributionSpec spec, std::uint64_t master_seed)
    : spec_(std::move(spec)), master_seed_(master_seed) {
  validate_spec(spec_);
  if (spec_.family == Family::kDeterministic) {
    fixed_ = spec_.vectors[0];
  } else if (spec_.family == Family::kDriftPerturbedUniform) {
    fixed_.resize(2 * spec_.d);
    for (std::size_t j = 0; j < fixed_.size(); ++j)
      fixed_[j] = 1.0 / (2.0 * spec_.d) + spec_.epsilon[j];
  }
}

std::uint64_t Environment::site_key(std::span<const std::int64_t> x) const {
  std::uint64_t words[16];
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) words[i] = static_cast<std::uint64_t>(x[i]);
  return rng::derive_key(master_seed_, rng::Domain::kEnvironmentSite,
                         std::span<const std::uint64_t>(words, n));
}

std::vector<double> Environment::site_probs(std::span<const std::int64_t> x) const {
  switch (spec_.family) {
    case Family::kDeterministic:
    case Family::kDriftPerturbedUniform:
      return fixed_;
    case Family::kFiniteMixture: {
      rng::Stream stream(site_key(x));
      double u = stream.next_unit();
      double acc = 0;
      for (std::size_t c = 0; c < spec_.weights.size(); ++c) {
        acc += spec_.weights[c];
        if (u < acc) return spec_.vectors[c];
      }
      return spec_.vectors.back();
    }
    case Family::kDirichlet: {
      rng::Stream stream(site_key(x));
      std::vector<double> p(spec_.concentration.size());
      double sum = 0;
      for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = stream.next_gamma(spec_.concentration[j]);
        sum += p[j];
      }
      if (sum <= 0) {  // vanishing gamma draws; fall back to the mean
        double total = 0;
        for (double a : spec_.concentration) total += a;
        for (std::size_t j = 0; j < p.size(); ++j) p[j] = spec_.concentration[j] / total;
        return p;
      }
      for (double& v : p) v /= sum;
      return p;
    }
  }
  return {};
}

}  // namespace rwre
