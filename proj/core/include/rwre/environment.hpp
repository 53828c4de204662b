#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwre/distribution.hpp"

namespace rwre {

// A quenched environment on Z^d, realized lazily: the transition vector at a
// site is a pure function of (spec, master_seed, site), drawn from the site
// law through a keyed counter-based stream. Nothing is stored, so revisits
// and concurrent readers always observe identical vectors.
class Environment {
 public:
  Environment(DistributionSpec spec, std::uint64_t master_seed);

  const DistributionSpec& spec() const { return spec_; }
  std::uint64_t master_seed() const { return master_seed_; }
  int d() const { return spec_.d; }

  // Stream key for a site; coordinates fold in fixed order.
  std::uint64_t site_key(std::span<const std::int64_t> x) const;

  // Transition vector at site x, direction order (+e1,-e1,...,+ed,-ed).
  std::vector<double> site_probs(std::span<const std::int64_t> x) const;

 private:
  DistributionSpec spec_;
  std::uint64_t master_seed_ = 0;
  std::vector<double> fixed_;  // precomputed vector for site-constant families
};

}  // namespace rwre
