#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rwre/distribution.hpp"
#include "rwre/rational.hpp"

namespace rwre {

enum class ExperimentKind {
  kTransienceScan,
  kConeSurvival,
  kRenewalStats,
  kIdentityCheck,
  kDecayCheck,
  kDirection,
  kVelocity,
  kIidTest,
  kNeighborhood,
  kCluster,
  kOneDCompare,
  kTrace,
};

std::string kind_name(ExperimentKind kind);
ExperimentKind kind_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
  ConfigError(int line, std::string key, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line) + " [" + key + "]: " + message),
        line(line),
        key(std::move(key)) {}
  int line;
  std::string key;
};

// Parsed experiment description. The config text is sectioned key = value
// lines; vectors are comma-separated numbers and rational entries like 3/2
// are kept exact.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kTransienceScan;
  bool kind_set = false;

  std::uint64_t master_seed = 1;
  std::int64_t horizon = 10000;
  std::int64_t n_walks = 1000;
  std::int64_t confirm_window = 1000;
  std::vector<Rat64> ell;
  Rat64 alpha{1, 2};
  std::vector<std::int64_t> checkpoints;

  int k_max = 5;

  std::string mode = "cap";  // neighborhood: cap | halfcircle
  double radius_deg = 30.0;
  int grid_count = 13;
  double min_dot = -2.0;  // halfcircle default: 0.2
  bool min_dot_set = false;

  double threshold_exponent = 0.75;
  double level_fraction = 0.5;
  double verdict_threshold = 0.9;

  double cluster_threshold_deg = 20.0;
  double antipodal_tol_deg = 5.0;
  double major_mass_fraction = 0.10;

  double exit_exponent = 0.4;    // oneD-compare interval size h^gamma
  double exit_fraction = 0.8;    // oneD-compare verdict threshold

  std::vector<std::int64_t> start;  // trace
  std::int64_t walk_index = 0;      // trace

  DistributionSpec spec;
  bool spec_set = false;

  std::string out_dir = "out";

  // Raw "section.key = value" pairs in parse order, echoed into artifacts.
  std::vector<std::pair<std::string, std::string>> echo;
};

// Parses and validates; throws ConfigError naming the offending line/key.
ExperimentConfig parse_config(const std::string& text);

// Re-validates cross-field constraints (also called by parse_config).
void validate_config(const ExperimentConfig& config);

}  // namespace rwre
