#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rwre/config.hpp"

namespace rwre {

struct RunOptions {
  std::optional<std::string> out_dir;
  unsigned threads = 0;  // wall-clock only; never changes results
  std::optional<std::uint64_t> seed_override;
  bool quiet = false;
};

// Runs one experiment and writes summary.json, detail CSVs and plot data
// under the output directory. Exit codes: 0 success, 2 insufficient data.
// Config errors throw before any artifact is written.
int run_experiment(ExperimentConfig config, const RunOptions& options);

}  // namespace rwre
