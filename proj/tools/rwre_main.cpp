// Experiment runner. Subcommands mirror the experiment types plus `validate`
// (config lint) and `trace` (dump one trajectory):
//
//   rwre <subcommand> --config PATH [--out-dir PATH] [--threads N]
//        [--seed-override U64]
//
// --threads changes wall-clock time only; artifacts are byte-identical for
// any value.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwre/config.hpp"
#include "rwre/distribution.hpp"
#include "rwre/harness.hpp"
#include "rwre/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_validate(const std::string& config_path) {
  rwre::ExperimentConfig cfg = rwre::parse_config(read_file(config_path));
  rwre::EllipticityReport ell = rwre::validate_strict_ellipticity(cfg.spec);
  std::cout << "config ok: experiment=" << rwre::kind_name(cfg.kind)
            << " d=" << cfg.spec.d << " family=" << rwre::family_name(cfg.spec.family)
            << " master_seed=" << cfg.master_seed << " horizon=" << cfg.horizon
            << " n_walks=" << cfg.n_walks << "\n";
  std::cout << "strict_ellipticity: " << (ell.holds ? "true" : "false");
  if (!ell.holds) std::cout << " (" << ell.witness << ")";
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments for random walks in random environments"};
  app.set_version_flag("--version", std::string(rwre::kToolName) + " " + rwre::kToolVersion);
  app.require_subcommand(1);

  struct SubArgs {
    std::string config_path;
    std::string out_dir;
    unsigned threads = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool out_set = false;
  };

  const std::vector<std::string> kinds = {
      "transience-scan", "cone-survival", "renewal-stats", "identity-check", "decay-check",
      "direction",       "velocity",      "iid-test",      "neighborhood",  "cluster",
      "oneD-compare",    "trace",         "validate"};

  std::vector<std::shared_ptr<SubArgs>> args_store;
  for (const auto& name : kinds) {
    auto sub = app.add_subcommand(name, name == "validate" ? "lint a config file"
                                                           : "run the " + name + " experiment");
    auto args = std::make_shared<SubArgs>();
    args_store.push_back(args);
    sub->add_option("--config", args->config_path, "experiment config file")->required();
    if (name != "validate") {
      sub->add_option("--out-dir", args->out_dir, "output directory")
          ->each([args](const std::string&) { args->out_set = true; });
      sub->add_option("--threads", args->threads, "worker threads (0 = hardware)");
      sub->add_option("--seed-override", args->seed, "replace the config master seed")
          ->each([args](const std::string&) { args->seed_set = true; });
    }
    sub->callback([name, args] {
      if (name == "validate") {
        std::exit(run_validate(args->config_path));
      }
      rwre::ExperimentConfig cfg = rwre::parse_config(read_file(args->config_path));
      rwre::ExperimentKind kind = rwre::kind_from_name(name);
      if (cfg.kind_set && cfg.kind != kind)
        throw rwre::ConfigError(0, "type",
                                "config says '" + rwre::kind_name(cfg.kind) +
                                    "' but subcommand is '" + name + "'");
      cfg.kind = kind;
      rwre::RunOptions options;
      if (args->out_set) options.out_dir = args->out_dir;
      options.threads = args->threads;
      if (args->seed_set) options.seed_override = args->seed;
      std::exit(rwre::run_experiment(std::move(cfg), options));
    });
  }

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const rwre::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
