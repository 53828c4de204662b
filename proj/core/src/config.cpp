#include "rwre/config.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace rwre {

std::string kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kTransienceScan: return "transience-scan";
    case ExperimentKind::kConeSurvival: return "cone-survival";
    case ExperimentKind::kRenewalStats: return "renewal-stats";
    case ExperimentKind::kIdentityCheck: return "identity-check";
    case ExperimentKind::kDecayCheck: return "decay-check";
    case ExperimentKind::kDirection: return "direction";
    case ExperimentKind::kVelocity: return "velocity";
    case ExperimentKind::kIidTest: return "iid-test";
    case ExperimentKind::kNeighborhood: return "neighborhood";
    case ExperimentKind::kCluster: return "cluster";
    case ExperimentKind::kOneDCompare: return "oneD-compare";
    case ExperimentKind::kTrace: return "trace";
  }
  return "?";
}

ExperimentKind kind_from_name(const std::string& name) {
  static const std::map<std::string, ExperimentKind> kMap = {
      {"transience-scan", ExperimentKind::kTransienceScan},
      {"cone-survival", ExperimentKind::kConeSurvival},
      {"renewal-stats", ExperimentKind::kRenewalStats},
      {"identity-check", ExperimentKind::kIdentityCheck},
      {"decay-check", ExperimentKind::kDecayCheck},
      {"direction", ExperimentKind::kDirection},
      {"velocity", ExperimentKind::kVelocity},
      {"iid-test", ExperimentKind::kIidTest},
      {"neighborhood", ExperimentKind::kNeighborhood},
      {"cluster", ExperimentKind::kCluster},
      {"oneD-compare", ExperimentKind::kOneDCompare},
      {"trace", ExperimentKind::kTrace},
  };
  auto it = kMap.find(name);
  if (it == kMap.end()) throw std::invalid_argument("unknown experiment '" + name + "'");
  return it->second;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

struct Parser {
  ExperimentConfig cfg;
  int line_no = 0;
  std::string section;

  // mixture components keyed by their index
  std::map<int, std::vector<double>> mixture_vectors;
  std::string family_name_raw;
  int dist_d = 0;
  std::vector<double> probs, weights, concentration, epsilon;
  int dist_line = 0;

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(line_no, key, msg);
  }

  double parse_double(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      double d = std::stod(v, &pos);
      if (pos != v.size()) fail(key, "malformed number '" + v + "'");
      return d;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail(key, "malformed number '" + v + "'");
    }
  }

  std::int64_t parse_int(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      long long d = std::stoll(v, &pos);
      if (pos != v.size()) fail(key, "malformed integer '" + v + "'");
      return d;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail(key, "malformed integer '" + v + "'");
    }
  }

  std::uint64_t parse_u64(const std::string& key, const std::string& v) const {
    try {
      std::size_t pos = 0;
      unsigned long long d = std::stoull(v, &pos);
      if (pos != v.size()) fail(key, "malformed seed '" + v + "'");
      return d;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail(key, "malformed seed '" + v + "'");
    }
  }

  std::vector<double> parse_double_vec(const std::string& key, const std::string& v) const {
    std::vector<double> out;
    for (const auto& part : split_commas(v)) out.push_back(parse_double(key, part));
    return out;
  }

  std::vector<std::int64_t> parse_int_vec(const std::string& key, const std::string& v) const {
    std::vector<std::int64_t> out;
    for (const auto& part : split_commas(v)) out.push_back(parse_int(key, part));
    return out;
  }

  std::vector<Rat64> parse_rat_vec(const std::string& key, const std::string& v) const {
    std::vector<Rat64> out;
    for (const auto& part : split_commas(v)) {
      try {
        out.push_back(parse_rational(part));
      } catch (const std::exception& e) {
        fail(key, std::string("malformed vector entry '") + part + "': " + e.what());
      }
    }
    return out;
  }

  void handle_experiment_key(const std::string& key, const std::string& value) {
    if (key == "type") {
      try {
        cfg.kind = kind_from_name(value);
        cfg.kind_set = true;
      } catch (const std::exception& e) {
        fail(key, e.what());
      }
    } else if (key == "master_seed") {
      cfg.master_seed = parse_u64(key, value);
    } else if (key == "horizon") {
      cfg.horizon = parse_int(key, value);
    } else if (key == "n_walks") {
      cfg.n_walks = parse_int(key, value);
    } else if (key == "confirm_window" || key == "W") {
      cfg.confirm_window = parse_int(key, value);
    } else if (key == "ell") {
      cfg.ell = parse_rat_vec(key, value);
    } else if (key == "alpha") {
      try {
        cfg.alpha = parse_rational(value);
      } catch (const std::exception& e) {
        fail(key, e.what());
      }
    } else if (key == "checkpoints") {
      cfg.checkpoints = parse_int_vec(key, value);
    } else if (key == "k_max") {
      cfg.k_max = static_cast<int>(parse_int(key, value));
    } else if (key == "mode") {
      if (value != "cap" && value != "halfcircle") fail(key, "mode must be cap or halfcircle");
      cfg.mode = value;
    } else if (key == "radius_deg") {
      cfg.radius_deg = parse_double(key, value);
    } else if (key == "grid_count") {
      cfg.grid_count = static_cast<int>(parse_int(key, value));
    } else if (key == "min_dot") {
      cfg.min_dot = parse_double(key, value);
      cfg.min_dot_set = true;
    } else if (key == "threshold_exponent") {
      cfg.threshold_exponent = parse_double(key, value);
    } else if (key == "level_fraction") {
      cfg.level_fraction = parse_double(key, value);
    } else if (key == "verdict_threshold") {
      cfg.verdict_threshold = parse_double(key, value);
    } else if (key == "cluster_threshold_deg") {
      cfg.cluster_threshold_deg = parse_double(key, value);
    } else if (key == "antipodal_tol_deg") {
      cfg.antipodal_tol_deg = parse_double(key, value);
    } else if (key == "major_mass_fraction") {
      cfg.major_mass_fraction = parse_double(key, value);
    } else if (key == "exit_exponent") {
      cfg.exit_exponent = parse_double(key, value);
    } else if (key == "exit_fraction") {
      cfg.exit_fraction = parse_double(key, value);
    } else if (key == "start") {
      cfg.start = parse_int_vec(key, value);
    } else if (key == "walk_index") {
      cfg.walk_index = parse_int(key, value);
    } else {
      fail(key, "unknown key in [experiment]");
    }
  }

  void handle_distribution_key(const std::string& key, const std::string& value) {
    dist_line = line_no;
    if (key == "family") {
      family_name_raw = value;
    } else if (key == "d") {
      dist_d = static_cast<int>(parse_int(key, value));
    } else if (key == "probs") {
      probs = parse_double_vec(key, value);
    } else if (key == "weights") {
      weights = parse_double_vec(key, value);
    } else if (key == "concentration") {
      concentration = parse_double_vec(key, value);
    } else if (key == "epsilon") {
      epsilon = parse_double_vec(key, value);
    } else if (key.rfind("vector_", 0) == 0) {
      int idx = static_cast<int>(parse_int(key, key.substr(7)));
      mixture_vectors[idx] = parse_double_vec(key, value);
    } else {
      fail(key, "unknown key in [distribution]");
    }
  }

  void handle_output_key(const std::string& key, const std::string& value) {
    if (key == "out_dir") {
      cfg.out_dir = value;
    } else {
      fail(key, "unknown key in [output]");
    }
  }

  void finish_distribution() {
    if (family_name_raw.empty()) return;
    cfg.spec_set = true;
    Family family;
    try {
      family = family_from_name(family_name_raw);
    } catch (const std::exception& e) {
      throw ConfigError(dist_line, "family", e.what());
    }
    try {
      switch (family) {
        case Family::kDeterministic:
          cfg.spec = make_deterministic(dist_d, probs);
          break;
        case Family::kFiniteMixture: {
          std::vector<std::vector<double>> vecs;
          for (auto& [idx, v] : mixture_vectors) vecs.push_back(v);
          cfg.spec = make_finite_mixture(dist_d, std::move(vecs), weights);
          break;
        }
        case Family::kDirichlet:
          cfg.spec = make_dirichlet(dist_d, concentration);
          break;
        case Family::kDriftPerturbedUniform:
          cfg.spec = make_drift_perturbed_uniform(dist_d, epsilon);
          break;
      }
    } catch (const std::exception& e) {
      throw ConfigError(dist_line, "distribution", e.what());
    }
  }
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  Parser parser;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++parser.line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parser.fail("", "unterminated section header");
      parser.section = trim(line.substr(1, line.size() - 2));
      if (parser.section != "experiment" && parser.section != "distribution" &&
          parser.section != "output")
        parser.fail(parser.section, "unknown section");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) parser.fail("", "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parser.fail("", "empty key");
    if (parser.section.empty()) parser.fail(key, "key outside any section");
    parser.cfg.echo.emplace_back(parser.section + "." + key, value);
    if (parser.section == "experiment") {
      parser.handle_experiment_key(key, value);
    } else if (parser.section == "distribution") {
      parser.handle_distribution_key(key, value);
    } else {
      parser.handle_output_key(key, value);
    }
  }
  parser.finish_distribution();
  validate_config(parser.cfg);
  return parser.cfg;
}

void validate_config(const ExperimentConfig& config) {
  auto fail = [](const std::string& key, const std::string& msg) {
    throw ConfigError(0, key, msg);
  };
  if (config.horizon < 1) fail("horizon", "must be >= 1");
  if (config.n_walks < 1) fail("n_walks", "must be >= 1");
  if (config.confirm_window < 1) fail("confirm_window", "must be >= 1");
  if (config.alpha.num <= 0) fail("alpha", "must be positive");
  if (config.k_max < 3) fail("k_max", "must be >= 3");

  const bool needs_spec = true;
  if (needs_spec && !config.spec_set) fail("distribution", "missing [distribution] section");

  const bool needs_ell =
      config.kind != ExperimentKind::kCluster && config.kind != ExperimentKind::kTrace;
  if (needs_ell) {
    std::vector<Rat64> ell = config.ell;
    if (ell.empty() && config.spec.d == 1) ell.assign(1, Rat64(1));
    if (ell.empty()) fail("ell", "missing direction");
    if (static_cast<int>(ell.size()) != config.spec.d)
      fail("ell", "direction has " + std::to_string(ell.size()) + " entries but d = " +
                      std::to_string(config.spec.d));
    bool nonzero = false;
    for (const auto& r : ell) nonzero |= !r.is_zero();
    if (!nonzero) fail("ell", "must be nonzero");
  }

  for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
    if (config.checkpoints[i] < 0 || config.checkpoints[i] > config.horizon)
      fail("checkpoints", "entries must lie in [0, horizon]");
    if (i > 0 && config.checkpoints[i] <= config.checkpoints[i - 1])
      fail("checkpoints", "entries must be increasing");
  }

  switch (config.kind) {
    case ExperimentKind::kTransienceScan:
    case ExperimentKind::kNeighborhood:
      if (config.horizon < 16) fail("horizon", "transience classifier needs horizon >= 16");
      break;
    case ExperimentKind::kOneDCompare:
      if (config.spec.d != 1) fail("distribution", "oneD-compare needs d = 1");
      if (config.spec.family == Family::kDirichlet)
        fail("distribution", "oneD-compare has no dirichlet oracle");
      break;
    case ExperimentKind::kRenewalStats:
    case ExperimentKind::kIdentityCheck:
    case ExperimentKind::kDecayCheck:
    case ExperimentKind::kDirection:
    case ExperimentKind::kVelocity:
    case ExperimentKind::kIidTest:
      if (config.horizon < config.confirm_window)
        fail("horizon", "must be >= confirm_window for renewal scans");
      break;
    case ExperimentKind::kTrace:
      if (!config.start.empty() && static_cast<int>(config.start.size()) != config.spec.d)
        fail("start", "start site dimension mismatch");
      break;
    default:
      break;
  }
}

}  // namespace rwre
