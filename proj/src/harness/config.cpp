#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cemoea/errors.hpp"
#include "cemoea/harness.hpp"

namespace cemoea::harness {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

void check_keys(const ConfigMap& cfg, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : cfg) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError("unknown setting '" + key + "'");
    }
  }
}

const std::string* find(const ConfigMap& cfg, std::string_view key) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? nullptr : &it->second;
}

[[noreturn]] void bad_value(std::string_view key, const std::string& value) {
  throw ValidationError("setting '" + std::string(key) + "': invalid value '" + value + "'");
}

template <class T>
void read_number(const ConfigMap& cfg, std::string_view key, T& target) {
  const std::string* value = find(cfg, key);
  if (value == nullptr) return;
  T parsed{};
  const char* end = value->data() + value->size();
  const auto [ptr, ec] = std::from_chars(value->data(), end, parsed);
  if (ec != std::errc() || ptr != end) bad_value(key, *value);
  target = parsed;
}

void read_flag(const ConfigMap& cfg, std::string_view key, bool& target) {
  const std::string* value = find(cfg, key);
  if (value == nullptr) return;
  if (*value == "true" || *value == "1" || value->empty()) {
    target = true;
  } else if (*value == "false" || *value == "0") {
    target = false;
  } else {
    bad_value(key, *value);
  }
}

std::filesystem::path required_file(const ConfigMap& cfg, std::string_view key) {
  const std::string* value = find(cfg, key);
  if (value == nullptr || value->empty()) {
    throw ValidationError("missing required setting '" + std::string(key) + "'");
  }
  std::filesystem::path path(*value);
  if (!std::filesystem::is_regular_file(path)) {
    throw ValidationError("setting '" + std::string(key) + "': no such file " + path.string());
  }
  return path;
}

Dataset read_dataset(const ConfigMap& cfg) {
  Dataset data;
  data.edges = required_file(cfg, "edges");
  data.attrs = required_file(cfg, "attrs");
  if (const std::string* kind = find(cfg, "kind")) {
    if (*kind == "single") {
      data.kind = AttributeKind::single_real;
    } else if (*kind == "multi") {
      data.kind = AttributeKind::multi_binary;
    } else {
      bad_value("kind", *kind);
    }
  }
  if (find(cfg, "truth") != nullptr) data.truth = required_file(cfg, "truth");
  return data;
}

void read_engine(const ConfigMap& cfg, EngineConfig& engine) {
  read_number(cfg, "population_size", engine.population_size);
  read_number(cfg, "generations", engine.generations);
  read_number(cfg, "de_scale", engine.de_scale);
  read_number(cfg, "crossover_rate", engine.crossover_rate);
  read_number(cfg, "mutation_prob", engine.mutation_prob);
  read_number(cfg, "mutation_index", engine.mutation_index);
  read_number(cfg, "seed", engine.seed);
  if (const std::string* d = find(cfg, "denominator")) engine.denominator = parse_denominator(*d);
  engine.validate();
}

std::filesystem::path read_out(const ConfigMap& cfg) {
  const std::string* out = find(cfg, "out");
  return out == nullptr ? std::filesystem::path(".") : std::filesystem::path(*out);
}

const std::vector<std::string> kEngineKeys = {
    "population_size", "generations",    "de_scale", "crossover_rate",
    "mutation_prob",   "mutation_index", "seed",     "denominator"};

std::vector<std::string> with_engine(std::vector<std::string> keys) {
  keys.insert(keys.end(), kEngineKeys.begin(), kEngineKeys.end());
  return keys;
}

}  // namespace

ConfigMap parse_config(std::istream& in, const std::string& source) {
  ConfigMap cfg;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const std::string text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(std::string_view(text).substr(0, eq));
    if (key.empty()) throw ParseError(source + ":" + std::to_string(line_no) + ": empty key");
    cfg[std::move(key)] = trim(std::string_view(text).substr(eq + 1));
  }
  return cfg;
}

ConfigMap load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  return parse_config(in, path.string());
}

void merge(ConfigMap& base, const ConfigMap& overrides) {
  for (const auto& [key, value] : overrides) base[key] = value;
}

const std::vector<std::string>& detect_keys() {
  static const std::vector<std::string> keys = with_engine(
      {"edges", "attrs", "kind", "truth", "seeds", "policy", "out", "timing", "verbose"});
  return keys;
}

const std::vector<std::string>& landscape_keys() {
  static const std::vector<std::string> keys = with_engine(
      {"edges", "attrs", "kind", "space", "objective", "out", "budget", "fdc_sample",
       "epsilon_sample", "epsilon_pairs", "perturb_edges", "trials_per_step", "reference"});
  return keys;
}

const std::vector<std::string>& planted_keys() {
  static const std::vector<std::string> keys = {"nodes", "comms", "pin", "pout",
                                                "noise", "seed",  "out"};
  return keys;
}

DetectOptions detect_options(const ConfigMap& cfg) {
  check_keys(cfg, detect_keys());
  DetectOptions opt;
  opt.data = read_dataset(cfg);
  read_engine(cfg, opt.engine);
  read_number(cfg, "seeds", opt.seeds);
  if (opt.seeds == 0) throw ValidationError("seeds must be positive");
  if (const std::string* p = find(cfg, "policy")) opt.policy = parse_policy(*p);
  if (opt.policy == SelectionPolicy::max_nmi && !opt.data.truth) {
    throw ValidationError("policy max_nmi needs a truth file");
  }
  opt.out = read_out(cfg);
  read_flag(cfg, "timing", opt.timing);
  read_flag(cfg, "verbose", opt.verbose);
  return opt;
}

LandscapeOptions landscape_options(const ConfigMap& cfg) {
  check_keys(cfg, landscape_keys());
  LandscapeOptions opt;
  opt.data = read_dataset(cfg);
  read_engine(cfg, opt.engine);
  opt.ils.seed = opt.engine.seed;
  opt.ils.denominator = opt.engine.denominator;
  if (const std::string* space = find(cfg, "space")) {
    if (*space == "both") {
      opt.discrete = opt.continuous = true;
    } else {
      const bool discrete = parse_search_space(*space) == SearchSpace::discrete;
      opt.discrete = discrete;
      opt.continuous = !discrete;
    }
  }
  if (const std::string* objective = find(cfg, "objective")) {
    if (*objective == "both") {
      opt.modularity = opt.attribute = true;
    } else {
      const bool q = parse_landscape_objective(*objective) == LandscapeObjective::modularity;
      opt.modularity = q;
      opt.attribute = !q;
    }
  }
  read_number(cfg, "budget", opt.ils.local_optima_budget);
  read_number(cfg, "fdc_sample", opt.ils.fdc_sample);
  read_number(cfg, "epsilon_sample", opt.ils.epsilon_sample);
  read_number(cfg, "epsilon_pairs", opt.ils.epsilon_pairs);
  read_number(cfg, "perturb_edges", opt.ils.perturb_edges);
  read_number(cfg, "trials_per_step", opt.ils.trials_per_step);
  opt.ils.validate();
  read_flag(cfg, "reference", opt.reference);
  opt.out = read_out(cfg);
  return opt;
}

PlantedOptions planted_options(const ConfigMap& cfg) {
  check_keys(cfg, planted_keys());
  PlantedOptions opt;
  read_number(cfg, "nodes", opt.nodes);
  read_number(cfg, "comms", opt.communities);
  read_number(cfg, "pin", opt.p_in);
  read_number(cfg, "pout", opt.p_out);
  read_number(cfg, "noise", opt.noise);
  read_number(cfg, "seed", opt.seed);
  opt.out = read_out(cfg);
  opt.validate();
  return opt;
}

std::string format_summary(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::string format_exact(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace cemoea::harness
