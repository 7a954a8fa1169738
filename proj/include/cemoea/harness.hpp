#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cemoea/graph.hpp"
#include "cemoea/landscape.hpp"
#include "cemoea/nsga2.hpp"

namespace cemoea::harness {

// Flat `key = value` settings. Lines starting with `#` and blank lines are
// ignored; a later occurrence of a key replaces an earlier one.
using ConfigMap = std::map<std::string, std::string, std::less<>>;

ConfigMap parse_config(std::istream& in, const std::string& source);
ConfigMap load_config(const std::filesystem::path& path);

/// Copies every entry of `overrides` into `base`.
void merge(ConfigMap& base, const ConfigMap& overrides);

// Keys accepted by each command, in help order.
const std::vector<std::string>& detect_keys();
const std::vector<std::string>& landscape_keys();
const std::vector<std::string>& planted_keys();

struct Dataset {
  std::filesystem::path edges;
  std::filesystem::path attrs;
  AttributeKind kind = AttributeKind::single_real;
  std::optional<std::filesystem::path> truth;
};

struct DetectOptions {
  Dataset data;
  EngineConfig engine;  // engine.seed is the first seed of the campaign
  std::size_t seeds = 31;
  SelectionPolicy policy = SelectionPolicy::max_q;
  std::filesystem::path out = ".";
  bool timing = false;   // wall time is left null unless requested
  bool verbose = false;  // per-generation progress on the log stream
};

/// Throws ValidationError on unknown keys, bad values or missing files.
DetectOptions detect_options(const ConfigMap& cfg);

struct SolutionReport {
  std::size_t index = 0;  // position in the front
  ObjectiveVector objectives;
  double modularity = 0.0;
  double density = 0.0;
  double entropy = 0.0;
  std::size_t communities = 0;
  std::optional<double> nmi;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::size_t generations = 0;
  std::vector<ObjectiveVector> front;  // sorted by f1, then f2
  std::map<std::string, SolutionReport> selected;  // keyed by policy name
  // Extremes of D and E over every front member.
  double front_density_max = 0.0;
  double front_density_min = 0.0;
  double front_entropy_max = 0.0;
  double front_entropy_min = 0.0;
  std::optional<double> wall_seconds;
  Partition partition;  // solution chosen by the campaign policy
};

RunRecord run_seed(const AttributeNetwork& net, const Partition* truth, const DetectOptions& opt,
                   std::uint64_t seed, std::ostream* log = nullptr);

/// Sample statistics; `std` uses n - 1 and is 0 for a single value.
struct Summary {
  double max = 0.0;
  double min = 0.0;
  double avg = 0.0;
  double std = 0.0;
};

Summary summarize(std::span<const double> values);

struct Aggregate {
  std::size_t seeds = 0;
  std::string policy;
  Summary density;
  Summary entropy;
  std::optional<Summary> nmi;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  std::size_t k_mode = 0;  // smallest of the most frequent counts
  // Extremes over all fronts of all seeds.
  double front_density_max = 0.0;
  double front_density_min = 0.0;
  double front_entropy_max = 0.0;
  double front_entropy_min = 0.0;
};

Aggregate aggregate(std::span<const RunRecord> records, const std::string& policy);

struct Campaign {
  std::vector<RunRecord> records;
  Aggregate summary;
};

/// Runs every seed and writes run_<seed>.json, front_<seed>.csv,
/// partition_<seed>.txt, aggregate.json and aggregate.csv under opt.out.
Campaign cmd_detect(const DetectOptions& opt, std::ostream* log = nullptr);

struct LandscapeOptions {
  Dataset data;
  bool discrete = true;
  bool continuous = true;
  bool modularity = true;
  bool attribute = true;
  LandscapeConfig ils;    // objective and space are set per analysis
  bool reference = true;  // add an optimizer front to the best-known set
  EngineConfig engine;
  std::filesystem::path out = ".";
};

LandscapeOptions landscape_options(const ConfigMap& cfg);

/// Writes landscape.csv (one row per analysis) and comparison.csv (one row
/// per objective, discrete columns `_o`, continuous columns `_t`).
std::vector<LandscapeReport> cmd_landscape(const LandscapeOptions& opt,
                                           std::ostream* log = nullptr);

std::string comparison_header();
std::string comparison_row(LandscapeObjective objective,
                           std::span<const LandscapeReport> reports);

struct PlantedOptions {
  std::size_t nodes = 64;
  std::size_t communities = 4;
  double p_in = 0.3;
  double p_out = 0.01;
  double noise = 0.05;
  std::uint64_t seed = 1;
  std::filesystem::path out = ".";

  void validate() const;
};

PlantedOptions planted_options(const ConfigMap& cfg);

struct PlantedNetwork {
  AttributeNetwork net;
  Partition truth;
};

/// Equal blocks of consecutive ids. A node left without edges is joined to
/// a random member of its own block so the node count survives a
/// write/load round trip.
PlantedNetwork gen_planted(const PlantedOptions& opt);

/// Writes edges.txt, attrs.txt and truth.txt under opt.out.
void write_planted(const PlantedNetwork& planted, const std::filesystem::path& out);

// Number formatting shared by the writers.
std::string format_summary(double v);  // 6 significant digits
std::string format_exact(double v);    // 17 significant digits

}  // namespace cemoea::harness
