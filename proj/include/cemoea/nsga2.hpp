#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "cemoea/encoding.hpp"
#include "cemoea/objectives.hpp"
#include "cemoea/rng.hpp"

namespace cemoea {

/// Parameters of the optimizer. Defaults are the published settings.
struct EngineConfig {
  std::size_t population_size = 100;  // N, positive and even
  std::size_t generations = 200;      // T, number of variation/selection cycles
  double de_scale = 0.7;              // F_DE
  double crossover_rate = 0.5;        // CR
  double mutation_prob = 0.02;        // p_m
  double mutation_index = 20.0;       // eta_m
  std::uint64_t seed = 1;
  SimilarityDenominator denominator = SimilarityDenominator::pairs;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

struct Individual {
  Genotype genotype;
  ObjectiveVector objectives;
  std::size_t rank = 0;
  double crowding = 0.0;
};

using Population = std::vector<Individual>;

/// Pareto dominance for minimization: no worse everywhere, better somewhere.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Non-dominated layers as ascending index lists; front 0 is the
/// non-dominated set.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectiveVector> objs);

/// NSGA-II crowding distance of each point of one front. Boundary points of
/// every objective get +infinity; an objective with zero range adds nothing.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Sorts `pop` into fronts and stores rank and crowding on each individual.
/// Returns the fronts as index lists.
std::vector<std::vector<std::size_t>> assign_rank_and_crowding(Population& pop);

/// Winner of one binary tournament between positions `a` and `b`: lower
/// rank, then larger crowding, then `a`.
std::size_t tournament_winner(const Population& pop, std::size_t a, std::size_t b);

/// `count` tournaments with contestants drawn uniformly with replacement.
/// Returns indices into `pop`.
std::vector<std::size_t> binary_tournament(const Population& pop, Rng& rng, std::size_t count);

/// DE/rand/1 with binomial gene-wise mixing, repair to [0,1], polynomial
/// mutation, repair again.
Genotype de_variation(std::span<const double> x1, std::span<const double> x2,
                      std::span<const double> x3, const EngineConfig& cfg, Rng& rng);

/// Polynomial mutation of each gene with probability p_m, within [0,1].
void polynomial_mutation(std::span<double> y, const EngineConfig& cfg, Rng& rng);

/// Per-generation progress record.
struct GenerationRecord {
  std::size_t generation = 0;
  double best_modularity = 0.0;
  std::size_t front_size = 0;
};

struct RunResult {
  Population population;  // generation-T population
  Population front;       // its rank-0 members
  std::vector<GenerationRecord> history;
};

/// Runs the optimizer. When `log` is non-null one progress line per
/// generation is written to it.
RunResult run(const AttributeNetwork& net, const EngineConfig& cfg, std::ostream* log = nullptr);

enum class SelectionPolicy { max_q, max_nmi, knee };

SelectionPolicy parse_policy(std::string_view name);
std::string_view to_string(SelectionPolicy policy);

/// Picks one member of a non-empty front and returns its index.
///  - max_q: smallest f1, then smallest f2, then lowest index.
///  - max_nmi: highest NMI against `truth`, then the max_q order.
///  - knee: largest distance to the line through the two extreme points,
///    then lowest index.
/// Throws ValidationError for max_nmi without truth.
std::size_t select_report_solution(const Population& front, SelectionPolicy policy,
                                   const AttributeNetwork& net, const Partition* truth = nullptr);

}  // namespace cemoea
