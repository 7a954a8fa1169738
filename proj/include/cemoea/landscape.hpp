#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cemoea/encoding.hpp"
#include "cemoea/objectives.hpp"

namespace cemoea {

enum class LandscapeObjective { modularity, attribute };
enum class SearchSpace { discrete, continuous };

LandscapeObjective parse_landscape_objective(std::string_view name);  // "Q" | "attr"
SearchSpace parse_search_space(std::string_view name);                // "discrete" | "continuous"
std::string_view to_string(LandscapeObjective objective);
std::string_view to_string(SearchSpace space);

struct LandscapeConfig {
  LandscapeObjective objective = LandscapeObjective::modularity;
  SearchSpace space = SearchSpace::discrete;
  std::size_t local_optima_budget = 10000;
  std::size_t fdc_sample = 1000;
  std::size_t epsilon_sample = 100000;
  std::size_t epsilon_pairs = 1000000;  // streamed pairs used to estimate distance extremes
  std::size_t perturb_edges = 10;
  std::size_t trials_per_step = 50;     // continuous local search budget per step
  std::uint64_t seed = 1;
  SimilarityDenominator denominator = SimilarityDenominator::pairs;

  void validate() const;
};

/// Search statistics of one iterated local search.
///  - local_optima: local searches completed (each ends in a local optimum)
///  - moves: accepted local-search steps plus perturbation jumps
///  - perturbations: perturbations applied
///  - escapes: perturbations whose local search ended in a previously
///    unrecorded optimum that the acceptance rule kept (no worse than the
///    optimum it was perturbed from)
struct IlsCounters {
  std::size_t local_optima = 0;
  std::size_t moves = 0;
  std::size_t perturbations = 0;
  std::size_t escapes = 0;
};

template <class Point>
struct LocalOptimum {
  Point point;
  double fitness = 0.0;
};

/// `optima` holds each distinct local optimum once, in discovery order.
template <class Point>
struct IlsResult {
  IlsCounters counters;
  std::vector<LocalOptimum<Point>> optima;
};

struct LandscapeReport {
  SearchSpace space = SearchSpace::discrete;
  LandscapeObjective objective = LandscapeObjective::modularity;
  double lod = 0.0;
  double er = 0.0;
  std::optional<double> fdc;  // empty when f or d has zero variance
  double epsilon = 0.0;       // continuous space only
};

/// Scalar minimization objective of the landscape: -Q or the attribute
/// similarity.
class LandscapeFitness {
 public:
  LandscapeFitness(const AttributeNetwork& net, LandscapeObjective objective,
                   SimilarityDenominator denom = SimilarityDenominator::pairs);

  double operator()(const Partition& p) const;
  double of_locus(const LocusGenotype& g) const;
  double of_genotype(std::span<const double> x) const;
  const AttributeNetwork& network() const { return evaluator_.network(); }

 private:
  Evaluator evaluator_;
  LandscapeObjective objective_;
};

/// Number of nodes whose selected neighbor differs. Throws on a length
/// mismatch.
std::size_t discrete_distance(const LocusGenotype& a, const LocusGenotype& b);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// (d_min + d_max) / 2 over all pairs of distinct samples.
double epsilon_midpoint(std::span<const Genotype> samples);

/// Draws `epsilon_sample` uniform genotypes in [0,1]^d and returns the
/// midpoint of the smallest and largest pairwise distance over
/// `epsilon_pairs` random pairs (every pair when that is fewer). Samples are
/// regenerated from counter-keyed streams instead of being stored.
double calibrate_epsilon(const AttributeNetwork& net, const LandscapeConfig& cfg);

/// Steepest-descent over the distance-one locus neighborhood. Returns the
/// number of accepted moves; `g` and `fitness` end at a local optimum.
std::size_t discrete_local_search(LocusGenotype& g, double& fitness, const LandscapeFitness& f);

/// Iterated local search over locus genotypes. Perturbation re-selects the
/// neighbor of `perturb_edges` random nodes that have an alternative.
IlsResult<LocusGenotype> ils_discrete(const AttributeNetwork& net, const LandscapeConfig& cfg);

/// Iterated local search over [0,1]^d. Local search samples up to
/// `trials_per_step` points of the epsilon-ball per step and takes the first
/// strict improvement; perturbation jumps to a uniform point farther than
/// epsilon.
IlsResult<Genotype> ils_continuous(const AttributeNetwork& net, const LandscapeConfig& cfg,
                                   double epsilon);

/// Local optima per 100 moves. Throws when no move was made.
double lod(const IlsCounters& c);

/// Fraction of perturbations that escaped. Throws when there were none.
double er(const IlsCounters& c);

/// Pearson correlation of fitness and distance; empty on zero variance or
/// fewer than two points.
std::optional<double> fdc(std::span<const double> fitness, std::span<const double> distance);

/// Samples up to `cfg.fdc_sample` distinct optima and correlates their
/// fitness with the distance to the nearest best-known solution. The
/// best-known set is every optimum or extra candidate whose fitness is
/// within 1e-12 of the lowest seen.
std::optional<double> fitness_distance_correlation(const IlsResult<LocusGenotype>& result,
                                                   std::span<const LocusGenotype> extra,
                                                   const LandscapeFitness& f,
                                                   const LandscapeConfig& cfg);
std::optional<double> fitness_distance_correlation(const IlsResult<Genotype>& result,
                                                   std::span<const Genotype> extra,
                                                   const LandscapeFitness& f,
                                                   const LandscapeConfig& cfg);

/// Full analysis for one (space, objective) pair. `reference` holds extra
/// best-known candidates in continuous form (e.g. an optimizer's front);
/// discrete analysis maps them through encode().
LandscapeReport analyze_landscape(const AttributeNetwork& net, const LandscapeConfig& cfg,
                                  std::span<const Genotype> reference = {});

/// `space,objective,lod,er,fdc` with 6 significant digits; missing FDC is
/// written as `NA`.
std::string csv_header();
std::string to_csv_row(const LandscapeReport& report);

}  // namespace cemoea
