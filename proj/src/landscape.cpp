#include "cemoea/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "cemoea/errors.hpp"
#include "cemoea/rng.hpp"

namespace cemoea {

namespace {

// Stream ids keep the random sequences of the sub-tasks independent.
constexpr std::uint64_t kEpsilonSamples = 0xe5;
constexpr std::uint64_t kEpsilonPairs = 0xe6;
constexpr std::uint64_t kIlsStream = 0x15;
constexpr std::uint64_t kFdcStream = 0xfd;

constexpr double kSameOptimum = 1e-9;
constexpr double kBestTolerance = 1e-12;

void fill_uniform(Genotype& x, Rng& rng) {
  for (double& v : x) v = rng.uniform();
}

Genotype epsilon_sample(std::uint64_t seed, std::size_t index, std::size_t dim) {
  Rng rng = Rng::stream(seed, kEpsilonSamples, index);
  Genotype x(dim);
  fill_uniform(x, rng);
  return x;
}

class DiscreteArchive {
 public:
  bool record(const LocusGenotype& g, double fitness, IlsResult<LocusGenotype>& out) {
    if (!seen_.insert(g.selected).second) return false;
    out.optima.push_back({g, fitness});
    return true;
  }

 private:
  std::set<std::vector<NodeId>> seen_;
};

// Optima are indexed by their first coordinate so the 1e-9 proximity test
// only scans a narrow band.
class ContinuousArchive {
 public:
  bool record(const Genotype& x, double fitness, IlsResult<Genotype>& out) {
    const double key = x.empty() ? 0.0 : x.front();
    for (auto it = index_.lower_bound(key - kSameOptimum);
         it != index_.end() && it->first <= key + kSameOptimum; ++it) {
      if (euclidean_distance(out.optima[it->second].point, x) <= kSameOptimum) return false;
    }
    index_.emplace(key, out.optima.size());
    out.optima.push_back({x, fitness});
    return true;
  }

 private:
  std::multimap<double, std::size_t> index_;
};

template <class Point, class Archive, class Fitness, class LocalSearch, class Perturb>
IlsResult<Point> iterate(Point current, const LandscapeConfig& cfg, Archive& archive,
                         Fitness&& fitness, LocalSearch&& local_search, Perturb&& perturb) {
  IlsResult<Point> result;
  auto& c = result.counters;
  double current_f = fitness(current);
  c.moves += local_search(current, current_f);
  ++c.local_optima;
  archive.record(current, current_f, result);

  while (c.local_optima < cfg.local_optima_budget) {
    Point candidate = current;
    perturb(candidate);
    ++c.perturbations;
    ++c.moves;
    double candidate_f = fitness(candidate);
    c.moves += local_search(candidate, candidate_f);
    ++c.local_optima;
    const bool is_new = archive.record(candidate, candidate_f, result);
    const bool accepted = candidate_f <= current_f;
    if (is_new && accepted) ++c.escapes;
    if (accepted) {
      current = std::move(candidate);
      current_f = candidate_f;
    }
  }
  return result;
}

template <class Point, class Distance>
std::optional<double> correlate(const IlsResult<Point>& result, std::span<const Point> extra,
                                std::span<const double> extra_fitness, const LandscapeConfig& cfg,
                                Distance&& distance) {
  if (result.optima.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& o : result.optima) best = std::min(best, o.fitness);
  for (double f : extra_fitness) best = std::min(best, f);

  std::vector<const Point*> reference;
  for (const auto& o : result.optima) {
    if (o.fitness <= best + kBestTolerance) reference.push_back(&o.point);
  }
  for (std::size_t i = 0; i < extra.size(); ++i) {
    if (extra_fitness[i] <= best + kBestTolerance) reference.push_back(&extra[i]);
  }

  std::vector<std::size_t> order(result.optima.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t take = std::min(cfg.fdc_sample, order.size());
  Rng rng = Rng::stream(cfg.seed, kFdcStream);
  for (std::size_t k = 0; k < take; ++k) {
    std::swap(order[k], order[k + rng.index(order.size() - k)]);
  }

  std::vector<double> f(take);
  std::vector<double> d(take);
  for (std::size_t k = 0; k < take; ++k) {
    const auto& o = result.optima[order[k]];
    f[k] = o.fitness;
    d[k] = std::numeric_limits<double>::infinity();
    for (const Point* r : reference) d[k] = std::min(d[k], distance(o.point, *r));
  }
  return fdc(f, d);
}

}  // namespace

LandscapeObjective parse_landscape_objective(std::string_view name) {
  if (name == "Q" || name == "q") return LandscapeObjective::modularity;
  if (name == "attr") return LandscapeObjective::attribute;
  throw ValidationError("unknown landscape objective '" + std::string(name) + "'");
}

SearchSpace parse_search_space(std::string_view name) {
  if (name == "discrete") return SearchSpace::discrete;
  if (name == "continuous") return SearchSpace::continuous;
  throw ValidationError("unknown search space '" + std::string(name) + "'");
}

std::string_view to_string(LandscapeObjective objective) {
  return objective == LandscapeObjective::modularity ? "Q" : "attr";
}

std::string_view to_string(SearchSpace space) {
  return space == SearchSpace::discrete ? "discrete" : "continuous";
}

void LandscapeConfig::validate() const {
  if (local_optima_budget == 0) throw ValidationError("local_optima_budget must be positive");
  if (fdc_sample == 0) throw ValidationError("fdc_sample must be positive");
  if (epsilon_sample < 2) throw ValidationError("epsilon_sample must be at least 2");
  if (epsilon_pairs == 0) throw ValidationError("epsilon_pairs must be positive");
  if (perturb_edges == 0) throw ValidationError("perturb_edges must be positive");
  if (trials_per_step == 0) throw ValidationError("trials_per_step must be positive");
}

LandscapeFitness::LandscapeFitness(const AttributeNetwork& net, LandscapeObjective objective,
                                   SimilarityDenominator denom)
    : evaluator_(net, denom), objective_(objective) {}

double LandscapeFitness::operator()(const Partition& p) const {
  return objective_ == LandscapeObjective::modularity ? -evaluator_.modularity(p)
                                                      : evaluator_.similarity(p);
}

double LandscapeFitness::of_locus(const LocusGenotype& g) const {
  return (*this)(decode(g, evaluator_.network()));
}

double LandscapeFitness::of_genotype(std::span<const double> x) const {
  return (*this)(gnn_decode(x, evaluator_.network()));
}

std::size_t discrete_distance(const LocusGenotype& a, const LocusGenotype& b) {
  if (a.size() != b.size()) throw ValidationError("locus genotypes differ in length");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += a[i] != b[i];
  return count;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double epsilon_midpoint(std::span<const Genotype> samples) {
  if (samples.size() < 2) throw ValidationError("need at least two samples");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const double dist = euclidean_distance(samples[i], samples[j]);
      lo = std::min(lo, dist);
      hi = std::max(hi, dist);
    }
  }
  return 0.5 * (lo + hi);
}

double calibrate_epsilon(const AttributeNetwork& net, const LandscapeConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.epsilon_sample;
  const std::size_t dim = net.slot_count();
  const double all_pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  if (static_cast<double>(cfg.epsilon_pairs) >= all_pairs) {
    std::vector<Genotype> samples(n);
    for (std::size_t i = 0; i < n; ++i) samples[i] = epsilon_sample(cfg.seed, i, dim);
    return epsilon_midpoint(samples);
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  Rng pairs = Rng::stream(cfg.seed, kEpsilonPairs);
  for (std::size_t k = 0; k < cfg.epsilon_pairs; ++k) {
    const std::size_t i = pairs.index(n);
    std::size_t j = pairs.index(n - 1);
    if (j >= i) ++j;
    const double dist =
        euclidean_distance(epsilon_sample(cfg.seed, i, dim), epsilon_sample(cfg.seed, j, dim));
    lo = std::min(lo, dist);
    hi = std::max(hi, dist);
  }
  return 0.5 * (lo + hi);
}

std::size_t discrete_local_search(LocusGenotype& g, double& fitness, const LandscapeFitness& f) {
  std::size_t moves = 0;
  for (;;) {
    double best = fitness;
    std::optional<LocusMove> best_move;
    for_each_locus_neighbor(g, f.network(), [&](const LocusGenotype& h, LocusMove m) {
      const double value = f.of_locus(h);
      if (value < best) {
        best = value;
        best_move = m;
      }
    });
    if (!best_move) return moves;
    g[best_move->node] = best_move->neighbor;
    fitness = best;
    ++moves;
  }
}

IlsResult<LocusGenotype> ils_discrete(const AttributeNetwork& net, const LandscapeConfig& cfg) {
  cfg.validate();
  const LandscapeFitness f(net, cfg.objective, cfg.denominator);
  Rng rng = Rng::stream(cfg.seed, kIlsStream, 0);

  std::vector<NodeId> movable;  // nodes with an alternative neighbor
  for (NodeId i = 0; i < net.node_count(); ++i) {
    if (net.degree(i) >= 2) movable.push_back(i);
  }

  LocusGenotype start;
  start.selected.assign(net.node_count(), EdgeSelection::kNoNeighbor);
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto nbrs = net.neighbors(i);
    if (!nbrs.empty()) start[i] = nbrs[rng.index(nbrs.size())];
  }

  auto perturb = [&](LocusGenotype& g) {
    const std::size_t count = std::min(cfg.perturb_edges, movable.size());
    for (std::size_t k = 0; k < count; ++k) {
      std::swap(movable[k], movable[k + rng.index(movable.size() - k)]);
      const NodeId i = movable[k];
      const auto nbrs = net.neighbors(i);
      NodeId pick = nbrs[rng.index(nbrs.size() - 1)];
      if (pick == g[i]) pick = nbrs.back();
      g[i] = pick;
    }
  };

  DiscreteArchive archive;
  return iterate(
      std::move(start), cfg, archive, [&](const LocusGenotype& g) { return f.of_locus(g); },
      [&](LocusGenotype& g, double& value) { return discrete_local_search(g, value, f); },
      perturb);
}

IlsResult<Genotype> ils_continuous(const AttributeNetwork& net, const LandscapeConfig& cfg,
                                   double epsilon) {
  cfg.validate();
  const LandscapeFitness f(net, cfg.objective, cfg.denominator);
  Rng rng = Rng::stream(cfg.seed, kIlsStream, 1);
  const std::size_t dim = net.slot_count();
  const double inv_dim = dim == 0 ? 1.0 : 1.0 / static_cast<double>(dim);

  Genotype direction(dim);
  auto ball_sample = [&](const Genotype& x) {
    double norm = 0.0;
    for (double& v : direction) {
      v = rng.normal();
      norm += v * v;
    }
    norm = std::sqrt(norm);
    const double radius = epsilon * std::pow(rng.uniform(), inv_dim);
    Genotype y(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      y[i] = std::clamp(x[i] + (norm > 0.0 ? radius * direction[i] / norm : 0.0), 0.0, 1.0);
    }
    return y;
  };

  auto local_search = [&](Genotype& x, double& value) {
    std::size_t moves = 0;
    for (std::size_t failures = 0; failures < cfg.trials_per_step;) {
      Genotype y = ball_sample(x);
      const double fy = f.of_genotype(y);
      if (fy < value) {
        x = std::move(y);
        value = fy;
        ++moves;
        failures = 0;
      } else {
        ++failures;
      }
    }
    return moves;
  };

  // Uniform point farther than epsilon; after a bounded number of attempts
  // the farthest candidate drawn is used.
  auto perturb = [&](Genotype& x) {
    Genotype candidate(dim);
    Genotype farthest;
    double farthest_dist = -1.0;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      fill_uniform(candidate, rng);
      const double dist = euclidean_distance(candidate, x);
      if (dist > epsilon) {
        x = std::move(candidate);
        return;
      }
      if (dist > farthest_dist) {
        farthest_dist = dist;
        farthest = candidate;
      }
    }
    x = std::move(farthest);
  };

  Genotype start(dim);
  fill_uniform(start, rng);
  ContinuousArchive archive;
  return iterate(
      std::move(start), cfg, archive, [&](const Genotype& x) { return f.of_genotype(x); },
      local_search, perturb);
}

double lod(const IlsCounters& c) {
  if (c.moves == 0) throw ValidationError("LOD is undefined without moves");
  return 100.0 * static_cast<double>(c.local_optima) / static_cast<double>(c.moves);
}

double er(const IlsCounters& c) {
  if (c.perturbations == 0) throw ValidationError("ER is undefined without perturbations");
  return static_cast<double>(c.escapes) / static_cast<double>(c.perturbations);
}

std::optional<double> fdc(std::span<const double> fitness, std::span<const double> distance) {
  const std::size_t n = std::min(fitness.size(), distance.size());
  if (n < 2) return std::nullopt;
  const double mf = std::accumulate(fitness.begin(), fitness.begin() + n, 0.0) / n;
  const double md = std::accumulate(distance.begin(), distance.begin() + n, 0.0) / n;
  double cov = 0.0;
  double vf = 0.0;
  double vd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = fitness[i] - mf;
    const double b = distance[i] - md;
    cov += a * b;
    vf += a * a;
    vd += b * b;
  }
  if (vf <= 0.0 || vd <= 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(vf * vd), -1.0, 1.0);
}

std::optional<double> fitness_distance_correlation(const IlsResult<LocusGenotype>& result,
                                                   std::span<const LocusGenotype> extra,
                                                   const LandscapeFitness& f,
                                                   const LandscapeConfig& cfg) {
  std::vector<double> extra_fitness(extra.size());
  for (std::size_t i = 0; i < extra.size(); ++i) extra_fitness[i] = f.of_locus(extra[i]);
  return correlate(result, extra, std::span<const double>(extra_fitness), cfg,
                   [](const LocusGenotype& a, const LocusGenotype& b) {
                     return static_cast<double>(discrete_distance(a, b));
                   });
}

std::optional<double> fitness_distance_correlation(const IlsResult<Genotype>& result,
                                                   std::span<const Genotype> extra,
                                                   const LandscapeFitness& f,
                                                   const LandscapeConfig& cfg) {
  std::vector<double> extra_fitness(extra.size());
  for (std::size_t i = 0; i < extra.size(); ++i) extra_fitness[i] = f.of_genotype(extra[i]);
  return correlate(result, extra, std::span<const double>(extra_fitness), cfg,
                   [](const Genotype& a, const Genotype& b) { return euclidean_distance(a, b); });
}

LandscapeReport analyze_landscape(const AttributeNetwork& net, const LandscapeConfig& cfg,
                                  std::span<const Genotype> reference) {
  cfg.validate();
  const LandscapeFitness f(net, cfg.objective, cfg.denominator);
  LandscapeReport report;
  report.space = cfg.space;
  report.objective = cfg.objective;
  IlsCounters counters;
  if (cfg.space == SearchSpace::discrete) {
    const auto result = ils_discrete(net, cfg);
    std::vector<LocusGenotype> extra;
    extra.reserve(reference.size());
    for (const auto& x : reference) extra.push_back(encode(x, net));
    report.fdc = fitness_distance_correlation(result, extra, f, cfg);
    counters = result.counters;
  } else {
    report.epsilon = calibrate_epsilon(net, cfg);
    const auto result = ils_continuous(net, cfg, report.epsilon);
    report.fdc = fitness_distance_correlation(result, reference, f, cfg);
    counters = result.counters;
  }
  report.lod = lod(counters);
  report.er = counters.perturbations == 0 ? 0.0 : er(counters);
  return report;
}

std::string csv_header() { return "space,objective,lod,er,fdc"; }

std::string to_csv_row(const LandscapeReport& report) {
  std::ostringstream out;
  out << std::setprecision(6) << to_string(report.space) << ',' << to_string(report.objective)
      << ',' << report.lod << ',' << report.er << ',';
  if (report.fdc) {
    out << *report.fdc;
  } else {
    out << "NA";
  }
  return out.str();
}

}  // namespace cemoea
