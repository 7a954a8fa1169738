#include "cemoea/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "cemoea/errors.hpp"
#include "cemoea/metrics.hpp"

namespace cemoea {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// rand() of the variation operator: uniform on the open interval (0, 1).
double open_uniform(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void EngineConfig::validate() const {
  if (population_size == 0 || population_size % 2 != 0) {
    throw ValidationError("population_size must be a positive even integer");
  }
  if (generations == 0) throw ValidationError("generations must be positive");
  if (!(de_scale > 0.0)) throw ValidationError("de_scale must be positive");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw ValidationError("crossover_rate must lie in [0, 1]");
  }
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) {
    throw ValidationError("mutation_prob must lie in [0, 1]");
  }
  if (!(mutation_index > 0.0)) throw ValidationError("mutation_index must be positive");
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<const ObjectiveVector> objs) {
  const std::size_t n = objs.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> dominators(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(objs[p], objs[q])) {
        dominated[p].push_back(q);
        ++dominators[q];
      } else if (dominates(objs[q], objs[p])) {
        dominated[q].push_back(p);
        ++dominators[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (dominators[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      for (std::size_t q : dominated[p]) {
        if (--dominators[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), kInf);
    return distance;
  }
  std::vector<std::size_t> order(n);
  for (auto objective : {&ObjectiveVector::f1, &ObjectiveVector::f2}) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return front[a].*objective < front[b].*objective;
    });
    const double lo = front[order.front()].*objective;
    const double hi = front[order.back()].*objective;
    distance[order.front()] = kInf;
    distance[order.back()] = kInf;
    if (hi == lo) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += (front[order[k + 1]].*objective - front[order[k - 1]].*objective) / (hi - lo);
    }
  }
  return distance;
}

std::vector<std::vector<std::size_t>> assign_rank_and_crowding(Population& pop) {
  std::vector<ObjectiveVector> objs(pop.size());
  std::transform(pop.begin(), pop.end(), objs.begin(),
                 [](const Individual& ind) { return ind.objectives; });
  auto fronts = fast_nondominated_sort(objs);
  std::vector<ObjectiveVector> front_objs;
  for (std::size_t rank = 0; rank < fronts.size(); ++rank) {
    const auto& members = fronts[rank];
    front_objs.clear();
    for (std::size_t i : members) front_objs.push_back(objs[i]);
    const auto crowding = crowding_distance(front_objs);
    for (std::size_t k = 0; k < members.size(); ++k) {
      pop[members[k]].rank = rank;
      pop[members[k]].crowding = crowding[k];
    }
  }
  return fronts;
}

std::size_t tournament_winner(const Population& pop, std::size_t a, std::size_t b) {
  if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
  if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
  return a;
}

std::vector<std::size_t> binary_tournament(const Population& pop, Rng& rng, std::size_t count) {
  std::vector<std::size_t> winners(count);
  for (auto& w : winners) {
    const std::size_t a = rng.index(pop.size());
    const std::size_t b = rng.index(pop.size());
    w = tournament_winner(pop, a, b);
  }
  return winners;
}

void polynomial_mutation(std::span<double> y, const EngineConfig& cfg, Rng& rng) {
  // Variable bounds are [a, b] = [0, 1], so (b - y)/(b - a) = 1 - y.
  const double eta = cfg.mutation_index;
  for (double& v : y) {
    if (!(open_uniform(rng) < cfg.mutation_prob)) continue;
    const double u = rng.uniform();
    double delta;
    if (u < 0.5) {
      delta = std::pow(2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - v, eta), 1.0 / eta) - 1.0;
    } else {
      delta = 1.0 - std::pow(2.0 - 2.0 * u + (2.0 * u - 1.0) * std::pow(v, eta), 1.0 / eta);
    }
    v = clamp01(v + delta);
  }
}

Genotype de_variation(std::span<const double> x1, std::span<const double> x2,
                      std::span<const double> x3, const EngineConfig& cfg, Rng& rng) {
  Genotype y(x1.begin(), x1.end());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (open_uniform(rng) <= cfg.crossover_rate) y[i] = x1[i] + cfg.de_scale * (x2[i] - x3[i]);
    y[i] = clamp01(y[i]);
  }
  polynomial_mutation(y, cfg, rng);
  return y;
}

namespace {

// Draws pool positions for the two difference parents of position `j`.
// Prefers positions holding individuals different from x1 and from each
// other; falls back to any other position when the pool lacks three
// distinct individuals.
std::pair<std::size_t, std::size_t> pick_difference_parents(const std::vector<std::size_t>& pool,
                                                            std::size_t j, bool distinct_ok,
                                                            Rng& rng) {
  const std::size_t n = pool.size();
  auto draw_other = [&](auto&& accept) {
    for (;;) {
      const std::size_t k = rng.index(n);
      if (k != j && accept(k)) return k;
    }
  };
  if (!distinct_ok) {
    return {draw_other([](std::size_t) { return true; }),
            draw_other([](std::size_t) { return true; })};
  }
  const std::size_t a = draw_other([&](std::size_t k) { return pool[k] != pool[j]; });
  const std::size_t b =
      draw_other([&](std::size_t k) { return pool[k] != pool[j] && pool[k] != pool[a]; });
  return {a, b};
}

void environmental_selection(Population& merged, std::size_t target) {
  const auto fronts = assign_rank_and_crowding(merged);
  Population next;
  next.reserve(target);
  for (const auto& front : fronts) {
    if (next.size() + front.size() <= target) {
      for (std::size_t i : front) next.push_back(std::move(merged[i]));
      if (next.size() == target) break;
      continue;
    }
    std::vector<std::size_t> order(front);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return merged[a].crowding > merged[b].crowding;
    });
    for (std::size_t k = 0; next.size() < target; ++k) next.push_back(std::move(merged[order[k]]));
    break;
  }
  merged = std::move(next);
}

GenerationRecord summarize(const Population& pop, std::size_t generation) {
  GenerationRecord rec{generation, -kInf, 0};
  for (const auto& ind : pop) {
    if (ind.rank != 0) continue;
    ++rec.front_size;
    rec.best_modularity = std::max(rec.best_modularity, -ind.objectives.f1);
  }
  return rec;
}

}  // namespace

RunResult run(const AttributeNetwork& net, const EngineConfig& cfg, std::ostream* log) {
  cfg.validate();
  const Evaluator evaluator(net, cfg.denominator);
  const std::size_t n = cfg.population_size;
  const std::size_t d = net.slot_count();

  RunResult result;
  Population& pop = result.population;
  {
    Rng rng = Rng::stream(cfg.seed, 0);
    pop.resize(n);
    for (auto& ind : pop) {
      ind.genotype.resize(d);
      for (double& v : ind.genotype) v = rng.uniform();
      ind.objectives = evaluator.evaluate(ind.genotype);
    }
  }
  assign_rank_and_crowding(pop);

  for (std::size_t g = 1; g <= cfg.generations; ++g) {
    Rng rng = Rng::stream(cfg.seed, g);
    const auto pool = binary_tournament(pop, rng, n);
    std::vector<std::size_t> distinct(pool);
    std::sort(distinct.begin(), distinct.end());
    const bool distinct_ok =
        std::unique(distinct.begin(), distinct.end()) - distinct.begin() >= 3;

    Population offspring(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto [a, b] = pick_difference_parents(pool, j, distinct_ok, rng);
      offspring[j].genotype = de_variation(pop[pool[j]].genotype, pop[pool[a]].genotype,
                                           pop[pool[b]].genotype, cfg, rng);
    }
    for (auto& child : offspring) child.objectives = evaluator.evaluate(child.genotype);

    pop.reserve(2 * n);
    std::move(offspring.begin(), offspring.end(), std::back_inserter(pop));
    environmental_selection(pop, n);

    result.history.push_back(summarize(pop, g));
    if (log != nullptr) {
      const auto& rec = result.history.back();
      *log << "generation " << rec.generation << " best_Q " << rec.best_modularity
           << " front_size " << rec.front_size << '\n';
    }
  }

  for (const auto& ind : pop) {
    if (ind.rank == 0) result.front.push_back(ind);
  }
  return result;
}

SelectionPolicy parse_policy(std::string_view name) {
  if (name == "max_q") return SelectionPolicy::max_q;
  if (name == "max_nmi") return SelectionPolicy::max_nmi;
  if (name == "knee") return SelectionPolicy::knee;
  throw ValidationError("unknown selection policy '" + std::string(name) + "'");
}

std::string_view to_string(SelectionPolicy policy) {
  switch (policy) {
    case SelectionPolicy::max_q: return "max_q";
    case SelectionPolicy::max_nmi: return "max_nmi";
    case SelectionPolicy::knee: return "knee";
  }
  return "max_q";
}

std::size_t select_report_solution(const Population& front, SelectionPolicy policy,
                                   const AttributeNetwork& net, const Partition* truth) {
  if (front.empty()) throw ValidationError("cannot select from an empty front");
  auto by_q = [&](std::size_t a, std::size_t b) {
    const auto& x = front[a].objectives;
    const auto& y = front[b].objectives;
    if (x.f1 != y.f1) return x.f1 < y.f1;
    if (x.f2 != y.f2) return x.f2 < y.f2;
    return a < b;
  };
  std::vector<std::size_t> idx(front.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});

  switch (policy) {
    case SelectionPolicy::max_q:
      return *std::min_element(idx.begin(), idx.end(), by_q);

    case SelectionPolicy::max_nmi: {
      if (truth == nullptr) throw ValidationError("max_nmi selection needs truth labels");
      std::vector<double> score(front.size());
      for (std::size_t i = 0; i < front.size(); ++i) {
        score[i] = nmi(gnn_decode(front[i].genotype, net), *truth);
      }
      return *std::min_element(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return by_q(a, b);
      });
    }

    case SelectionPolicy::knee: {
      const std::size_t best_q = *std::min_element(idx.begin(), idx.end(), by_q);
      const std::size_t best_attr =
          *std::min_element(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            const auto& x = front[a].objectives;
            const auto& y = front[b].objectives;
            if (x.f2 != y.f2) return x.f2 < y.f2;
            if (x.f1 != y.f1) return x.f1 < y.f1;
            return a < b;
          });
      const auto& p = front[best_q].objectives;
      const auto& q = front[best_attr].objectives;
      const double dx = q.f1 - p.f1;
      const double dy = q.f2 - p.f2;
      const double length = std::hypot(dx, dy);
      if (length == 0.0) return best_q;
      std::size_t best = 0;
      double best_dist = -1.0;
      for (std::size_t i = 0; i < front.size(); ++i) {
        const auto& o = front[i].objectives;
        const double dist = std::abs(dx * (o.f2 - p.f2) - dy * (o.f1 - p.f1)) / length;
        if (dist > best_dist) {
          best_dist = dist;
          best = i;
        }
      }
      return best;
    }
  }
  return 0;
}

}  // namespace cemoea
