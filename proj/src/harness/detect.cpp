#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "cemoea/errors.hpp"
#include "cemoea/harness.hpp"
#include "cemoea/metrics.hpp"

namespace cemoea::harness {

namespace {

using Json = nlohmann::ordered_json;

SolutionReport describe(const Population& front, std::size_t index, const AttributeNetwork& net,
                        const Partition* truth, Partition* partition_out) {
  const Individual& ind = front[index];
  Partition p = gnn_decode(ind.genotype, net);
  SolutionReport report;
  report.index = index;
  report.objectives = ind.objectives;
  report.modularity = -ind.objectives.f1;
  report.density = density(p, net);
  report.entropy = entropy(p, net);
  report.communities = p.community_count();
  if (truth != nullptr) report.nmi = nmi(p, *truth);
  if (partition_out != nullptr) *partition_out = std::move(p);
  return report;
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const SolutionReport& s) {
  return Json{{"index", s.index},
              {"f1", s.objectives.f1},
              {"f2", s.objectives.f2},
              {"modularity", s.modularity},
              {"D", s.density},
              {"E", s.entropy},
              {"k", s.communities},
              {"NMI", optional_number(s.nmi)}};
}

Json to_json(const RunRecord& r) {
  Json front = Json::array();
  for (const auto& v : r.front) front.push_back({v.f1, v.f2});
  Json selected = Json::object();
  for (const auto& [policy, s] : r.selected) selected[policy] = to_json(s);
  return Json{{"seed", r.seed},
              {"generations", r.generations},
              {"front", std::move(front)},
              {"selected", std::move(selected)},
              {"front_D_max", r.front_density_max},
              {"front_D_min", r.front_density_min},
              {"front_E_max", r.front_entropy_max},
              {"front_E_min", r.front_entropy_min},
              {"wall_time_seconds", optional_number(r.wall_seconds)}};
}

Json to_json(const Summary& s) {
  return Json{{"max", s.max}, {"min", s.min}, {"avg", s.avg}, {"std", s.std}};
}

Json to_json(const Aggregate& a) {
  return Json{{"seeds", a.seeds},
              {"policy", a.policy},
              {"D", to_json(a.density)},
              {"E", to_json(a.entropy)},
              {"NMI", a.nmi ? to_json(*a.nmi) : Json(nullptr)},
              {"k_min", a.k_min},
              {"k_max", a.k_max},
              {"k_mode", a.k_mode},
              {"front_D_max", a.front_density_max},
              {"front_D_min", a.front_density_min},
              {"front_E_max", a.front_entropy_max},
              {"front_E_min", a.front_entropy_min}};
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  auto out = open_output(path);
  out << j.dump(2) << '\n';
}

void write_front_csv(const std::filesystem::path& path, const RunRecord& r) {
  auto out = open_output(path);
  out << "f1,f2\n";
  for (const auto& v : r.front) out << format_exact(v.f1) << ',' << format_exact(v.f2) << '\n';
}

void write_aggregate_csv(const std::filesystem::path& path, const Aggregate& a) {
  auto out = open_output(path);
  out << "seeds,policy,D_max,D_min,D_avg,D_std,E_max,E_min,E_avg,E_std,k_min,k_max,k_mode,"
         "NMI_max,NMI_min,NMI_avg,NMI_std,front_D_max,front_D_min,front_E_max,front_E_min\n";
  auto summary = [&](const Summary& s) {
    out << format_summary(s.max) << ',' << format_summary(s.min) << ',' << format_summary(s.avg)
        << ',' << format_summary(s.std) << ',';
  };
  out << a.seeds << ',' << a.policy << ',';
  summary(a.density);
  summary(a.entropy);
  out << a.k_min << ',' << a.k_max << ',' << a.k_mode << ',';
  if (a.nmi) {
    summary(*a.nmi);
  } else {
    out << "NA,NA,NA,NA,";
  }
  out << format_summary(a.front_density_max) << ',' << format_summary(a.front_density_min) << ','
      << format_summary(a.front_entropy_max) << ',' << format_summary(a.front_entropy_min) << '\n';
}

}  // namespace

RunRecord run_seed(const AttributeNetwork& net, const Partition* truth, const DetectOptions& opt,
                   std::uint64_t seed, std::ostream* log) {
  EngineConfig engine = opt.engine;
  engine.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  const RunResult result = run(net, engine, opt.verbose ? log : nullptr);
  const auto stop = std::chrono::steady_clock::now();

  RunRecord record;
  record.seed = seed;
  record.generations = engine.generations;
  for (const auto& ind : result.front) record.front.push_back(ind.objectives);
  std::sort(record.front.begin(), record.front.end(), [](const auto& a, const auto& b) {
    return a.f1 != b.f1 ? a.f1 < b.f1 : a.f2 < b.f2;
  });

  std::vector<SelectionPolicy> policies = {SelectionPolicy::max_q, SelectionPolicy::knee};
  if (truth != nullptr) policies.push_back(SelectionPolicy::max_nmi);
  for (SelectionPolicy policy : policies) {
    const std::size_t index = select_report_solution(result.front, policy, net, truth);
    Partition* keep = policy == opt.policy ? &record.partition : nullptr;
    record.selected.emplace(std::string(to_string(policy)),
                            describe(result.front, index, net, truth, keep));
  }

  record.front_density_max = -INFINITY;
  record.front_density_min = INFINITY;
  record.front_entropy_max = -INFINITY;
  record.front_entropy_min = INFINITY;
  for (const auto& ind : result.front) {
    const Partition p = gnn_decode(ind.genotype, net);
    const double d = density(p, net);
    const double e = entropy(p, net);
    record.front_density_max = std::max(record.front_density_max, d);
    record.front_density_min = std::min(record.front_density_min, d);
    record.front_entropy_max = std::max(record.front_entropy_max, e);
    record.front_entropy_min = std::min(record.front_entropy_min, e);
  }

  if (opt.timing) record.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return record;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw ValidationError("cannot summarize an empty sample");
  Summary s;
  s.max = *std::max_element(values.begin(), values.end());
  s.min = *std::min_element(values.begin(), values.end());
  s.avg = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.avg) * (v - s.avg);
    s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

Aggregate aggregate(std::span<const RunRecord> records, const std::string& policy) {
  if (records.empty()) throw ValidationError("no run records to aggregate");
  Aggregate a;
  a.seeds = records.size();
  a.policy = policy;
  std::vector<double> d, e, n;
  std::map<std::size_t, std::size_t> k_counts;
  a.front_density_max = records.front().front_density_max;
  a.front_density_min = records.front().front_density_min;
  a.front_entropy_max = records.front().front_entropy_max;
  a.front_entropy_min = records.front().front_entropy_min;
  for (const auto& r : records) {
    const auto it = r.selected.find(policy);
    if (it == r.selected.end()) throw ValidationError("record lacks policy " + policy);
    const SolutionReport& s = it->second;
    d.push_back(s.density);
    e.push_back(s.entropy);
    if (s.nmi) n.push_back(*s.nmi);
    ++k_counts[s.communities];
    a.front_density_max = std::max(a.front_density_max, r.front_density_max);
    a.front_density_min = std::min(a.front_density_min, r.front_density_min);
    a.front_entropy_max = std::max(a.front_entropy_max, r.front_entropy_max);
    a.front_entropy_min = std::min(a.front_entropy_min, r.front_entropy_min);
  }
  a.density = summarize(d);
  a.entropy = summarize(e);
  if (n.size() == records.size()) a.nmi = summarize(n);
  a.k_min = k_counts.begin()->first;
  a.k_max = k_counts.rbegin()->first;
  std::size_t best = 0;
  for (const auto& [k, count] : k_counts) {
    if (count > best) {
      best = count;
      a.k_mode = k;
    }
  }
  return a;
}

Campaign cmd_detect(const DetectOptions& opt, std::ostream* log) {
  const AttributeNetwork net = load_network(opt.data.edges, opt.data.attrs, opt.data.kind);
  std::optional<Partition> truth;
  if (opt.data.truth) {
    truth = load_labels(*opt.data.truth);
    if (truth->node_count() != net.node_count()) {
      throw ValidationError("truth file has " + std::to_string(truth->node_count()) +
                            " labels for " + std::to_string(net.node_count()) + " nodes");
    }
  }
  std::filesystem::create_directories(opt.out);

  Campaign campaign;
  for (std::size_t s = 0; s < opt.seeds; ++s) {
    const std::uint64_t seed = opt.engine.seed + s;
    RunRecord record = run_seed(net, truth ? &*truth : nullptr, opt, seed, log);
    const std::string tag = std::to_string(seed);
    write_json(opt.out / ("run_" + tag + ".json"), to_json(record));
    write_front_csv(opt.out / ("front_" + tag + ".csv"), record);
    write_labels(opt.out / ("partition_" + tag + ".txt"), record.partition);
    if (log != nullptr) {
      const SolutionReport& sel = record.selected.at(std::string(to_string(opt.policy)));
      *log << "seed " << seed << " Q " << format_summary(sel.modularity) << " D "
           << format_summary(sel.density) << " E " << format_summary(sel.entropy) << " k "
           << sel.communities << '\n';
    }
    campaign.records.push_back(std::move(record));
  }

  campaign.summary = aggregate(campaign.records, std::string(to_string(opt.policy)));
  write_json(opt.out / "aggregate.json", to_json(campaign.summary));
  write_aggregate_csv(opt.out / "aggregate.csv", campaign.summary);
  return campaign;
}

}  // namespace cemoea::harness
