#include <fstream>
#include <ostream>

#include "cemoea/errors.hpp"
#include "cemoea/harness.hpp"

namespace cemoea::harness {

namespace {

const LandscapeReport* find_report(std::span<const LandscapeReport> reports,
                                   LandscapeObjective objective, SearchSpace space) {
  for (const auto& r : reports) {
    if (r.objective == objective && r.space == space) return &r;
  }
  return nullptr;
}

}  // namespace

std::vector<LandscapeReport> cmd_landscape(const LandscapeOptions& opt, std::ostream* log) {
  const AttributeNetwork net = load_network(opt.data.edges, opt.data.attrs, opt.data.kind);
  std::filesystem::create_directories(opt.out);

  std::vector<Genotype> reference;
  if (opt.reference) {
    RunResult result = run(net, opt.engine);
    for (auto& ind : result.front) reference.push_back(std::move(ind.genotype));
    if (log != nullptr) *log << "reference front of " << reference.size() << " solutions\n";
  }

  std::vector<LandscapeObjective> objectives;
  if (opt.modularity) objectives.push_back(LandscapeObjective::modularity);
  if (opt.attribute) objectives.push_back(LandscapeObjective::attribute);
  std::vector<SearchSpace> spaces;
  if (opt.discrete) spaces.push_back(SearchSpace::discrete);
  if (opt.continuous) spaces.push_back(SearchSpace::continuous);

  std::vector<LandscapeReport> reports;
  for (SearchSpace space : spaces) {
    for (LandscapeObjective objective : objectives) {
      LandscapeConfig cfg = opt.ils;
      cfg.space = space;
      cfg.objective = objective;
      reports.push_back(analyze_landscape(net, cfg, reference));
      if (log != nullptr) *log << to_csv_row(reports.back()) << '\n';
    }
  }

  std::ofstream rows(opt.out / "landscape.csv", std::ios::binary);
  if (!rows) throw Error("cannot write " + (opt.out / "landscape.csv").string());
  rows << csv_header() << '\n';
  for (const auto& r : reports) rows << to_csv_row(r) << '\n';

  std::ofstream table(opt.out / "comparison.csv", std::ios::binary);
  if (!table) throw Error("cannot write " + (opt.out / "comparison.csv").string());
  table << comparison_header() << '\n';
  for (LandscapeObjective objective : objectives) {
    table << comparison_row(objective, reports) << '\n';
  }
  return reports;
}

std::string comparison_header() { return "objective,LOD_o,LOD_t,ER_o,ER_t,FDC_o,FDC_t"; }

std::string comparison_row(LandscapeObjective objective,
                           std::span<const LandscapeReport> reports) {
  const LandscapeReport* o = find_report(reports, objective, SearchSpace::discrete);
  const LandscapeReport* t = find_report(reports, objective, SearchSpace::continuous);
  auto cell = [](const LandscapeReport* r, auto field) -> std::string {
    if (r == nullptr) return "NA";
    const std::optional<double> v = field(*r);
    return v ? format_summary(*v) : "NA";
  };
  auto lod_of = [](const LandscapeReport& r) { return std::optional<double>(r.lod); };
  auto er_of = [](const LandscapeReport& r) { return std::optional<double>(r.er); };
  auto fdc_of = [](const LandscapeReport& r) { return r.fdc; };
  return std::string(to_string(objective)) + ',' + cell(o, lod_of) + ',' + cell(t, lod_of) + ',' +
         cell(o, er_of) + ',' + cell(t, er_of) + ',' + cell(o, fdc_of) + ',' + cell(t, fdc_of);
}

}  // namespace cemoea::harness
