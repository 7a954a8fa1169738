// Command-line front end: detect, landscape, gen-planted.

#include <algorithm>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "cemoea/errors.hpp"
#include "cemoea/harness.hpp"

namespace {

using cemoea::harness::ConfigMap;

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;

const std::map<std::string, std::string> kHelp = {
    {"edges", "edge list file"},
    {"attrs", "attribute file"},
    {"kind", "attribute kind: single | multi"},
    {"truth", "ground-truth labels for NMI"},
    {"seeds", "number of seeds (default 31)"},
    {"policy", "reported solution: max_q | knee | max_nmi"},
    {"out", "output directory"},
    {"timing", "record wall time"},
    {"verbose", "print per-generation progress"},
    {"population_size", "population size N"},
    {"generations", "generations T"},
    {"de_scale", "DE scale factor"},
    {"crossover_rate", "DE crossover rate"},
    {"mutation_prob", "polynomial mutation probability"},
    {"mutation_index", "polynomial mutation distribution index"},
    {"seed", "first seed"},
    {"denominator", "similarity denominator: pairs | size | size_squared | "
                    "size_minus_one_squared | none"},
    {"space", "both | discrete | continuous"},
    {"objective", "Q | attr | both"},
    {"budget", "local optima per analysis"},
    {"fdc_sample", "optima sampled for FDC"},
    {"epsilon_sample", "uniform samples for the epsilon estimate"},
    {"epsilon_pairs", "sample pairs for the epsilon estimate"},
    {"perturb_edges", "nodes re-wired per discrete perturbation"},
    {"trials_per_step", "ball samples per continuous local-search step"},
    {"reference", "add an optimizer front to the best-known set (true | false)"},
    {"nodes", "node count"},
    {"comms", "community count"},
    {"pin", "intra-community edge probability"},
    {"pout", "inter-community edge probability"},
    {"noise", "attribute flip probability"},
};

bool is_switch(const std::string& key) { return key == "timing" || key == "verbose"; }

struct Command {
  CLI::App* app = nullptr;
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App& parent, const std::string& name, const std::string& description,
           const std::vector<std::string>& keys, bool with_config) {
    app = parent.add_subcommand(name, description);
    if (with_config) app->add_option("--config", config_path, "key = value settings file");
    for (const auto& key : keys) {
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      const std::string& help = kHelp.at(key);
      options[key] = is_switch(key) ? app->add_flag(flag, switches[key], help)
                                    : app->add_option(flag, values[key], help);
    }
  }

  ConfigMap settings() const {
    ConfigMap cfg;
    if (!config_path.empty()) cfg = cemoea::harness::load_config(config_path);
    ConfigMap flags;
    for (const auto& [key, option] : options) {
      if (option->count() == 0) continue;
      flags[key] = is_switch(key) ? "true" : values.at(key);
    }
    cemoea::harness::merge(cfg, flags);
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Attribute-network community detection and landscape analysis");
  app.require_subcommand(1);

  Command detect;
  detect.add(app, "detect", "multi-seed community detection campaign",
             cemoea::harness::detect_keys(), true);
  Command landscape;
  landscape.add(app, "landscape", "fitness landscape analysis",
                cemoea::harness::landscape_keys(), true);
  Command planted;
  planted.add(app, "gen-planted", "write a planted-partition test network",
              cemoea::harness::planted_keys(), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*detect.app) {
      const auto opt = cemoea::harness::detect_options(detect.settings());
      const auto campaign = cemoea::harness::cmd_detect(opt, &std::cerr);
      const auto& a = campaign.summary;
      std::cout << "D max " << cemoea::harness::format_summary(a.density.max) << " min "
                << cemoea::harness::format_summary(a.density.min) << " avg "
                << cemoea::harness::format_summary(a.density.avg) << " ("
                << cemoea::harness::format_summary(a.density.std) << ")\n"
                << "E max " << cemoea::harness::format_summary(a.entropy.max) << " min "
                << cemoea::harness::format_summary(a.entropy.min) << " avg "
                << cemoea::harness::format_summary(a.entropy.avg) << " ("
                << cemoea::harness::format_summary(a.entropy.std) << ")\n"
                << "k " << a.k_min << '-' << a.k_max << " mode " << a.k_mode << '\n';
      if (a.nmi) {
        std::cout << "NMI avg " << cemoea::harness::format_summary(a.nmi->avg) << " ("
                  << cemoea::harness::format_summary(a.nmi->std) << ")\n";
      }
    } else if (*landscape.app) {
      const auto opt = cemoea::harness::landscape_options(landscape.settings());
      const auto reports = cemoea::harness::cmd_landscape(opt, &std::cerr);
      std::cout << cemoea::harness::comparison_header() << '\n';
      for (auto objective : {cemoea::LandscapeObjective::modularity,
                             cemoea::LandscapeObjective::attribute}) {
        if ((objective == cemoea::LandscapeObjective::modularity && opt.modularity) ||
            (objective == cemoea::LandscapeObjective::attribute && opt.attribute)) {
          std::cout << cemoea::harness::comparison_row(objective, reports) << '\n';
        }
      }
    } else if (*planted.app) {
      const auto opt = cemoea::harness::planted_options(planted.settings());
      cemoea::harness::write_planted(cemoea::harness::gen_planted(opt), opt.out);
    }
  } catch (const cemoea::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const cemoea::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  return kOk;
}
