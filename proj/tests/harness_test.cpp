#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <unistd.h>

#include "cemoea/errors.hpp"
#include "cemoea/harness.hpp"
#include "cemoea/metrics.hpp"

namespace cemoea::harness {
namespace {

namespace fs = std::filesystem;

class Scratch : public ::testing::Test {
 protected:
  void SetUp() override {
    root = fs::temp_directory_path() /
           ("cemoea_harness_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(root);
    fs::create_directories(root);
  }
  void TearDown() override { fs::remove_all(root); }

  fs::path planted(std::uint64_t seed = 4) {
    PlantedOptions opt;
    opt.nodes = 32;
    opt.communities = 4;
    opt.p_in = 0.5;
    opt.p_out = 0.02;
    opt.noise = 0.1;
    opt.seed = seed;
    const fs::path dir = root / ("net" + std::to_string(seed));
    write_planted(gen_planted(opt), dir);
    return dir;
  }

  ConfigMap detect_config(const fs::path& net, const fs::path& out) {
    return {{"edges", (net / "edges.txt").string()}, {"attrs", (net / "attrs.txt").string()},
            {"truth", (net / "truth.txt").string()}, {"kind", "single"},
            {"seeds", "2"},                          {"population_size", "20"},
            {"generations", "10"},                   {"out", out.string()}};
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path root;
};

TEST(Config, ParsesKeyValueLines) {
  std::istringstream in("# campaign\n\nseeds = 5\n  generations=20  \nout = a b\nseeds = 6\n");
  const auto cfg = parse_config(in, "mem");
  EXPECT_EQ(cfg.at("seeds"), "6");
  EXPECT_EQ(cfg.at("generations"), "20");
  EXPECT_EQ(cfg.at("out"), "a b");

  std::istringstream bad("seeds 5\n");
  EXPECT_THROW(parse_config(bad, "mem"), ParseError);
}

TEST(Config, FlagsOverrideFile) {
  ConfigMap base = {{"seeds", "5"}, {"kind", "single"}};
  merge(base, {{"seeds", "9"}});
  EXPECT_EQ(base.at("seeds"), "9");
  EXPECT_EQ(base.at("kind"), "single");
}

TEST(Summary, SampleStatistics) {
  const std::vector<double> v = {1, 2, 3, 4};
  const auto s = summarize(v);
  EXPECT_EQ(s.max, 4);
  EXPECT_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.avg, 2.5);
  EXPECT_NEAR(s.std, std::sqrt(5.0 / 3.0), 1e-12);
  EXPECT_EQ(summarize(std::vector<double>{0.7}).std, 0.0);
}

TEST(Planted, Validation) {
  PlantedOptions opt;
  opt.nodes = 10;
  opt.communities = 3;
  EXPECT_THROW(opt.validate(), ValidationError);
  opt = {};
  opt.p_out = opt.p_in;
  EXPECT_THROW(opt.validate(), ValidationError);
  opt = {};
  opt.noise = 1.5;
  EXPECT_THROW(opt.validate(), ValidationError);
}

TEST(Planted, DisconnectedBlocksRecoverTruth) {
  PlantedOptions opt;
  opt.nodes = 40;
  opt.communities = 4;
  opt.p_in = 0.6;
  opt.p_out = 0.0;
  opt.noise = 0.0;
  const auto planted = gen_planted(opt);
  // Edges never cross blocks, so components refine the truth; with p_in
  // this high each block is connected.
  std::vector<NodeId> parent(opt.nodes);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [u, v] : planted.net.edges()) {
    EXPECT_EQ(planted.truth.community_of(u), planted.truth.community_of(v));
    parent[find(u)] = find(v);
  }
  std::vector<std::uint32_t> comp(opt.nodes);
  for (NodeId i = 0; i < opt.nodes; ++i) comp[i] = find(i);
  EXPECT_EQ(nmi(Partition::from_labels(comp), planted.truth), 1.0);
  for (NodeId i = 0; i < opt.nodes; ++i) {
    EXPECT_EQ(planted.net.attributes(i)[0], planted.truth.community_of(i));
  }
}

TEST(Planted, FullNoiseFlipsEveryAttribute) {
  PlantedOptions opt;
  opt.nodes = 20;
  opt.communities = 2;
  opt.noise = 1.0;
  const auto planted = gen_planted(opt);
  for (NodeId i = 0; i < opt.nodes; ++i) {
    EXPECT_EQ(planted.net.attributes(i)[0], 1.0 - planted.truth.community_of(i));
  }
}

TEST(Planted, NoIsolatedNodes) {
  PlantedOptions opt;
  opt.nodes = 60;
  opt.communities = 6;
  opt.p_in = 0.05;
  opt.p_out = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    opt.seed = seed;
    const auto planted = gen_planted(opt);
    for (NodeId i = 0; i < opt.nodes; ++i) EXPECT_GT(planted.net.degree(i), 0u);
  }
}

TEST_F(Scratch, PlantedFilesAreByteIdentical) {
  const auto a = planted(4);
  PlantedOptions opt;
  opt.nodes = 32;
  opt.communities = 4;
  opt.p_in = 0.5;
  opt.p_out = 0.02;
  opt.noise = 0.1;
  opt.seed = 4;
  write_planted(gen_planted(opt), root / "again");
  for (const char* f : {"edges.txt", "attrs.txt", "truth.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(root / "again" / f)) << f;
  }
  // Round trip through the loaders.
  const auto net = load_network(a / "edges.txt", a / "attrs.txt", AttributeKind::single_real);
  EXPECT_EQ(net.node_count(), 32u);
  EXPECT_EQ(load_labels(a / "truth.txt").node_count(), 32u);
}

TEST_F(Scratch, MissingAttributeFileIsValidationError) {
  const auto net = planted();
  auto cfg = detect_config(net, root / "out");
  cfg["attrs"] = (root / "absent.txt").string();
  EXPECT_THROW(detect_options(cfg), ValidationError);
  cfg = detect_config(net, root / "out");
  cfg["bogus"] = "1";
  EXPECT_THROW(detect_options(cfg), ValidationError);
  cfg = detect_config(net, root / "out");
  cfg["seeds"] = "two";
  EXPECT_THROW(detect_options(cfg), ValidationError);
}

TEST_F(Scratch, SingleSeedAggregatesEqualRecord) {
  const auto net = planted();
  auto cfg = detect_config(net, root / "one");
  cfg["seeds"] = "1";
  const auto campaign = cmd_detect(detect_options(cfg));
  ASSERT_EQ(campaign.records.size(), 1u);
  const auto& sel = campaign.records[0].selected.at("max_q");
  EXPECT_EQ(campaign.summary.density.max, sel.density);
  EXPECT_EQ(campaign.summary.density.min, sel.density);
  EXPECT_EQ(campaign.summary.density.avg, sel.density);
  EXPECT_EQ(campaign.summary.density.std, 0.0);
  EXPECT_EQ(campaign.summary.k_mode, sel.communities);
}

TEST_F(Scratch, CampaignOutputs) {
  const auto net = planted();
  const auto out = root / "a";
  const auto campaign = cmd_detect(detect_options(detect_config(net, out)));
  for (const char* f : {"run_1.json", "run_2.json", "front_1.csv", "front_2.csv",
                        "partition_1.txt", "partition_2.txt", "aggregate.json",
                        "aggregate.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  ASSERT_TRUE(campaign.summary.nmi.has_value());

  // Front rows parse back and are mutually non-dominated.
  std::ifstream front(out / "front_1.csv");
  std::string line;
  std::getline(front, line);
  EXPECT_EQ(line, "f1,f2");
  std::vector<ObjectiveVector> rows;
  while (std::getline(front, line)) {
    const auto comma = line.find(',');
    rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  EXPECT_EQ(rows, campaign.records[0].front);
  for (const auto& a : rows) {
    for (const auto& b : rows) EXPECT_FALSE(dominates(a, b));
  }

  // Partition files load as truth files for the same network.
  const auto p = load_labels(out / "partition_1.txt");
  EXPECT_EQ(p, campaign.records[0].partition);
  EXPECT_EQ(p.node_count(), 32u);
  EXPECT_EQ(p.community_count(), campaign.records[0].selected.at("max_q").communities);
}

TEST_F(Scratch, CampaignIsByteIdentical) {
  const auto net = planted();
  cmd_detect(detect_options(detect_config(net, root / "x")));
  cmd_detect(detect_options(detect_config(net, root / "y")));
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(root / "x")) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(root / "y" / entry.path().filename()))
        << entry.path().filename();
  }
  EXPECT_EQ(files, 8u);
}

TEST_F(Scratch, LandscapeDiscreteOnlyFillsOriginalColumns) {
  const auto net = planted();
  ConfigMap cfg = {{"edges", (net / "edges.txt").string()},
                   {"attrs", (net / "attrs.txt").string()},
                   {"kind", "single"},
                   {"space", "discrete"},
                   {"objective", "both"},
                   {"budget", "30"},
                   {"reference", "false"},
                   {"out", (root / "l").string()}};
  const auto reports = cmd_landscape(landscape_options(cfg));
  EXPECT_EQ(reports.size(), 2u);
  const std::string q = comparison_row(LandscapeObjective::modularity, reports);
  EXPECT_EQ(q.substr(0, 2), "Q,");
  // LOD_t, ER_t are NA; LOD_o, ER_o are numbers.
  std::vector<std::string> cells;
  std::stringstream ss(q);
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 7u);
  EXPECT_NE(cells[1], "NA");
  EXPECT_EQ(cells[2], "NA");
  EXPECT_NE(cells[3], "NA");
  EXPECT_EQ(cells[4], "NA");
  EXPECT_EQ(cells[6], "NA");

  const std::string first = slurp(root / "l" / "landscape.csv");
  cfg["out"] = (root / "l2").string();
  cmd_landscape(landscape_options(cfg));
  EXPECT_EQ(first, slurp(root / "l2" / "landscape.csv"));
  EXPECT_EQ(slurp(root / "l" / "comparison.csv"), slurp(root / "l2" / "comparison.csv"));
}

}  // namespace
}  // namespace cemoea::harness
