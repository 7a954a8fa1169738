#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include <unistd.h>

#include "cemoea/errors.hpp"
#include "cemoea/graph.hpp"
#include "support.hpp"

namespace cemoea {
namespace {

using testing::g4_single;
using testing::labels;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cemoea_graph_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::filesystem::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return path_ / name;
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

TEST(Network, LoadsPath) {
  TempDir dir;
  const auto net = load_network(dir.write("e", "0 1\n1 2\n2 3"), dir.write("a", "1\n1\n3\n5\n"),
                                AttributeKind::single_real);
  EXPECT_EQ(net.node_count(), 4u);
  EXPECT_EQ(net.edge_count(), 3u);
  EXPECT_EQ(net.slot_count(), 6u);
  EXPECT_EQ(net.degree(1), 2u);
  EXPECT_EQ(net.attributes(3)[0], 5.0);
}

TEST(Network, CommentsAndBlankLinesIgnored) {
  TempDir dir;
  const auto net = load_network(dir.write("e", "# header\n\n1 0\n  # note\n2 1\n"),
                                dir.write("a", "# attrs\n0\n0\n1\n"), AttributeKind::single_real);
  EXPECT_EQ(net.edge_count(), 2u);
  ASSERT_EQ(net.neighbors(1).size(), 2u);
  EXPECT_EQ(net.neighbors(1)[0], 0u);
  EXPECT_EQ(net.neighbors(1)[1], 2u);
}

TEST(Network, SelfLoopRejected) {
  TempDir dir;
  EXPECT_THROW(load_network(dir.write("e", "0 1\n2 2\n"), dir.write("a", "0\n0\n0\n"),
                            AttributeKind::single_real),
               ValidationError);
}

TEST(Network, RowCountFollowsMaxId) {
  TempDir dir;
  // ids {0,1,3} imply four nodes; three rows is one short.
  EXPECT_THROW(load_network(dir.write("e", "0 1\n1 3\n"), dir.write("a", "0\n0\n0\n"),
                            AttributeKind::single_real),
               ValidationError);
  const auto net = load_network(dir.path() / "e", dir.write("a4", "0\n0\n0\n0\n"),
                                AttributeKind::single_real);
  EXPECT_EQ(net.degree(2), 0u);
}

TEST(Network, MalformedLinesAreParseErrors) {
  TempDir dir;
  const auto attrs = dir.write("a", "0\n0\n");
  EXPECT_THROW(load_network(dir.write("e1", "0 x\n"), attrs, AttributeKind::single_real),
               ParseError);
  EXPECT_THROW(load_network(dir.write("e2", "0 1 2\n"), attrs, AttributeKind::single_real),
               ParseError);
  EXPECT_THROW(load_network(dir.write("e3", "0 -1\n"), attrs, AttributeKind::single_real),
               ParseError);
}

TEST(Network, DuplicateEdgeRejectedInEitherOrientation) {
  EXPECT_THROW(AttributeNetwork::build(2, {{0, 1}, {1, 0}}, {{0}, {0}},
                                       AttributeKind::single_real),
               ValidationError);
}

TEST(Network, AttributeShapeChecked) {
  EXPECT_THROW(AttributeNetwork::build(2, {{0, 1}}, {{0, 1}, {1}}, AttributeKind::multi_binary),
               ValidationError);
  EXPECT_THROW(AttributeNetwork::build(2, {{0, 1}}, {{0, 0}, {1, 0}}, AttributeKind::multi_binary),
               ValidationError);
  EXPECT_THROW(AttributeNetwork::build(2, {{0, 1}}, {{0.5, 1}, {1, 0}},
                                       AttributeKind::multi_binary),
               ValidationError);
  EXPECT_THROW(AttributeNetwork::build(2, {{0, 5}}, {{0}, {0}}, AttributeKind::single_real),
               ValidationError);
}

TEST(Network, MissingFileIsError) {
  TempDir dir;
  EXPECT_THROW(load_network(dir.path() / "none", dir.path() / "none2", AttributeKind::single_real),
               Error);
}

TEST(Network, DegreeSumIsTwiceEdges) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto net = testing::random_network(15, 0.3, rng);
    std::size_t sum = 0;
    for (NodeId i = 0; i < net.node_count(); ++i) sum += net.degree(i);
    EXPECT_EQ(sum, 2 * net.edge_count());
    EXPECT_EQ(net.slot_count(), 2 * net.edge_count());
  }
}

TEST(Partition, CanonicalIdsFollowSmallestMember) {
  const auto p = labels({7, 3, 7, 9, 3});
  EXPECT_EQ(p.community_count(), 3u);
  EXPECT_EQ(p.community_of(0), 0u);
  EXPECT_EQ(p.community_of(1), 1u);
  EXPECT_EQ(p.community_of(3), 2u);
  EXPECT_EQ(p, labels({0, 1, 0, 2, 1}));
  EXPECT_EQ(labels({1u << 30, 5, 1u << 30}), labels({0, 1, 0}));
}

TEST(Decode, G4PairsFromSelection) {
  const auto net = g4_single();
  const auto p = decode(EdgeSelection{{1, 0, 3, 2}}, net);
  EXPECT_EQ(p, labels({0, 0, 1, 1}));
}

TEST(Decode, SpanningTreeGivesOneCommunity) {
  const auto net = g4_single();
  EXPECT_EQ(decode(EdgeSelection{{1, 2, 3, 2}}, net).community_count(), 1u);
}

TEST(Decode, IsolatedNodeIsSingleton) {
  const auto net = AttributeNetwork::build(6, {{0, 1}, {1, 2}, {3, 4}},
                                           std::vector<std::vector<double>>(6, {0.0}),
                                           AttributeKind::single_real);
  EdgeSelection sel{{1, 0, 1, 4, 3, EdgeSelection::kNoNeighbor}};
  ASSERT_TRUE(is_valid_selection(sel, net));
  const auto p = decode(sel, net);
  EXPECT_EQ(p.community_count(), 3u);
  EXPECT_EQ(p.size(p.community_of(5)), 1u);
}

TEST(Decode, CommunitiesAreConnectedInNetwork) {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto net = testing::random_network(12, 0.25, rng);
    EdgeSelection sel;
    sel.selected.resize(net.node_count(), EdgeSelection::kNoNeighbor);
    for (NodeId i = 0; i < net.node_count(); ++i) {
      const auto nb = net.neighbors(i);
      if (!nb.empty()) sel[i] = nb[rng.index(nb.size())];
    }
    const auto p = decode(sel, net);
    EXPECT_GE(p.community_count(), 1u);
    EXPECT_LE(p.community_count(), net.node_count());
    EXPECT_EQ(p, decode(sel, net));
    // Each community is connected using network edges only.
    for (CommunityId k = 0; k < p.community_count(); ++k) {
      const auto members = p.members(k);
      std::vector<bool> seen(net.node_count(), false);
      std::vector<NodeId> stack = {members[0]};
      seen[members[0]] = true;
      std::size_t reached = 0;
      while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        ++reached;
        for (NodeId v : net.neighbors(u)) {
          if (!seen[v] && p.community_of(v) == k) {
            seen[v] = true;
            stack.push_back(v);
          }
        }
      }
      EXPECT_EQ(reached, members.size());
    }
  }
}

TEST(Stats, G4Pairs) {
  const auto stats = partition_stats(labels({0, 0, 1, 1}), g4_single());
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].intra_edges, 1u);
  EXPECT_EQ(stats[1].intra_edges, 1u);
  EXPECT_EQ(stats[0].degree_sum, 3u);
  EXPECT_EQ(stats[1].degree_sum, 3u);
  EXPECT_EQ(stats[0].size, 2u);
}

TEST(Stats, SingleCommunityAndSingletons) {
  const auto net = g4_single();
  const auto one = partition_stats(Partition::single_community(4), net);
  EXPECT_EQ(one[0].intra_edges, 3u);
  EXPECT_EQ(one[0].degree_sum, 6u);
  for (const auto& s : partition_stats(Partition::singletons(4), net)) {
    EXPECT_EQ(s.intra_edges, 0u);
  }
}

TEST(Stats, TotalsAddUp) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto net = testing::random_network(14, 0.3, rng);
    const auto p = testing::random_partition(14, 4, rng);
    std::size_t l = 0, d = 0;
    for (const auto& s : partition_stats(p, net)) {
      l += s.intra_edges;
      d += s.degree_sum;
    }
    EXPECT_EQ(d, 2 * net.edge_count());
    EXPECT_EQ(l + inter_community_edges(p, net), net.edge_count());
  }
}

TEST(Files, RoundTrip) {
  TempDir dir;
  Rng rng(9);
  const auto net = testing::random_multi_network(10, 0.4, 3, rng);
  ASSERT_GT(net.degree(9), 0u);
  write_edges(dir.path() / "e", net);
  write_attributes(dir.path() / "a", net);
  const auto back = load_network(dir.path() / "e", dir.path() / "a", AttributeKind::multi_binary);
  ASSERT_EQ(back.node_count(), net.node_count());
  EXPECT_TRUE(std::equal(net.edges().begin(), net.edges().end(), back.edges().begin(),
                         back.edges().end()));
  for (NodeId i = 0; i < net.node_count(); ++i) {
    EXPECT_TRUE(std::ranges::equal(net.attributes(i), back.attributes(i)));
  }

  const auto p = testing::random_partition(10, 3, rng);
  write_labels(dir.path() / "l", p);
  EXPECT_EQ(load_labels(dir.path() / "l"), p);
}

}  // namespace
}  // namespace cemoea
