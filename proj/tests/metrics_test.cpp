#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <map>
#include <numeric>

#include "cemoea/errors.hpp"
#include "cemoea/metrics.hpp"
#include "support.hpp"

namespace cemoea {
namespace {

using testing::labels;

// 2 I(X;Y) / (H(X) + H(Y)) from joint and marginal probabilities.
double nmi_oracle(const Partition& a, const Partition& b) {
  const double n = static_cast<double>(a.node_count());
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
  std::map<std::uint32_t, double> pa, pb;
  for (NodeId i = 0; i < a.node_count(); ++i) {
    joint[{a.community_of(i), b.community_of(i)}] += 1.0 / n;
    pa[a.community_of(i)] += 1.0 / n;
    pb[b.community_of(i)] += 1.0 / n;
  }
  double mi = 0.0, ha = 0.0, hb = 0.0;
  for (const auto& [key, p] : joint) mi += p * std::log(p / (pa[key.first] * pb[key.second]));
  for (const auto& [k, p] : pa) ha -= p * std::log(p);
  for (const auto& [k, p] : pb) hb -= p * std::log(p);
  if (ha + hb == 0.0) return a == b ? 1.0 : 0.0;
  return 2.0 * mi / (ha + hb);
}

Partition relabel(const Partition& p, Rng& rng) {
  std::vector<std::uint32_t> perm(p.community_count());
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::uint32_t> l(p.node_count());
  for (NodeId i = 0; i < p.node_count(); ++i) l[i] = 100 + perm[p.community_of(i)];
  return Partition::from_labels(l);
}

TEST(Confusion, CountsOverlap) {
  const ConfusionMatrix m(labels({0, 0, 1, 1, 1}), labels({0, 1, 1, 1, 0}));
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 2u);
  EXPECT_EQ(m.at(0, 0), 1u);
  EXPECT_EQ(m.at(0, 1), 1u);
  EXPECT_EQ(m.at(1, 0), 1u);
  EXPECT_EQ(m.at(1, 1), 2u);
  EXPECT_EQ(m.row_sum(1), 3u);
  EXPECT_EQ(m.col_sum(0), 2u);
  EXPECT_EQ(m.total(), 5u);
}

TEST(Density, HandValues) {
  const auto net = testing::g4_single();
  EXPECT_NEAR(density(labels({0, 0, 1, 1}), net), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(density(Partition::single_community(4), net), 1.0);
  EXPECT_EQ(density(Partition::singletons(4), net), 0.0);
  const auto empty = AttributeNetwork::build(2, {}, {{0}, {0}}, AttributeKind::single_real);
  EXPECT_THROW(density(Partition::singletons(2), empty), ValidationError);
}

TEST(Entropy, SingleAttributeHandValue) {
  const auto net = testing::g4_single();
  EXPECT_NEAR(entropy(labels({0, 0, 1, 1}), net), 0.5 * std::log(2.0), 1e-12);
  EXPECT_EQ(entropy(labels({0, 0, 1, 1}), testing::g4_single({4, 4, 7, 7})), 0.0);
}

TEST(Entropy, MultiBinaryAveragesDimensions) {
  const auto net = AttributeNetwork::build(4, {{0, 1}, {1, 2}, {2, 3}},
                                           {{1, 1}, {0, 1}, {1, 1}, {0, 1}},
                                           AttributeKind::multi_binary);
  EXPECT_NEAR(entropy(Partition::single_community(4), net), std::log(2.0) / 2.0, 1e-12);
}

TEST(Entropy, NonNegativeAndRelabelingInvariant) {
  Rng rng(40);
  for (int t = 0; t < 100; ++t) {
    const auto net = testing::random_network(20, 0.2, rng, 4);
    const auto p = testing::random_partition(20, 5, rng);
    const double e = entropy(p, net);
    EXPECT_GE(e, 0.0);
    EXPECT_DOUBLE_EQ(e, entropy(relabel(p, rng), net));
    const auto multi = testing::random_multi_network(20, 0.2, 5, rng);
    EXPECT_GE(entropy(p, multi), 0.0);
  }
}

TEST(Nmi, IdenticalUpToRelabelingIsOne) {
  Rng rng(41);
  const auto p = testing::random_partition(20, 4, rng);
  EXPECT_NEAR(nmi(p, relabel(p, rng)), 1.0, 1e-12);
  EXPECT_EQ(nmi(Partition::single_community(5), Partition::single_community(5)), 1.0);
}

TEST(Nmi, AgainstSingleCommunityIsZero) {
  EXPECT_EQ(nmi(labels({0, 0, 1, 1}), Partition::single_community(4)), 0.0);
  EXPECT_EQ(nmi(Partition::single_community(4), labels({0, 1, 0, 1})), 0.0);
}

TEST(Nmi, NodeCountMismatchThrows) {
  EXPECT_THROW(nmi(Partition::singletons(3), Partition::singletons(4)), ValidationError);
}

TEST(Nmi, MatchesInformationOracle) {
  Rng rng(42);
  for (int t = 0; t < 1000; ++t) {
    const auto a = testing::random_partition(20, 1 + rng.index(6), rng);
    const auto b = testing::random_partition(20, 1 + rng.index(6), rng);
    const double v = nmi(a, b);
    ASSERT_NEAR(v, nmi_oracle(a, b), 1e-10);
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_NEAR(v, nmi(b, a), 1e-12);
    ASSERT_NEAR(v, nmi(relabel(a, rng), b), 1e-12);
  }
}

}  // namespace
}  // namespace cemoea
