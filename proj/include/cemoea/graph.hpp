#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace cemoea {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;

enum class AttributeKind { single_real, multi_binary };

/// Undirected, unweighted graph whose nodes carry attribute vectors of a
/// common dimension. Immutable once built; adjacency is stored as CSR with
/// each neighbor list sorted by id.
class AttributeNetwork {
 public:
  using Edge = std::pair<NodeId, NodeId>;

  AttributeNetwork() = default;

  /// Validates and builds. `edges` may list each undirected edge in either
  /// orientation; self-loops and duplicates are rejected. `attributes` must
  /// hold exactly `node_count` rows of identical width.
  static AttributeNetwork build(std::size_t node_count, std::vector<Edge> edges,
                                std::vector<std::vector<double>> attributes,
                                AttributeKind kind);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  std::size_t max_degree() const;

  /// Sorted neighbor ids of `i`.
  std::span<const NodeId> neighbors(NodeId i) const {
    return {adjacency_.data() + offsets_[i], degree(i)};
  }
  /// Start of node `i`'s block in the flat (node, neighbor) slot array; the
  /// slot count equals 2L.
  std::size_t offset(NodeId i) const { return offsets_[i]; }
  std::size_t slot_count() const { return adjacency_.size(); }

  /// Undirected edges as (u, v) with u < v, lexicographically sorted.
  std::span<const Edge> edges() const { return edges_; }

  AttributeKind kind() const { return kind_; }
  std::size_t attribute_dim() const { return attribute_dim_; }
  std::span<const double> attributes(NodeId i) const {
    return {attributes_.data() + static_cast<std::size_t>(i) * attribute_dim_, attribute_dim_};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<Edge> edges_;
  std::vector<double> attributes_;
  std::size_t attribute_dim_ = 0;
  AttributeKind kind_ = AttributeKind::single_real;
};

/// Assignment of every node to exactly one community. Community ids are
/// canonical: dense and numbered in order of each community's smallest
/// member, so equal groupings compare equal regardless of input labels.
class Partition {
 public:
  Partition() = default;

  /// Canonicalizes arbitrary labels.
  static Partition from_labels(std::span<const std::uint32_t> labels);
  static Partition single_community(std::size_t node_count);
  static Partition singletons(std::size_t node_count);

  std::size_t node_count() const { return community_of_.size(); }
  std::size_t community_count() const { return members_.size(); }
  CommunityId community_of(NodeId i) const { return community_of_[i]; }
  std::span<const CommunityId> labels() const { return community_of_; }
  std::span<const NodeId> members(CommunityId k) const { return members_[k]; }
  std::size_t size(CommunityId k) const { return members_[k].size(); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.community_of_ == b.community_of_;
  }

 private:
  std::vector<CommunityId> community_of_;
  std::vector<std::vector<NodeId>> members_;
};

/// Locus-based representation: each node names one of its neighbors.
/// Isolated nodes hold `kNoNeighbor`.
struct EdgeSelection {
  static constexpr NodeId kNoNeighbor = std::numeric_limits<NodeId>::max();

  std::vector<NodeId> selected;

  std::size_t size() const { return selected.size(); }
  NodeId operator[](std::size_t i) const { return selected[i]; }
  NodeId& operator[](std::size_t i) { return selected[i]; }
  friend bool operator==(const EdgeSelection&, const EdgeSelection&) = default;
};

/// Per-community structural counts.
struct CommunityStats {
  std::size_t intra_edges = 0;  // l_k
  std::size_t degree_sum = 0;   // d_k
  std::size_t size = 0;         // r_k
};

/// True when every non-isolated node selects one of its neighbors and
/// every isolated node selects nothing.
bool is_valid_selection(const EdgeSelection& sel, const AttributeNetwork& net);

/// Communities are the connected components of the graph formed by the
/// edges {i, s_i}.
Partition decode(const EdgeSelection& sel, const AttributeNetwork& net);

std::vector<CommunityStats> partition_stats(const Partition& p, const AttributeNetwork& net);

/// Edges whose endpoints lie in different communities.
std::size_t inter_community_edges(const Partition& p, const AttributeNetwork& net);

// File formats: whitespace-separated text, `#` comment lines ignored.

AttributeNetwork load_network(const std::filesystem::path& edge_path,
                              const std::filesystem::path& attr_path, AttributeKind kind);

/// One community id per line in node-id order.
Partition load_labels(const std::filesystem::path& path);

void write_edges(const std::filesystem::path& path, const AttributeNetwork& net);
void write_attributes(const std::filesystem::path& path, const AttributeNetwork& net);
void write_labels(const std::filesystem::path& path, const Partition& p);

}  // namespace cemoea
