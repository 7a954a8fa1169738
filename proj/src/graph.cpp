#include "cemoea/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>

#include "cemoea/errors.hpp"

namespace cemoea {

namespace {

std::string location(const std::filesystem::path& path, std::size_t line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool is_skippable(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

template <class T>
T parse_number(std::string_view token, const std::string& where) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(where + ": expected a number, got '" + std::string(token) + "'");
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }

  NodeId find(NodeId x) {
    NodeId root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      NodeId next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

AttributeNetwork AttributeNetwork::build(std::size_t node_count, std::vector<Edge> edges,
                                         std::vector<std::vector<double>> attributes,
                                         AttributeKind kind) {
  if (node_count == 0) throw ValidationError("network has no nodes");
  if (attributes.size() != node_count) {
    throw ValidationError("expected " + std::to_string(node_count) + " attribute rows, got " +
                          std::to_string(attributes.size()));
  }

  for (auto& [u, v] : edges) {
    if (u == v) throw ValidationError("self-loop on node " + std::to_string(u));
    if (u >= node_count || v >= node_count) {
      throw ValidationError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") references a node outside 0.." + std::to_string(node_count - 1));
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->first) + ", " +
                          std::to_string(dup->second) + ")");
  }

  const std::size_t dim = attributes.front().size();
  if (dim == 0) throw ValidationError("attribute rows are empty");
  if (kind == AttributeKind::single_real && dim != 1) {
    throw ValidationError("single-real attributes need exactly one value per node");
  }
  AttributeNetwork net;
  net.kind_ = kind;
  net.attribute_dim_ = dim;
  net.attributes_.reserve(node_count * dim);
  for (std::size_t i = 0; i < node_count; ++i) {
    const auto& row = attributes[i];
    if (row.size() != dim) {
      throw ValidationError("attribute row " + std::to_string(i) + " has " +
                            std::to_string(row.size()) + " values, expected " +
                            std::to_string(dim));
    }
    if (kind == AttributeKind::multi_binary) {
      bool any = false;
      for (double a : row) {
        if (a != 0.0 && a != 1.0) {
          throw ValidationError("attribute row " + std::to_string(i) + " is not binary");
        }
        any = any || a == 1.0;
      }
      if (!any) throw ValidationError("attribute row " + std::to_string(i) + " is all zero");
    }
    net.attributes_.insert(net.attributes_.end(), row.begin(), row.end());
  }

  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& [u, v] : edges) {
    ++degree[u];
    ++degree[v];
  }
  net.offsets_.assign(node_count + 1, 0);
  std::partial_sum(degree.begin(), degree.end(), net.offsets_.begin() + 1);
  net.adjacency_.resize(net.offsets_.back());
  std::vector<std::size_t> cursor(net.offsets_.begin(), net.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    net.adjacency_[cursor[u]++] = v;
    net.adjacency_[cursor[v]++] = u;
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    std::sort(net.adjacency_.begin() + net.offsets_[i], net.adjacency_.begin() + net.offsets_[i + 1]);
  }
  net.edges_ = std::move(edges);
  return net;
}

std::size_t AttributeNetwork::max_degree() const {
  std::size_t best = 0;
  for (NodeId i = 0; i < node_count(); ++i) best = std::max(best, degree(i));
  return best;
}

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  p.community_of_.resize(labels.size());
  constexpr CommunityId kUnset = std::numeric_limits<CommunityId>::max();
  CommunityId next = 0;
  const std::uint32_t max_label =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
  if (max_label <= 4 * labels.size()) {
    std::vector<CommunityId> remap(std::size_t{max_label} + 1, kUnset);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto& id = remap[labels[i]];
      if (id == kUnset) id = next++;
      p.community_of_[i] = id;
    }
  } else {
    // Sparse labels: canonical ids are still assigned on first sight.
    std::vector<std::uint32_t> sorted(labels.begin(), labels.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<CommunityId> remap(sorted.size(), kUnset);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto& id = remap[static_cast<std::size_t>(
          std::lower_bound(sorted.begin(), sorted.end(), labels[i]) - sorted.begin())];
      if (id == kUnset) id = next++;
      p.community_of_[i] = id;
    }
  }
  p.members_.assign(next, {});
  for (std::size_t i = 0; i < labels.size(); ++i) {
    p.members_[p.community_of_[i]].push_back(static_cast<NodeId>(i));
  }
  return p;
}

Partition Partition::single_community(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count, 0);
  return from_labels(labels);
}

Partition Partition::singletons(std::size_t node_count) {
  std::vector<std::uint32_t> labels(node_count);
  std::iota(labels.begin(), labels.end(), 0U);
  return from_labels(labels);
}

bool is_valid_selection(const EdgeSelection& sel, const AttributeNetwork& net) {
  if (sel.size() != net.node_count()) return false;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto nbrs = net.neighbors(i);
    if (nbrs.empty()) {
      if (sel[i] != EdgeSelection::kNoNeighbor) return false;
    } else if (!std::binary_search(nbrs.begin(), nbrs.end(), sel[i])) {
      return false;
    }
  }
  return true;
}

Partition decode(const EdgeSelection& sel, const AttributeNetwork& net) {
  const std::size_t r = net.node_count();
  DisjointSets sets(r);
  for (NodeId i = 0; i < r; ++i) {
    if (sel[i] != EdgeSelection::kNoNeighbor) sets.unite(i, sel[i]);
  }
  std::vector<std::uint32_t> roots(r);
  for (NodeId i = 0; i < r; ++i) roots[i] = sets.find(i);
  return Partition::from_labels(roots);
}

std::vector<CommunityStats> partition_stats(const Partition& p, const AttributeNetwork& net) {
  std::vector<CommunityStats> stats(p.community_count());
  for (NodeId i = 0; i < net.node_count(); ++i) {
    auto& s = stats[p.community_of(i)];
    ++s.size;
    s.degree_sum += net.degree(i);
  }
  for (const auto& [u, v] : net.edges()) {
    if (p.community_of(u) == p.community_of(v)) ++stats[p.community_of(u)].intra_edges;
  }
  return stats;
}

std::size_t inter_community_edges(const Partition& p, const AttributeNetwork& net) {
  std::size_t count = 0;
  for (const auto& [u, v] : net.edges()) count += p.community_of(u) != p.community_of(v);
  return count;
}

AttributeNetwork load_network(const std::filesystem::path& edge_path,
                              const std::filesystem::path& attr_path, AttributeKind kind) {
  std::vector<AttributeNetwork::Edge> edges;
  std::size_t node_count = 0;
  {
    auto in = open_input(edge_path);
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
      const auto tokens = split_ws(line);
      if (is_skippable(tokens)) continue;
      const auto where = location(edge_path, line_no);
      if (tokens.size() != 2) throw ParseError(where + ": expected two node ids");
      const auto u = parse_number<NodeId>(tokens[0], where);
      const auto v = parse_number<NodeId>(tokens[1], where);
      if (u == v) throw ValidationError(where + ": self-loop on node " + std::to_string(u));
      edges.emplace_back(u, v);
      node_count = std::max<std::size_t>(node_count, std::max(u, v) + std::size_t{1});
    }
  }
  if (edges.empty()) throw ValidationError(edge_path.string() + ": no edges");

  std::vector<std::vector<double>> attributes;
  {
    auto in = open_input(attr_path);
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
      const auto tokens = split_ws(line);
      if (is_skippable(tokens)) continue;
      const auto where = location(attr_path, line_no);
      if (kind == AttributeKind::single_real && tokens.size() != 1) {
        throw ParseError(where + ": expected one real value");
      }
      std::vector<double> row;
      row.reserve(tokens.size());
      for (auto token : tokens) row.push_back(parse_number<double>(token, where));
      attributes.push_back(std::move(row));
    }
  }
  if (attributes.size() != node_count) {
    throw ValidationError(attr_path.string() + ": " + std::to_string(attributes.size()) +
                          " attribute rows but the edge list implies " +
                          std::to_string(node_count) + " nodes");
  }
  return AttributeNetwork::build(node_count, std::move(edges), std::move(attributes), kind);
}

Partition load_labels(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::uint32_t> labels;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto tokens = split_ws(line);
    if (is_skippable(tokens)) continue;
    const auto where = location(path, line_no);
    if (tokens.size() != 1) throw ParseError(where + ": expected one community id");
    labels.push_back(parse_number<std::uint32_t>(tokens[0], where));
  }
  if (labels.empty()) throw ValidationError(path.string() + ": no labels");
  return Partition::from_labels(labels);
}

void write_edges(const std::filesystem::path& path, const AttributeNetwork& net) {
  auto out = open_output(path);
  for (const auto& [u, v] : net.edges()) out << u << ' ' << v << '\n';
}

void write_attributes(const std::filesystem::path& path, const AttributeNetwork& net) {
  auto out = open_output(path);
  out << std::setprecision(17);
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto row = net.attributes(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
}

void write_labels(const std::filesystem::path& path, const Partition& p) {
  auto out = open_output(path);
  for (auto k : p.labels()) out << k << '\n';
}

}  // namespace cemoea
