#pragma once

#include <cstdint>
#include <vector>

#include "cemoea/graph.hpp"
#include "cemoea/rng.hpp"

namespace cemoea::testing {

// Path 0-1-2-3.
inline AttributeNetwork g4_single(std::vector<double> attrs = {1, 1, 3, 5}) {
  std::vector<std::vector<double>> rows;
  for (double a : attrs) rows.push_back({a});
  return AttributeNetwork::build(4, {{0, 1}, {1, 2}, {2, 3}}, rows, AttributeKind::single_real);
}

inline AttributeNetwork g4_multi() {
  return AttributeNetwork::build(4, {{0, 1}, {1, 2}, {2, 3}}, {{1, 0}, {1, 0}, {1, 1}, {0, 1}},
                                 AttributeKind::multi_binary);
}

inline Partition labels(std::vector<std::uint32_t> l) { return Partition::from_labels(l); }

/// Erdos-Renyi graph with integer single attributes in [0, values).
inline AttributeNetwork random_network(std::size_t r, double p, Rng& rng, int values = 3) {
  std::vector<AttributeNetwork::Edge> edges;
  for (NodeId i = 0; i < r; ++i) {
    for (NodeId j = i + 1; j < r; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  if (edges.empty() && r >= 2) edges.emplace_back(0, 1);
  std::vector<std::vector<double>> attrs(r);
  for (auto& a : attrs) a = {static_cast<double>(rng.index(static_cast<std::size_t>(values)))};
  return AttributeNetwork::build(r, std::move(edges), std::move(attrs),
                                 AttributeKind::single_real);
}

/// Random binary attributes with no all-zero rows.
inline AttributeNetwork random_multi_network(std::size_t r, double p, std::size_t dim, Rng& rng) {
  std::vector<AttributeNetwork::Edge> edges;
  for (NodeId i = 0; i < r; ++i) {
    for (NodeId j = i + 1; j < r; ++j) {
      if (rng.uniform() < p) edges.emplace_back(i, j);
    }
  }
  if (edges.empty()) edges.emplace_back(0, 1);
  std::vector<std::vector<double>> attrs(r, std::vector<double>(dim));
  for (auto& a : attrs) {
    for (double& v : a) v = rng.uniform() < 0.4 ? 1.0 : 0.0;
    a[rng.index(dim)] = 1.0;
  }
  return AttributeNetwork::build(r, std::move(edges), std::move(attrs),
                                 AttributeKind::multi_binary);
}

inline Partition random_partition(std::size_t r, std::size_t max_k, Rng& rng) {
  std::vector<std::uint32_t> l(r);
  for (auto& v : l) v = static_cast<std::uint32_t>(rng.index(max_k));
  return Partition::from_labels(l);
}

/// Every set partition of {0..r-1} as restricted growth strings.
inline std::vector<std::vector<std::uint32_t>> all_set_partitions(std::size_t r) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> a(r, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t max_label) -> void {
    if (i == r) {
      out.push_back(a);
      return;
    }
    for (std::uint32_t v = 0; v <= max_label + 1; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(max_label, v));
    }
  };
  if (r == 0) return out;
  a[0] = 0;
  rec(rec, 1, 0);
  return out;
}

}  // namespace cemoea::testing
