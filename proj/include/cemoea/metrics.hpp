#pragma once

#include <cstddef>
#include <vector>

#include "cemoea/graph.hpp"

namespace cemoea {

/// Overlap counts between two partitions of the same node set: rows index
/// the first partition's communities, columns the second's.
class ConfusionMatrix {
 public:
  ConfusionMatrix(const Partition& p, const Partition& q);

  std::size_t rows() const { return row_sums_.size(); }
  std::size_t cols() const { return col_sums_.size(); }
  std::size_t at(std::size_t i, std::size_t j) const { return counts_[i * cols() + j]; }
  std::size_t row_sum(std::size_t i) const { return row_sums_[i]; }
  std::size_t col_sum(std::size_t j) const { return col_sums_[j]; }
  std::size_t total() const { return total_; }

 private:
  std::vector<std::size_t> counts_;
  std::vector<std::size_t> row_sums_;
  std::vector<std::size_t> col_sums_;
  std::size_t total_ = 0;
};

/// Fraction of edges inside communities. Throws when L = 0.
double density(const Partition& p, const AttributeNetwork& net);

/// Size-weighted within-community attribute entropy, in nats. Single-real
/// attributes use the empirical distribution of values per community;
/// multi-binary attributes average the per-dimension binary entropies.
double entropy(const Partition& p, const AttributeNetwork& net);

/// Normalized mutual information in [0, 1]. Throws on a node-count mismatch.
double nmi(const Partition& p, const Partition& truth);

}  // namespace cemoea
