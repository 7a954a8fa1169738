#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "cemoea/graph.hpp"

namespace cemoea {

/// Minimization vector (-Q, attribute similarity).
struct ObjectiveVector {
  double f1 = 0.0;
  double f2 = 0.0;

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

/// Normalizer of the attribute-similarity objectives. `pairs`, the sum of
/// r_k(r_k - 1), is the standard one; the rest exist for ablations.
enum class SimilarityDenominator { pairs, size, size_squared, size_minus_one_squared, none };

SimilarityDenominator parse_denominator(std::string_view name);
std::string_view to_string(SimilarityDenominator d);

/// Q = sum_k [ l_k / L - (d_k / 2L)^2 ]. Throws ValidationError when L = 0.
double modularity(const Partition& p, const AttributeNetwork& net);

/// Sum over communities of |a_i - a_j| for i < j, divided by the chosen
/// denominator. Zero when the denominator vanishes.
double attr_similarity_single(const Partition& p, const AttributeNetwork& net,
                              SimilarityDenominator denom = SimilarityDenominator::pairs);

/// Sum over communities of cos(a_i, a_j) for i < j, divided by the chosen
/// denominator. Zero when the denominator vanishes.
double attr_similarity_multi(const Partition& p, const AttributeNetwork& net,
                             SimilarityDenominator denom = SimilarityDenominator::pairs);

/// Dispatches on the network's attribute kind.
double attr_similarity(const Partition& p, const AttributeNetwork& net,
                       SimilarityDenominator denom = SimilarityDenominator::pairs);

/// Evaluates genotypes against a fixed network. Caches unit-normalized
/// attribute vectors so the multi-attribute objective costs O(r * A) per
/// partition instead of O(sum r_k^2 * A).
class Evaluator {
 public:
  explicit Evaluator(const AttributeNetwork& net,
                     SimilarityDenominator denom = SimilarityDenominator::pairs);

  const AttributeNetwork& network() const { return *net_; }
  SimilarityDenominator denominator() const { return denom_; }

  double modularity(const Partition& p) const;
  double similarity(const Partition& p) const;
  ObjectiveVector objectives(const Partition& p) const;

  /// Decodes `x` once and scores both objectives on that partition.
  ObjectiveVector evaluate(std::span<const double> x) const;

 private:
  const AttributeNetwork* net_;
  SimilarityDenominator denom_;
  std::vector<double> unit_attributes_;
};

/// One-shot convenience over Evaluator.
ObjectiveVector evaluate(std::span<const double> x, const AttributeNetwork& net,
                         SimilarityDenominator denom = SimilarityDenominator::pairs);

}  // namespace cemoea
