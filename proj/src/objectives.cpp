#include "cemoea/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cemoea/encoding.hpp"
#include "cemoea/errors.hpp"

namespace cemoea {

namespace {

double denominator_value(const Partition& p, SimilarityDenominator denom) {
  double total = 0.0;
  for (CommunityId k = 0; k < p.community_count(); ++k) {
    const auto r = static_cast<double>(p.size(k));
    switch (denom) {
      case SimilarityDenominator::pairs: total += r * (r - 1.0); break;
      case SimilarityDenominator::size: total += r; break;
      case SimilarityDenominator::size_squared: total += r * r; break;
      case SimilarityDenominator::size_minus_one_squared: total += (r - 1.0) * (r - 1.0); break;
      case SimilarityDenominator::none: return 1.0;
    }
  }
  return total;
}

double normalize(double numerator, const Partition& p, SimilarityDenominator denom) {
  const double d = denominator_value(p, denom);
  return d == 0.0 ? 0.0 : numerator / d;
}

// Sum of |a_i - a_j| over pairs, from the sorted values:
// sum_j v_j * (2j - (n - 1)).
double pairwise_abs_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  double total = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    total += values[j] * (2.0 * static_cast<double>(j) - (n - 1.0));
  }
  return total;
}

void require_kind(const AttributeNetwork& net, AttributeKind kind) {
  if (net.kind() != kind) {
    throw ValidationError(kind == AttributeKind::single_real
                              ? "objective needs single-real attributes"
                              : "objective needs multi-binary attributes");
  }
}

}  // namespace

SimilarityDenominator parse_denominator(std::string_view name) {
  if (name == "pairs") return SimilarityDenominator::pairs;
  if (name == "size") return SimilarityDenominator::size;
  if (name == "size_squared") return SimilarityDenominator::size_squared;
  if (name == "size_minus_one_squared") return SimilarityDenominator::size_minus_one_squared;
  if (name == "none") return SimilarityDenominator::none;
  throw ValidationError("unknown denominator '" + std::string(name) + "'");
}

std::string_view to_string(SimilarityDenominator d) {
  switch (d) {
    case SimilarityDenominator::pairs: return "pairs";
    case SimilarityDenominator::size: return "size";
    case SimilarityDenominator::size_squared: return "size_squared";
    case SimilarityDenominator::size_minus_one_squared: return "size_minus_one_squared";
    case SimilarityDenominator::none: return "none";
  }
  return "pairs";
}

double modularity(const Partition& p, const AttributeNetwork& net) {
  const auto edges = static_cast<double>(net.edge_count());
  if (net.edge_count() == 0) throw ValidationError("modularity is undefined without edges");
  double q = 0.0;
  for (const auto& s : partition_stats(p, net)) {
    const double share = static_cast<double>(s.degree_sum) / (2.0 * edges);
    q += static_cast<double>(s.intra_edges) / edges - share * share;
  }
  return q;
}

double attr_similarity_single(const Partition& p, const AttributeNetwork& net,
                              SimilarityDenominator denom) {
  require_kind(net, AttributeKind::single_real);
  double numerator = 0.0;
  std::vector<double> values;
  for (CommunityId k = 0; k < p.community_count(); ++k) {
    values.clear();
    for (NodeId i : p.members(k)) values.push_back(net.attributes(i)[0]);
    numerator += pairwise_abs_sum(values);
  }
  return normalize(numerator, p, denom);
}

double attr_similarity_multi(const Partition& p, const AttributeNetwork& net,
                             SimilarityDenominator denom) {
  require_kind(net, AttributeKind::multi_binary);
  return Evaluator(net, denom).similarity(p);
}

double attr_similarity(const Partition& p, const AttributeNetwork& net,
                       SimilarityDenominator denom) {
  return net.kind() == AttributeKind::single_real ? attr_similarity_single(p, net, denom)
                                                  : attr_similarity_multi(p, net, denom);
}

Evaluator::Evaluator(const AttributeNetwork& net, SimilarityDenominator denom)
    : net_(&net), denom_(denom) {
  if (net.kind() != AttributeKind::multi_binary) return;
  const std::size_t dim = net.attribute_dim();
  unit_attributes_.resize(net.node_count() * dim);
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto a = net.attributes(i);
    double norm = 0.0;
    for (double v : a) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw ValidationError("zero-norm attribute vector on node " + std::to_string(i));
    for (std::size_t j = 0; j < dim; ++j) unit_attributes_[i * dim + j] = a[j] / norm;
  }
}

double Evaluator::modularity(const Partition& p) const { return cemoea::modularity(p, *net_); }

double Evaluator::similarity(const Partition& p) const {
  if (net_->kind() == AttributeKind::single_real) {
    return attr_similarity_single(p, *net_, denom_);
  }
  // For unit vectors u_i: sum_{i<j} u_i . u_j = (|sum u_i|^2 - r_k) / 2.
  const std::size_t dim = net_->attribute_dim();
  std::vector<double> sum(dim);
  double numerator = 0.0;
  for (CommunityId k = 0; k < p.community_count(); ++k) {
    const auto members = p.members(k);
    if (members.size() < 2) continue;
    std::fill(sum.begin(), sum.end(), 0.0);
    for (NodeId i : members) {
      const double* u = unit_attributes_.data() + static_cast<std::size_t>(i) * dim;
      for (std::size_t j = 0; j < dim; ++j) sum[j] += u[j];
    }
    double squared = 0.0;
    for (double s : sum) squared += s * s;
    numerator += 0.5 * (squared - static_cast<double>(members.size()));
  }
  return normalize(std::max(numerator, 0.0), p, denom_);
}

ObjectiveVector Evaluator::objectives(const Partition& p) const {
  return {-modularity(p), similarity(p)};
}

ObjectiveVector Evaluator::evaluate(std::span<const double> x) const {
  return objectives(gnn_decode(x, *net_));
}

ObjectiveVector evaluate(std::span<const double> x, const AttributeNetwork& net,
                         SimilarityDenominator denom) {
  return Evaluator(net, denom).evaluate(x);
}

}  // namespace cemoea
