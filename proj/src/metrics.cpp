#include "cemoea/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cemoea/errors.hpp"

namespace cemoea {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

ConfusionMatrix::ConfusionMatrix(const Partition& p, const Partition& q)
    : row_sums_(p.community_count()), col_sums_(q.community_count()) {
  if (p.node_count() != q.node_count()) {
    throw ValidationError("partitions cover " + std::to_string(p.node_count()) + " and " +
                          std::to_string(q.node_count()) + " nodes");
  }
  counts_.assign(rows() * cols(), 0);
  for (NodeId v = 0; v < p.node_count(); ++v) {
    const auto i = p.community_of(v);
    const auto j = q.community_of(v);
    ++counts_[i * cols() + j];
    ++row_sums_[i];
    ++col_sums_[j];
  }
  total_ = p.node_count();
}

double density(const Partition& p, const AttributeNetwork& net) {
  if (net.edge_count() == 0) throw ValidationError("density is undefined without edges");
  std::size_t intra = 0;
  for (const auto& s : partition_stats(p, net)) intra += s.intra_edges;
  return static_cast<double>(intra) / static_cast<double>(net.edge_count());
}

double entropy(const Partition& p, const AttributeNetwork& net) {
  const auto r = static_cast<double>(net.node_count());
  double total = 0.0;
  std::vector<double> values;
  for (CommunityId k = 0; k < p.community_count(); ++k) {
    const auto members = p.members(k);
    const auto size = static_cast<double>(members.size());
    double h = 0.0;
    if (net.kind() == AttributeKind::single_real) {
      values.clear();
      for (NodeId i : members) values.push_back(net.attributes(i)[0]);
      std::sort(values.begin(), values.end());
      for (std::size_t a = 0; a < values.size();) {
        std::size_t b = a;
        while (b < values.size() && values[b] == values[a]) ++b;
        h -= plogp(static_cast<double>(b - a) / size);
        a = b;
      }
    } else {
      const std::size_t dim = net.attribute_dim();
      for (std::size_t j = 0; j < dim; ++j) {
        double ones = 0.0;
        for (NodeId i : members) ones += net.attributes(i)[j];
        const double q = ones / size;
        h -= plogp(q) + plogp(1.0 - q);
      }
      h /= static_cast<double>(dim);
    }
    total += size / r * h;
  }
  return total;
}

double nmi(const Partition& p, const Partition& truth) {
  const ConfusionMatrix m(p, truth);
  const auto r = static_cast<double>(m.total());
  // Numerator and denominator of the usual form, both negated so they are
  // non-negative.
  double mutual = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto mij = static_cast<double>(m.at(i, j));
      if (mij == 0.0) continue;
      mutual += mij * std::log(r * mij / (static_cast<double>(m.row_sum(i)) *
                                          static_cast<double>(m.col_sum(j))));
    }
  }
  double marginals = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto s = static_cast<double>(m.row_sum(i));
    marginals -= s * std::log(s / r);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto s = static_cast<double>(m.col_sum(j));
    marginals -= s * std::log(s / r);
  }
  // Both partitions are the single community.
  if (marginals == 0.0) return p == truth ? 1.0 : 0.0;
  return std::clamp(2.0 * mutual / marginals, 0.0, 1.0);
}

}  // namespace cemoea
