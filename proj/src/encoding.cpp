#include "cemoea/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cemoea/errors.hpp"

namespace cemoea {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

std::vector<double> softmax(std::span<const double> h) {
  const double top = *std::max_element(h.begin(), h.end());
  std::vector<double> p(h.size());
  double total = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    p[j] = std::exp(h[j] - top);
    total += p[j];
  }
  for (double& v : p) v /= total;
  return p;
}

EdgeSelection encode(std::span<const double> x, const AttributeNetwork& net) {
  if (x.size() != net.slot_count()) {
    throw ValidationError("genotype has " + std::to_string(x.size()) + " values, network needs " +
                          std::to_string(net.slot_count()));
  }
  EdgeSelection sel;
  sel.selected.assign(net.node_count(), EdgeSelection::kNoNeighbor);
  std::vector<double> hidden;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto nbrs = net.neighbors(i);
    if (nbrs.empty()) continue;
    const auto block = x.subspan(net.offset(i), nbrs.size());
    hidden.resize(block.size());
    std::transform(block.begin(), block.end(), hidden.begin(), sigmoid);
    const auto p = softmax(hidden);
    const auto best = std::max_element(p.begin(), p.end());  // first maximum
    sel[i] = nbrs[static_cast<std::size_t>(best - p.begin())];
  }
  return sel;
}

Partition gnn_decode(std::span<const double> x, const AttributeNetwork& net) {
  return decode(encode(x, net), net);
}

Genotype indicator_genotype(const LocusGenotype& g, const AttributeNetwork& net) {
  Genotype x(net.slot_count(), 0.0);
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const auto nbrs = net.neighbors(i);
    if (nbrs.empty()) continue;
    const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), g[i]);
    x[net.offset(i) + static_cast<std::size_t>(it - nbrs.begin())] = 1.0;
  }
  return x;
}

std::vector<LocusMove> locus_moves(const LocusGenotype& g, const AttributeNetwork& net) {
  std::vector<LocusMove> moves;
  for (NodeId i = 0; i < net.node_count(); ++i) {
    for (NodeId j : net.neighbors(i)) {
      if (j != g[i]) moves.push_back({i, j});
    }
  }
  return moves;
}

}  // namespace cemoea
