#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cemoea/graph.hpp"

namespace cemoea {

/// Continuous decision vector in [0,1]^d with one value per (node, neighbor)
/// slot, d = 2L. Node i owns the block [net.offset(i), net.offset(i+1)),
/// ordered like net.neighbors(i).
using Genotype = std::vector<double>;

/// Discrete locus-based genotype: the neighbor each node links to.
using LocusGenotype = EdgeSelection;

double sigmoid(double v);

/// Max-shifted softmax; `h` must be non-empty.
std::vector<double> softmax(std::span<const double> h);

/// Sigmoid, softmax and argmax per node block. Ties go to the first slot,
/// i.e. the lowest neighbor id. Throws ValidationError on a length mismatch.
EdgeSelection encode(std::span<const double> x, const AttributeNetwork& net);

/// encode() followed by decode().
Partition gnn_decode(std::span<const double> x, const AttributeNetwork& net);

/// A genotype with every slot at 0 except the selected neighbor's slot at 1;
/// encode() maps it back to `g`.
Genotype indicator_genotype(const LocusGenotype& g, const AttributeNetwork& net);

/// Single-node change of a locus genotype.
struct LocusMove {
  NodeId node;
  NodeId neighbor;
};

/// Every move leading to a genotype at distance one from `g`, ordered by
/// node then neighbor id. Size is the sum over nodes of (d_i - 1).
std::vector<LocusMove> locus_moves(const LocusGenotype& g, const AttributeNetwork& net);

/// Visits the distance-one neighborhood of `g`. The callback sees the
/// neighbor genotype and the move that produced it; `g` is restored before
/// returning.
template <class Visitor>
void for_each_locus_neighbor(LocusGenotype& g, const AttributeNetwork& net, Visitor&& visit) {
  for (NodeId i = 0; i < net.node_count(); ++i) {
    const NodeId original = g[i];
    for (NodeId j : net.neighbors(i)) {
      if (j == original) continue;
      g[i] = j;
      visit(static_cast<const LocusGenotype&>(g), LocusMove{i, j});
    }
    g[i] = original;
  }
}

}  // namespace cemoea
