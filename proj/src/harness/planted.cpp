#include <filesystem>

#include "cemoea/errors.hpp"
#include "cemoea/harness.hpp"
#include "cemoea/rng.hpp"

namespace cemoea::harness {

namespace {

constexpr std::uint64_t kEdgeStream = 0xed;
constexpr std::uint64_t kAttributeStream = 0xa7;

}  // namespace

void PlantedOptions::validate() const {
  if (communities == 0) throw ValidationError("comms must be positive");
  if (nodes == 0 || nodes % communities != 0) {
    throw ValidationError("nodes must be a positive multiple of comms");
  }
  if (nodes / communities < 2) throw ValidationError("each community needs at least two nodes");
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0)) {
    throw ValidationError("need 0 <= pout < pin <= 1");
  }
  if (!(noise >= 0.0 && noise <= 1.0)) throw ValidationError("noise must lie in [0, 1]");
}

PlantedNetwork gen_planted(const PlantedOptions& opt) {
  opt.validate();
  const std::size_t r = opt.nodes;
  const std::size_t block = r / opt.communities;
  auto community = [block](std::size_t i) { return static_cast<std::uint32_t>(i / block); };

  Rng edges_rng = Rng::stream(opt.seed, kEdgeStream);
  std::vector<AttributeNetwork::Edge> edges;
  std::vector<std::size_t> degree(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      const double p = community(i) == community(j) ? opt.p_in : opt.p_out;
      if (edges_rng.uniform() < p) {
        edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
        ++degree[i];
        ++degree[j];
      }
    }
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (degree[i] != 0) continue;
    const std::size_t first = community(i) * block;
    std::size_t j = first + edges_rng.index(block - 1);
    if (j >= i) ++j;
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    ++degree[i];
    ++degree[j];
  }

  Rng attr_rng = Rng::stream(opt.seed, kAttributeStream);
  std::vector<std::uint32_t> labels(r);
  std::vector<std::vector<double>> attributes(r);
  for (std::size_t i = 0; i < r; ++i) {
    labels[i] = community(i);
    std::uint32_t value = labels[i];
    if (opt.communities > 1 && attr_rng.uniform() < opt.noise) {
      auto other = static_cast<std::uint32_t>(attr_rng.index(opt.communities - 1));
      value = other >= value ? other + 1 : other;
    }
    attributes[i] = {static_cast<double>(value)};
  }

  return {AttributeNetwork::build(r, std::move(edges), std::move(attributes),
                                  AttributeKind::single_real),
          Partition::from_labels(labels)};
}

void write_planted(const PlantedNetwork& planted, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  write_edges(out / "edges.txt", planted.net);
  write_attributes(out / "attrs.txt", planted.net);
  write_labels(out / "truth.txt", planted.truth);
}

}  // namespace cemoea::harness
