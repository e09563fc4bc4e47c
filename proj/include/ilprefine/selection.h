/*******************************************************************************
 * Selection of the vertex set K that stays uncontracted in the coarse model.
 *
 * All strategies grow K one vertex at a time and stop right before the
 * insertion that would push the non-zero count of the resulting binary
 * program above the budget N.
 *
 * @file:   selection.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ilprefine/graph.h"
#include "ilprefine/partition.h"

namespace ilprefine {

constexpr std::uint64_t kUnlimitedNonzeros = std::numeric_limits<std::uint64_t>::max();

enum class StrategyKind { Boundary, Gain, TopVertices };

struct SelectionStrategy {
  StrategyKind kind = StrategyKind::Boundary;
  double rho = -2.0;      // Gain
  unsigned delta = 1;     // TopVertices
  std::uint64_t nonzero_budget = 1'000'000;
  std::uint64_t seed = 0;

  static SelectionStrategy boundary();
  static SelectionStrategy gain(double rho);
  static SelectionStrategy top_vertices(unsigned delta);

  // "boundary", "gain:<rho>" or "topvertices:<delta>". Throws InvalidArgument.
  static SelectionStrategy parse(std::string_view spelling);
  [[nodiscard]] std::string to_string() const;
};

struct KeptSet {
  std::vector<NodeID> vertices; // insertion order
  std::uint64_t nonzeros_at_stop = 0;
  SelectionStrategy strategy_used;
  bool budget_exhausted = false;
  bool skipped = false; // the model with K empty already exceeds the budget
};

// Edge count of the coarse model and the derived non-zero count
// k * (6|E| + 2|V|), maintained while K grows.
class NonzeroTracker {
public:
  NonzeroTracker(const Graph &graph, const Partition &partition);

  [[nodiscard]] std::uint64_t model_vertices() const {
    return _partition.k() + _kept_count;
  }
  [[nodiscard]] std::uint64_t model_edges() const {
    return _kept_kept + _kept_super + _super_super;
  }
  [[nodiscard]] std::uint64_t nonzeros() const {
    return count(model_edges(), model_vertices());
  }
  [[nodiscard]] bool is_kept(const NodeID v) const {
    return _kept[v] != 0;
  }

  [[nodiscard]] std::uint64_t nonzeros_if_added(NodeID v) const;
  void add(NodeID v);

private:
  [[nodiscard]] std::uint64_t count(std::uint64_t edges, std::uint64_t vertices) const;
  [[nodiscard]] std::int64_t edge_delta(NodeID v) const;
  void commit(NodeID v);
  [[nodiscard]] std::size_t pair_index(PartitionID a, PartitionID b) const;

  const Graph &_graph;
  const Partition &_partition;
  std::vector<char> _kept;
  std::uint64_t _kept_count = 0;
  std::uint64_t _kept_kept = 0;
  std::uint64_t _kept_super = 0;
  std::uint64_t _super_super = 0;
  // Original edges between V_i \ K and V_j \ K, indexed i * k + j with i < j.
  std::vector<std::uint64_t> _pair_edges;
  // For kept u: number of neighbors in V_b \ K, keyed u * k + b.
  std::unordered_map<std::uint64_t, std::uint32_t> _kept_to_block;
};

std::uint64_t estimate_nonzeros(const Graph &graph, const Partition &partition,
                                std::span<const NodeID> kept);

KeptSet select_boundary(const Graph &graph, const Partition &partition, std::uint64_t budget,
                        std::uint64_t seed);
KeptSet select_gain(const Graph &graph, const Partition &partition, double rho,
                    std::uint64_t budget, std::uint64_t seed);
KeptSet select_top_vertices(const Graph &graph, const Partition &partition, unsigned delta,
                            std::uint64_t budget, std::uint64_t seed);

KeptSet select(const Graph &graph, const Partition &partition, const SelectionStrategy &strategy);

} // namespace ilprefine
