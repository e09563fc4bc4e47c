/*******************************************************************************
 * Immutable undirected weighted graph in CSR form.
 *
 * @file:   graph.h
 ******************************************************************************/
#pragma once

#include <span>
#include <vector>

#include "ilprefine/definitions.h"

namespace ilprefine {

struct WeightedEdge {
  NodeID u;
  NodeID v;
  EdgeWeight weight;
};

// Adjacency lists are sorted by neighbor id, symmetric, and free of self-loops
// and parallel edges.
class Graph {
public:
  Graph() = default;

  // Parallel edges are merged by summing their weights, self-loops are dropped.
  // Unit vertex weights are used when `vertex_weights` is empty.
  static Graph from_edges(NodeID n, std::span<const WeightedEdge> edges,
                          std::vector<NodeWeight> vertex_weights = {});

  [[nodiscard]] NodeID n() const {
    return static_cast<NodeID>(_vertex_weights.size());
  }
  [[nodiscard]] EdgeID m() const {
    return _targets.size() / 2;
  }

  [[nodiscard]] std::span<const NodeID> neighbors(const NodeID v) const {
    return {_targets.data() + _offsets[v], _targets.data() + _offsets[v + 1]};
  }
  [[nodiscard]] std::span<const EdgeWeight> neighbor_weights(const NodeID v) const {
    return {_weights.data() + _offsets[v], _weights.data() + _offsets[v + 1]};
  }
  [[nodiscard]] NodeID degree(const NodeID v) const {
    return static_cast<NodeID>(_offsets[v + 1] - _offsets[v]);
  }

  [[nodiscard]] NodeWeight vertex_weight(const NodeID v) const {
    return _vertex_weights[v];
  }
  [[nodiscard]] std::span<const NodeWeight> vertex_weights() const {
    return _vertex_weights;
  }
  [[nodiscard]] NodeWeight total_vertex_weight() const {
    return _total_vertex_weight;
  }
  [[nodiscard]] EdgeWeight total_edge_weight() const {
    return _total_edge_weight;
  }

  // Every undirected edge once, with u < v, in ascending (u, v) order.
  [[nodiscard]] std::vector<WeightedEdge> edges() const;

  [[nodiscard]] std::size_t self_loops_dropped() const {
    return _self_loops_dropped;
  }

  bool operator==(const Graph &other) const = default;

private:
  std::vector<EdgeID> _offsets{0};
  std::vector<NodeID> _targets;
  std::vector<EdgeWeight> _weights;
  std::vector<NodeWeight> _vertex_weights;
  NodeWeight _total_vertex_weight = 0;
  EdgeWeight _total_edge_weight = 0;
  std::size_t _self_loops_dropped = 0;
};

} // namespace ilprefine
