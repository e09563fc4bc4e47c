/*******************************************************************************
 * @file:   partition.cpp
 ******************************************************************************/
#include "ilprefine/partition.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace ilprefine {

Partition::Partition(const Graph &graph, const PartitionID k, const double epsilon,
                     std::vector<PartitionID> assignment)
    : _k(k), _epsilon(epsilon), _assignment(std::move(assignment)), _block_weights(k, 0.0) {
  if (k == 0) {
    throw Error(ErrorCode::InvalidArgument, "k must be positive");
  }
  if (!(epsilon >= 0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be non-negative");
  }
  if (_assignment.size() != graph.n()) {
    throw Error(ErrorCode::LengthMismatch, "partition has " + std::to_string(_assignment.size()) +
                                               " entries, graph has " + std::to_string(graph.n()) +
                                               " vertices");
  }
  for (NodeID v = 0; v < graph.n(); ++v) {
    if (_assignment[v] >= k) {
      throw Error(ErrorCode::BlockOutOfRange, "vertex " + std::to_string(v) + " has block " +
                                                  std::to_string(_assignment[v]) + " >= k = " +
                                                  std::to_string(k));
    }
    _block_weights[_assignment[v]] += graph.vertex_weight(v);
  }
  _cut = cut_value(graph, _assignment);
}

NodeWeight Partition::max_block_weight() const {
  return _block_weights.empty() ? 0 : *std::max_element(_block_weights.begin(), _block_weights.end());
}

void Partition::move(const Graph &graph, const NodeID v, const PartitionID to) {
  const PartitionID from = _assignment[v];
  if (from == to) {
    return;
  }
  const auto targets = graph.neighbors(v);
  const auto weights = graph.neighbor_weights(v);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const PartitionID b = _assignment[targets[i]];
    if (b == from) {
      _cut += weights[i];
    } else if (b == to) {
      _cut -= weights[i];
    }
  }
  _block_weights[from] -= graph.vertex_weight(v);
  _block_weights[to] += graph.vertex_weight(v);
  _assignment[v] = to;
}

EdgeWeight cut_value(const Graph &graph, std::span<const PartitionID> assignment) {
  EdgeWeight cut = 0;
  for (NodeID u = 0; u < graph.n(); ++u) {
    const auto targets = graph.neighbors(u);
    const auto weights = graph.neighbor_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (u < targets[i] && assignment[u] != assignment[targets[i]]) {
        cut += weights[i];
      }
    }
  }
  return cut;
}

double l_max(const NodeWeight total_weight, const PartitionID k, const double epsilon) {
  return (1.0 + epsilon) * std::ceil(total_weight / static_cast<double>(k));
}

double l_max(const Graph &graph, const PartitionID k, const double epsilon) {
  return l_max(graph.total_vertex_weight(), k, epsilon);
}

bool is_balanced(const Graph &graph, const Partition &partition) {
  return partition.max_block_weight() <= l_max(graph, partition.k(), partition.epsilon());
}

bool is_boundary(const Graph &graph, const Partition &partition, const NodeID v) {
  const PartitionID own = partition.block(v);
  return std::any_of(graph.neighbors(v).begin(), graph.neighbors(v).end(),
                     [&](const NodeID u) { return partition.block(u) != own; });
}

std::vector<NodeID> boundary_vertices(const Graph &graph, const Partition &partition) {
  std::vector<NodeID> result;
  for (NodeID v = 0; v < graph.n(); ++v) {
    if (is_boundary(graph, partition, v)) {
      result.push_back(v);
    }
  }
  return result;
}

Gain gain(const Graph &graph, const Partition &partition, const NodeID v) {
  const PartitionID own = partition.block(v);
  EdgeWeight internal = 0;
  std::map<PartitionID, EdgeWeight> external;
  const auto targets = graph.neighbors(v);
  const auto weights = graph.neighbor_weights(v);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const PartitionID b = partition.block(targets[i]);
    if (b == own) {
      internal += weights[i];
    } else {
      external[b] += weights[i];
    }
  }

  Gain best{-internal, kInvalidBlock};
  for (const auto &[block, weight] : external) {
    if (best.target == kInvalidBlock || weight - internal > best.value) {
      best = {weight - internal, block};
    }
  }
  return best;
}

} // namespace ilprefine
