/*******************************************************************************
 * k-way partition with cached block weights and cut, plus the basic partition
 * metrics: cut, balance bound, boundary vertices and vertex gain.
 *
 * @file:   partition.h
 ******************************************************************************/
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ilprefine/definitions.h"
#include "ilprefine/graph.h"

namespace ilprefine {

// Value object. The caches are kept exact under move(); callers that share a
// partition across threads clone it first.
class Partition {
public:
  Partition() = default;

  // Throws LengthMismatch / BlockOutOfRange on invalid assignments.
  Partition(const Graph &graph, PartitionID k, double epsilon,
            std::vector<PartitionID> assignment);

  [[nodiscard]] PartitionID k() const {
    return _k;
  }
  [[nodiscard]] double epsilon() const {
    return _epsilon;
  }
  [[nodiscard]] PartitionID block(const NodeID v) const {
    return _assignment[v];
  }
  [[nodiscard]] std::span<const PartitionID> assignment() const {
    return _assignment;
  }
  [[nodiscard]] NodeWeight block_weight(const PartitionID b) const {
    return _block_weights[b];
  }
  [[nodiscard]] std::span<const NodeWeight> block_weights() const {
    return _block_weights;
  }
  [[nodiscard]] NodeWeight max_block_weight() const;
  [[nodiscard]] EdgeWeight cut() const {
    return _cut;
  }

  // Moves v to block `to`, updating block weights and the cut incrementally.
  void move(const Graph &graph, NodeID v, PartitionID to);

  bool operator==(const Partition &other) const = default;

private:
  PartitionID _k = 0;
  double _epsilon = 0;
  std::vector<PartitionID> _assignment;
  std::vector<NodeWeight> _block_weights;
  EdgeWeight _cut = 0;
};

struct Gain {
  EdgeWeight value;
  PartitionID target; // kInvalidBlock for interior vertices
};

EdgeWeight cut_value(const Graph &graph, std::span<const PartitionID> assignment);

// (1 + epsilon) * ceil(c(V) / k)
double l_max(NodeWeight total_weight, PartitionID k, double epsilon);
double l_max(const Graph &graph, PartitionID k, double epsilon);

bool is_balanced(const Graph &graph, const Partition &partition);

// Ascending vertex ids.
std::vector<NodeID> boundary_vertices(const Graph &graph, const Partition &partition);

bool is_boundary(const Graph &graph, const Partition &partition, NodeID v);

// Best single-vertex move. Only blocks that contain a neighbor of v are
// candidates; ties go to the smallest block id. Interior vertices get
// (-weight to own block, kInvalidBlock).
Gain gain(const Graph &graph, const Partition &partition, NodeID v);

} // namespace ilprefine
