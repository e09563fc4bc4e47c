/*******************************************************************************
 * Coarse model: every block's vertices outside K are contracted into one
 * super-vertex. Super-vertex of block i has model id i, kept vertices follow
 * in insertion order. Partitions of the model map to partitions of the input
 * graph with the same cut and block weights.
 *
 * @file:   coarse_model.h
 ******************************************************************************/
#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ilprefine/graph.h"
#include "ilprefine/partition.h"

namespace ilprefine {

// Holds a reference to the input graph, which must outlive the model.
class CoarseModel {
public:
  CoarseModel(const Graph &graph, const Partition &partition, std::span<const NodeID> kept);

  [[nodiscard]] const Graph &graph() const {
    return _model;
  }
  [[nodiscard]] const Graph &original_graph() const {
    return *_original;
  }
  [[nodiscard]] PartitionID k() const {
    return _origin.k();
  }
  [[nodiscard]] const Partition &origin_partition() const {
    return _origin;
  }
  [[nodiscard]] NodeID original_n() const {
    return static_cast<NodeID>(_to_model.size());
  }
  // Sum of vertex weights of the input graph (equal to the model's total).
  [[nodiscard]] NodeWeight original_total_weight() const {
    return _original_total_weight;
  }

  [[nodiscard]] bool is_super_vertex(const NodeID model_id) const {
    return model_id < k();
  }
  [[nodiscard]] NodeWeight super_weight(const PartitionID block) const {
    return _model.vertex_weight(block);
  }
  [[nodiscard]] std::span<const NodeID> kept() const {
    return _kept;
  }
  // Original id of a kept model vertex.
  [[nodiscard]] NodeID original_of(const NodeID model_id) const {
    return _kept[model_id - k()];
  }
  [[nodiscard]] NodeID model_of(const NodeID original) const {
    return _to_model[original];
  }
  [[nodiscard]] std::span<const NodeID> interior_members(const PartitionID block) const {
    return _interior_members[block];
  }

private:
  const Graph *_original;
  Graph _model;
  Partition _origin;
  NodeWeight _original_total_weight = 0;
  std::vector<NodeID> _kept;
  std::vector<NodeID> _to_model;
  std::vector<std::vector<NodeID>> _interior_members;
};

inline CoarseModel build_model(const Graph &graph, const Partition &partition,
                               std::span<const NodeID> kept) {
  return CoarseModel(graph, partition, kept);
}

// mu_i -> i, kept vertex -> its block in the input partition.
std::vector<PartitionID> induced_model_partition(const CoarseModel &model);

Partition project_solution(const CoarseModel &model, std::span<const PartitionID> model_assignment);

// Debug dump: the model graph as METIS plus a sidecar file that maps every
// model id (1-indexed line) to its original vertex or "mu:<i>".
void write_model_mapping(const CoarseModel &model, std::ostream &out);
void dump_model(const CoarseModel &model, const std::string &graph_path,
                const std::string &mapping_path);

} // namespace ilprefine
