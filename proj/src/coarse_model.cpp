/*******************************************************************************
 * @file:   coarse_model.cpp
 ******************************************************************************/
#include "ilprefine/coarse_model.h"

#include <fstream>
#include <ostream>

#include "ilprefine/graph_io.h"

namespace ilprefine {

CoarseModel::CoarseModel(const Graph &graph, const Partition &partition,
                         std::span<const NodeID> kept)
    : _original(&graph), _origin(partition), _original_total_weight(graph.total_vertex_weight()),
      _kept(kept.begin(), kept.end()), _to_model(graph.n(), kInvalidNode),
      _interior_members(partition.k()) {
  const PartitionID k = partition.k();
  for (std::size_t i = 0; i < _kept.size(); ++i) {
    const NodeID v = _kept[i];
    if (v >= graph.n()) {
      throw Error(ErrorCode::VertexOutOfRange, "kept vertex " + std::to_string(v) + " not in graph");
    }
    if (_to_model[v] != kInvalidNode) {
      throw Error(ErrorCode::InvalidArgument, "kept vertex " + std::to_string(v) + " listed twice");
    }
    _to_model[v] = static_cast<NodeID>(k + i);
  }

  std::vector<NodeWeight> weights(k + _kept.size(), 0.0);
  for (NodeID v = 0; v < graph.n(); ++v) {
    if (_to_model[v] == kInvalidNode) {
      _to_model[v] = partition.block(v);
      _interior_members[partition.block(v)].push_back(v);
    }
    weights[_to_model[v]] += graph.vertex_weight(v);
  }

  std::vector<WeightedEdge> edges;
  for (const WeightedEdge &e : graph.edges()) {
    const NodeID a = _to_model[e.u];
    const NodeID b = _to_model[e.v];
    if (a != b) {
      edges.push_back({a, b, e.weight});
    }
  }
  const auto model_n = static_cast<NodeID>(weights.size());
  _model = Graph::from_edges(model_n, edges, std::move(weights));
}

std::vector<PartitionID> induced_model_partition(const CoarseModel &model) {
  std::vector<PartitionID> assignment(model.graph().n());
  for (PartitionID b = 0; b < model.k(); ++b) {
    assignment[b] = b;
  }
  for (NodeID id = model.k(); id < model.graph().n(); ++id) {
    assignment[id] = model.origin_partition().block(model.original_of(id));
  }
  return assignment;
}

Partition project_solution(const CoarseModel &model, std::span<const PartitionID> model_assignment) {
  if (model_assignment.size() != model.graph().n()) {
    throw Error(ErrorCode::LengthMismatch, "model assignment has " +
                                               std::to_string(model_assignment.size()) +
                                               " entries, model has " +
                                               std::to_string(model.graph().n()) + " vertices");
  }
  std::vector<PartitionID> assignment(model.original_n());
  for (NodeID v = 0; v < model.original_n(); ++v) {
    assignment[v] = model_assignment[model.model_of(v)];
  }
  return Partition(model.original_graph(), model.k(), model.origin_partition().epsilon(),
                   std::move(assignment));
}

void write_model_mapping(const CoarseModel &model, std::ostream &out) {
  for (NodeID id = 0; id < model.graph().n(); ++id) {
    if (model.is_super_vertex(id)) {
      out << "mu:" << id << '\n';
    } else {
      out << model.original_of(id) << '\n';
    }
  }
}

void dump_model(const CoarseModel &model, const std::string &graph_path,
                const std::string &mapping_path) {
  write_metis(model.graph(), graph_path);
  std::ofstream out(mapping_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + mapping_path + "'");
  }
  write_model_mapping(model, out);
}

} // namespace ilprefine
