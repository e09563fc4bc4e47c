/*******************************************************************************
 * @file:   graph.cpp
 ******************************************************************************/
#include "ilprefine/graph.h"

#include <algorithm>

namespace ilprefine {

const char *to_string(const ErrorCode code) {
  switch (code) {
  case ErrorCode::Io:
    return "IoError";
  case ErrorCode::MalformedHeader:
    return "MalformedHeader";
  case ErrorCode::MalformedLine:
    return "MalformedLine";
  case ErrorCode::AsymmetricAdjacency:
    return "AsymmetricAdjacency";
  case ErrorCode::VertexOutOfRange:
    return "VertexOutOfRange";
  case ErrorCode::LengthMismatch:
    return "LengthMismatch";
  case ErrorCode::BlockOutOfRange:
    return "BlockOutOfRange";
  case ErrorCode::UnbalancedInput:
    return "UnbalancedInput";
  case ErrorCode::InfeasibleFixing:
    return "InfeasibleFixing";
  case ErrorCode::CapExceeded:
    return "CapExceeded";
  case ErrorCode::BootstrapFailed:
    return "BootstrapFailed";
  case ErrorCode::InvalidArgument:
    return "InvalidArgument";
  }
  return "UnknownError";
}

Graph Graph::from_edges(const NodeID n, std::span<const WeightedEdge> edges,
                        std::vector<NodeWeight> vertex_weights) {
  if (vertex_weights.empty()) {
    vertex_weights.assign(n, 1.0);
  }
  if (vertex_weights.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "vertex weight count does not match n");
  }

  Graph graph;
  graph._vertex_weights = std::move(vertex_weights);
  for (const NodeWeight w : graph._vertex_weights) {
    if (!(w >= 0)) {
      throw Error(ErrorCode::InvalidArgument, "vertex weights must be non-negative");
    }
    graph._total_vertex_weight += w;
  }

  std::vector<WeightedEdge> directed;
  directed.reserve(2 * edges.size());
  for (const WeightedEdge &e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::VertexOutOfRange, "edge endpoint out of range");
    }
    if (!(e.weight >= 0)) {
      throw Error(ErrorCode::InvalidArgument, "edge weights must be non-negative");
    }
    if (e.u == e.v) {
      ++graph._self_loops_dropped;
      continue;
    }
    directed.push_back(e);
    directed.push_back({e.v, e.u, e.weight});
  }
  std::sort(directed.begin(), directed.end(), [](const auto &a, const auto &b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  graph._offsets.assign(n + 1, 0);
  graph._targets.reserve(directed.size());
  graph._weights.reserve(directed.size());
  for (std::size_t i = 0; i < directed.size(); ++i) {
    const WeightedEdge &e = directed[i];
    if (i > 0 && directed[i - 1].u == e.u && directed[i - 1].v == e.v) {
      graph._weights.back() += e.weight;
      continue;
    }
    graph._targets.push_back(e.v);
    graph._weights.push_back(e.weight);
    ++graph._offsets[e.u + 1];
  }
  for (NodeID v = 0; v < n; ++v) {
    graph._offsets[v + 1] += graph._offsets[v];
  }
  for (NodeID u = 0; u < n; ++u) {
    const auto targets = graph.neighbors(u);
    const auto weights = graph.neighbor_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (u < targets[i]) {
        graph._total_edge_weight += weights[i];
      }
    }
  }
  return graph;
}

std::vector<WeightedEdge> Graph::edges() const {
  std::vector<WeightedEdge> result;
  result.reserve(m());
  for (NodeID u = 0; u < n(); ++u) {
    const auto targets = neighbors(u);
    const auto weights = neighbor_weights(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (u < targets[i]) {
        result.push_back({u, targets[i], weights[i]});
      }
    }
  }
  return result;
}

} // namespace ilprefine
