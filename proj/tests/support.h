/*******************************************************************************
 * Graph generators and a brute-force partitioning oracle shared by the tests.
 * The oracle works on the input graph directly and shares no code with the
 * solver or the model builders.
 *
 * @file:   support.h
 ******************************************************************************/
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "ilprefine/graph.h"
#include "ilprefine/partition.h"

namespace ilprefine::test {

inline Graph make_graph(const NodeID n, const std::vector<std::pair<NodeID, NodeID>> &pairs,
                        std::vector<NodeWeight> weights = {}) {
  std::vector<WeightedEdge> edges;
  for (const auto &[u, v] : pairs) {
    edges.push_back({u, v, 1.0});
  }
  return Graph::from_edges(n, edges, std::move(weights));
}

inline Graph path_graph(const NodeID n) {
  std::vector<std::pair<NodeID, NodeID>> pairs;
  for (NodeID v = 0; v + 1 < n; ++v) {
    pairs.emplace_back(v, v + 1);
  }
  return make_graph(n, pairs);
}

inline Graph cycle_graph(const NodeID n) {
  std::vector<std::pair<NodeID, NodeID>> pairs;
  for (NodeID v = 0; v < n; ++v) {
    pairs.emplace_back(v, (v + 1) % n);
  }
  return make_graph(n, pairs);
}

inline Graph complete_graph(const NodeID n) {
  std::vector<std::pair<NodeID, NodeID>> pairs;
  for (NodeID u = 0; u < n; ++u) {
    for (NodeID v = u + 1; v < n; ++v) {
      pairs.emplace_back(u, v);
    }
  }
  return make_graph(n, pairs);
}

// Vertex 0 is the center.
inline Graph star_graph(const NodeID leaves) {
  std::vector<std::pair<NodeID, NodeID>> pairs;
  for (NodeID v = 1; v <= leaves; ++v) {
    pairs.emplace_back(0, v);
  }
  return make_graph(leaves + 1, pairs);
}

// Triangulated rows x cols grid, the usual shape of 2D finite-element meshes.
inline Graph mesh_graph(const NodeID rows, const NodeID cols) {
  std::vector<std::pair<NodeID, NodeID>> pairs;
  for (NodeID r = 0; r < rows; ++r) {
    for (NodeID c = 0; c < cols; ++c) {
      const NodeID v = r * cols + c;
      if (c + 1 < cols) {
        pairs.emplace_back(v, v + 1);
      }
      if (r + 1 < rows) {
        pairs.emplace_back(v, v + cols);
        if (c + 1 < cols) {
          pairs.emplace_back(v, v + cols + 1);
        }
      }
    }
  }
  return make_graph(rows * cols, pairs);
}

// G(n, p); optionally integer vertex weights in [1,3] and edge weights in [1,4].
inline Graph random_graph(const NodeID n, const double p, const std::uint64_t seed,
                          const bool weighted = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> vw(1, 3);
  std::uniform_int_distribution<int> ew(1, 4);
  std::vector<WeightedEdge> edges;
  for (NodeID u = 0; u < n; ++u) {
    for (NodeID v = u + 1; v < n; ++v) {
      if (coin(rng) < p) {
        edges.push_back({u, v, weighted ? static_cast<double>(ew(rng)) : 1.0});
      }
    }
  }
  std::vector<NodeWeight> weights(n, 1.0);
  if (weighted) {
    for (auto &w : weights) {
      w = vw(rng);
    }
  }
  return Graph::from_edges(n, edges, std::move(weights));
}

inline std::vector<PartitionID> random_assignment(const NodeID n, const PartitionID k,
                                                  const std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PartitionID> block(0, k - 1);
  std::vector<PartitionID> assignment(n);
  for (auto &b : assignment) {
    b = block(rng);
  }
  return assignment;
}

// Round-robin over a random permutation; balanced for unit weights at any eps.
inline std::vector<PartitionID> round_robin_assignment(const NodeID n, const PartitionID k,
                                                       const std::uint64_t seed) {
  std::vector<NodeID> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<PartitionID> assignment(n);
  for (NodeID i = 0; i < n; ++i) {
    assignment[order[i]] = i % k;
  }
  return assignment;
}

inline std::vector<PartitionID> random_subset(const NodeID n, const double fraction,
                                              const std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NodeID> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(std::floor(fraction * n)));
  return order;
}

// Cut recomputed from the adjacency lists, each edge seen from both ends.
inline double naive_cut(const Graph &g, const std::vector<PartitionID> &assignment) {
  double twice = 0;
  for (NodeID u = 0; u < g.n(); ++u) {
    const auto nbrs = g.neighbors(u);
    const auto wgts = g.neighbor_weights(u);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (assignment[u] != assignment[nbrs[i]]) {
        twice += wgts[i];
      }
    }
  }
  return twice / 2;
}

inline std::vector<double> naive_block_weights(const Graph &g, const std::vector<PartitionID> &assignment,
                                               const PartitionID k) {
  std::vector<double> w(k, 0.0);
  for (NodeID v = 0; v < g.n(); ++v) {
    w[assignment[v]] += g.vertex_weight(v);
  }
  return w;
}

struct OracleResult {
  bool feasible = false;
  double cut = std::numeric_limits<double>::infinity();
  std::vector<PartitionID> assignment;
};

// Minimum balanced cut over all k-way assignments. Blocks are interchangeable,
// so vertex i may only open block (max used so far + 1). Prunes overloaded
// blocks and partial cuts that cannot beat the best found.
inline OracleResult brute_force_partition(const Graph &g, const PartitionID k, const double eps) {
  const NodeID n = g.n();
  const double limit = (1.0 + eps) * std::ceil(g.total_vertex_weight() / k);
  OracleResult best;
  std::vector<PartitionID> a(n, 0);
  std::vector<double> w(k, 0.0);

  auto rec = [&](auto &&self, const NodeID v, const PartitionID used, const double cut) -> void {
    if (cut >= best.cut) {
      return;
    }
    if (v == n) {
      best.feasible = true;
      best.cut = cut;
      best.assignment = a;
      return;
    }
    const PartitionID open = std::min<PartitionID>(k, used + 1);
    for (PartitionID b = 0; b < open; ++b) {
      if (w[b] + g.vertex_weight(v) > limit) {
        continue;
      }
      double added = 0;
      const auto nbrs = g.neighbors(v);
      const auto wgts = g.neighbor_weights(v);
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        if (nbrs[i] < v && a[nbrs[i]] != b) {
          added += wgts[i];
        }
      }
      a[v] = b;
      w[b] += g.vertex_weight(v);
      self(self, v + 1, std::max<PartitionID>(used, b + 1), cut + added);
      w[b] -= g.vertex_weight(v);
    }
  };
  rec(rec, 0, 0, 0.0);
  return best;
}

} // namespace ilprefine::test
