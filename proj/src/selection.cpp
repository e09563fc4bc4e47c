/*******************************************************************************
 * @file:   selection.cpp
 ******************************************************************************/
#include "ilprefine/selection.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <map>

#include "ilprefine/graph_io.h"
#include "ilprefine/log.h"
#include "ilprefine/random.h"

namespace ilprefine {

SelectionStrategy SelectionStrategy::boundary() {
  return {};
}

SelectionStrategy SelectionStrategy::gain(const double rho) {
  SelectionStrategy s;
  s.kind = StrategyKind::Gain;
  s.rho = rho;
  return s;
}

SelectionStrategy SelectionStrategy::top_vertices(const unsigned delta) {
  SelectionStrategy s;
  s.kind = StrategyKind::TopVertices;
  s.delta = delta;
  return s;
}

SelectionStrategy SelectionStrategy::parse(const std::string_view spelling) {
  const auto colon = spelling.find(':');
  const std::string_view name = spelling.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spelling.substr(colon + 1);
  const auto bad = [&] {
    return Error(ErrorCode::InvalidArgument,
                 "unknown strategy '" + std::string(spelling) +
                     "' (expected boundary, gain:<rho> or topvertices:<delta>)");
  };

  if (name == "boundary") {
    if (colon != std::string_view::npos) {
      throw bad();
    }
    return boundary();
  }
  if (name == "gain") {
    double rho = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), rho);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size()) {
      throw bad();
    }
    return gain(rho);
  }
  if (name == "topvertices") {
    unsigned delta = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), delta);
    if (arg.empty() || ec != std::errc() || ptr != arg.data() + arg.size() || delta == 0) {
      throw bad();
    }
    return top_vertices(delta);
  }
  throw bad();
}

std::string SelectionStrategy::to_string() const {
  switch (kind) {
  case StrategyKind::Boundary:
    return "boundary";
  case StrategyKind::Gain:
    return "gain:" + format_number(rho);
  case StrategyKind::TopVertices:
    return "topvertices:" + std::to_string(delta);
  }
  return "?";
}

//
// Non-zero tracking
//

NonzeroTracker::NonzeroTracker(const Graph &graph, const Partition &partition)
    : _graph(graph), _partition(partition), _kept(graph.n(), 0),
      _pair_edges(static_cast<std::size_t>(partition.k()) * partition.k(), 0) {
  for (NodeID u = 0; u < graph.n(); ++u) {
    for (const NodeID v : graph.neighbors(u)) {
      const PartitionID a = partition.block(u);
      const PartitionID b = partition.block(v);
      if (u < v && a != b) {
        if (_pair_edges[pair_index(a, b)]++ == 0) {
          ++_super_super;
        }
      }
    }
  }
}

std::uint64_t NonzeroTracker::count(const std::uint64_t edges, const std::uint64_t vertices) const {
  return _partition.k() * (6 * edges + 2 * vertices);
}

std::int64_t NonzeroTracker::edge_delta(const NodeID v) const {
  const PartitionID k = _partition.k();
  const PartitionID own = _partition.block(v);
  std::int64_t delta = 0;
  // neighbors of v still inside a super-vertex, per block
  std::map<PartitionID, std::uint32_t> contracted;

  for (const NodeID u : _graph.neighbors(v)) {
    if (_kept[u]) {
      ++delta; // kept-kept edge {u, v}
      if (_kept_to_block.at(static_cast<std::uint64_t>(u) * k + own) == 1) {
        --delta; // u loses its edge to mu_own
      }
    } else {
      ++contracted[_partition.block(u)];
    }
  }
  for (const auto &[block, count] : contracted) {
    ++delta; // kept-super edge {v, mu_block}
    if (block != own && _pair_edges[pair_index(block, own)] == count) {
      --delta; // super-super edge disappears
    }
  }
  return delta;
}

void NonzeroTracker::commit(const NodeID v) {
  const PartitionID k = _partition.k();
  const PartitionID own = _partition.block(v);
  std::map<PartitionID, std::uint32_t> contracted;

  for (const NodeID u : _graph.neighbors(v)) {
    if (_kept[u]) {
      ++_kept_kept;
      const auto it = _kept_to_block.find(static_cast<std::uint64_t>(u) * k + own);
      if (--it->second == 0) {
        _kept_to_block.erase(it);
        --_kept_super;
      }
    } else {
      ++contracted[_partition.block(u)];
    }
  }
  for (const auto &[block, count] : contracted) {
    if (block != own) {
      std::uint64_t &pair = _pair_edges[pair_index(block, own)];
      pair -= count;
      if (pair == 0) {
        --_super_super;
      }
    }
    _kept_to_block[static_cast<std::uint64_t>(v) * k + block] = count;
    ++_kept_super;
  }
  _kept[v] = 1;
  ++_kept_count;
}

std::size_t NonzeroTracker::pair_index(const PartitionID a, const PartitionID b) const {
  return std::min(a, b) * static_cast<std::size_t>(_partition.k()) + std::max(a, b);
}

std::uint64_t NonzeroTracker::nonzeros_if_added(const NodeID v) const {
  if (_kept[v]) {
    return nonzeros();
  }
  const auto edges = static_cast<std::int64_t>(model_edges()) + edge_delta(v);
  return count(static_cast<std::uint64_t>(edges), model_vertices() + 1);
}

void NonzeroTracker::add(const NodeID v) {
  if (!_kept[v]) {
    commit(v);
  }
}

std::uint64_t estimate_nonzeros(const Graph &graph, const Partition &partition,
                                std::span<const NodeID> kept) {
  NonzeroTracker tracker(graph, partition);
  for (const NodeID v : kept) {
    tracker.add(v);
  }
  return tracker.nonzeros();
}

//
// Strategies
//

namespace {

class Selector {
public:
  Selector(const Graph &graph, const Partition &partition, const std::uint64_t budget,
           SelectionStrategy strategy)
      : _graph(graph), _tracker(graph, partition), _budget(budget) {
    _result.strategy_used = strategy;
    _result.strategy_used.nonzero_budget = budget;
    _result.skipped = _tracker.nonzeros() > budget;
  }

  [[nodiscard]] bool skipped() const {
    return _result.skipped;
  }
  [[nodiscard]] bool is_kept(const NodeID v) const {
    return _tracker.is_kept(v);
  }

  // false once the budget forbids v; the selection stops at that point.
  bool try_add(const NodeID v) {
    if (_tracker.is_kept(v)) {
      return true;
    }
    if (_tracker.nonzeros_if_added(v) > _budget) {
      _result.budget_exhausted = true;
      return false;
    }
    _tracker.add(v);
    _result.vertices.push_back(v);
    return true;
  }

  // FIFO breadth-first search from `sources`; every newly reached vertex is
  // added to K.
  void grow_bfs(const std::vector<NodeID> &sources) {
    std::deque<NodeID> queue(sources.begin(), sources.end());
    while (!queue.empty()) {
      const NodeID u = queue.front();
      queue.pop_front();
      for (const NodeID w : _graph.neighbors(u)) {
        if (_tracker.is_kept(w)) {
          continue;
        }
        if (!try_add(w)) {
          return;
        }
        queue.push_back(w);
      }
    }
  }

  KeptSet finish() {
    _result.nonzeros_at_stop = _tracker.nonzeros();
    return std::move(_result);
  }

private:
  const Graph &_graph;
  NonzeroTracker _tracker;
  std::uint64_t _budget;
  KeptSet _result;
};

bool is_tested_rho(const double rho) {
  return rho == -2.0 || rho == -1.0 || rho == 0.0 || rho == 1.0;
}

} // namespace

KeptSet select_boundary(const Graph &graph, const Partition &partition, const std::uint64_t budget,
                        const std::uint64_t seed) {
  SelectionStrategy strategy = SelectionStrategy::boundary();
  strategy.seed = seed;
  Selector selector(graph, partition, budget, strategy);
  if (selector.skipped()) {
    return selector.finish();
  }

  Random rng(seed);
  std::vector<NodeID> boundary = boundary_vertices(graph, partition);
  rng.shuffle(std::span(boundary));
  for (const NodeID v : boundary) {
    if (!selector.try_add(v)) {
      return selector.finish();
    }
  }

  rng.shuffle(std::span(boundary));
  selector.grow_bfs(boundary);
  return selector.finish();
}

KeptSet select_gain(const Graph &graph, const Partition &partition, const double rho,
                    const std::uint64_t budget, const std::uint64_t seed) {
  if (!is_tested_rho(rho)) {
    notice("gain threshold " + format_number(rho) + " is outside the tuned range {-2,-1,0,1}");
  }
  SelectionStrategy strategy = SelectionStrategy::gain(rho);
  strategy.seed = seed;
  Selector selector(graph, partition, budget, strategy);
  if (selector.skipped()) {
    return selector.finish();
  }

  std::vector<NodeID> frontier;
  for (const NodeID v : boundary_vertices(graph, partition)) {
    if (gain(graph, partition, v).value >= rho) {
      frontier.push_back(v);
    }
  }
  Random rng(seed);
  rng.shuffle(std::span(frontier));
  for (const NodeID v : frontier) {
    if (!selector.try_add(v)) {
      return selector.finish();
    }
  }
  selector.grow_bfs(frontier);
  return selector.finish();
}

KeptSet select_top_vertices(const Graph &graph, const Partition &partition, const unsigned delta,
                            const std::uint64_t budget, const std::uint64_t seed) {
  if (delta == 0) {
    throw Error(ErrorCode::InvalidArgument, "topvertices radius must be at least 1");
  }
  if (delta > 3) {
    notice("topvertices radius " + std::to_string(delta) + " is outside the tuned range {1,2,3}");
  }
  SelectionStrategy strategy = SelectionStrategy::top_vertices(delta);
  strategy.seed = seed;
  Selector selector(graph, partition, budget, strategy);
  if (selector.skipped()) {
    return selector.finish();
  }

  std::vector<NodeID> starts = boundary_vertices(graph, partition);
  std::vector<EdgeWeight> gains(graph.n(), 0);
  for (const NodeID v : starts) {
    gains[v] = gain(graph, partition, v).value;
  }
  Random rng(seed);
  rng.shuffle(std::span(starts));
  std::stable_sort(starts.begin(), starts.end(),
                   [&](const NodeID a, const NodeID b) { return gains[a] > gains[b]; });

  std::vector<unsigned> visited_stamp(graph.n(), 0);
  std::vector<unsigned> distance(graph.n(), 0);
  unsigned stamp = 0;
  std::vector<NodeID> ball;
  for (const NodeID s : starts) {
    ++stamp;
    ball.assign(1, s);
    visited_stamp[s] = stamp;
    distance[s] = 0;
    for (std::size_t head = 0; head < ball.size(); ++head) {
      const NodeID u = ball[head];
      if (!selector.try_add(u)) {
        return selector.finish();
      }
      if (distance[u] == delta) {
        continue;
      }
      for (const NodeID w : graph.neighbors(u)) {
        if (visited_stamp[w] != stamp) {
          visited_stamp[w] = stamp;
          distance[w] = distance[u] + 1;
          ball.push_back(w);
        }
      }
    }
  }
  return selector.finish();
}

KeptSet select(const Graph &graph, const Partition &partition, const SelectionStrategy &strategy) {
  switch (strategy.kind) {
  case StrategyKind::Boundary:
    return select_boundary(graph, partition, strategy.nonzero_budget, strategy.seed);
  case StrategyKind::Gain:
    return select_gain(graph, partition, strategy.rho, strategy.nonzero_budget, strategy.seed);
  case StrategyKind::TopVertices:
    return select_top_vertices(graph, partition, strategy.delta, strategy.nonzero_budget,
                               strategy.seed);
  }
  return {};
}

} // namespace ilprefine
