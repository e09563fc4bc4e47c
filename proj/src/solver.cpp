/*******************************************************************************
 * Branch-and-bound over block assignments.
 *
 * Every search node assigns the next free vertex (static order) to one of the
 * blocks that still has room. A node is discarded when
 *   - the balance constraint cannot be met by the remaining vertices, or
 *   - partial cut + sum over touched unassigned vertices of their cheapest
 *     feasible placement w.r.t. the assigned vertices reaches the incumbent.
 * Edges between two unassigned vertices are not counted, so the bound is
 * admissible.
 *
 * @file:   solver.cpp
 ******************************************************************************/
#include "ilprefine/solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace ilprefine {

const char *to_string(const SolveStatus status) {
  switch (status) {
  case SolveStatus::Optimal:
    return "Optimal";
  case SolveStatus::FeasibleTimeLimit:
    return "FeasibleTimeLimit";
  case SolveStatus::NoImprovement:
    return "NoImprovement";
  case SolveStatus::Infeasible:
    return "Infeasible";
  }
  return "Unknown";
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

double seconds_since(const Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Assignment state with incremental connectivity to the assigned vertices.
class SearchState {
public:
  explicit SearchState(const IlpInstance &inst)
      : _k(inst.k()), _l_max(inst.l_max()),
        _weights(inst.vertex_weights().begin(), inst.vertex_weights().end()),
        _block_of(inst.num_vertices(), kInvalidBlock), _block_weight(inst.k(), 0.0),
        _conn(static_cast<std::size_t>(inst.num_vertices()) * inst.k(), 0.0),
        _conn_total(inst.num_vertices(), 0.0), _assigned_neighbors(inst.num_vertices(), 0) {
    const NodeID n = inst.num_vertices();
    std::vector<WeightedEdge> active;
    const auto edges = inst.edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!inst.is_folded(i)) {
        active.push_back(edges[i]);
      }
    }
    _offsets.assign(n + 1, 0);
    for (const auto &e : active) {
      ++_offsets[e.u + 1];
      ++_offsets[e.v + 1];
    }
    std::partial_sum(_offsets.begin(), _offsets.end(), _offsets.begin());
    _targets.resize(2 * active.size());
    _edge_weights.resize(2 * active.size());
    std::vector<std::size_t> pos(_offsets.begin(), _offsets.end() - 1);
    for (const auto &e : active) {
      _targets[pos[e.u]] = e.v;
      _edge_weights[pos[e.u]++] = e.weight;
      _targets[pos[e.v]] = e.u;
      _edge_weights[pos[e.v]++] = e.weight;
    }
    _unassigned_weight = std::accumulate(_weights.begin(), _weights.end(), 0.0);
  }

  [[nodiscard]] NodeID n() const {
    return static_cast<NodeID>(_weights.size());
  }
  [[nodiscard]] PartitionID k() const {
    return _k;
  }
  [[nodiscard]] double l_max() const {
    return _l_max;
  }
  [[nodiscard]] NodeWeight weight(const NodeID v) const {
    return _weights[v];
  }
  [[nodiscard]] NodeID degree(const NodeID v) const {
    return static_cast<NodeID>(_offsets[v + 1] - _offsets[v]);
  }
  [[nodiscard]] PartitionID block_of(const NodeID v) const {
    return _block_of[v];
  }
  [[nodiscard]] const std::vector<PartitionID> &assignment() const {
    return _block_of;
  }
  [[nodiscard]] bool fits(const NodeID v, const PartitionID b) const {
    return _block_weight[b] + _weights[v] <= _l_max;
  }
  // Cut added by putting v into b, given the current assignment.
  [[nodiscard]] EdgeWeight increment(const NodeID v, const PartitionID b) const {
    return _conn_total[v] - _conn[static_cast<std::size_t>(v) * _k + b];
  }

  EdgeWeight partial_cut = 0;

  void assign(const NodeID v, const PartitionID b) {
    partial_cut += increment(v, b);
    _block_of[v] = b;
    _block_weight[b] += _weights[v];
    _unassigned_weight -= _weights[v];
    for (std::size_t i = _offsets[v]; i < _offsets[v + 1]; ++i) {
      const NodeID u = _targets[i];
      _conn[static_cast<std::size_t>(u) * _k + b] += _edge_weights[i];
      _conn_total[u] += _edge_weights[i];
      if (_assigned_neighbors[u]++ == 0 && _block_of[u] == kInvalidBlock) {
        _touched.push_back(u);
      }
    }
  }

  // Must undo assignments in reverse order. Restores everything except
  // partial_cut, which the caller saves to avoid rounding drift.
  void unassign(const NodeID v) {
    const PartitionID b = _block_of[v];
    for (std::size_t i = _offsets[v + 1]; i-- > _offsets[v];) {
      const NodeID u = _targets[i];
      if (--_assigned_neighbors[u] == 0 && _block_of[u] == kInvalidBlock) {
        _touched.pop_back();
      }
      _conn[static_cast<std::size_t>(u) * _k + b] -= _edge_weights[i];
      _conn_total[u] -= _edge_weights[i];
    }
    _block_of[v] = kInvalidBlock;
    _block_weight[b] -= _weights[v];
    _unassigned_weight += _weights[v];
  }

  // partial cut + admissible completion cost, or +inf if balance is violated
  // for every completion. `max_unassigned_weight` is the heaviest unassigned
  // vertex.
  [[nodiscard]] double lower_bound(const NodeWeight max_unassigned_weight) const {
    const NodeWeight lightest = *std::min_element(_block_weight.begin(), _block_weight.end());
    if (lightest + max_unassigned_weight > _l_max) {
      return kInfinity;
    }
    double residual = 0;
    for (const NodeWeight w : _block_weight) {
      residual += _l_max - w;
    }
    if (_unassigned_weight > residual + 1e-9 * (1.0 + _l_max)) {
      return kInfinity;
    }

    double bound = partial_cut;
    for (const NodeID u : _touched) {
      if (_block_of[u] != kInvalidBlock) {
        continue;
      }
      double best = kInfinity;
      for (PartitionID b = 0; b < _k; ++b) {
        if (fits(u, b)) {
          best = std::min(best, increment(u, b));
        }
      }
      if (best == kInfinity) {
        return kInfinity;
      }
      bound += best;
    }
    return bound;
  }

  [[nodiscard]] bool balanced() const {
    return std::all_of(_block_weight.begin(), _block_weight.end(),
                       [&](const NodeWeight w) { return w <= _l_max; });
  }

private:
  PartitionID _k;
  double _l_max;
  std::vector<NodeWeight> _weights;
  std::vector<std::size_t> _offsets;
  std::vector<NodeID> _targets;
  std::vector<EdgeWeight> _edge_weights;

  std::vector<PartitionID> _block_of;
  std::vector<NodeWeight> _block_weight;
  std::vector<EdgeWeight> _conn;
  std::vector<EdgeWeight> _conn_total;
  std::vector<std::uint32_t> _assigned_neighbors;
  std::vector<NodeID> _touched;
  NodeWeight _unassigned_weight = 0;
};

// Fixed vertices in id order; false if they overload a block.
bool assign_fixed(const IlpInstance &inst, SearchState &state) {
  for (NodeID v = 0; v < inst.num_vertices(); ++v) {
    if (inst.fixed_block(v) != kInvalidBlock) {
      state.assign(v, inst.fixed_block(v));
    }
  }
  return state.balanced();
}

EdgeWeight active_cut(const IlpInstance &inst, std::span<const PartitionID> assignment) {
  EdgeWeight cut = 0;
  const auto edges = inst.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!inst.is_folded(i) && assignment[edges[i].u] != assignment[edges[i].v]) {
      cut += edges[i].weight;
    }
  }
  return cut;
}

class BranchAndBound {
public:
  BranchAndBound(const IlpInstance &inst, const SolverConfig &config, const Clock::time_point start)
      : _inst(inst), _config(config), _start(start), _state(inst) {
    _has_bound = inst.bound_mode() != ObjectiveBound::None;
    _bound_cut = inst.bound_value() - inst.objective_offset();
  }

  SolveResult run() {
    SolveResult result;
    if (!assign_fixed(_inst, _state)) {
      result.status = SolveStatus::Infeasible;
      return finish(result);
    }
    build_order();
    consider_warm_start();

    const bool completed = search(Mode::Optimize);
    if (_have_incumbent) {
      result.status = completed ? SolveStatus::Optimal : SolveStatus::FeasibleTimeLimit;
      result.assignment = _incumbent;
      result.objective = _incumbent_cut + _inst.objective_offset();
      return finish(result);
    }

    if (!completed) {
      result.status = SolveStatus::NoImprovement;
      return finish(result);
    }
    if (!_has_bound) {
      result.status = SolveStatus::Infeasible;
      return finish(result);
    }
    // Nothing within the bound; distinguish an empty feasible set.
    if (_warm_start_feasible) {
      result.status = SolveStatus::NoImprovement;
      return finish(result);
    }
    const bool feasibility_completed = search(Mode::AnyFeasible);
    result.status = (_found_feasible || !feasibility_completed) ? SolveStatus::NoImprovement
                                                                : SolveStatus::Infeasible;
    return finish(result);
  }

  double lower_bound_for(std::span<const PartitionID> partial) {
    if (!assign_fixed(_inst, _state)) {
      return kInfinity;
    }
    NodeWeight max_unassigned = 0;
    for (NodeID v = 0; v < _inst.num_vertices(); ++v) {
      if (_state.block_of(v) != kInvalidBlock || partial[v] == kInvalidBlock) {
        continue;
      }
      if (!_state.fits(v, partial[v])) {
        return kInfinity;
      }
      _state.assign(v, partial[v]);
    }
    for (NodeID v = 0; v < _inst.num_vertices(); ++v) {
      if (_state.block_of(v) == kInvalidBlock) {
        max_unassigned = std::max(max_unassigned, _state.weight(v));
      }
    }
    return _state.lower_bound(max_unassigned) + _inst.objective_offset();
  }

private:
  enum class Mode { Optimize, AnyFeasible };

  struct Frame {
    std::uint32_t count = 0;
    std::uint32_t pos = 0;
    PartitionID assigned = kInvalidBlock;
    EdgeWeight saved_cut = 0;
  };

  void build_order() {
    for (NodeID v = 0; v < _inst.num_vertices(); ++v) {
      if (_state.block_of(v) == kInvalidBlock) {
        _order.push_back(v);
      }
    }
    if (_config.branch_order == BranchOrder::DegreeDescending) {
      std::stable_sort(_order.begin(), _order.end(), [&](const NodeID a, const NodeID b) {
        return _state.degree(a) > _state.degree(b);
      });
    }
    _max_remaining.assign(_order.size() + 1, 0.0);
    for (std::size_t i = _order.size(); i-- > 0;) {
      _max_remaining[i] = std::max(_max_remaining[i + 1], _state.weight(_order[i]));
    }
  }

  void consider_warm_start() {
    if (!_inst.warm_start()) {
      return;
    }
    const auto &start = *_inst.warm_start();
    std::vector<NodeWeight> weights(_inst.k(), 0.0);
    for (NodeID v = 0; v < _inst.num_vertices(); ++v) {
      if (_inst.fixed_block(v) != kInvalidBlock && _inst.fixed_block(v) != start[v]) {
        return;
      }
      weights[start[v]] += _inst.vertex_weights()[v];
    }
    if (std::any_of(weights.begin(), weights.end(), [&](const NodeWeight w) { return w > _inst.l_max(); })) {
      return;
    }
    _warm_start_feasible = true;
    _preferred = start;
    const EdgeWeight cut = active_cut(_inst, start);
    if (!_has_bound || cut <= _bound_cut) {
      set_incumbent(start, cut);
    }
  }

  void set_incumbent(const std::vector<PartitionID> &assignment, const EdgeWeight cut) {
    _have_incumbent = true;
    _incumbent = assignment;
    _incumbent_cut = cut;
    _stats.incumbent_trace.push_back(
        {seconds_since(_start), _stats.nodes, cut + _inst.objective_offset()});
  }

  [[nodiscard]] bool prunes(const double bound) const {
    if (_have_incumbent) {
      return bound >= _incumbent_cut;
    }
    return _has_bound && bound > _bound_cut;
  }

  [[nodiscard]] bool limit_hit() {
    if (_config.node_limit > 0 && _stats.nodes >= _config.node_limit) {
      return true;
    }
    return _config.time_limit > 0 && seconds_since(_start) >= _config.time_limit;
  }

  void generate(const std::size_t depth, Frame &frame) {
    const NodeID v = _order[depth];
    const PartitionID k = _inst.k();
    PartitionID *cand = &_candidates[depth * k];
    frame = Frame{};
    for (PartitionID b = 0; b < k; ++b) {
      if (_state.fits(v, b)) {
        cand[frame.count++] = b;
      }
    }
    if (frame.count == 0) {
      ++_stats.pruned_by_balance;
      return;
    }
    const PartitionID preferred = _preferred.empty() ? kInvalidBlock : _preferred[v];
    std::sort(cand, cand + frame.count, [&](const PartitionID a, const PartitionID b) {
      const EdgeWeight ia = _state.increment(v, a);
      const EdgeWeight ib = _state.increment(v, b);
      if (ia != ib) {
        return ia < ib;
      }
      if ((a == preferred) != (b == preferred)) {
        return a == preferred;
      }
      return a < b;
    });
  }

  // Returns false if stopped by a limit (or, in AnyFeasible mode, never).
  bool search(const Mode mode) {
    const std::size_t depth_count = _order.size();
    if (depth_count == 0) {
      leaf(mode);
      return true;
    }
    const PartitionID k = _inst.k();
    std::vector<Frame> frames(depth_count);
    _candidates.assign(depth_count * k, kInvalidBlock);

    std::size_t depth = 0;
    generate(0, frames[0]);
    while (true) {
      Frame &frame = frames[depth];
      const NodeID v = _order[depth];
      if (frame.assigned != kInvalidBlock) {
        _state.unassign(v);
        _state.partial_cut = frame.saved_cut;
        frame.assigned = kInvalidBlock;
      }

      bool descended = false;
      while (frame.pos < frame.count) {
        if (limit_hit()) {
          _stats.limit_reached = true;
          unwind(frames, depth);
          return false;
        }
        const PartitionID b = _candidates[depth * k + frame.pos++];
        if (mode == Mode::Optimize && prunes(_state.partial_cut + _state.increment(v, b))) {
          // candidates are sorted by increment, the rest cannot do better
          _stats.pruned_by_bound += frame.count - frame.pos + 1;
          frame.pos = frame.count;
          break;
        }

        frame.saved_cut = _state.partial_cut;
        _state.assign(v, b);
        frame.assigned = b;
        ++_stats.nodes;

        if (depth + 1 == depth_count) {
          leaf(mode);
          if (mode == Mode::AnyFeasible && _found_feasible) {
            unwind(frames, depth);
            return true;
          }
          _state.unassign(v);
          _state.partial_cut = frame.saved_cut;
          frame.assigned = kInvalidBlock;
          continue;
        }

        const double bound = _state.lower_bound(_max_remaining[depth + 1]);
        if (bound == kInfinity) {
          ++_stats.pruned_by_balance;
        } else if (mode == Mode::Optimize && prunes(bound)) {
          ++_stats.pruned_by_bound;
        } else {
          ++depth;
          generate(depth, frames[depth]);
          descended = true;
          break;
        }
        _state.unassign(v);
        _state.partial_cut = frame.saved_cut;
        frame.assigned = kInvalidBlock;
      }

      if (descended) {
        continue;
      }
      if (depth == 0) {
        return true;
      }
      --depth;
    }
  }

  void unwind(std::vector<Frame> &frames, std::size_t depth) {
    for (std::size_t d = depth + 1; d-- > 0;) {
      if (frames[d].assigned != kInvalidBlock) {
        _state.unassign(_order[d]);
        _state.partial_cut = frames[d].saved_cut;
        frames[d].assigned = kInvalidBlock;
      }
    }
  }

  void leaf(const Mode mode) {
    const EdgeWeight cut = _state.partial_cut;
    if (mode == Mode::AnyFeasible) {
      _found_feasible = true;
      return;
    }
    const bool better = _have_incumbent ? cut < _incumbent_cut : (!_has_bound || cut <= _bound_cut);
    if (better) {
      set_incumbent(_state.assignment(), cut);
    }
  }

  SolveResult &finish(SolveResult &result) {
    _stats.wall_time = seconds_since(_start);
    result.stats = std::move(_stats);
    return result;
  }

  const IlpInstance &_inst;
  const SolverConfig &_config;
  Clock::time_point _start;
  SearchState _state;

  std::vector<NodeID> _order;
  std::vector<NodeWeight> _max_remaining;
  std::vector<PartitionID> _candidates;
  std::vector<PartitionID> _preferred;

  bool _has_bound = false;
  EdgeWeight _bound_cut = 0;
  bool _have_incumbent = false;
  std::vector<PartitionID> _incumbent;
  EdgeWeight _incumbent_cut = 0;
  bool _warm_start_feasible = false;
  bool _found_feasible = false;
  SolveStats _stats;
};

} // namespace

SolveResult solve(const IlpInstance &instance, const SolverConfig &config) {
  if (!(config.time_limit >= 0)) {
    throw Error(ErrorCode::InvalidArgument, "time limit must be non-negative");
  }
  const auto start = Clock::now();
  BranchAndBound search(instance, config, start);
  return search.run();
}

double node_lower_bound(const IlpInstance &instance, std::span<const PartitionID> partial) {
  if (partial.size() != instance.num_vertices()) {
    throw Error(ErrorCode::LengthMismatch, "partial assignment does not cover all model vertices");
  }
  const SolverConfig config;
  BranchAndBound search(instance, config, Clock::now());
  return search.lower_bound_for(partial);
}

SolveResult solve_exhaustive(const IlpInstance &inst, const std::uint64_t cap) {
  const auto start = Clock::now();
  const NodeID n = inst.num_vertices();
  const PartitionID k = inst.k();
  const auto weights = inst.vertex_weights();
  const auto edges = inst.edges();

  std::vector<char> has_edge(n, 0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!inst.is_folded(i)) {
      has_edge[edges[i].u] = has_edge[edges[i].v] = 1;
    }
  }

  std::vector<PartitionID> assignment(n, kInvalidBlock);
  std::vector<NodeWeight> block_weight(k, 0.0);
  std::vector<NodeID> free;
  for (NodeID v = 0; v < n; ++v) {
    if (inst.fixed_block(v) != kInvalidBlock) {
      assignment[v] = inst.fixed_block(v);
    } else if (weights[v] == 0 && !has_edge[v]) {
      assignment[v] = 0;
    } else {
      free.push_back(v);
      continue;
    }
    block_weight[assignment[v]] += weights[v];
  }

  std::uint64_t leaves = 1;
  for (std::size_t i = 0; i < free.size(); ++i) {
    if (leaves > cap / k) {
      throw Error(ErrorCode::CapExceeded, std::to_string(k) + "^" + std::to_string(free.size()) +
                                              " assignments exceed the enumeration cap " +
                                              std::to_string(cap));
    }
    leaves *= k;
  }
  if (leaves > cap) {
    throw Error(ErrorCode::CapExceeded, "enumeration cap exceeded");
  }

  SolveResult result;
  const bool has_bound = inst.bound_mode() != ObjectiveBound::None;
  bool any_feasible = false;
  bool have_best = false;
  double best = 0;
  std::vector<PartitionID> best_assignment;

  // Odometer over every assignment of the free vertices in id order.
  auto evaluate = [&] {
    ++result.stats.nodes;
    if (std::any_of(block_weight.begin(), block_weight.end(),
                    [&](const NodeWeight w) { return w > inst.l_max(); })) {
      ++result.stats.pruned_by_balance;
      return;
    }
    any_feasible = true;
    double objective = inst.objective_offset();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!inst.is_folded(i) && assignment[edges[i].u] != assignment[edges[i].v]) {
        objective += edges[i].weight;
      }
    }
    if (has_bound && objective > inst.bound_value()) {
      return;
    }
    if (!have_best || objective < best) {
      have_best = true;
      best = objective;
      best_assignment = assignment;
    }
  };

  {
    std::size_t depth = 0;
    std::vector<PartitionID> next(free.size() + 1, 0);
    if (free.empty()) {
      evaluate();
    } else {
      while (true) {
        const NodeID v = free[depth];
        if (assignment[v] != kInvalidBlock) {
          block_weight[assignment[v]] -= weights[v];
          assignment[v] = kInvalidBlock;
        }
        bool advanced = false;
        while (next[depth] < k) {
          const PartitionID b = next[depth]++;
          assignment[v] = b;
          block_weight[b] += weights[v];
          if (depth + 1 == free.size()) {
            evaluate();
            block_weight[b] -= weights[v];
            assignment[v] = kInvalidBlock;
            continue;
          }
          ++depth;
          next[depth] = 0;
          advanced = true;
          break;
        }
        if (advanced) {
          continue;
        }
        if (depth == 0) {
          break;
        }
        --depth;
      }
    }
  }

  if (have_best) {
    result.status = SolveStatus::Optimal;
    result.objective = best;
    result.assignment = std::move(best_assignment);
  } else {
    result.status = any_feasible ? SolveStatus::NoImprovement : SolveStatus::Infeasible;
  }
  result.stats.wall_time = seconds_since(start);
  return result;
}

} // namespace ilprefine
