/*******************************************************************************
 * @file:   refine.cpp
 ******************************************************************************/
#include "ilprefine/refine.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "ilprefine/coarse_model.h"
#include "ilprefine/graph_io.h"
#include "ilprefine/random.h"

namespace ilprefine {

std::uint64_t default_nonzero_budget(const PartitionID k) {
  return (k == 32 || k == 64) ? 5'000'000 : 1'000'000;
}

std::vector<SelectionStrategy> default_strategies(const PartitionID k) {
  if (k <= 16) {
    return {SelectionStrategy::gain(-2.0)};
  }
  return {SelectionStrategy::gain(-1.0), SelectionStrategy::gain(-2.0)};
}

std::string RunRecord::algorithm() const {
  return preset.empty() ? strategy : strategy + "/" + preset;
}

bool is_improvement(const Partition &candidate, const Partition &current) {
  if (candidate.cut() != current.cut()) {
    return candidate.cut() < current.cut();
  }
  return candidate.max_block_weight() < current.max_block_weight();
}

namespace {

struct Attempt {
  std::optional<Partition> partition;
  SolveStatus status = SolveStatus::NoImprovement;
  bool skipped = false;
  bool limit_reached = false;
  std::uint64_t nodes = 0;
  std::uint64_t kept = 0;
  std::uint64_t nonzeros = 0;
};

Attempt run_once(const Graph &graph, const Partition &current, const SelectionStrategy &strategy,
                 const RefineConfig &config) {
  Attempt attempt;
  const KeptSet kept = select(graph, current, strategy);
  attempt.kept = kept.vertices.size();
  attempt.nonzeros = kept.nonzeros_at_stop;
  if (kept.skipped) {
    attempt.skipped = true;
    return attempt;
  }

  const CoarseModel model(graph, current, kept.vertices);
  const IlpInstance instance = build_ilp(model, config.ilp_options);
  attempt.nonzeros = instance.num_nonzeros();

  SolverConfig solver_config;
  solver_config.time_limit = config.time_limit;
  solver_config.node_limit = config.node_limit;
  const SolveResult result = solve(instance, solver_config);
  attempt.status = result.status;
  attempt.nodes = result.stats.nodes;
  attempt.limit_reached = result.stats.limit_reached;
  if (result.assignment) {
    Partition projected = project_solution(model, *result.assignment);
    if (is_balanced(graph, projected)) {
      attempt.partition = std::move(projected);
    }
  }
  return attempt;
}

std::string join_strategies(const std::vector<SelectionStrategy> &strategies) {
  std::string label;
  for (const auto &s : strategies) {
    label += (label.empty() ? "" : "+") + s.to_string();
  }
  return label;
}

} // namespace

RefineResult refine(const Graph &graph, const Partition &partition, const RefineConfig &config) {
  const auto start = std::chrono::steady_clock::now();
  if (partition.k() != config.k || partition.assignment().size() != graph.n()) {
    throw Error(ErrorCode::InvalidArgument, "partition does not match graph and k");
  }
  if (config.rounds == 0) {
    throw Error(ErrorCode::InvalidArgument, "rounds must be positive");
  }
  Partition current(graph, config.k, config.epsilon,
                    {partition.assignment().begin(), partition.assignment().end()});
  if (!is_balanced(graph, current)) {
    throw Error(ErrorCode::UnbalancedInput,
                "input partition has a block of weight " + format_number(current.max_block_weight()) +
                    " > L_max = " + format_number(l_max(graph, config.k, config.epsilon)));
  }

  std::vector<SelectionStrategy> strategies =
      config.strategies.empty() ? default_strategies(config.k) : config.strategies;
  const std::uint64_t budget = config.nonzero_budget.value_or(default_nonzero_budget(config.k));

  RunRecord record;
  record.instance = config.instance_name;
  record.k = config.k;
  record.epsilon = config.epsilon;
  record.strategy = join_strategies(strategies);
  record.preset = config.ilp_options.preset_name();
  record.input_cut = current.cut();

  std::optional<Attempt> reported;
  bool all_skipped = true;
  for (unsigned round = 0; round < config.rounds; ++round) {
    std::optional<Attempt> best;
    for (std::size_t j = 0; j < strategies.size(); ++j) {
      SelectionStrategy strategy = strategies[j];
      strategy.nonzero_budget = budget;
      strategy.seed = mix_seed(config.seed ^ mix_seed((static_cast<std::uint64_t>(round) << 16) + j));

      Attempt attempt = run_once(graph, current, strategy, config);
      record.nodes += attempt.nodes;
      record.hit_time_limit |= attempt.limit_reached;
      all_skipped &= attempt.skipped;

      const bool wins = attempt.partition &&
                        (!best || !best->partition || is_improvement(*attempt.partition, *best->partition));
      if (!best || wins) {
        best = std::move(attempt);
      }
    }

    if (best->partition && is_improvement(*best->partition, current)) {
      current = *best->partition;
      reported = std::move(best);
    } else if (!reported || !reported->partition || !is_improvement(*reported->partition, partition)) {
      reported = std::move(best);
    }
  }

  record.output_cut = current.cut();
  record.improved = is_improvement(current, partition);
  record.status = all_skipped ? "Skipped" : to_string(reported->status);
  record.kept = reported->kept;
  record.nonzeros = reported->nonzeros;
  record.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(current), std::move(record)};
}

Partition bootstrap_partition(const Graph &graph, const PartitionID k, const double epsilon,
                              const std::uint64_t seed) {
  if (k < 2) {
    throw Error(ErrorCode::InvalidArgument, "k must be at least 2");
  }
  const NodeID n = graph.n();
  const double limit = l_max(graph, k, epsilon);
  std::vector<PartitionID> assignment(n, kInvalidBlock);
  std::vector<NodeWeight> block_weight(k, 0.0);

  Random rng(seed);
  std::vector<NodeID> permutation(n);
  std::iota(permutation.begin(), permutation.end(), 0);
  rng.shuffle(std::span(permutation));

  NodeWeight remaining = graph.total_vertex_weight();
  std::size_t seed_pos = 0;
  for (PartitionID b = 0; b < k; ++b) {
    const double target = std::min(limit, std::ceil(remaining / static_cast<double>(k - b)));
    std::deque<NodeID> queue;
    auto try_take = [&](const NodeID v) {
      if (assignment[v] == kInvalidBlock && block_weight[b] + graph.vertex_weight(v) <= target) {
        assignment[v] = b;
        block_weight[b] += graph.vertex_weight(v);
        queue.push_back(v);
      }
    };

    std::size_t scan = seed_pos;
    while (block_weight[b] < target) {
      if (queue.empty()) {
        while (scan < n && (assignment[permutation[scan]] != kInvalidBlock ||
                            block_weight[b] + graph.vertex_weight(permutation[scan]) > target)) {
          ++scan;
        }
        if (scan == n) {
          break;
        }
        try_take(permutation[scan]);
        continue;
      }
      const NodeID u = queue.front();
      queue.pop_front();
      for (const NodeID w : graph.neighbors(u)) {
        try_take(w);
      }
    }
    while (seed_pos < n && assignment[permutation[seed_pos]] != kInvalidBlock) {
      ++seed_pos;
    }
    remaining -= block_weight[b];
  }

  for (const NodeID v : permutation) {
    if (assignment[v] != kInvalidBlock) {
      continue;
    }
    const NodeWeight w = graph.vertex_weight(v);
    PartitionID best = kInvalidBlock;
    for (const NodeID u : graph.neighbors(v)) {
      const PartitionID b = assignment[u];
      if (b != kInvalidBlock && block_weight[b] + w <= limit &&
          (best == kInvalidBlock || block_weight[b] < block_weight[best] ||
           (block_weight[b] == block_weight[best] && b < best))) {
        best = b;
      }
    }
    if (best == kInvalidBlock) {
      for (PartitionID b = 0; b < k; ++b) {
        if (block_weight[b] + w <= limit && (best == kInvalidBlock || block_weight[b] < block_weight[best])) {
          best = b;
        }
      }
    }
    if (best == kInvalidBlock) {
      throw Error(ErrorCode::BootstrapFailed,
                  "vertex " + std::to_string(v) + " does not fit into any block; retry with another seed");
    }
    assignment[v] = best;
    block_weight[best] += w;
  }

  Partition result(graph, k, epsilon, std::move(assignment));
  if (!is_balanced(graph, result)) {
    throw Error(ErrorCode::BootstrapFailed, "greedy growing produced an unbalanced partition");
  }
  return result;
}

EvaluationReport evaluate(const Graph &graph, std::span<const PartitionID> assignment, PartitionID k,
                          std::vector<double> epsilons) {
  if (assignment.size() != graph.n()) {
    throw Error(ErrorCode::LengthMismatch, "partition has " + std::to_string(assignment.size()) +
                                               " entries, graph has " + std::to_string(graph.n()) +
                                               " vertices");
  }
  if (k == 0) {
    k = assignment.empty() ? 1 : *std::max_element(assignment.begin(), assignment.end()) + 1;
  }
  const Partition partition(graph, k, 0.0, {assignment.begin(), assignment.end()});

  EvaluationReport report;
  report.k = k;
  report.cut = partition.cut();
  report.block_weights.assign(partition.block_weights().begin(), partition.block_weights().end());
  report.max_block_weight = partition.max_block_weight();
  for (const double eps : epsilons) {
    const double limit = l_max(graph, k, eps);
    const auto overloaded = static_cast<PartitionID>(
        std::count_if(report.block_weights.begin(), report.block_weights.end(),
                      [&](const NodeWeight w) { return w > limit; }));
    report.verdicts.push_back({eps, limit, overloaded == 0, overloaded});
  }
  return report;
}

std::string format_report(const EvaluationReport &report) {
  std::ostringstream out;
  out << "k " << report.k << '\n';
  out << "cut " << format_number(report.cut) << '\n';
  out << "max_block_weight " << format_number(report.max_block_weight) << '\n';
  for (PartitionID b = 0; b < report.k; ++b) {
    out << "block " << b << " weight " << format_number(report.block_weights[b]) << '\n';
  }
  for (const auto &verdict : report.verdicts) {
    out << "eps " << format_number(verdict.epsilon) << " l_max " << format_number(verdict.l_max)
        << (verdict.balanced ? " balanced" : " unbalanced") << " overloaded "
        << verdict.overloaded_blocks << '\n';
  }
  return out.str();
}

} // namespace ilprefine
