/*******************************************************************************
 * Local search driver: select K, contract, build the program, solve, project.
 *
 * @file:   refine.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ilprefine/graph.h"
#include "ilprefine/ilp_model.h"
#include "ilprefine/partition.h"
#include "ilprefine/selection.h"
#include "ilprefine/solver.h"

namespace ilprefine {

// 5 * 10^6 for k in {32, 64}, 10^6 otherwise.
std::uint64_t default_nonzero_budget(PartitionID k);

// gain:-2 for k <= 16, otherwise gain:-1 and gain:-2 (the better result wins).
std::vector<SelectionStrategy> default_strategies(PartitionID k);

struct RefineConfig {
  PartitionID k = 2;
  double epsilon = 0.03;
  // Empty: default_strategies(k). Budgets and seeds inside are overridden.
  std::vector<SelectionStrategy> strategies;
  // Empty: default_nonzero_budget(k).
  std::optional<std::uint64_t> nonzero_budget;
  IlpOptions ilp_options = IlpOptions::basic_sym_ssol();
  double time_limit = 60.0;
  // Per solve; 0 = unlimited. Unlike the time limit, reproducible across runs.
  std::uint64_t node_limit = 0;
  unsigned rounds = 1;
  std::uint64_t seed = 0;
  std::string instance_name;
};

struct RunRecord {
  std::string instance;
  PartitionID k = 0;
  double epsilon = 0;
  std::string strategy;
  std::string preset;
  EdgeWeight input_cut = 0;
  EdgeWeight output_cut = 0;
  bool improved = false;
  std::string status;
  double time_s = 0;
  std::uint64_t nodes = 0;
  std::uint64_t kept = 0;     // |K| of the run that determined the status
  std::uint64_t nonzeros = 0; // program size of that run
  bool hit_time_limit = false;

  // Grouping key for performance reports.
  [[nodiscard]] std::string algorithm() const;

  bool operator==(const RunRecord &other) const = default;
};

struct RefineResult {
  Partition partition;
  RunRecord record;
};

// Smaller cut, or equal cut and strictly lighter heaviest block.
bool is_improvement(const Partition &candidate, const Partition &current);

// Throws UnbalancedInput if `partition` violates the balance constraint for
// (config.k, config.epsilon).
RefineResult refine(const Graph &graph, const Partition &partition, const RefineConfig &config);

// k BFS region growings capped at L_max, then leftovers go to the lightest
// adjacent block with room (any block with room as a fallback). Throws
// BootstrapFailed if some vertex fits nowhere.
Partition bootstrap_partition(const Graph &graph, PartitionID k, double epsilon, std::uint64_t seed);

struct BalanceVerdict {
  double epsilon;
  double l_max;
  bool balanced;
  PartitionID overloaded_blocks;
};

struct EvaluationReport {
  PartitionID k = 0;
  EdgeWeight cut = 0;
  std::vector<NodeWeight> block_weights;
  NodeWeight max_block_weight = 0;
  std::vector<BalanceVerdict> verdicts;
};

// k = 0 infers the block count from the largest block id.
EvaluationReport evaluate(const Graph &graph, std::span<const PartitionID> assignment,
                          PartitionID k = 0,
                          std::vector<double> epsilons = {0.0, 0.01, 0.03, 0.05});

std::string format_report(const EvaluationReport &report);

} // namespace ilprefine
