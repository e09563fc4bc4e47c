/*******************************************************************************
 * Exact solver for the block-assignment problem encoded by an IlpInstance.
 *
 * Branches on block assignments of the free model vertices instead of on the
 * x/e variables; at an optimum e_uv is one exactly when u and v sit in
 * different blocks, so both formulations have the same optimal objective.
 *
 * @file:   solver.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ilprefine/ilp_model.h"

namespace ilprefine {

enum class SolveStatus { Optimal, FeasibleTimeLimit, NoImprovement, Infeasible };

const char *to_string(SolveStatus status);

enum class BranchOrder { DegreeDescending, InsertionOrder };

struct SolverConfig {
  double time_limit = 60.0; // seconds, 0 = unlimited
  BranchOrder branch_order = BranchOrder::DegreeDescending;
  std::uint64_t seed = 0;       // unused by the built-in branch orders
  std::uint64_t node_limit = 0; // 0 = unlimited
};

struct IncumbentUpdate {
  double time;
  std::uint64_t nodes;
  double objective;
};

struct SolveStats {
  std::uint64_t nodes = 0;
  std::uint64_t pruned_by_bound = 0;
  std::uint64_t pruned_by_balance = 0;
  double wall_time = 0;
  bool limit_reached = false;
  std::vector<IncumbentUpdate> incumbent_trace;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<std::vector<PartitionID>> assignment; // over model vertices
  double objective = 0;                               // includes the constant offset
  SolveStats stats;
};

// Depth-first branch-and-bound. The warm start, when present and within the
// objective bound, is the initial incumbent. On hitting the time or node limit
// the best incumbent is returned with FeasibleTimeLimit; if there is none the
// status is NoImprovement with stats.limit_reached set.
SolveResult solve(const IlpInstance &instance, const SolverConfig &config = {});

// Enumerates every assignment of the free vertices. Weight-zero vertices
// without edges cannot change objective or balance and are put into block 0.
// Throws CapExceeded if k^(remaining free vertices) > cap.
SolveResult solve_exhaustive(const IlpInstance &instance, std::uint64_t cap = 10'000'000);

// Lower bound on the objective of every balanced completion of `partial`
// (kInvalidBlock marks unassigned vertices; fixed vertices are taken from the
// instance). +infinity if the balance constraint rules out all completions.
double node_lower_bound(const IlpInstance &instance, std::span<const PartitionID> partial);

} // namespace ilprefine
