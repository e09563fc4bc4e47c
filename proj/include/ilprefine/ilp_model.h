/*******************************************************************************
 * Binary program for balanced k-way partitioning of a coarse model.
 *
 * Variables: x_v_b (vertex v in block b) for every model vertex and block,
 * e_u_v (edge {u,v} is cut) for every model edge. Rows:
 *
 *   e_uv - x_ub + x_vb >= 0          per edge and block
 *   e_uv + x_ub - x_vb >= 0          per edge and block
 *   sum_v c(v) x_vb    <= L_max      per block
 *   sum_b x_vb          = 1          per vertex
 *
 * Objective: minimize sum_e w(e) e_uv + offset.
 *
 * @file:   ilp_model.h
 ******************************************************************************/
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ilprefine/coarse_model.h"

namespace ilprefine {

enum class ObjectiveBound { None, LessOrEqual, StrictlyLess };

struct IlpOptions {
  bool symmetry_breaking = false;
  bool start_solution = false;
  ObjectiveBound objective_bound = ObjectiveBound::None;
  // Strict bounds become "<= input - granularity". Integer edge weights always
  // use 1.
  double strict_granularity = 1e-6;

  static IlpOptions basic();
  static IlpOptions basic_sym();
  static IlpOptions basic_sym_ssol();
  static IlpOptions bsss_const_eq();
  static IlpOptions bsss_const_lt();

  // Basic | BasicSym | BasicSymSSol | BSSSConst= | BSSSConst<
  static IlpOptions preset(std::string_view name);
  [[nodiscard]] std::string preset_name() const;
};

enum class RowKind : std::uint8_t { CutLower, CutUpper, Balance, Assignment, Bound };
enum class RowSense : std::uint8_t { LessEqual, GreaterEqual, Equal };

struct Term {
  std::uint32_t var;
  double coef;
};

struct RowInfo {
  RowKind kind;
  RowSense sense;
  double rhs;
};

class IlpInstance {
public:
  // Basic program over the model, no optimizations applied.
  explicit IlpInstance(const CoarseModel &model);

  [[nodiscard]] PartitionID k() const {
    return _k;
  }
  [[nodiscard]] NodeID num_vertices() const {
    return static_cast<NodeID>(_vertex_weights.size());
  }
  [[nodiscard]] std::span<const NodeWeight> vertex_weights() const {
    return _vertex_weights;
  }
  [[nodiscard]] std::span<const WeightedEdge> edges() const {
    return _edges;
  }
  [[nodiscard]] double l_max() const {
    return _l_max;
  }
  [[nodiscard]] EdgeWeight input_cut() const {
    return _input_cut;
  }

  [[nodiscard]] std::uint32_t x(const NodeID v, const PartitionID b) const {
    return v * _k + b;
  }
  [[nodiscard]] std::uint32_t e(const std::size_t edge) const {
    return static_cast<std::uint32_t>(num_vertices() * _k + edge);
  }
  [[nodiscard]] std::string variable_name(std::uint32_t var) const;

  [[nodiscard]] std::size_t num_variables() const {
    return _objective.size();
  }
  [[nodiscard]] std::size_t num_constraints() const {
    return _rows.size();
  }
  [[nodiscard]] std::size_t num_nonzeros() const {
    return _terms.size();
  }

  [[nodiscard]] const RowInfo &row(const std::size_t r) const {
    return _rows[r];
  }
  [[nodiscard]] std::span<const Term> row_terms(const std::size_t r) const {
    return {_terms.data() + _row_offsets[r], _terms.data() + _row_offsets[r + 1]};
  }

  [[nodiscard]] double objective_coef(const std::uint32_t var) const {
    return _objective[var];
  }
  [[nodiscard]] double objective_offset() const {
    return _objective_offset;
  }

  // -1 if free, otherwise the fixed 0/1 value.
  [[nodiscard]] int fixed_value(const std::uint32_t var) const {
    return _fixed[var];
  }
  // Block a vertex is pinned to by symmetry breaking, kInvalidBlock if free.
  [[nodiscard]] PartitionID fixed_block(const NodeID v) const {
    return _fixed_block[v];
  }
  // Super-super edge folded into the objective offset.
  [[nodiscard]] bool is_folded(const std::size_t edge) const {
    return _folded[edge] != 0;
  }

  [[nodiscard]] bool symmetry_breaking_applied() const {
    return _symmetry_breaking;
  }
  // c(mu_i) + c(mu_j) > L_max for all i != j.
  [[nodiscard]] bool symmetry_condition_holds() const {
    return _symmetry_condition;
  }

  [[nodiscard]] const std::optional<std::vector<PartitionID>> &warm_start() const {
    return _warm_start;
  }
  [[nodiscard]] double warm_start_objective() const {
    return _warm_start_objective;
  }

  [[nodiscard]] ObjectiveBound bound_mode() const {
    return _bound_mode;
  }
  // Objective (offset included) must not exceed this value.
  [[nodiscard]] double bound_value() const {
    return _bound_value;
  }

  [[nodiscard]] bool integral_edge_weights() const;

  friend void apply_symmetry_breaking(IlpInstance &instance);
  friend void set_start_solution(IlpInstance &instance, const CoarseModel &model);
  friend void add_objective_bound(IlpInstance &instance, ObjectiveBound mode, EdgeWeight input_cut,
                                  double granularity);

private:
  void push_row(RowKind kind, RowSense sense, double rhs, std::span<const Term> terms);

  PartitionID _k;
  PartitionID _super_vertices;
  std::vector<NodeWeight> _vertex_weights;
  std::vector<WeightedEdge> _edges;
  double _l_max;
  EdgeWeight _input_cut;

  std::vector<double> _objective;
  double _objective_offset = 0;
  std::vector<std::int8_t> _fixed;
  std::vector<PartitionID> _fixed_block;
  std::vector<char> _folded;

  std::vector<RowInfo> _rows;
  std::vector<std::size_t> _row_offsets{0};
  std::vector<Term> _terms;

  bool _symmetry_breaking = false;
  bool _symmetry_condition = false;
  std::optional<std::vector<PartitionID>> _warm_start;
  double _warm_start_objective = 0;
  ObjectiveBound _bound_mode = ObjectiveBound::None;
  double _bound_value = 0;
};

// Basic program plus the optimizations selected in `options`.
// Throws InfeasibleFixing if symmetry breaking pins an overloaded super-vertex
// and UnbalancedInput if a start solution is requested for an unbalanced input.
IlpInstance build_ilp(const CoarseModel &model, const IlpOptions &options);

// Pins mu_i to block i, drops the assignment rows of the super-vertices, moves
// their weight to the right-hand side of the balance rows and folds
// super-super edges into the objective offset.
void apply_symmetry_breaking(IlpInstance &instance);

void set_start_solution(IlpInstance &instance, const CoarseModel &model);

void add_objective_bound(IlpInstance &instance, ObjectiveBound mode, EdgeWeight input_cut,
                         double granularity = 1e-6);

// 0/1 values of all variables for a block assignment of the model vertices
// (e_uv = 1 iff u and v are in different blocks).
std::vector<double> variable_values(const IlpInstance &instance,
                                    std::span<const PartitionID> assignment);

double objective_value(const IlpInstance &instance, std::span<const double> values);

// Checks every row and every fixed variable.
bool is_feasible(const IlpInstance &instance, std::span<const double> values,
                 double tolerance = 1e-9);

// CPLEX LP text format.
void export_lp(const IlpInstance &instance, std::ostream &out);
void export_lp(const IlpInstance &instance, const std::string &path);

} // namespace ilprefine
