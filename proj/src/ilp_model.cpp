/*******************************************************************************
 * @file:   ilp_model.cpp
 ******************************************************************************/
#include "ilprefine/ilp_model.h"

#include <algorithm>
#include <cmath>

namespace ilprefine {

IlpOptions IlpOptions::basic() {
  return {};
}

IlpOptions IlpOptions::basic_sym() {
  IlpOptions o;
  o.symmetry_breaking = true;
  return o;
}

IlpOptions IlpOptions::basic_sym_ssol() {
  IlpOptions o = basic_sym();
  o.start_solution = true;
  return o;
}

IlpOptions IlpOptions::bsss_const_eq() {
  IlpOptions o = basic_sym_ssol();
  o.objective_bound = ObjectiveBound::LessOrEqual;
  return o;
}

IlpOptions IlpOptions::bsss_const_lt() {
  IlpOptions o = basic_sym_ssol();
  o.objective_bound = ObjectiveBound::StrictlyLess;
  return o;
}

IlpOptions IlpOptions::preset(const std::string_view name) {
  if (name == "Basic") {
    return basic();
  }
  if (name == "BasicSym") {
    return basic_sym();
  }
  if (name == "BasicSymSSol") {
    return basic_sym_ssol();
  }
  if (name == "BSSSConst=") {
    return bsss_const_eq();
  }
  if (name == "BSSSConst<") {
    return bsss_const_lt();
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown preset '" + std::string(name) +
                  "' (expected Basic, BasicSym, BasicSymSSol, BSSSConst= or BSSSConst<)");
}

std::string IlpOptions::preset_name() const {
  if (!symmetry_breaking && !start_solution && objective_bound == ObjectiveBound::None) {
    return "Basic";
  }
  if (symmetry_breaking && !start_solution && objective_bound == ObjectiveBound::None) {
    return "BasicSym";
  }
  if (symmetry_breaking && start_solution) {
    switch (objective_bound) {
    case ObjectiveBound::None:
      return "BasicSymSSol";
    case ObjectiveBound::LessOrEqual:
      return "BSSSConst=";
    case ObjectiveBound::StrictlyLess:
      return "BSSSConst<";
    }
  }
  return "Custom";
}

IlpInstance::IlpInstance(const CoarseModel &model)
    : _k(model.k()), _super_vertices(model.k()),
      _vertex_weights(model.graph().vertex_weights().begin(), model.graph().vertex_weights().end()),
      _edges(model.graph().edges()),
      _l_max(ilprefine::l_max(model.original_total_weight(), model.k(), model.origin_partition().epsilon())),
      _input_cut(model.origin_partition().cut()) {
  const NodeID n = num_vertices();
  const std::size_t num_vars = static_cast<std::size_t>(n) * _k + _edges.size();
  _objective.assign(num_vars, 0.0);
  _fixed.assign(num_vars, -1);
  _fixed_block.assign(n, kInvalidBlock);
  _folded.assign(_edges.size(), 0);
  for (std::size_t i = 0; i < _edges.size(); ++i) {
    _objective[e(i)] = _edges[i].weight;
  }

  _rows.reserve(2 * _k * _edges.size() + _k + n);
  _terms.reserve(static_cast<std::size_t>(_k) * (6 * _edges.size() + 2 * n));

  std::vector<Term> terms;
  for (std::size_t i = 0; i < _edges.size(); ++i) {
    const auto [u, v, w] = _edges[i];
    for (PartitionID b = 0; b < _k; ++b) {
      terms = {{e(i), 1.0}, {x(u, b), -1.0}, {x(v, b), 1.0}};
      push_row(RowKind::CutLower, RowSense::GreaterEqual, 0.0, terms);
      terms = {{e(i), 1.0}, {x(v, b), -1.0}, {x(u, b), 1.0}};
      push_row(RowKind::CutUpper, RowSense::GreaterEqual, 0.0, terms);
    }
  }
  for (PartitionID b = 0; b < _k; ++b) {
    terms.clear();
    for (NodeID v = 0; v < n; ++v) {
      terms.push_back({x(v, b), _vertex_weights[v]});
    }
    push_row(RowKind::Balance, RowSense::LessEqual, _l_max, terms);
  }
  for (NodeID v = 0; v < n; ++v) {
    terms.clear();
    for (PartitionID b = 0; b < _k; ++b) {
      terms.push_back({x(v, b), 1.0});
    }
    push_row(RowKind::Assignment, RowSense::Equal, 1.0, terms);
  }
}

void IlpInstance::push_row(const RowKind kind, const RowSense sense, const double rhs,
                           std::span<const Term> terms) {
  _rows.push_back({kind, sense, rhs});
  _terms.insert(_terms.end(), terms.begin(), terms.end());
  _row_offsets.push_back(_terms.size());
}

std::string IlpInstance::variable_name(const std::uint32_t var) const {
  const std::uint32_t num_x = num_vertices() * _k;
  if (var < num_x) {
    return "x_" + std::to_string(var / _k) + "_" + std::to_string(var % _k);
  }
  const WeightedEdge &edge = _edges[var - num_x];
  return "e_" + std::to_string(edge.u) + "_" + std::to_string(edge.v);
}

bool IlpInstance::integral_edge_weights() const {
  return std::all_of(_edges.begin(), _edges.end(),
                     [](const WeightedEdge &edge) { return edge.weight == std::floor(edge.weight); });
}

void apply_symmetry_breaking(IlpInstance &inst) {
  if (inst._symmetry_breaking) {
    return;
  }
  const PartitionID k = inst._k;
  for (PartitionID i = 0; i < inst._super_vertices; ++i) {
    if (inst._vertex_weights[i] > inst._l_max) {
      throw Error(ErrorCode::InfeasibleFixing,
                  "super-vertex " + std::to_string(i) + " has weight " +
                      std::to_string(inst._vertex_weights[i]) + " > L_max = " +
                      std::to_string(inst._l_max));
    }
  }

  inst._symmetry_condition = true;
  for (PartitionID i = 0; i < inst._super_vertices; ++i) {
    for (PartitionID j = i + 1; j < inst._super_vertices; ++j) {
      if (!(inst._vertex_weights[i] + inst._vertex_weights[j] > inst._l_max)) {
        inst._symmetry_condition = false;
      }
    }
  }

  for (PartitionID i = 0; i < inst._super_vertices; ++i) {
    inst._fixed_block[i] = i;
    for (PartitionID b = 0; b < k; ++b) {
      inst._fixed[inst.x(i, b)] = b == i ? 1 : 0;
    }
  }
  for (std::size_t i = 0; i < inst._edges.size(); ++i) {
    const WeightedEdge &edge = inst._edges[i];
    if (edge.u < inst._super_vertices && edge.v < inst._super_vertices) {
      inst._folded[i] = 1;
      inst._fixed[inst.e(i)] = 1;
      inst._objective_offset += edge.weight;
      inst._objective[inst.e(i)] = 0.0;
    }
  }

  std::vector<RowInfo> rows;
  std::vector<std::size_t> offsets{0};
  std::vector<Term> terms;
  terms.reserve(inst._terms.size());
  for (std::size_t r = 0; r < inst._rows.size(); ++r) {
    RowInfo info = inst._rows[r];
    const auto row_terms = inst.row_terms(r);
    switch (info.kind) {
    case RowKind::CutLower:
    case RowKind::CutUpper:
      if (inst._folded[row_terms[0].var - inst.e(0)]) {
        continue;
      }
      terms.insert(terms.end(), row_terms.begin(), row_terms.end());
      break;
    case RowKind::Balance:
      for (const Term &t : row_terms) {
        const NodeID v = t.var / k;
        if (v < inst._super_vertices) {
          if (t.var % k == v) {
            info.rhs -= t.coef;
          }
        } else {
          terms.push_back(t);
        }
      }
      break;
    case RowKind::Assignment:
      if (row_terms[0].var / k < inst._super_vertices) {
        continue;
      }
      terms.insert(terms.end(), row_terms.begin(), row_terms.end());
      break;
    case RowKind::Bound:
      for (const Term &t : row_terms) {
        if (inst._folded[t.var - inst.e(0)]) {
          info.rhs -= t.coef;
        } else {
          terms.push_back(t);
        }
      }
      break;
    }
    rows.push_back(info);
    offsets.push_back(terms.size());
  }
  inst._rows = std::move(rows);
  inst._row_offsets = std::move(offsets);
  inst._terms = std::move(terms);
  inst._symmetry_breaking = true;
}

void set_start_solution(IlpInstance &inst, const CoarseModel &model) {
  std::vector<PartitionID> start = induced_model_partition(model);
  std::vector<NodeWeight> block_weights(inst._k, 0.0);
  for (NodeID v = 0; v < inst.num_vertices(); ++v) {
    block_weights[start[v]] += inst._vertex_weights[v];
  }
  if (*std::max_element(block_weights.begin(), block_weights.end()) > inst._l_max) {
    throw Error(ErrorCode::UnbalancedInput, "start solution violates the balance constraint");
  }
  inst._warm_start_objective = objective_value(inst, variable_values(inst, start));
  inst._warm_start = std::move(start);
}

void add_objective_bound(IlpInstance &inst, const ObjectiveBound mode, const EdgeWeight input_cut,
                         const double granularity) {
  if (mode == ObjectiveBound::None) {
    return;
  }
  const double gap =
      mode == ObjectiveBound::StrictlyLess ? (inst.integral_edge_weights() ? 1.0 : granularity) : 0.0;
  inst._bound_mode = mode;
  inst._bound_value = input_cut - gap;

  std::vector<Term> terms;
  for (std::size_t i = 0; i < inst._edges.size(); ++i) {
    if (!inst._folded[i]) {
      terms.push_back({inst.e(i), inst._edges[i].weight});
    }
  }
  inst.push_row(RowKind::Bound, RowSense::LessEqual, inst._bound_value - inst._objective_offset, terms);
}

IlpInstance build_ilp(const CoarseModel &model, const IlpOptions &options) {
  IlpInstance inst(model);
  if (options.symmetry_breaking) {
    apply_symmetry_breaking(inst);
  }
  if (options.start_solution) {
    set_start_solution(inst, model);
  }
  add_objective_bound(inst, options.objective_bound, model.origin_partition().cut(),
                      options.strict_granularity);
  return inst;
}

std::vector<double> variable_values(const IlpInstance &inst, std::span<const PartitionID> assignment) {
  if (assignment.size() != inst.num_vertices()) {
    throw Error(ErrorCode::LengthMismatch, "assignment does not cover all model vertices");
  }
  std::vector<double> values(inst.num_variables(), 0.0);
  for (NodeID v = 0; v < inst.num_vertices(); ++v) {
    values[inst.x(v, assignment[v])] = 1.0;
  }
  const auto edges = inst.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    values[inst.e(i)] = assignment[edges[i].u] != assignment[edges[i].v] ? 1.0 : 0.0;
  }
  return values;
}

double objective_value(const IlpInstance &inst, std::span<const double> values) {
  double objective = inst.objective_offset();
  for (std::uint32_t var = 0; var < inst.num_variables(); ++var) {
    objective += inst.objective_coef(var) * values[var];
  }
  return objective;
}

bool is_feasible(const IlpInstance &inst, std::span<const double> values, const double tolerance) {
  for (std::uint32_t var = 0; var < inst.num_variables(); ++var) {
    if (inst.fixed_value(var) >= 0 && values[var] != inst.fixed_value(var)) {
      return false;
    }
  }
  for (std::size_t r = 0; r < inst.num_constraints(); ++r) {
    double lhs = 0;
    for (const Term &t : inst.row_terms(r)) {
      lhs += t.coef * values[t.var];
    }
    const RowInfo &info = inst.row(r);
    switch (info.sense) {
    case RowSense::LessEqual:
      if (lhs > info.rhs + tolerance) {
        return false;
      }
      break;
    case RowSense::GreaterEqual:
      if (lhs < info.rhs - tolerance) {
        return false;
      }
      break;
    case RowSense::Equal:
      if (std::abs(lhs - info.rhs) > tolerance) {
        return false;
      }
      break;
    }
  }
  return true;
}

} // namespace ilprefine
