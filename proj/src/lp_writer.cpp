/*******************************************************************************
 * CPLEX LP export of a binary program.
 *
 * @file:   lp_writer.cpp
 ******************************************************************************/
#include <fstream>
#include <ostream>

#include "ilprefine/graph_io.h"
#include "ilprefine/ilp_model.h"

namespace ilprefine {

namespace {

// Lines in LP files are limited to a few hundred characters by some readers.
constexpr std::size_t kTermsPerLine = 8;

void write_terms(std::ostream &out, const IlpInstance &inst, std::span<const Term> terms) {
  if (terms.empty()) {
    out << " 0";
    return;
  }
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && i % kTermsPerLine == 0) {
      out << "\n  ";
    }
    const double coef = terms[i].coef;
    const double magnitude = coef < 0 ? -coef : coef;
    if (i == 0) {
      if (coef < 0) {
        out << " -";
      }
    } else {
      out << (coef < 0 ? " -" : " +");
    }
    if (magnitude != 1.0) {
      out << ' ' << format_number(magnitude);
    }
    out << ' ' << inst.variable_name(terms[i].var);
  }
}

const char *sense_token(const RowSense sense) {
  switch (sense) {
  case RowSense::LessEqual:
    return "<=";
  case RowSense::GreaterEqual:
    return ">=";
  case RowSense::Equal:
    return "=";
  }
  return "=";
}

} // namespace

void export_lp(const IlpInstance &inst, std::ostream &out) {
  out << "\\ balanced " << inst.k() << "-way partitioning program\n";
  out << "\\ vertices " << inst.num_vertices() << ", edges " << inst.edges().size() << ", variables "
      << inst.num_variables() << ", constraints " << inst.num_constraints() << ", nonzeros "
      << inst.num_nonzeros() << '\n';
  out << "\\ L_max " << format_number(inst.l_max()) << '\n';
  out << "\\ constant objective offset " << format_number(inst.objective_offset()) << '\n';

  std::vector<Term> objective;
  for (std::uint32_t var = 0; var < inst.num_variables(); ++var) {
    if (var >= inst.e(0) && !inst.is_folded(var - inst.e(0))) {
      objective.push_back({var, inst.objective_coef(var)});
    }
  }
  out << "Minimize\n obj:";
  write_terms(out, inst, objective);
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < inst.num_constraints(); ++r) {
    out << " c" << r << ':';
    write_terms(out, inst, inst.row_terms(r));
    out << ' ' << sense_token(inst.row(r).sense) << ' ' << format_number(inst.row(r).rhs) << '\n';
  }

  bool has_fixed = false;
  for (std::uint32_t var = 0; var < inst.num_variables(); ++var) {
    if (inst.fixed_value(var) >= 0) {
      if (!has_fixed) {
        out << "Bounds\n";
        has_fixed = true;
      }
      out << ' ' << inst.variable_name(var) << " = " << inst.fixed_value(var) << '\n';
    }
  }

  out << "Binaries\n";
  for (std::uint32_t var = 0; var < inst.num_variables(); ++var) {
    out << ' ' << inst.variable_name(var);
    if ((var + 1) % 10 == 0 || var + 1 == inst.num_variables()) {
      out << '\n';
    }
  }
  out << "End\n";
}

void export_lp(const IlpInstance &inst, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  }
  export_lp(inst, out);
  if (!out) {
    throw Error(ErrorCode::Io, "write to '" + path + "' failed");
  }
}

} // namespace ilprefine
