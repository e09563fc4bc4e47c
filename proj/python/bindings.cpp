/*******************************************************************************
 * Python bindings for graphs, partitions, the coarse model, the binary program,
 * the solver and the refinement driver.
 *
 * @file:   bindings.cpp
 ******************************************************************************/
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ilprefine/coarse_model.h"
#include "ilprefine/graph_io.h"
#include "ilprefine/ilp_model.h"
#include "ilprefine/refine.h"
#include "ilprefine/report.h"
#include "ilprefine/selection.h"
#include "ilprefine/solver.h"

namespace py = pybind11;
using namespace ilprefine;

namespace {

template <typename T> std::vector<T> to_vector(std::span<const T> values) {
  return {values.begin(), values.end()};
}

Graph graph_from_edges(const NodeID n, const std::vector<std::tuple<NodeID, NodeID, double>> &edges,
                       std::vector<NodeWeight> vertex_weights) {
  std::vector<WeightedEdge> list;
  list.reserve(edges.size());
  for (const auto &[u, v, w] : edges) {
    list.push_back({u, v, w});
  }
  return Graph::from_edges(n, list, std::move(vertex_weights));
}

py::dict record_dict(const RunRecord &r) {
  py::dict d;
  d["instance"] = r.instance;
  d["k"] = r.k;
  d["eps"] = r.epsilon;
  d["strategy"] = r.strategy;
  d["preset"] = r.preset;
  d["input_cut"] = r.input_cut;
  d["output_cut"] = r.output_cut;
  d["improved"] = r.improved;
  d["status"] = r.status;
  d["time_s"] = r.time_s;
  d["nodes"] = r.nodes;
  d["kept"] = r.kept;
  d["nonzeros"] = r.nonzeros;
  d["hit_time_limit"] = r.hit_time_limit;
  return d;
}

std::vector<SelectionStrategy> parse_strategies(const std::vector<std::string> &names) {
  std::vector<SelectionStrategy> strategies;
  for (const auto &name : names) {
    strategies.push_back(SelectionStrategy::parse(name));
  }
  return strategies;
}

} // namespace

PYBIND11_MODULE(_ilprefine, m) {
  m.doc() = "Exact ILP-based refinement of balanced graph partitions";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"),
           py::arg("vertex_weights") = std::vector<NodeWeight>{},
           "Build from (u, v, weight) triples with 0-based ids.")
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def_property_readonly("total_vertex_weight", &Graph::total_vertex_weight)
      .def_property_readonly("total_edge_weight", &Graph::total_edge_weight)
      .def("neighbors", [](const Graph &g, NodeID v) { return to_vector(g.neighbors(v)); })
      .def("vertex_weight", &Graph::vertex_weight)
      .def("edges",
           [](const Graph &g) {
             std::vector<std::tuple<NodeID, NodeID, double>> out;
             for (const auto &e : g.edges()) {
               out.emplace_back(e.u, e.v, e.weight);
             }
             return out;
           })
      .def("__repr__", [](const Graph &g) {
        return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) + ">";
      });

  m.def("load_graph", &load_graph, py::arg("path"));
  m.def(
      "parse_metis",
      [](const std::string &text) {
        std::istringstream in(text);
        return parse_metis(in);
      },
      py::arg("text"));
  m.def(
      "to_metis",
      [](const Graph &g) {
        std::ostringstream out;
        write_metis(g, out);
        return out.str();
      },
      py::arg("graph"));
  m.def("read_partition", &read_partition, py::arg("path"));
  m.def(
      "write_partition",
      [](const std::vector<PartitionID> &assignment, const std::string &path) { write_partition(assignment, path); },
      py::arg("assignment"), py::arg("path"));

  py::class_<Partition>(m, "Partition")
      .def(py::init<const Graph &, PartitionID, double, std::vector<PartitionID>>(), py::arg("graph"),
           py::arg("k"), py::arg("epsilon"), py::arg("assignment"))
      .def_property_readonly("k", &Partition::k)
      .def_property_readonly("epsilon", &Partition::epsilon)
      .def_property_readonly("cut", &Partition::cut)
      .def_property_readonly("assignment", [](const Partition &p) { return to_vector(p.assignment()); })
      .def_property_readonly("block_weights", [](const Partition &p) { return to_vector(p.block_weights()); })
      .def_property_readonly("max_block_weight", &Partition::max_block_weight)
      .def("block", &Partition::block)
      .def("move", &Partition::move, py::arg("graph"), py::arg("v"), py::arg("to"));

  m.def(
      "cut_value",
      [](const Graph &g, const std::vector<PartitionID> &assignment) { return cut_value(g, assignment); },
      py::arg("graph"), py::arg("assignment"));
  m.def("l_max", py::overload_cast<const Graph &, PartitionID, double>(&l_max), py::arg("graph"), py::arg("k"),
        py::arg("epsilon"));
  m.def("is_balanced", &is_balanced, py::arg("graph"), py::arg("partition"));
  m.def("boundary_vertices", &boundary_vertices, py::arg("graph"), py::arg("partition"));
  m.def(
      "gain",
      [](const Graph &g, const Partition &p, NodeID v) {
        const Gain best = gain(g, p, v);
        return py::make_tuple(best.value, best.target);
      },
      py::arg("graph"), py::arg("partition"), py::arg("v"), "Returns (gain, target block).");

  py::class_<KeptSet>(m, "KeptSet")
      .def_readonly("vertices", &KeptSet::vertices)
      .def_readonly("nonzeros_at_stop", &KeptSet::nonzeros_at_stop)
      .def_readonly("budget_exhausted", &KeptSet::budget_exhausted)
      .def_readonly("skipped", &KeptSet::skipped);

  m.def(
      "select",
      [](const Graph &g, const Partition &p, const std::string &strategy, std::uint64_t budget,
         std::uint64_t seed) {
        SelectionStrategy s = SelectionStrategy::parse(strategy);
        s.nonzero_budget = budget;
        s.seed = seed;
        return select(g, p, s);
      },
      py::arg("graph"), py::arg("partition"), py::arg("strategy") = "gain:-2", py::arg("budget") = 1'000'000,
      py::arg("seed") = 0);

  py::class_<CoarseModel>(m, "CoarseModel")
      .def(py::init([](const Graph &g, const Partition &p, const std::vector<NodeID> &kept) {
             return CoarseModel(g, p, kept);
           }),
           py::arg("graph"), py::arg("partition"), py::arg("kept"), py::keep_alive<1, 2>(), py::keep_alive<1, 3>())
      .def_property_readonly("graph", &CoarseModel::graph, py::return_value_policy::reference_internal)
      .def_property_readonly("k", &CoarseModel::k)
      .def_property_readonly("kept", [](const CoarseModel &model) { return to_vector(model.kept()); })
      .def("original_of", &CoarseModel::original_of)
      .def("model_of", &CoarseModel::model_of)
      .def("super_weight", &CoarseModel::super_weight)
      .def("induced_partition", &induced_model_partition)
      .def("project", [](const CoarseModel &model, const std::vector<PartitionID> &a) {
        return project_solution(model, a);
      });

  py::class_<IlpInstance>(m, "IlpInstance")
      .def_property_readonly("num_variables", &IlpInstance::num_variables)
      .def_property_readonly("num_constraints", &IlpInstance::num_constraints)
      .def_property_readonly("num_nonzeros", &IlpInstance::num_nonzeros)
      .def_property_readonly("objective_offset", &IlpInstance::objective_offset)
      .def_property_readonly("l_max", &IlpInstance::l_max)
      .def_property_readonly("symmetry_condition_holds", &IlpInstance::symmetry_condition_holds)
      .def("to_lp", [](const IlpInstance &inst) {
        std::ostringstream out;
        export_lp(inst, out);
        return out.str();
      });

  m.def(
      "build_ilp",
      [](const CoarseModel &model, const std::string &preset) { return build_ilp(model, IlpOptions::preset(preset)); },
      py::arg("model"), py::arg("preset") = "BasicSymSSol", py::keep_alive<0, 1>());

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("status", [](const SolveResult &r) { return std::string(to_string(r.status)); })
      .def_readonly("assignment", &SolveResult::assignment)
      .def_readonly("objective", &SolveResult::objective)
      .def_property_readonly("nodes", [](const SolveResult &r) { return r.stats.nodes; })
      .def_property_readonly("wall_time", [](const SolveResult &r) { return r.stats.wall_time; });

  m.def(
      "solve",
      [](const IlpInstance &inst, double time_limit, std::uint64_t node_limit) {
        SolverConfig config;
        config.time_limit = time_limit;
        config.node_limit = node_limit;
        py::gil_scoped_release release;
        return solve(inst, config);
      },
      py::arg("instance"), py::arg("time_limit") = 60.0, py::arg("node_limit") = 0);
  m.def("solve_exhaustive", &solve_exhaustive, py::arg("instance"), py::arg("cap") = 10'000'000);

  m.def(
      "refine",
      [](const Graph &g, const Partition &p, std::vector<std::string> strategies,
         std::optional<std::uint64_t> budget, const std::string &preset, double time_limit,
         std::uint64_t node_limit, unsigned rounds, std::uint64_t seed, const std::string &name) {
        RefineConfig config;
        config.k = p.k();
        config.epsilon = p.epsilon();
        config.strategies = parse_strategies(strategies);
        config.nonzero_budget = budget;
        config.ilp_options = IlpOptions::preset(preset);
        config.time_limit = time_limit;
        config.node_limit = node_limit;
        config.rounds = rounds;
        config.seed = seed;
        config.instance_name = name;
        RefineResult result;
        {
          py::gil_scoped_release release;
          result = refine(g, p, config);
        }
        return py::make_tuple(result.partition, record_dict(result.record));
      },
      py::arg("graph"), py::arg("partition"), py::arg("strategies") = std::vector<std::string>{},
      py::arg("budget") = py::none(), py::arg("preset") = "BasicSymSSol", py::arg("time_limit") = 60.0,
      py::arg("node_limit") = 0, py::arg("rounds") = 1, py::arg("seed") = 0, py::arg("name") = "",
      "Returns (partition, record dict).");

  m.def("bootstrap", &bootstrap_partition, py::arg("graph"), py::arg("k"), py::arg("epsilon") = 0.03,
        py::arg("seed") = 0);

  m.def(
      "evaluate",
      [](const Graph &g, const std::vector<PartitionID> &assignment, PartitionID k) {
        const EvaluationReport report = evaluate(g, assignment, k);
        py::dict d;
        d["k"] = report.k;
        d["cut"] = report.cut;
        d["block_weights"] = report.block_weights;
        d["max_block_weight"] = report.max_block_weight;
        py::list verdicts;
        for (const auto &v : report.verdicts) {
          py::dict entry;
          entry["eps"] = v.epsilon;
          entry["l_max"] = v.l_max;
          entry["balanced"] = v.balanced;
          entry["overloaded_blocks"] = v.overloaded_blocks;
          verdicts.append(entry);
        }
        d["verdicts"] = verdicts;
        return d;
      },
      py::arg("graph"), py::arg("assignment"), py::arg("k") = 0);
}
