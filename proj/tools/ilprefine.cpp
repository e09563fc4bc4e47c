/*******************************************************************************
 * Command line front end.
 *
 * @file:   ilprefine.cpp
 ******************************************************************************/
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ilprefine/coarse_model.h"
#include "ilprefine/graph_io.h"
#include "ilprefine/ilp_model.h"
#include "ilprefine/log.h"
#include "ilprefine/refine.h"
#include "ilprefine/report.h"
#include "ilprefine/selection.h"

using namespace ilprefine;

namespace {

std::uint64_t effective_seed(const std::uint64_t seed) {
  if (const char *env = std::getenv("ILPREFINE_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception &) {
      throw Error(ErrorCode::InvalidArgument, std::string("ILPREFINE_SEED is not a number: ") + env);
    }
  }
  return seed;
}

Partition load_partition(const Graph &graph, const std::string &path, const PartitionID k,
                         const double eps) {
  std::vector<PartitionID> assignment = read_partition(path);
  if (assignment.size() != graph.n()) {
    throw Error(ErrorCode::LengthMismatch, "partition has " + std::to_string(assignment.size()) +
                                               " entries, graph has " + std::to_string(graph.n()) +
                                               " vertices");
  }
  return Partition(graph, k, eps, std::move(assignment));
}

std::vector<SelectionStrategy> parse_strategies(const std::vector<std::string> &spellings) {
  std::vector<SelectionStrategy> strategies;
  for (const auto &s : spellings) {
    strategies.push_back(SelectionStrategy::parse(s));
  }
  return strategies;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Refines balanced k-way graph partitions with an exact solver on a contracted model"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress notices on stderr");

  struct {
    std::string graph, partition, out, records, preset = "BasicSymSSol", name;
    std::vector<std::string> strategies;
    PartitionID k = 2;
    double eps = 0.03, time_limit = 60.0;
    std::uint64_t nzlimit = 0, seed = 0, node_limit = 0;
    unsigned rounds = 1;
  } r;
  auto *refine_cmd = app.add_subcommand("refine", "Improve a partition");
  refine_cmd->add_option("graph", r.graph, "Graph in METIS format")->required();
  refine_cmd->add_option("partition", r.partition, "Partition file, one block id per line")->required();
  refine_cmd->add_option("--k", r.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
  refine_cmd->add_option("--eps", r.eps, "Allowed imbalance")->check(CLI::NonNegativeNumber);
  refine_cmd->add_option("--strategy", r.strategies,
                         "boundary | gain:<rho> | topvertices:<delta>; repeat to keep the best");
  refine_cmd->add_option("--nzlimit", r.nzlimit, "Non-zero budget (default depends on k)");
  refine_cmd->add_option("--time-limit", r.time_limit, "Solver time limit per run in seconds")
      ->check(CLI::NonNegativeNumber);
  refine_cmd->add_option("--node-limit", r.node_limit, "Search node limit per solve (0 = none)");
  refine_cmd->add_option("--rounds", r.rounds, "Refinement rounds")->check(CLI::PositiveNumber);
  refine_cmd->add_option("--seed", r.seed, "Random seed (ILPREFINE_SEED overrides)");
  refine_cmd->add_option("--preset", r.preset, "Basic | BasicSym | BasicSymSSol | BSSSConst= | BSSSConst<");
  refine_cmd->add_option("--out", r.out, "Output partition file");
  refine_cmd->add_option("--record", r.records, "Append the run record to this JSON lines file");
  refine_cmd->add_option("--name", r.name, "Instance name in the run record (default: graph file stem)");

  struct {
    std::string graph, partition;
    PartitionID k = 0;
  } ev;
  auto *evaluate_cmd = app.add_subcommand("evaluate", "Print cut, block weights and balance verdicts");
  evaluate_cmd->add_option("graph", ev.graph)->required();
  evaluate_cmd->add_option("partition", ev.partition)->required();
  evaluate_cmd->add_option("--k", ev.k, "Number of blocks (default: largest id + 1)");

  struct {
    std::string graph, out;
    PartitionID k = 2;
    double eps = 0.03;
    std::uint64_t seed = 0;
  } bs;
  auto *bootstrap_cmd = app.add_subcommand("bootstrap", "Compute a balanced start partition");
  bootstrap_cmd->add_option("graph", bs.graph)->required();
  bootstrap_cmd->add_option("--k", bs.k)->required()->check(CLI::Range(2u, 1u << 20));
  bootstrap_cmd->add_option("--eps", bs.eps)->check(CLI::NonNegativeNumber);
  bootstrap_cmd->add_option("--seed", bs.seed);
  bootstrap_cmd->add_option("--out", bs.out, "Output partition file (default: stdout)");

  struct {
    std::string graph, partition, out, strategy = "gain:-2", preset = "BasicSymSSol", dump;
    PartitionID k = 2;
    double eps = 0.03;
    std::uint64_t nzlimit = 0, seed = 0;
  } ex;
  auto *export_cmd = app.add_subcommand("export-ilp", "Write the binary program of one refinement step");
  export_cmd->add_option("graph", ex.graph)->required();
  export_cmd->add_option("partition", ex.partition)->required();
  export_cmd->add_option("--k", ex.k)->required()->check(CLI::PositiveNumber);
  export_cmd->add_option("--eps", ex.eps)->check(CLI::NonNegativeNumber);
  export_cmd->add_option("--strategy", ex.strategy);
  export_cmd->add_option("--nzlimit", ex.nzlimit);
  export_cmd->add_option("--seed", ex.seed);
  export_cmd->add_option("--preset", ex.preset);
  export_cmd->add_option("--out", ex.out, "LP file (default: stdout)");
  export_cmd->add_option("--dump-model", ex.dump,
                         "Also write the model graph to <prefix>.graph and its mapping to <prefix>.map");

  struct {
    std::string records, out = "csv", target;
  } rp;
  auto *report_cmd = app.add_subcommand("report", "Summarize run records");
  report_cmd->add_option("records", rp.records, "JSON lines file")->required();
  report_cmd->add_option("--out", rp.out, "csv (records) or performance (ratios and means)")
      ->check(CLI::IsMember({"csv", "performance"}));
  report_cmd->add_option("--file", rp.target, "Write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);
  set_notices_enabled(!quiet);

  try {
    if (*refine_cmd) {
      const Graph graph = load_graph(r.graph);
      const Partition input = load_partition(graph, r.partition, r.k, r.eps);
      RefineConfig config;
      config.k = r.k;
      config.epsilon = r.eps;
      config.strategies = parse_strategies(r.strategies);
      if (r.nzlimit > 0) {
        config.nonzero_budget = r.nzlimit;
      }
      config.ilp_options = IlpOptions::preset(r.preset);
      config.time_limit = r.time_limit;
      config.node_limit = r.node_limit;
      config.rounds = r.rounds;
      config.seed = effective_seed(r.seed);
      config.instance_name =
          r.name.empty() ? std::filesystem::path(r.graph).stem().string() : r.name;

      const RefineResult result = refine(graph, input, config);
      if (r.out.empty()) {
        write_partition(result.partition.assignment(), std::cout);
      } else {
        write_partition(result.partition.assignment(), r.out);
      }
      if (!r.records.empty()) {
        std::ofstream records(r.records, std::ios::app);
        if (!records) {
          throw Error(ErrorCode::Io, "cannot write '" + r.records + "'");
        }
        records << to_json_line(result.record) << '\n';
      }
      std::cerr << to_json_line(result.record) << '\n';
    } else if (*evaluate_cmd) {
      const Graph graph = load_graph(ev.graph);
      const std::vector<PartitionID> assignment = read_partition(ev.partition);
      std::cout << format_report(evaluate(graph, assignment, ev.k));
    } else if (*bootstrap_cmd) {
      const Graph graph = load_graph(bs.graph);
      const Partition partition = bootstrap_partition(graph, bs.k, bs.eps, effective_seed(bs.seed));
      if (bs.out.empty()) {
        write_partition(partition.assignment(), std::cout);
      } else {
        write_partition(partition.assignment(), bs.out);
      }
    } else if (*export_cmd) {
      const Graph graph = load_graph(ex.graph);
      const Partition input = load_partition(graph, ex.partition, ex.k, ex.eps);
      if (!is_balanced(graph, input)) {
        throw Error(ErrorCode::UnbalancedInput, "input partition is not balanced");
      }
      SelectionStrategy strategy = SelectionStrategy::parse(ex.strategy);
      strategy.nonzero_budget = ex.nzlimit > 0 ? ex.nzlimit : default_nonzero_budget(ex.k);
      strategy.seed = effective_seed(ex.seed);
      const KeptSet kept = select(graph, input, strategy);
      const CoarseModel model(graph, input, kept.vertices);
      const IlpInstance instance = build_ilp(model, IlpOptions::preset(ex.preset));
      if (ex.out.empty()) {
        export_lp(instance, std::cout);
      } else {
        export_lp(instance, ex.out);
      }
      if (!ex.dump.empty()) {
        dump_model(model, ex.dump + ".graph", ex.dump + ".map");
      }
    } else if (*report_cmd) {
      const std::vector<RunRecord> records = read_records_jsonl(rp.records);
      std::ofstream file;
      if (!rp.target.empty()) {
        file.open(rp.target);
        if (!file) {
          throw Error(ErrorCode::Io, "cannot write '" + rp.target + "'");
        }
      }
      std::ostream &out = rp.target.empty() ? std::cout : file;
      if (rp.out == "csv") {
        write_records_csv(records, out);
      } else {
        write_performance_csv(report_performance(records), out);
      }
    }
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Io ? 1 : 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
