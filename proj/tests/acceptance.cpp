/*******************************************************************************
 * End-to-end acceptance checks. Prints one PASS/FAIL line per check and
 * exits non-zero if any check fails.
 *
 *   acceptance [--cli <path to ilprefine>] [--only <n>]
 *
 * Set ILPREFINE_GRAPH_DIR to a directory of METIS graphs to run the larger
 * refinement checks on those instead of the generated meshes.
 *
 * @file:   acceptance.cpp
 ******************************************************************************/
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "ilprefine/coarse_model.h"
#include "ilprefine/graph_io.h"
#include "ilprefine/ilp_model.h"
#include "ilprefine/log.h"
#include "ilprefine/random.h"
#include "ilprefine/refine.h"
#include "ilprefine/report.h"
#include "ilprefine/selection.h"
#include "ilprefine/solver.h"
#include "support.h"

using namespace ilprefine;
using namespace ilprefine::test;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(const bool condition, const std::string &what) {
    if (!condition) {
      pass = false;
      if (failures.size() < 5) {
        failures.push_back(what);
      }
    }
  }
};

std::vector<NodeID> identity(const NodeID n) {
  std::vector<NodeID> all(n);
  std::iota(all.begin(), all.end(), 0);
  return all;
}

std::string partition_bytes(const Partition &p) {
  std::ostringstream out;
  write_partition(p.assignment(), out);
  return out.str();
}

std::string fmt(const double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << x;
  return out.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("ilprefine-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

const std::vector<std::string> kTableStrategies = {"boundary",      "gain:0",        "gain:-1", "gain:-2",
                                                   "topvertices:1", "topvertices:2", "topvertices:3"};

// 1. solve on the uncontracted model equals the exhaustive oracle.
Outcome oracle_equivalence() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::size_t optimal = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const NodeID n = 4 + static_cast<NodeID>(i % 9);
    const PartitionID k = 2 + static_cast<PartitionID>((i / 9) % 3);
    const double eps = (i / 27) % 2 == 0 ? 0.0 : 0.1;
    const std::uint64_t seed = mix_seed(1000 + i);
    const Graph g = random_graph(n, 0.4, seed);
    const Partition p(g, k, eps, random_assignment(n, k, seed));
    const CoarseModel m(g, p, identity(n));
    const IlpInstance inst = build_ilp(m, IlpOptions::basic());
    const SolveResult fast = solve(inst);
    const SolveResult slow = solve_exhaustive(inst, 100'000'000);
    const std::string tag = "instance " + std::to_string(i);
    o.expect(fast.status == SolveStatus::Optimal, tag + ": status " + to_string(fast.status));
    o.expect(slow.status == SolveStatus::Optimal, tag + ": oracle status " + to_string(slow.status));
    o.expect(fast.objective == slow.objective,
             tag + ": " + format_number(fast.objective) + " != " + format_number(slow.objective));
    optimal += fast.status == SolveStatus::Optimal && fast.objective == slow.objective;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(seconds < 60.0, "took " + fmt(seconds) + " s");
  o.detail = std::to_string(optimal) + "/200 optimal and equal to the oracle, " + fmt(seconds) + " s";
  return o;
}

// 2. Projection preserves cut and block weights; induced partition round-trips.
Outcome projection_exactness() {
  Outcome o;
  std::size_t assignments = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint64_t seed = mix_seed(2000 + i);
    const NodeID n = 6 + static_cast<NodeID>(seed % 40);
    const PartitionID k = 2 + static_cast<PartitionID>((seed >> 8) % 4);
    const Graph g = random_graph(n, 0.2, seed, i % 2 == 0);
    const Partition p(g, k, 0.03, random_assignment(n, k, seed));
    const auto kept = random_subset(n, static_cast<double>(i % 10) / 10.0, seed);
    const CoarseModel m(g, p, kept);
    const std::string tag = "triple " + std::to_string(i);

    const Partition back = project_solution(m, induced_model_partition(m));
    o.expect(partition_bytes(back) == partition_bytes(p), tag + ": round trip differs");

    std::mt19937_64 rng(seed);
    for (int t = 0; t < 50; ++t) {
      std::vector<PartitionID> a(m.graph().n());
      for (auto &b : a) {
        b = static_cast<PartitionID>(rng() % k);
      }
      const Partition projected = project_solution(m, a);
      const std::vector<PartitionID> pa(projected.assignment().begin(), projected.assignment().end());
      o.expect(naive_cut(m.graph(), a) == naive_cut(g, pa), tag + ": cut differs");
      o.expect(projected.cut() == naive_cut(g, pa), tag + ": cached cut differs");
      o.expect(naive_block_weights(m.graph(), a, k) == naive_block_weights(g, pa, k),
               tag + ": block weights differ");
      ++assignments;
    }
  }
  o.detail = "100 triples, " + std::to_string(assignments) + " model assignments";
  return o;
}

// 3. Variable, constraint and non-zero counts of Basic instances.
Outcome count_formulas() {
  Outcome o;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::uint64_t seed = mix_seed(3000 + i);
    const NodeID n = 5 + static_cast<NodeID>(seed % 60);
    const PartitionID k = 2 + static_cast<PartitionID>((seed >> 8) % 7);
    const Graph g = random_graph(n, 0.15, seed);
    const Partition p(g, k, 0.03, random_assignment(n, k, seed));
    const CoarseModel m(g, p, random_subset(n, static_cast<double>(i % 11) / 10.0, seed));
    const std::uint64_t V = m.graph().n();
    const std::uint64_t E = m.graph().m();
    const IlpInstance inst = build_ilp(m, IlpOptions::basic());
    const std::string tag = "model " + std::to_string(i);
    o.expect(inst.num_variables() == E + k * V, tag + ": variables");
    o.expect(inst.num_constraints() == 2 * k * E + k + V, tag + ": constraints");
    o.expect(inst.num_nonzeros() == k * (6 * E + 2 * V), tag + ": non-zeros");
  }
  o.detail = "50 models";
  return o;
}

// 4. Presets agree on the optimum when no two super vertices fit together.
Outcome optimization_neutrality() {
  Outcome o;
  std::size_t found = 0;
  std::size_t already_optimal = 0;
  std::uint64_t basic_nodes = 0;
  std::uint64_t sym_nodes = 0;
  for (std::uint64_t i = 0; found < 100 && i < 100'000; ++i) {
    const std::uint64_t seed = mix_seed(4000 + i);
    const NodeID n = 8 + static_cast<NodeID>(seed % 7);
    const PartitionID k = 2 + static_cast<PartitionID>((seed >> 8) % 2);
    const double eps = (seed >> 16) % 2 == 0 ? 0.0 : 0.03;
    const Graph g = random_graph(n, 0.35, seed);
    const Partition p(g, k, eps, round_robin_assignment(n, k, seed));
    auto kept = random_subset(n, 1.0, seed);
    kept.resize(1 + (seed >> 24) % 4);
    const CoarseModel m(g, p, kept);
    if (!build_ilp(m, IlpOptions::basic_sym()).symmetry_condition_holds()) {
      continue;
    }
    ++found;
    const std::string tag = "instance " + std::to_string(i);
    const SolveResult basic = solve(build_ilp(m, IlpOptions::basic()));
    const SolveResult sym = solve(build_ilp(m, IlpOptions::basic_sym()));
    const SolveResult ssol = solve(build_ilp(m, IlpOptions::basic_sym_ssol()));
    const SolveResult eq = solve(build_ilp(m, IlpOptions::bsss_const_eq()));
    const SolveResult lt = solve(build_ilp(m, IlpOptions::bsss_const_lt()));
    o.expect(basic.status == SolveStatus::Optimal && sym.status == SolveStatus::Optimal &&
                 ssol.status == SolveStatus::Optimal && eq.status == SolveStatus::Optimal,
             tag + ": not all optimal");
    o.expect(basic.objective == sym.objective && sym.objective == ssol.objective &&
                 ssol.objective == eq.objective,
             tag + ": optima differ");
    const bool input_optimal = p.cut() == basic.objective;
    already_optimal += input_optimal;
    o.expect((lt.status == SolveStatus::NoImprovement) == input_optimal,
             tag + ": BSSSConst< status " + to_string(lt.status));
    if (lt.status == SolveStatus::Optimal) {
      o.expect(lt.objective == basic.objective, tag + ": BSSSConst< optimum differs");
    }
    o.expect(sym.stats.nodes <= basic.stats.nodes,
             tag + ": nodes " + std::to_string(sym.stats.nodes) + " > " + std::to_string(basic.stats.nodes));
    basic_nodes += basic.stats.nodes;
    sym_nodes += sym.stats.nodes;
  }
  o.expect(found == 100, "only " + std::to_string(found) + " qualifying instances");
  o.detail = std::to_string(found) + " instances (" + std::to_string(already_optimal) +
             " with optimal input), nodes Basic " + std::to_string(basic_nodes) + " vs BasicSym " +
             std::to_string(sym_nodes);
  return o;
}

// 5. Refinement never worsens; with K = V it reaches the optimum.
Outcome never_worse() {
  Outcome o;
  std::map<std::string, std::pair<std::size_t, std::size_t>> oracle_checks; // strategy -> (K=V, runs)
  std::size_t runs = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint64_t seed = mix_seed(5000 + i);
    const bool small = i < 60;
    const PartitionID k = 2 + static_cast<PartitionID>((seed >> 8) % (small ? 3 : 7));
    const double eps = std::vector<double>{0.0, 0.03, 0.1}[(seed >> 16) % 3];
    Graph g;
    if (small) {
      g = random_graph(6 + static_cast<NodeID>(seed % 7), 0.4, seed);
    } else if (i % 2 == 0) {
      g = mesh_graph(6 + static_cast<NodeID>(seed % 10), 8 + static_cast<NodeID>((seed >> 4) % 10));
    } else {
      g = random_graph(60 + static_cast<NodeID>(seed % 100), 0.06, seed);
    }
    const Partition start = bootstrap_partition(g, k, eps, seed);
    const OracleResult oracle = small ? brute_force_partition(g, k, eps) : OracleResult{};

    for (const auto &strategy : kTableStrategies) {
      RefineConfig config;
      config.k = k;
      config.epsilon = eps;
      config.strategies = {SelectionStrategy::parse(strategy)};
      config.nonzero_budget = small ? kUnlimitedNonzeros : 2000;
      config.time_limit = small ? 30.0 : 0.05;
      config.seed = seed;
      const RefineResult result = refine(g, start, config);
      const std::string tag = "instance " + std::to_string(i) + " " + strategy;
      ++runs;
      o.expect(result.partition.cut() <= start.cut(), tag + ": cut increased");
      o.expect(result.record.output_cut <= result.record.input_cut, tag + ": record cut increased");
      o.expect(is_balanced(g, result.partition), tag + ": unbalanced output");
      if (small) {
        auto &[covered, total] = oracle_checks[strategy];
        ++total;
        if (result.record.kept == g.n()) {
          ++covered;
          o.expect(result.partition.cut() == oracle.cut,
                   tag + ": " + format_number(result.partition.cut()) + " != optimum " +
                       format_number(oracle.cut));
        }
      }
    }
  }
  std::string coverage;
  for (const auto &strategy : kTableStrategies) {
    const auto &[covered, total] = oracle_checks[strategy];
    coverage += (coverage.empty() ? "" : ", ") + strategy + " " + std::to_string(covered) + "/" +
                std::to_string(total);
  }
  o.detail = std::to_string(runs) + " runs; optimum checked where K = V: " + coverage;
  return o;
}

// 6. The built model respects the non-zero budget unless the run is skipped.
Outcome budget_compliance() {
  Outcome o;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::vector<std::string> strategies = kTableStrategies;
  strategies.push_back("gain:1");
  for (std::uint64_t i = 0; i < 12; ++i) {
    const std::uint64_t seed = mix_seed(6000 + i);
    const PartitionID k = std::vector<PartitionID>{2, 4, 8}[i % 3];
    const Graph g = i % 2 == 0 ? mesh_graph(10 + 2 * static_cast<NodeID>(i), 12)
                               : random_graph(80 + 20 * static_cast<NodeID>(i), 0.05, seed);
    const Partition p = bootstrap_partition(g, k, 0.03, seed);
    for (const std::uint64_t budget : {100ULL, 1000ULL, 10000ULL}) {
      for (const auto &name : strategies) {
        SelectionStrategy s = SelectionStrategy::parse(name);
        s.nonzero_budget = budget;
        s.seed = seed;
        const KeptSet kept = select(g, p, s);
        const CoarseModel m(g, p, kept.vertices);
        const std::uint64_t exact = build_ilp(m, IlpOptions::basic()).num_nonzeros();
        const std::string tag = "graph " + std::to_string(i) + " " + name + " N=" + std::to_string(budget);
        ++checked;
        if (kept.skipped) {
          ++skipped;
          o.expect(kept.vertices.empty(), tag + ": skipped with non-empty K");
          o.expect(exact > budget, tag + ": skipped although the empty model fits");
        } else {
          o.expect(exact <= budget, tag + ": " + std::to_string(exact) + " non-zeros");
        }
      }
    }
  }
  o.detail = std::to_string(checked) + " selections, " + std::to_string(skipped) + " skipped";
  return o;
}

// 7. Same seed, same output.
Outcome determinism(const std::string &cli) {
  Outcome o;
  std::size_t pairs = 0;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const Graph g = i % 2 == 0 ? mesh_graph(12, 12) : random_graph(150, 0.04, i);
    const PartitionID k = 2 + static_cast<PartitionID>(i % 4);
    const Partition start = bootstrap_partition(g, k, 0.03, i);
    RefineConfig config;
    config.k = k;
    config.epsilon = 0.03;
    config.strategies = {SelectionStrategy::parse(kTableStrategies[i % kTableStrategies.size()])};
    config.nonzero_budget = 4000;
    config.node_limit = 100'000;
    config.rounds = 2;
    config.seed = 42 + i;
    RefineResult a = refine(g, start, config);
    RefineResult b = refine(g, start, config);
    o.expect(partition_bytes(a.partition) == partition_bytes(b.partition), "run " + std::to_string(i) + ": partitions differ");
    a.record.time_s = b.record.time_s = 0;
    o.expect(a.record == b.record, "run " + std::to_string(i) + ": records differ");
    ++pairs;
  }

  std::string cli_detail = "CLI not checked";
  if (!cli.empty()) {
    const fs::path dir = scratch_dir();
    const Graph g = mesh_graph(15, 15);
    write_metis(g, (dir / "mesh.graph").string());
    write_partition(bootstrap_partition(g, 4, 0.03, 9).assignment(), (dir / "start.part").string());
    std::string outputs[2];
    std::string records[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / ("out" + std::to_string(run) + ".part");
      const fs::path rec = dir / ("rec" + std::to_string(run) + ".jsonl");
      fs::remove(rec);
      const std::string command = "\"" + cli + "\" -q refine \"" + (dir / "mesh.graph").string() + "\" \"" +
                                  (dir / "start.part").string() +
                                  "\" --k 4 --eps 0.03 --strategy gain:-1 --nzlimit 5000 --node-limit 200000 "
                                  "--rounds 2 --seed 5 --out \"" +
                                  out.string() + "\" --record \"" + rec.string() + "\" 2>/dev/null";
      const int status = std::system(command.c_str());
      o.expect(status == 0, "CLI exit status " + std::to_string(status));
      std::ifstream in(out, std::ios::binary);
      outputs[run].assign(std::istreambuf_iterator<char>(in), {});
      auto parsed = read_records_jsonl(rec.string());
      o.expect(parsed.size() == 1, "CLI record missing");
      if (!parsed.empty()) {
        parsed[0].time_s = 0;
        records[run] = to_json_line(parsed[0]);
      }
    }
    o.expect(!outputs[0].empty() && outputs[0] == outputs[1], "CLI partitions differ");
    o.expect(!records[0].empty() && records[0] == records[1], "CLI records differ");
    fs::remove_all(dir);
    cli_detail = "CLI output byte-identical";
  }
  o.detail = std::to_string(pairs) + " library run pairs identical; " + cli_detail;
  return o;
}

// 8. evaluate reproduces cuts; refine on benchmark-style graphs stays valid and in time.
Outcome desk_scale_runs() {
  Outcome o;
  const fs::path dir = scratch_dir();

  // evaluate against an independent recomputation from files on disk.
  std::size_t evaluated = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph g = random_graph(40 + static_cast<NodeID>(i) * 10, 0.1, i, i % 2 == 0);
    const PartitionID k = 2 + static_cast<PartitionID>(i % 5);
    write_metis(g, (dir / "g.graph").string());
    write_partition(random_assignment(g.n(), k, i), (dir / "g.part").string());
    const Graph loaded = load_graph((dir / "g.graph").string());
    const auto assignment = read_partition((dir / "g.part").string());
    const EvaluationReport report = evaluate(loaded, assignment, k);
    o.expect(report.cut == naive_cut(g, assignment), "evaluate cut mismatch on file " + std::to_string(i));
    ++evaluated;
  }

  struct Instance {
    std::string name;
    Graph graph;
  };
  std::vector<Instance> instances;
  if (const char *env = std::getenv("ILPREFINE_GRAPH_DIR"); env != nullptr && *env != '\0') {
    for (const auto &entry : fs::directory_iterator(env)) {
      if (entry.path().extension() == ".graph") {
        instances.push_back({entry.path().stem().string(), load_graph(entry.path().string())});
      }
    }
    std::sort(instances.begin(), instances.end(), [](const auto &a, const auto &b) { return a.name < b.name; });
  }
  const bool external = !instances.empty();
  if (!external) {
    instances.push_back({"mesh30x30", mesh_graph(30, 30)});
    instances.push_back({"mesh20x60", mesh_graph(20, 60)});
    instances.push_back({"random500", random_graph(500, 0.012, 8)});
  }

  const double time_limit = 2.0;
  std::size_t runs = 0;
  std::size_t improved = 0;
  for (const auto &[name, g] : instances) {
    for (const PartitionID k : {2u, 4u}) {
      const Partition start = bootstrap_partition(g, k, 0.03, 1);
      RefineConfig config;
      config.k = k;
      config.epsilon = 0.03;
      config.time_limit = time_limit;
      config.instance_name = name;
      const RefineResult result = refine(g, start, config);
      const std::string tag = name + " k=" + std::to_string(k);
      ++runs;
      improved += result.record.improved;
      o.expect(result.record.status == "Optimal" || result.record.status == "FeasibleTimeLimit",
               tag + ": status " + result.record.status);
      const double allowed = time_limit * static_cast<double>(default_strategies(k).size()) + 1.0;
      o.expect(result.record.time_s <= allowed, tag + ": took " + fmt(result.record.time_s) + " s");
      o.expect(is_balanced(g, result.partition), tag + ": unbalanced");
      o.expect(result.partition.cut() <= start.cut(), tag + ": cut increased");

      write_partition(result.partition.assignment(), (dir / "out.part").string());
      const EvaluationReport check = evaluate(g, read_partition((dir / "out.part").string()), k);
      o.expect(check.cut == result.record.output_cut, tag + ": evaluate disagrees with the record");
    }
  }
  fs::remove_all(dir);
  o.detail = std::to_string(evaluated) + " files evaluated; " + std::to_string(runs) + " refine runs on " +
             (external ? "supplied" : "generated mesh") + " graphs (" + std::to_string(improved) +
             " improved), time limit " + fmt(time_limit) + " s";
  return o;
}

// 9. Performance report semantics.
Outcome report_semantics() {
  Outcome o;
  auto rec = [](const std::string &instance, const std::string &alg, const double time, const double cut,
                const bool timed_out) {
    RunRecord r;
    r.instance = instance;
    r.k = 2;
    r.epsilon = 0.03;
    r.strategy = alg;
    r.input_cut = cut;
    r.output_cut = cut;
    r.status = timed_out ? "FeasibleTimeLimit" : "Optimal";
    r.hit_time_limit = timed_out;
    r.time_s = time;
    return r;
  };
  const std::vector<RunRecord> records = {
      rec("a", "fast", 1.0, 10, false),  rec("a", "slow", 4.0, 10, false),
      rec("b", "fast", 2.0, 1000, false), rec("b", "slow", 8.0, 500, false),
      rec("c", "fast", 4.0, 100, false), rec("c", "slow", 60.0, 100, true),
  };
  const PerformanceReport report = report_performance(records);
  const auto &fast = report.algorithms.at("fast");
  const auto &slow = report.algorithms.at("slow");
  o.expect(fast.time_ratios == std::vector<double>{1.0, 1.0, 1.0}, "fastest ratios are not 1.0");
  o.expect(slow.time_ratios == std::vector<double>{-1.0, 0.25, 0.25}, "slow ratios wrong");
  o.expect(fast.cut_ratios == std::vector<double>{0.5, 1.0, 1.0}, "cut ratios wrong");
  // Times 1, 2, 4: geometric mean 2. Cuts 10, 1000, 100: geometric mean 100.
  o.expect(std::abs(fast.geomean_time - 2.0) <= 1e-12, "geomean time " + format_number(fast.geomean_time));
  o.expect(std::abs(fast.geomean_cut - 100.0) <= 1e-12, "geomean cut " + format_number(fast.geomean_cut));
  // Times 4, 8, 60: (1920)^(1/3).
  const double expected = std::cbrt(1920.0);
  o.expect(std::abs(slow.geomean_time - expected) <= 1e-12, "slow geomean " + format_number(slow.geomean_time));

  std::ostringstream csv;
  write_performance_csv(report, csv);
  o.expect(csv.str().find("time_ratio,slow,0,-1\n") != std::string::npos, "timed-out ratio missing from CSV");
  o.detail = "3 instances x 2 algorithms";
  return o;
}

} // namespace

int main(int argc, char **argv) {
  std::string cli;
  int only = 0;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") {
      cli = argv[i + 1];
    } else if (flag == "--only") {
      only = std::atoi(argv[i + 1]);
    }
  }
  set_notices_enabled(false);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"projection exactness", projection_exactness},
      {"count formulas", count_formulas},
      {"optimization neutrality", optimization_neutrality},
      {"never-worse refinement", never_worse},
      {"budget compliance", budget_compliance},
      {"determinism", [&] { return determinism(cli); }},
      {"desk-scale runs", desk_scale_runs},
      {"performance report", report_semantics},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) {
      continue;
    }
    const auto &[name, run] = criteria[i];
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception &e) {
      outcome.pass = false;
      outcome.failures.push_back(std::string("exception: ") + e.what());
    }
    failed += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << name << ": " << outcome.detail
              << '\n';
    for (const auto &f : outcome.failures) {
      std::cout << "        " << f << '\n';
    }
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
