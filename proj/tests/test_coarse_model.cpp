/*******************************************************************************
 * Contraction and projection tests.
 *
 * @file:   test_coarse_model.cpp
 ******************************************************************************/
#include <doctest.h>

#include <sstream>

#include "ilprefine/coarse_model.h"
#include "ilprefine/graph_io.h"
#include "support.h"

using namespace ilprefine;
using namespace ilprefine::test;

namespace {

double model_edge_weight(const Graph &g, const NodeID a, const NodeID b) {
  const auto nbrs = g.neighbors(a);
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    if (nbrs[i] == b) {
      return g.neighbor_weights(a)[i];
    }
  }
  return 0;
}

} // namespace

TEST_CASE("path model by hand") {
  const Graph p3 = path_graph(3);
  const Partition p(p3, 2, 0.0, {0, 0, 1});
  const CoarseModel m(p3, p, std::vector<NodeID>{1, 2});
  const Graph &mg = m.graph();
  CHECK(mg.n() == 4);
  CHECK(m.super_weight(0) == 1);
  CHECK(m.super_weight(1) == 0);
  CHECK(m.original_of(2) == 1);
  CHECK(m.original_of(3) == 2);
  CHECK(mg.m() == 2);
  CHECK(model_edge_weight(mg, 0, 2) == 1);
  CHECK(model_edge_weight(mg, 2, 3) == 1);
  const auto induced = induced_model_partition(m);
  CHECK(induced == std::vector<PartitionID>{0, 1, 0, 1});
  CHECK(cut_value(mg, induced) == 1);

  const Partition projected = project_solution(m, std::vector<PartitionID>{0, 1, 1, 1});
  CHECK(std::vector<PartitionID>(projected.assignment().begin(), projected.assignment().end()) ==
        std::vector<PartitionID>{0, 1, 1});
  CHECK(projected.cut() == 1);
}

TEST_CASE("K = V adds isolated weight-zero super vertices") {
  const Graph g = random_graph(9, 0.4, 1, true);
  const Partition p(g, 3, 0.1, random_assignment(9, 3, 1));
  std::vector<NodeID> all(9);
  std::iota(all.begin(), all.end(), 0);
  const CoarseModel m(g, p, all);
  CHECK(m.graph().n() == 12);
  CHECK(m.graph().m() == g.m());
  for (PartitionID b = 0; b < 3; ++b) {
    CHECK(m.super_weight(b) == 0);
    CHECK(m.graph().degree(b) == 0);
  }
  const auto induced = induced_model_partition(m);
  for (NodeID v = 0; v < 9; ++v) {
    CHECK(induced[3 + v] == p.block(v));
  }
}

TEST_CASE("K empty on C4 gives one super edge of weight 4") {
  const Graph c4 = cycle_graph(4);
  const Partition p(c4, 2, 0.0, {0, 1, 0, 1});
  const CoarseModel m(c4, p, std::vector<NodeID>{});
  CHECK(m.graph().n() == 2);
  CHECK(m.graph().m() == 1);
  CHECK(model_edge_weight(m.graph(), 0, 1) == 4);
  CHECK(cut_value(m.graph(), induced_model_partition(m)) == 4);
}

TEST_CASE("empty blocks still get a super vertex") {
  const Graph p3 = path_graph(3);
  const Partition p(p3, 3, 0.0, {0, 0, 1});
  const CoarseModel m(p3, p, std::vector<NodeID>{});
  CHECK(m.graph().n() == 3);
  CHECK(m.super_weight(2) == 0);
}

TEST_CASE("invalid kept sets are rejected") {
  const Graph p3 = path_graph(3);
  const Partition p(p3, 2, 0.0, {0, 0, 1});
  CHECK_THROWS_AS(CoarseModel(p3, p, std::vector<NodeID>{1, 1}), Error);
  CHECK_THROWS_AS(CoarseModel(p3, p, std::vector<NodeID>{3}), Error);
}

TEST_CASE("model mapping dump") {
  const Graph p3 = path_graph(3);
  const Partition p(p3, 2, 0.0, {0, 0, 1});
  const CoarseModel m(p3, p, std::vector<NodeID>{2, 1});
  std::ostringstream out;
  write_model_mapping(m, out);
  CHECK(out.str() == "mu:0\nmu:1\n2\n1\n");
}

TEST_CASE("property: contraction conserves weights and edge sums") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const NodeID n = 6 + static_cast<NodeID>(seed % 25);
    const Graph g = random_graph(n, 0.25, seed, true);
    const PartitionID k = 2 + static_cast<PartitionID>(seed % 3);
    const Partition p(g, k, 0.0, random_assignment(n, k, seed));
    const auto kept = random_subset(n, 0.1 * static_cast<double>(seed % 11), seed + 1);
    const CoarseModel m(g, p, kept);
    const Graph &mg = m.graph();

    CHECK(mg.n() == k + kept.size());
    CHECK(mg.total_vertex_weight() == g.total_vertex_weight());

    // Model edge weights equal the summed original weights between the groups.
    std::vector<double> expected(static_cast<std::size_t>(mg.n()) * mg.n(), 0.0);
    double internal = 0;
    for (const auto &e : g.edges()) {
      const NodeID a = m.model_of(e.u);
      const NodeID b = m.model_of(e.v);
      if (a == b) {
        internal += e.weight;
      } else {
        expected[a * mg.n() + b] += e.weight;
        expected[b * mg.n() + a] += e.weight;
      }
    }
    for (NodeID a = 0; a < mg.n(); ++a) {
      for (NodeID b = 0; b < mg.n(); ++b) {
        if (a != b) {
          CHECK(model_edge_weight(mg, a, b) == expected[a * mg.n() + b]);
        }
      }
    }
    CHECK(mg.total_edge_weight() + internal == g.total_edge_weight());

    const auto induced = induced_model_partition(m);
    CHECK(cut_value(mg, induced) == p.cut());
    const Partition back = project_solution(m, induced);
    CHECK(back == p);
  }
}

TEST_CASE("property: every model assignment projects with equal cut and weights") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const NodeID n = 10 + static_cast<NodeID>(seed);
    const Graph g = random_graph(n, 0.3, seed, true);
    const PartitionID k = 2 + static_cast<PartitionID>(seed % 2);
    const Partition p(g, k, 0.0, random_assignment(n, k, seed));
    const NodeID kept_count = 8 - k - static_cast<NodeID>(seed % 3);
    auto kept = random_subset(n, 1.0, seed);
    kept.resize(kept_count);
    const CoarseModel m(g, p, kept);
    const NodeID mn = m.graph().n();
    REQUIRE(mn <= 8);

    std::vector<PartitionID> a(mn, 0);
    std::size_t total = 1;
    for (NodeID i = 0; i < mn; ++i) {
      total *= k;
    }
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (NodeID i = 0; i < mn; ++i) {
        a[i] = static_cast<PartitionID>(c % k);
        c /= k;
      }
      const Partition projected = project_solution(m, a);
      REQUIRE(projected.cut() == naive_cut(m.graph(), a));
      const auto model_weights = naive_block_weights(m.graph(), a, k);
      for (PartitionID b = 0; b < k; ++b) {
        REQUIRE(projected.block_weight(b) == model_weights[b]);
      }
    }
  }
}
