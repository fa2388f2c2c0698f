#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "bipexp/error.hpp"
#include "bipexp/graph.hpp"
#include "support.hpp"

using namespace bipexp;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::vector<Index> as_vec(std::span<const Index> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("toy graph graph adjacency") {
  const BipartiteGraph g = testsupport::toy_graph();
  CHECK(g.m() == 4);
  CHECK(g.n() == 5);
  CHECK(as_vec(g.outcome_neighbors(0)) == std::vector<Index>{0, 3});
  CHECK(as_vec(g.outcome_neighbors(2)) == std::vector<Index>{1, 2});
  CHECK(as_vec(g.intervention_neighbors(3)) == std::vector<Index>{0, 3, 4});
}

TEST_CASE("minimal graph and isolated outcome") {
  const std::vector<Edge> one{{0, 0}};
  const BipartiteGraph g = BipartiteGraph::build(1, 1, one);
  CHECK(g.outcome_degree(0) == 1);
  CHECK(g.intervention_degree(0) == 1);
  CHECK(code_of([] { BipartiteGraph::build(2, 1, {}); }) == ErrorCode::kIsolatedOutcomeUnit);
}

TEST_CASE("build rejects bad edges") {
  const std::vector<Edge> dup{{0, 0}, {0, 0}};
  CHECK(code_of([&] { BipartiteGraph::build(1, 1, dup); }) == ErrorCode::kDuplicateEdge);
  const std::vector<Edge> out{{2, 0}};
  CHECK(code_of([&] { BipartiteGraph::build(2, 1, out); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("overlap and union sizes on toy graph") {
  const BipartiteGraph g = testsupport::toy_graph();
  CHECK(g.overlap_size(0, 3) == 1);
  CHECK(g.overlap_size(0, 1) == 0);
  CHECK(g.union_size(0, 3) == 2);
  CHECK(g.union_size(0, 1) == 3);
  for (Index i = 0; i < g.n(); ++i) {
    CHECK(g.overlap_size(i, i) == g.outcome_degree(i));
    CHECK(g.union_size(i, i) == g.outcome_degree(i));
  }
}

TEST_CASE("overlapping pairs on toy graph") {
  const BipartiteGraph g = testsupport::toy_graph();
  std::set<std::pair<Index, Index>> off;
  std::size_t diag = 0;
  for (const OverlapPair& pr : g.overlapping_pairs()) {
    if (pr.i == pr.j) ++diag;
    else off.insert({pr.i, pr.j});
  }
  CHECK(diag == 5);
  CHECK(off == std::set<std::pair<Index, Index>>{{0, 3}, {0, 4}, {3, 4}, {1, 2}});
}

TEST_CASE("overlapping pairs match brute force; inclusion-exclusion") {
  std::mt19937_64 gen(11);
  for (int rep = 0; rep < 20; ++rep) {
    const BipartiteGraph g = generate_random(150 + rep, 40, 4, 1000 + rep);
    const auto nb = testsupport::neighbor_sets(g);
    std::map<std::pair<Index, Index>, std::size_t> expected;
    for (Index i = 0; i < g.n(); ++i) {
      for (Index j = i; j < g.n(); ++j) {
        const std::size_t c = testsupport::intersection_size(nb[i], nb[j]);
        if (c > 0) expected[{i, j}] = c;
        CHECK(g.overlap_size(i, j) + g.union_size(i, j) == nb[i].size() + nb[j].size());
      }
    }
    std::map<std::pair<Index, Index>, std::size_t> got;
    for (const OverlapPair& pr : g.overlapping_pairs()) got[{pr.i, pr.j}] = pr.overlap;
    CHECK(got == expected);
  }
}

TEST_CASE("sparsity report") {
  const SparsityReport fig = sparsity_report(testsupport::toy_graph());
  CHECK(fig.max_outcome_degree == 2);
  CHECK(fig.max_intervention_degree == 3);
  CHECK(fig.max_connectivity == 1);
  CHECK(sparsity_report(identity_graph(7)).max_connectivity == 0);
  const std::vector<std::size_t> sizes{2, 3, 4};
  CHECK(sparsity_report(cluster_graph(sizes)).max_connectivity == 0);
}

TEST_CASE("connectivity is symmetric and matches brute force") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const BipartiteGraph g = generate_random(300, 60, 3, seed);
    std::vector<std::set<Index>> linked(g.m());
    for (Index i = 0; i < g.n(); ++i) {
      for (Index k : g.outcome_neighbors(i))
        for (Index l : g.outcome_neighbors(i))
          if (k != l) linked[k].insert(l);
    }
    std::size_t b = 0;
    for (Index k = 0; k < g.m(); ++k) {
      b = std::max(b, linked[k].size());
      for (Index l : linked[k]) CHECK(linked[l].count(k) == 1);
    }
    CHECK(sparsity_report(g).max_connectivity == b);
  }
}

TEST_CASE("generate_random degree bounds and determinism") {
  const BipartiteGraph g = generate_random(5000, 500, 5, 42);
  CHECK(sparsity_report(g).max_outcome_degree <= 5);
  const BipartiteGraph h = generate_random(5000, 500, 5, 42);
  CHECK(g.edges() == h.edges());

  const BipartiteGraph one = generate_random(200, 30, 1, 3);
  for (Index i = 0; i < one.n(); ++i) CHECK(one.outcome_degree(i) == 1);

  const BipartiteGraph full = generate_random(200, 6, 6, 4);
  for (Index i = 0; i < full.n(); ++i) {
    const auto nb = full.outcome_neighbors(i);
    CHECK(nb.size() <= 6);
    CHECK(std::set<Index>(nb.begin(), nb.end()).size() == nb.size());
  }
  CHECK(code_of([] { generate_random(10, 3, 4, 1); }) == ErrorCode::kInvalidDegreeBound);
  CHECK(code_of([] { generate_random(10, 3, 0, 1); }) == ErrorCode::kInvalidDegreeBound);
}

TEST_CASE("generate_random degrees are uniform (chi-square)") {
  const std::size_t n = 100000, d = 5;
  const BipartiteGraph g = generate_random(n, 500, d, 2024);
  std::vector<double> counts(d, 0.0);
  for (Index i = 0; i < n; ++i) counts[g.outcome_degree(i) - 1] += 1.0;
  const double expected = static_cast<double>(n) / d;
  double chi2 = 0.0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  CHECK(chi2 < 13.28);  // 0.99 quantile, 4 degrees of freedom
}

TEST_CASE("cluster and identity graphs") {
  const std::vector<std::size_t> sizes{2, 3};
  const BipartiteGraph g = cluster_graph(sizes);
  CHECK(g.m() == 2);
  CHECK(g.n() == 5);
  CHECK(as_vec(g.intervention_neighbors(0)) == std::vector<Index>{0, 1});
  CHECK(as_vec(g.intervention_neighbors(1)) == std::vector<Index>{2, 3, 4});

  const std::vector<std::size_t> ones(6, 1);
  CHECK(cluster_graph(ones).edges() == identity_graph(6).edges());
  const std::vector<std::size_t> bad{0, 2};
  CHECK(code_of([&] { cluster_graph(bad); }) == ErrorCode::kEmptyCluster);
}

TEST_CASE("prune_isolated") {
  std::vector<Edge> edges{{0, 0}, {1, 1}, {1, 2}, {2, 2}, {3, 0}, {3, 3}, {3, 4}};
  const PrunedGraph same = prune_isolated(4, 5, edges);
  CHECK(same.kept_outcomes == std::vector<Index>{0, 1, 2, 3, 4});
  CHECK(same.kept_interventions == std::vector<Index>{0, 1, 2, 3});

  // Outcome unit 6 (index 5) has no edges and one intervention unit is unused.
  const PrunedGraph pruned = prune_isolated(5, 6, edges);
  CHECK(pruned.graph.n() == 5);
  CHECK(pruned.graph.m() == 4);
  CHECK(pruned.kept_outcomes == std::vector<Index>{0, 1, 2, 3, 4});
  CHECK(pruned.graph.edges() == testsupport::toy_graph().edges());

  CHECK(code_of([] { prune_isolated(3, 3, {}); }) == ErrorCode::kAllUnitsIsolated);
}

TEST_CASE("edge csv round trip and 1-based isolated report") {
  const BipartiteGraph g = testsupport::toy_graph();
  const EdgeList list = parse_edge_csv(format_edge_csv(g));
  CHECK(graph_from_edge_list(list).edges() == g.edges());

  const EdgeList gap = parse_edge_csv("intervention_id,outcome_id\n1,1\n1,3\n");
  try {
    graph_from_edge_list(gap);
    FAIL("expected IsolatedOutcomeUnit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIsolatedOutcomeUnit);
    CHECK(std::string(e.what()).find("outcome_id: 2") != std::string::npos);
  }
  CHECK(code_of([] { parse_edge_csv("k,i\n1,1\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_edge_csv("intervention_id,outcome_id\n1,x\n"); }) == ErrorCode::kParseError);
}
