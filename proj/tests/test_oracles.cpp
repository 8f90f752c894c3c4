#include "doctest.h"

#include "hx/constructions.hpp"
#include "hx/oracles.hpp"
#include "hx/rng.hpp"

using namespace hx;
using namespace hx::oracles;

TEST_CASE("max clique brute force") {
  CHECK(max_clique_bf(UniformHypergraph::complete(3, 7), SearchBudget{}).size == 7);

  auto vac = max_clique_bf(UniformHypergraph(3, 6, {}), SearchBudget{});
  CHECK(vac.size == 2);
  CHECK(vac.vacuous);

  // tight 5-cycle: witness {0,1,2}, no 4-clique since (0,1,3) is a non-edge
  auto tc = max_clique_bf(constructions::tight_cycle5(), SearchBudget{});
  CHECK(tc.size == 3);
  CHECK(tc.witness == std::vector<Vertex>{0, 1, 2});
  CHECK_FALSE(tc.exhausted);

  // independent set = clique of the complement; C(5,3)-5 = 5 non-edges
  auto ind = max_independent_bf(constructions::tight_cycle5(), SearchBudget{});
  CHECK(ind.size == 3);
}

TEST_CASE("budget exhaustion is flagged, not fatal") {
  SearchBudget tiny{.node_cap = 3, .seconds_cap = 0};
  auto r = max_clique_bf(UniformHypergraph::complete(3, 9), tiny);
  CHECK(r.exhausted);
  CHECK(r.size <= 9);
}

TEST_CASE("induced copy search") {
  UniformHypergraph single(3, 3, {{0, 1, 2}});
  auto hit = induced_copy_bf(UniformHypergraph::complete(3, 6), single, SearchBudget{});
  REQUIRE(hit.embedding.has_value());
  CHECK(*hit.embedding == std::vector<Vertex>{0, 1, 2});

  // a complete host has no induced copy of a non-complete pattern
  auto miss =
      induced_copy_bf(UniformHypergraph::complete(3, 8), constructions::tight_cycle5(),
                      SearchBudget{});
  CHECK_FALSE(miss.embedding.has_value());
  CHECK_FALSE(miss.exhausted);

  // coloured variant: pattern = one colour-0 triple inside a constant-0 host
  EdgeColouring host = EdgeColouring::constant(3, 5, 2, 0);
  EdgeColouring pattern = EdgeColouring::constant(3, 3, 2, 0);
  auto col = induced_copy_bf(host, pattern, SearchBudget{});
  REQUIRE(col.embedding.has_value());

  EdgeColouring pattern1 = EdgeColouring::constant(3, 3, 2, 1);
  CHECK_FALSE(induced_copy_bf(host, pattern1, SearchBudget{}).embedding.has_value());
}

TEST_CASE("kst oracle over s-subsets") {
  CHECK(exists_kst_bf(BipartiteGraph::complete(0, 3, 3, 6), 3, 3).found);
  CHECK_FALSE(exists_kst_bf(BipartiteGraph(0, 2, 2, 4), 1, 1).found);

  // the 3x4 instance: N(a1)={b1,b2,b3}, N(a2)={b2,b3,b4}, N(a3)={b1,b3}
  BipartiteGraph g(0, 3, 3, 7,
                   {{0, 3}, {0, 4}, {0, 5}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 5}});
  auto r = exists_kst_bf(g, 2, 2);
  CHECK(r.found);
  CHECK(r.u == std::vector<Vertex>{0, 1});
  CHECK(r.t == std::vector<Vertex>{4, 5});
  CHECK(r.best_t == 2);
}

TEST_CASE("kst oracle is thread-count independent") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    std::uint64_t seed = rng.next();
    BipartiteGraph g = BipartiteGraph::from_predicate(0, 8, 8, 20, [&](Vertex a, Vertex b) {
      return SplitMix64::to_unit(SplitMix64::at(seed, colex_rank(
                 std::vector<Vertex>{a, b}))) < 0.55;
    });
    auto one = exists_kst_bf(g, 3, 2, 1);
    auto many = exists_kst_bf(g, 3, 2, 4);
    CHECK(one.found == many.found);
    CHECK(one.u == many.u);
    CHECK(one.t == many.t);
  }
}

TEST_CASE("ksss oracle") {
  auto complete_sys = [] {
    return TripartiteSystem(BipartiteGraph::complete(0, 3, 3, 6),
                            BipartiteGraph::complete(3, 6, 6, 9),
                            BipartiteGraph::complete(6, 9, 0, 3));
  };
  UniformHypergraph all(3, 9, [] {
    std::vector<Edge> e;
    for (Vertex a = 0; a < 3; ++a)
      for (Vertex b = 3; b < 6; ++b)
        for (Vertex c = 6; c < 9; ++c) e.push_back({a, b, c});
    return e;
  }());
  auto yes = exists_ksss_bf(complete_sys(), all, 2, SearchBudget{});
  CHECK(yes.found);
  CHECK(is_complete_tripartite(all, yes.witness.s1, yes.witness.s2, yes.witness.s3));

  UniformHypergraph none(3, 9, {});
  CHECK_FALSE(exists_ksss_bf(complete_sys(), none, 1, SearchBudget{}).found);
}

TEST_CASE("preorder enumeration matches ordered Bell numbers") {
  auto p1 = enumerate_preorders(1);
  CHECK(p1.size() == 1);
  CHECK(p1[0].ranks == std::vector<int>{1});

  auto p2 = enumerate_preorders(2);
  CHECK(p2.size() == 3);
  std::vector<std::vector<int>> expected{{1, 1}, {1, 2}, {2, 1}};
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& p : p2) found = found || p.ranks == e;
    CHECK(found);
  }

  CHECK(enumerate_preorders(3).size() == 13);
  for (int m = 4; m <= 6; ++m)
    CHECK(BigInt(enumerate_preorders(m).size()) == stepup::ordered_bell(m));
  CHECK_THROWS_AS(enumerate_preorders(8), std::invalid_argument);
}
