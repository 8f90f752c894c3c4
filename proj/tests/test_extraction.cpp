#include "doctest.h"

#include "hx/extraction.hpp"
#include "hx/oracles.hpp"
#include "hx/rng.hpp"

using namespace hx;
using namespace hx::extraction;

namespace {

BipartiteGraph seeded_bipartite(Vertex na, Vertex nb, double p, std::uint64_t seed) {
  return BipartiteGraph::from_predicate(0, na, na, na + nb, [&](Vertex a, Vertex b) {
    std::vector<Vertex> pair{a, b};
    return SplitMix64::to_unit(SplitMix64::at(seed, colex_rank(pair))) < p;
  });
}

}  // namespace

TEST_CASE("find_kst_dense on the worked instances") {
  // complete K_{3,4}, s=2: T is all of B
  BipartiteGraph complete = BipartiteGraph::complete(0, 3, 3, 7);
  KstWitness w = find_kst_dense(complete, 2, KstMode::exact);
  CHECK(w.u == std::vector<Vertex>{0, 1});
  CHECK(w.t.size() == 4);
  CHECK(Rational(w.t.size()) >= Rational(kst_dense_threshold(2, Rational(1), 4)));

  // N(a1)={b1,b2,b3}, N(a2)={b2,b3,b4}, N(a3)={b1,b3}: ties broken lex
  BipartiteGraph g(0, 3, 3, 7,
                   {{0, 3}, {0, 4}, {0, 5}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 5}});
  KstWitness w2 = find_kst_dense(g, 2, KstMode::exact);
  CHECK(w2.u == std::vector<Vertex>{0, 1});
  CHECK(w2.t == std::vector<Vertex>{4, 5});

  // empty graph, s=1: |T| = 0 witness, not an error
  BipartiteGraph empty(0, 3, 3, 6);
  CHECK(find_kst_dense(empty, 1, KstMode::exact).t.empty());

  CHECK_THROWS_AS(find_kst_dense(g, 4, KstMode::exact), std::invalid_argument);
}

TEST_CASE("exact mode equals the oracle optimum on small graphs") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    std::uint64_t seed = rng.next();
    Vertex na = 4 + static_cast<Vertex>(trial % 9);  // up to 12
    Vertex nb = 4 + static_cast<Vertex>((trial * 7) % 9);
    double p = 0.3 + 0.05 * (trial % 10);
    BipartiteGraph g = seeded_bipartite(na, nb, p, seed);
    for (int s = 1; s <= std::min(4, static_cast<int>(na)); ++s) {
      KstWitness w = find_kst_dense(g, s, KstMode::exact);
      auto oracle = oracles::exists_kst_bf(g, s, 0);
      CAPTURE(trial);
      CAPTURE(s);
      CHECK(w.t.size() == oracle.best_t);
      CHECK(w.u == oracle.u);
    }
  }
}

TEST_CASE("greedy mode produces a valid witness") {
  BipartiteGraph g = seeded_bipartite(10, 30, 0.6, 99);
  KstWitness w = find_kst_dense(g, 3, KstMode::greedy);
  CHECK(w.u.size() == 3);
  for (Vertex a : w.u)
    for (Vertex b : w.t) CHECK(g.has_edge(a, b));
}

TEST_CASE("counting identity: sum of C(d(v), s) equals subset-vertex incidences") {
  BipartiteGraph g = seeded_bipartite(7, 9, 0.5, 5);
  for (int s = 1; s <= 4; ++s) {
    BigInt by_degree = 0;
    for (Vertex b = g.b_begin(); b < g.b_end(); ++b)
      by_degree += binomial(static_cast<long long>(g.col(b).count()), s);
    BigInt by_subsets = 0;
    for_each_combination(g.a_size(), s, [&](std::span<const Vertex> t) {
      std::vector<Vertex> u(t.begin(), t.end());
      by_subsets += BigInt(g.common_neighbourhood(u).count());
    });
    CHECK(by_degree == by_subsets);
  }
}

TEST_CASE("dense-extractor guarantee threshold is conservative") {
  // e^{-sqrt 2} * 4 = 0.972..; ceil = 1
  CHECK(kst_dense_threshold(2, Rational(1), 4) == 1);
  CHECK(kst_dense_precondition(2, Rational(1), 6));        // 2.83 <= 3
  CHECK_FALSE(kst_dense_precondition(2, Rational(1), 3));  // 2.83 > 1.5
  CHECK_FALSE(kst_dense_precondition(2, Rational(1, 2), 6));
}

TEST_CASE("pigeonhole extractor on the worked instances") {
  // complete K_{2,4}, eps = 1
  BipartiteGraph complete = BipartiteGraph::complete(0, 2, 2, 6);
  PigeonholeResult r = find_kst_pigeonhole(complete, Rational(1));
  CHECK(r.s == 2);
  CHECK(r.witness.u == std::vector<Vertex>{0, 1});
  CHECK(r.witness.t.size() == 4);
  CHECK(r.density_precondition_ok);
  CHECK(Rational(r.witness.t.size()) >= Rational(kst_pigeonhole_threshold(2, 4)));

  // K_{2,4} minus edge (a2,b4), eps = 3/4: traces bucket b1..b3 -> {a1,a2}
  BipartiteGraph minus(0, 2, 2, 6, {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}});
  PigeonholeResult r2 = find_kst_pigeonhole(minus, Rational(3, 4));
  CHECK(r2.s == 2);
  CHECK(r2.witness.u == std::vector<Vertex>{0, 1});
  CHECK(r2.witness.t == std::vector<Vertex>{2, 3, 4});
  CHECK(r2.density_precondition_ok);

  // empty graph, eps = 0: degenerate s = 0, T = B
  BipartiteGraph empty(0, 3, 3, 6);
  PigeonholeResult r3 = find_kst_pigeonhole(empty, Rational(0));
  CHECK(r3.s == 0);
  CHECK(r3.witness.u.empty());
  CHECK(r3.witness.t.size() == 3);
}

namespace {

TripartiteSystem complete_system(int m) {
  return TripartiteSystem(BipartiteGraph::complete(0, m, m, 2 * m),
                          BipartiteGraph::complete(m, 2 * m, 2 * m, 3 * m),
                          BipartiteGraph::complete(2 * m, 3 * m, 0, m));
}

UniformHypergraph all_transversal_triples(int m) {
  std::vector<Edge> e;
  for (Vertex a = 0; a < m; ++a)
    for (Vertex b = m; b < 2 * m; ++b)
      for (Vertex c = 2 * m; c < 3 * m; ++c) e.push_back({a, b, c});
  return UniformHypergraph(3, 3 * m, std::move(e));
}

// delete exactly `count` seeded triangles
UniformHypergraph delete_triples(const UniformHypergraph& g, std::size_t count,
                                 std::uint64_t seed) {
  std::vector<Edge> edges = g.edges();
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < count && !edges.empty(); ++i)
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(rng.next_below(edges.size())));
  return UniformHypergraph(g.uniformity(), g.vertex_count(), std::move(edges));
}

}  // namespace

TEST_CASE("good edges classified by exact proportion") {
  // all triangles present: every link edge (in >= 1 triangle) is good
  TripartiteSystem sys = complete_system(2);
  UniformHypergraph all = all_transversal_triples(2);
  GoodEdgeReport all_good = good_edges(sys, all, Rational(1, 8), LinkPair::g12, Rational(1));
  CHECK(all_good.good.size() == 4);
  CHECK(all_good.heavy.size() == 4);

  // empty g3: only edges in zero triangles are good; here none qualify
  UniformHypergraph none(3, 6, {});
  GoodEdgeReport no_good = good_edges(sys, none, Rational(1, 8), LinkPair::g12, Rational(0));
  CHECK(no_good.good.empty());

  // one missing triple: the edge under it has proportion 1/2 < 3/4
  std::vector<Edge> edges = all.edges();
  edges.erase(std::find(edges.begin(), edges.end(), Edge{0, 2, 4}));
  UniformHypergraph missing(3, 6, edges);
  GoodEdgeReport rep = good_edges(sys, missing, Rational(1, 8), LinkPair::g12, Rational(1));
  CHECK(rep.good.size() == 3);
  CHECK(std::find(rep.good.begin(), rep.good.end(), std::make_pair(0, 2)) == rep.good.end());
  CHECK(rep.heavy.size() == 3);

  // g3 with a non-triangle triple is rejected
  UniformHypergraph stray(3, 6, {{0, 1, 2}});
  CHECK_THROWS_AS(good_edges(sys, stray, Rational(1, 8), LinkPair::g12, Rational(0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(good_edges(sys, all, Rational(1, 2), LinkPair::g12, Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("ksss pipeline on a complete instance with eta -> 0 deletions") {
  int m = 8;
  TripartiteSystem sys = complete_system(m);
  UniformHypergraph g3 = all_transversal_triples(m);
  KsssOverrides ov;
  ov.s1 = 3;
  ov.s2 = 2;
  ov.t2 = 4;
  ov.t3 = 4;
  KsssResult r = find_ksss(sys, g3, Rational(1), Rational(1, 100), 2, ov);
  REQUIRE(r.ok());
  CHECK(r.witness->s1.size() == 2);
  CHECK(r.witness->s2.size() == 2);
  CHECK(r.witness->s3.size() == 2);
  CHECK(is_complete_tripartite(g3, r.witness->s1, r.witness->s2, r.witness->s3));
  CHECK(r.triangle_precondition);
  CHECK(r.coverage_precondition);
}

TEST_CASE("ksss pipeline with seeded 5% deletions agrees with the oracle") {
  int m = 8;
  TripartiteSystem sys = complete_system(m);
  UniformHypergraph full = all_transversal_triples(m);
  UniformHypergraph g3 = delete_triples(full, full.edge_count() / 20, 77);
  auto oracle = oracles::exists_ksss_bf(sys, g3, 2, SearchBudget{});
  REQUIRE(oracle.found);  // 5% deletions leave plenty of 2x2x2 blocks
  KsssOverrides ov;
  ov.s1 = 3;
  ov.s2 = 2;
  ov.t2 = 4;
  ov.t3 = 4;
  KsssResult r = find_ksss(sys, g3, Rational(1), Rational(1, 20), 2, ov);
  REQUIRE(r.ok());
  CHECK(is_complete_tripartite(g3, r.witness->s1, r.witness->s2, r.witness->s3));
}

TEST_CASE("ksss pipeline stage failure on empty g3") {
  TripartiteSystem sys = complete_system(4);
  UniformHypergraph none(3, 12, {});
  KsssResult r = find_ksss(sys, none, Rational(1), Rational(1, 8), 2);
  CHECK_FALSE(r.ok());
  CHECK(r.failed_stage == "good-filter-12");
  CHECK(r.failure_detail.find("no good edge") != std::string::npos);
}
