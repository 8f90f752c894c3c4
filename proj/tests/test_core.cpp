#include "doctest.h"

#include <sstream>

#include "hx/core.hpp"
#include "hx/io.hpp"
#include "hx/rng.hpp"

using namespace hx;

TEST_CASE("complement involution and edge counts") {
  UniformHypergraph empty3(3, 3, {});
  UniformHypergraph c = complement(empty3);
  CHECK(c.edge_count() == 1);
  CHECK(c.has_edge({0, 1, 2}));

  UniformHypergraph full4 = UniformHypergraph::complete(3, 4);
  CHECK(complement(full4).edge_count() == 0);

  UniformHypergraph one(3, 4, {{0, 1, 2}});
  UniformHypergraph oc = complement(one);
  CHECK(oc.edge_count() == 3);
  CHECK(oc.has_edge({0, 1, 3}));
  CHECK(oc.has_edge({0, 2, 3}));
  CHECK(oc.has_edge({1, 2, 3}));
  CHECK(complement(oc) == one);

  // |E(H)| + |E(complement H)| = C(n,k)
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    std::vector<Edge> edges;
    SplitMix64 rng(seed);
    for_each_combination(6, 3, [&](std::span<const Vertex> t) {
      if (rng.next() & 1) edges.emplace_back(t.begin(), t.end());
    });
    UniformHypergraph h(3, 6, edges);
    CHECK(h.edge_count() + complement(h).edge_count() == binomial_u64(6, 3));
  }
}

TEST_CASE("induced subhypergraph relabels by rank") {
  UniformHypergraph full5 = UniformHypergraph::complete(3, 5);
  std::vector<Vertex> s{0, 2, 4};
  CHECK(induced(full5, s) == UniformHypergraph::complete(3, 3));

  UniformHypergraph h(3, 4, {{0, 1, 2}, {1, 2, 3}});
  std::vector<Vertex> s2{1, 2, 3};
  UniformHypergraph ind = induced(h, s2);
  CHECK(ind.edge_count() == 1);
  CHECK(ind.has_edge({0, 1, 2}));

  std::vector<Vertex> s3{0, 1, 3};
  CHECK(induced(h, s3).edge_count() == 0);

  std::vector<Vertex> all{0, 1, 2, 3};
  CHECK(induced(h, all) == h);

  std::vector<Vertex> bad{0, 9};
  CHECK_THROWS_AS(induced(h, bad), std::invalid_argument);
}

TEST_CASE("bipartite density is exact") {
  BipartiteGraph complete = BipartiteGraph::complete(0, 2, 2, 5);
  std::vector<Vertex> a{0, 1}, b{2, 3, 4};
  CHECK(edge_density(complete, a, b) == Rational(1));

  BipartiteGraph none(0, 2, 2, 5);
  CHECK(edge_density(none, a, b) == Rational(0));

  BipartiteGraph one(0, 2, 2, 4, {{0, 2}});
  std::vector<Vertex> b2{2, 3};
  CHECK(edge_density(one, a, b2) == Rational(1, 4));
  CHECK_THROWS_AS(edge_density(one, {}, b2), std::invalid_argument);
}

TEST_CASE("triangle stream and count") {
  auto complete = [](Vertex a0, Vertex a1, Vertex b0, Vertex b1) {
    return BipartiteGraph::complete(a0, a1, b0, b1);
  };
  TripartiteSystem all(complete(0, 2, 2, 4), complete(2, 4, 4, 6), complete(4, 6, 0, 2));
  CHECK(all.triangle_count() == 8);
  std::vector<std::array<Vertex, 3>> seen;
  all.for_each_triangle([&](Vertex a, Vertex b, Vertex c) { seen.push_back({a, b, c}); });
  CHECK(seen.size() == 8);
  CHECK(std::is_sorted(seen.begin(), seen.end()));

  TripartiteSystem empty12(BipartiteGraph(0, 2, 2, 4), complete(2, 4, 4, 6),
                           complete(4, 6, 0, 2));
  CHECK(empty12.triangle_count() == 0);

  TripartiteSystem pinned(BipartiteGraph(0, 2, 2, 4, {{0, 2}}), complete(2, 4, 4, 6),
                          complete(4, 6, 0, 2));
  CHECK(pinned.triangle_count() == 2);
}

TEST_CASE("tripartite completeness and emptiness checks") {
  UniformHypergraph full = UniformHypergraph::complete(3, 6);
  std::vector<Vertex> s1{0}, s2{1, 2}, s3{3, 4};
  CHECK(is_complete_tripartite(full, s1, s2, s3));
  CHECK_FALSE(is_empty_tripartite(full, s1, s2, s3));

  UniformHypergraph none(3, 6, {});
  CHECK(is_empty_tripartite(none, s1, s2, s3));

  UniformHypergraph mixed(3, 4, {{0, 1, 2}});
  std::vector<Vertex> t1{0}, t2{1}, t3{2, 3};
  CHECK_FALSE(is_complete_tripartite(mixed, t1, t2, t3));
  CHECK_FALSE(is_empty_tripartite(mixed, t1, t2, t3));

  std::vector<Vertex> overlap{0};
  CHECK_THROWS_AS(is_complete_tripartite(full, overlap, overlap, s3), std::invalid_argument);
}

TEST_CASE("colour classes partition the tuples") {
  EdgeColouring red = EdgeColouring::constant(3, 4, 2, 0);
  CHECK(colour_class(red, 0).edge_count() == binomial_u64(4, 3));
  CHECK(colour_class(red, 1).edge_count() == 0);

  // 2-colouring of K_4^(3) with exactly one blue triple (0,1,2)
  std::vector<std::uint8_t> table(binomial_u64(4, 3), 0);
  Vertex blue_tuple[3] = {0, 1, 2};
  table[colex_rank(std::span<const Vertex>(blue_tuple, 3))] = 1;
  EdgeColouring c = EdgeColouring::table(3, 4, 2, table);
  UniformHypergraph blue = colour_class(c, 1);
  CHECK(blue.edge_count() == 1);
  CHECK(blue.has_edge({0, 1, 2}));

  EdgeColouring rnd = EdgeColouring::random(3, 7, 3, 99);
  std::size_t total = 0;
  for (Colour col = 0; col < 3; ++col) total += colour_class(rnd, col).edge_count();
  CHECK(total == binomial_u64(7, 3));
}

TEST_CASE("combination ranking round-trips") {
  std::uint64_t rank = 0;
  for_each_combination(9, 4, [&](std::span<const Vertex> t) {
    CHECK(unrank_combination_lex(9, 4, rank) == std::vector<Vertex>(t.begin(), t.end()));
    ++rank;
  });
  CHECK(rank == binomial_u64(9, 4));
}

TEST_CASE("hypergraph text format round-trips bit-exactly") {
  UniformHypergraph h(3, 6, {{0, 1, 5}, {0, 2, 3}, {1, 2, 4}});
  std::string text = write_hypergraph(h);
  UniformHypergraph back = read_hypergraph_string(text);
  CHECK(back == h);
  CHECK(write_hypergraph(back) == text);

  // comments are skipped
  CHECK(read_hypergraph_string("# provenance\n" + text) == h);

  CHECK_THROWS_AS(read_hypergraph_string("3 6 2\n0 1 5\n"), io_error);
  CHECK_THROWS_AS(read_hypergraph_string("3 6 1\n5 1 0\n"), io_error);
}

TEST_CASE("colouring text format round-trips bit-exactly") {
  EdgeColouring rnd = EdgeColouring::random(3, 5, 2, 7);
  // materialize through the table constructor for a writable backing
  std::vector<std::uint8_t> table(binomial_u64(5, 3));
  for_each_combination(5, 3, [&](std::span<const Vertex> t) {
    table[colex_rank(t)] = static_cast<std::uint8_t>(rnd.colour(t));
  });
  EdgeColouring c = EdgeColouring::table(3, 5, 2, table);
  std::string text = write_colouring(c);
  EdgeColouring back = read_colouring_string(text);
  CHECK(write_colouring(back) == text);
  for_each_combination(5, 3,
                       [&](std::span<const Vertex> t) { CHECK(back.colour(t) == c.colour(t)); });

  CHECK_THROWS_AS(read_colouring_string("3 5 2\n0 1 2 1\n"), io_error);
}

TEST_CASE("splitmix64 stream is random-access") {
  SplitMix64 rng(42);
  std::vector<std::uint64_t> seq;
  for (int i = 0; i < 8; ++i) seq.push_back(rng.next());
  for (int i = 0; i < 8; ++i) CHECK(SplitMix64::at(42, i) == seq[static_cast<std::size_t>(i)]);
  CHECK(SplitMix64::to_unit(seq[0]) >= 0.0);
  CHECK(SplitMix64::to_unit(seq[0]) < 1.0);
}

TEST_CASE("vacuous clique convention is shared") {
  CHECK(vacuous_clique_size(4, 16) == 3);
  CHECK(vacuous_clique_size(3, 2) == 2);
  CHECK(vacuous_clique_size(3, 10) == 2);
}
