#include "doctest.h"

#include <cmath>

#include "hx/constructions.hpp"
#include "hx/density.hpp"
#include "hx/rng.hpp"

using namespace hx;
using namespace hx::density;

TEST_CASE("embedding threshold parameters") {
  DensityParams p = DensityParams::for_embedding(3, Rational(1, 2));
  CHECK(p.eps == rpow(Rational(1, 6), 10) * rpow(Rational(1, 2), 27));
  // c_i decreasing, eps_i increasing, eps_0 >= eps (checked in the ctor too)
  for (int i = 1; i <= 3; ++i) {
    CHECK(p.c_sq[i] <= p.c_sq[i - 1]);
    CHECK(p.eps_i_sq[i] >= p.eps_i_sq[i - 1]);
  }
  CHECK(p.eps_i_sq[0] >= p.eps * p.eps);
  CHECK(p.c_approx(0) == doctest::Approx(1.0 / 3.0));

  CHECK(ceil_sqrt_rational(Rational(0)) == 0);
  CHECK(ceil_sqrt_rational(Rational(4)) == 2);
  CHECK(ceil_sqrt_rational(Rational(5)) == 3);
  CHECK(ceil_sqrt_rational(Rational(1, 4)) == 1);
}

TEST_CASE("is_bidense exact on the worked instances") {
  BipartiteGraph complete = BipartiteGraph::complete(0, 4, 4, 8);
  CHECK(is_bidense(complete, Rational(1, 4), Rational(1), BidenseMode::exact).verdict ==
        BidenseVerdict::dense);

  BipartiteGraph empty(0, 4, 4, 8);
  BidenseResult viol = is_bidense(empty, Rational(1, 4), Rational(1, 10), BidenseMode::exact);
  REQUIRE(viol.verdict == BidenseVerdict::violation);
  // first lexicographic violating pair
  CHECK(viol.x == std::vector<Vertex>{0});
  CHECK(viol.y == std::vector<Vertex>{4});
  CHECK(viol.pair_density == Rational(0));

  // K_{4,4} minus a perfect matching: every admissible pair has density >= 1/2
  BipartiteGraph no_match = BipartiteGraph::from_predicate(
      0, 4, 4, 8, [](Vertex a, Vertex b) { return b - 4 != a; });
  CHECK(is_bidense(no_match, Rational(1, 2), Rational(1, 2), BidenseMode::exact).verdict ==
        BidenseVerdict::dense);
}

TEST_CASE("sampled bi-density never answers dense and witnesses are valid") {
  BipartiteGraph sparse = BipartiteGraph::from_predicate(
      0, 12, 12, 24, [](Vertex a, Vertex b) { return (a + b) % 7 == 0; });
  BidenseResult r =
      is_bidense(sparse, Rational(1, 4), Rational(9, 10), BidenseMode::sampled, 5);
  CHECK(r.verdict != BidenseVerdict::dense);
  if (r.verdict == BidenseVerdict::violation) {
    CHECK(edge_density(sparse, r.x, r.y) == r.pair_density);
    CHECK(r.pair_density < Rational(9, 10));
    CHECK(Rational(r.x.size()) >= Rational(1, 4) * 12);
    CHECK(Rational(r.y.size()) >= Rational(1, 4) * 12);
  }
}

TEST_CASE("bidense_verdict agrees with the definitional brute force") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    std::uint64_t seed = rng.next();
    double p = 0.2 + 0.06 * (trial % 10);
    BipartiteGraph g = BipartiteGraph::from_predicate(0, 6, 6, 12, [&](Vertex a, Vertex b) {
      std::vector<Vertex> pr{a, b};
      return SplitMix64::to_unit(SplitMix64::at(seed, colex_rank(pr))) < p;
    });
    Rational eps(1, 3), rho(2, 5);
    BidenseResult exact = is_bidense(g, eps, rho, BidenseMode::exact);
    long long xfloor = static_cast<long long>(ceil_rational(eps * 6));
    BidenseResult fast = bidense_verdict(g, xfloor, xfloor, rho);
    CHECK((exact.verdict == BidenseVerdict::dense) == (fast.verdict == BidenseVerdict::dense));
    if (fast.verdict == BidenseVerdict::violation) {
      CHECK(edge_density(g, fast.x, fast.y) == fast.pair_density);
      CHECK(fast.pair_density < rho);
    }
  }
}

TEST_CASE("is_tridense exact: complete is dense, empty violates") {
  UniformHypergraph full = UniformHypergraph::complete(3, 6);
  auto in_full = [&](Vertex a, Vertex b, Vertex c) {
    Vertex t[3] = {a, b, c};
    return full.has_edge(std::span<const Vertex>(t, 3));
  };
  CHECK(is_tridense(6, in_full, Rational(1, 54), Rational(1), TridenseMode::exact).dense);

  auto never = [](Vertex, Vertex, Vertex) { return false; };
  TridenseResult r = is_tridense(6, never, Rational(1, 54), Rational(1, 2), TridenseMode::exact);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->matching == 0);
  CHECK(r.witness->violates_proportion);
  CHECK(recount_witness(*r.witness, never));
}

TEST_CASE("is_tridense exact verdict is deterministic on a seeded instance") {
  EdgeColouring host = EdgeColouring::random(3, 6, 2, 7);
  auto pred = [&](Vertex a, Vertex b, Vertex c) { return host.colour_sorted3(a, b, c) == 0; };
  TridenseResult r1 = is_tridense(6, pred, Rational(1, 54), Rational(1, 4), TridenseMode::exact);
  TridenseResult r2 = is_tridense(6, pred, Rational(1, 54), Rational(1, 4), TridenseMode::exact);
  CHECK(r1.dense == r2.dense);
  CHECK(r1.witness.has_value() == r2.witness.has_value());
  if (r1.witness) {
    CHECK(r1.witness->v1 == r2.witness->v1);
    CHECK(recount_witness(*r1.witness, pred));
  }
}

TEST_CASE("lemma 2.1 parameter formulas are exact") {
  LemmaParams p = lemma_params(3, Rational(1, 2));
  CHECK(p.eps == Rational(1, ipow(BigInt(6), 10) * ipow(BigInt(2), 27)));
  CHECK(p.n_min == ipow(BigInt(6), 10) * ipow(BigInt(2), 27));

  LemmaParams unit = lemma_params(3, Rational(1));
  CHECK(unit.eps == rpow(Rational(1, 6), 10));
  CHECK(unit.n_min == ipow(BigInt(6), 10));

  LemmaParams p4 = lemma_params(4, Rational(1, 2));
  CHECK(p4.eps == Rational(1, ipow(BigInt(8), 10) * ipow(BigInt(2), 48)));

  // monotone: eps strictly decreasing in t at fixed rho
  CHECK(lemma_params(4, Rational(1, 2)).eps < lemma_params(3, Rational(1, 2)).eps);
}

TEST_CASE("theorem parameter report") {
  TheoremParams p3 = theorem_params(3, 1e6);
  CHECK(p3.delta_h == Rational(1, 495));
  CHECK(p3.rho_below_one);
  CHECK_FALSE(p3.rho_at_most_eighth);  // fails at this n; reported, not asserted
  CHECK(p3.s >= 1);

  TheoremParams unit = theorem_params(3, std::exp(1.0));
  CHECK(unit.rho == doctest::Approx(1.0));
  CHECK(unit.s == 1);

  // s nondecreasing in n
  CHECK(theorem_params(3, 1e8).s >= theorem_params(3, 1e4).s);
}

TEST_CASE("embed places the first vertex of each part when everything is dense") {
  EdgeColouring target = EdgeColouring::constant(3, 3, 2, 0);
  EdgeColouring host = EdgeColouring::constant(3, 9, 2, 0);
  EmbedResult r = embed(target, host, Rational(1, 2), true, 0);
  REQUIRE(r.embedding.has_value());
  CHECK(*r.embedding == std::vector<Vertex>{0, 3, 6});
  CHECK(r.verified);
}

TEST_CASE("embed fails with a recomputable certificate when a colour is absent") {
  EdgeColouring target = EdgeColouring::constant(3, 3, 2, 1);
  EdgeColouring host = EdgeColouring::constant(3, 12, 2, 0);
  EmbedResult r = embed(target, host, Rational(1, 2), false, 0);
  REQUIRE_FALSE(r.embedding.has_value());
  REQUIRE(r.certificate.has_value());
  CHECK(r.certificate->step == 1);
  CHECK(r.certificate->j == 2);
  CHECK(r.certificate->k == 3);
  CHECK(verify_failure_certificate(target, host, Rational(1, 2), *r.certificate));

  // tampering with a claimed count must be caught
  FailureCertificate bad = *r.certificate;
  REQUIRE_FALSE(bad.family.empty());
  bad.family[0].h_edges += 1;
  std::string why;
  CHECK_FALSE(verify_failure_certificate(target, host, Rational(1, 2), bad, &why));
  CHECK(why == "H_jk edge count does not recompute");
}

TEST_CASE("embed on seeded random hosts: sound on both exits") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    EdgeColouring target = EdgeColouring::random(3, 4, 2, seed ^ 0xabcULL);
    EdgeColouring host = EdgeColouring::random(3, 120, 2, seed);
    EmbedResult r = embed(target, host, Rational(3, 10), false, seed);
    if (r.embedding) {
      CHECK(r.verified);
      CHECK(verify_embedding(target, host, *r.embedding));
    } else {
      REQUIRE(r.certificate.has_value());
      std::string why;
      bool ok = verify_failure_certificate(target, host, Rational(3, 10), *r.certificate, &why);
      CAPTURE(seed);
      CAPTURE(why);
      CHECK(ok);
    }
  }
}

TEST_CASE("dichotomy finds an induced copy in a complete host") {
  EdgeColouring host = EdgeColouring::constant(3, 40, 2, 0);
  EdgeColouring target = EdgeColouring::constant(3, 4, 2, 0);  // K_4^(3) pattern
  DichotomyParams params;
  params.rho = Rational(1, 8);
  DichotomyResult r = dichotomy(host, target, params, {}, 0);
  CHECK(r.outcome == DichotomyOutcome::induced_copy);
  REQUIRE(r.induced_copy.has_value());
  CHECK(verify_embedding(target, host, *r.induced_copy));
}

TEST_CASE("dichotomy on an empty host returns an empty tripartite witness") {
  EdgeColouring host = EdgeColouring::constant(3, 45, 2, 1);  // no edges
  EdgeColouring target = EdgeColouring::constant(3, 3, 2, 0);  // single colour-0 triple
  DichotomyParams params;
  params.rho = Rational(1, 8);
  params.s = 2;
  extraction::KsssOverrides ov;
  ov.s1 = 2;
  ov.s2 = 2;
  ov.t2 = 2;
  ov.t3 = 2;
  DichotomyResult r = dichotomy(host, target, params, ov, 0);
  REQUIRE(r.outcome == DichotomyOutcome::tripartite);
  REQUIRE(r.tripartite.has_value());
  CHECK(r.tripartite->kind == TripartiteKind::empty);
  CHECK(r.tripartite->s1.size() == 2);
  // every transversal triple has host colour 1
  for (Vertex a : r.tripartite->s1)
    for (Vertex b : r.tripartite->s2)
      for (Vertex c : r.tripartite->s3) {
        Vertex t[3] = {a, b, c};
        std::sort(t, t + 3);
        CHECK(host.colour(std::span<const Vertex>(t, 3)) == 1);
      }
}
