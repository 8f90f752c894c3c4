#include "doctest.h"

#include <algorithm>

#include "hx/oracles.hpp"
#include "hx/rng.hpp"
#include "hx/stepup.hpp"

using namespace hx;
using namespace hx::stepup;

namespace {

std::vector<LabelVector> vectors_of(int dim, std::initializer_list<std::uint64_t> values) {
  std::vector<LabelVector> out;
  for (auto v : values) out.emplace_back(dim, v);
  return out;
}

EdgeColouring random_base(int k, int n, std::uint64_t seed) {
  std::vector<std::uint8_t> table(binomial_u64(n, k));
  std::uint64_t i = 0;
  for (auto& c : table) c = static_cast<std::uint8_t>(SplitMix64::at(seed, i++) & 1);
  return EdgeColouring::table(k, n, 2, table);
}

}  // namespace

TEST_CASE("delta finds the largest differing coordinate") {
  // gamma bits are little-endian in the value: (0,1,0) has value 2
  CHECK(delta(LabelVector(3, 0b010), LabelVector(3, 0b110)) == 3);
  CHECK(delta(LabelVector(3, 0b000), LabelVector(3, 0b001)) == 1);
  CHECK(delta(LabelVector(3, 0b101), LabelVector(3, 0b110)) == 2);
  CHECK_THROWS_AS(delta(LabelVector(3, 5), LabelVector(3, 5)), std::invalid_argument);
}

TEST_CASE("compare agrees with integer value order") {
  CHECK(less(LabelVector(3, 2), LabelVector(3, 6)));
  CHECK(less(LabelVector(3, 5), LabelVector(3, 6)));
  CHECK(less(LabelVector(3, 3), LabelVector(3, 4)));
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) {
      if (a == b) continue;
      CHECK(less(LabelVector(4, a), LabelVector(4, b)) == (a < b));
    }
}

TEST_CASE("delta_ij equals the running maximum of consecutive deltas") {
  auto tuple = vectors_of(3, {0, 1, 2, 3});  // 000, 100, 010, 110 as gamma strings
  CHECK(delta_ij(tuple, 1, 3) == 2);
  CHECK(delta_ij(tuple, 1, 4) == 2);
  CHECK(delta_ij(tuple, 2, 4) == 2);
  CHECK_THROWS_AS(delta_ij(tuple, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(delta_ij(tuple, 0, 3), std::invalid_argument);

  // exhaustive coherence at n = 3 over all strictly increasing 4-tuples
  for_each_combination(8, 4, [&](std::span<const Vertex> t) {
    std::vector<LabelVector> vs;
    for (Vertex v : t) vs.emplace_back(3, static_cast<std::uint64_t>(v));
    auto d = delta_sequence(vs);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) CHECK(d[i] != d[i + 1]);
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) CHECK_NOTHROW(delta_ij(vs, i, j));
  });
}

TEST_CASE("step-up colour follows the monotone and extremum rules") {
  SUBCASE("k=2 monotone takes the base colour of the delta set") {
    // base on 2 vertices: single pair {0,1} coloured red
    EdgeColouring base = EdgeColouring::constant(2, 2, 2, kRed);
    StepUpColouring s(base);
    CHECK(s.colour({0, 1, 2}) == kRed);
  }
  SUBCASE("k=3 extremum rules") {
    EdgeColouring base = EdgeColouring::constant(3, 3, 2, kRed);
    StepUpColouring s(base);
    // (000,100,010,110) = values 0,1,2,3: deltas (1,2,1), local max -> blue
    CHECK(s.colour({0, 1, 2, 3}) == kBlue);
    // (000,010,110,001) = values 0,2,3,4: deltas (2,1,3), local min -> red
    CHECK(s.colour({0, 2, 3, 4}) == kRed);
  }
  SUBCASE("monotone branch consults the base colouring") {
    // n=3 base: colour triple {0,1,2} (the only one) blue
    EdgeColouring base = EdgeColouring::constant(3, 3, 2, kBlue);
    StepUpColouring s(base);
    // values 0,1,2,4 -> deltas (1,2,3) strictly increasing -> base{1,2,3}->ids{0,1,2}
    CHECK(s.colour({0, 1, 2, 4}) == kBlue);
  }
  SUBCASE("duplicate ids rejected") {
    EdgeColouring base = EdgeColouring::constant(2, 2, 2, kRed);
    StepUpColouring s(base);
    std::vector<Vertex> bad{1, 1, 2};
    CHECK_THROWS_AS(s.colour(bad), std::invalid_argument);
  }
}

TEST_CASE("preorder canonical ranks") {
  std::vector<int> a{1, 2, 1}, b{5, 9, 5}, c{2, 1, 3};
  CHECK(preorder_of(a).ranks == std::vector<int>{1, 2, 1});
  CHECK(preorder_of(b).ranks == std::vector<int>{1, 2, 1});
  CHECK(preorder_of(a) == preorder_of(b));
  CHECK(preorder_of(c).ranks == std::vector<int>{2, 1, 3});
}

TEST_CASE("pattern_of single tuple is the colour of that tuple") {
  EdgeColouring base = random_base(3, 4, 11);
  StepUpColouring s(base);
  std::vector<Vertex> tuple{1, 4, 9, 12};
  ColouredPattern p = pattern_of(s, tuple);
  CHECK(p.vertex_count == 4);
  CHECK(p.uniformity == 4);
  CHECK(p.colours.size() == 1);
  CHECK(p.colours[0] == s.colour(tuple));

  std::vector<Vertex> too_small{1, 4, 9};
  CHECK_THROWS_AS(pattern_of(s, too_small), std::invalid_argument);
}

TEST_CASE("pattern over a monotone-delta tuple of an all-red base is all red") {
  EdgeColouring base = EdgeColouring::constant(3, 4, 2, kRed);
  StepUpColouring s(base);
  // values 0,1,2,4,8: consecutive deltas 1,2,3,4 strictly increasing, and
  // every sub-4-tuple inherits a monotone delta sequence via the running max
  std::vector<Vertex> tuple{0, 1, 2, 4, 8};
  ColouredPattern p = pattern_of(s, tuple);
  for (std::size_t i = 0; i < p.colours.size(); ++i) CHECK(p.colours[i] == kRed);
}

TEST_CASE("max_mono_clique on constant colourings") {
  EdgeColouring red = EdgeColouring::constant(3, 6, 2, 0);
  auto r = max_mono_clique(red, 0, 0, SearchBudget{});
  CHECK(r.size == 6);
  CHECK_FALSE(r.vacuous);
  CHECK(r.witness == std::vector<Vertex>{0, 1, 2, 3, 4, 5});

  auto b = max_mono_clique(red, 1, 0, SearchBudget{});
  CHECK(b.size == 2);  // vacuous: min reported size is uniformity - 1
  CHECK(b.vacuous);
  CHECK(b.witness == std::vector<Vertex>{0, 1});
}

TEST_CASE("step-up clique search matches the brute-force oracle") {
  for (std::uint64_t seed : {1ULL, 5ULL, 9ULL}) {
    EdgeColouring base = random_base(3, 4, seed);
    StepUpColouring s(base);
    EdgeColouring derived = s.derived();
    for (Colour col : {kRed, kBlue}) {
      auto fast = max_mono_clique(s, col, 0, SearchBudget{});
      auto slow = oracles::max_clique_bf(colour_class(derived, col), SearchBudget{});
      CAPTURE(seed);
      CAPTURE(col);
      CHECK(fast.size == slow.size);
      CHECK(fast.vacuous == slow.vacuous);
      // witnesses verify by recolouring all their 4-subsets
      if (!fast.vacuous) {
        bool ok = true;
        for_each_combination(static_cast<Vertex>(fast.witness.size()), 4,
                             [&](std::span<const Vertex> pos) {
                               std::vector<Vertex> sub;
                               for (Vertex p : pos) sub.push_back(fast.witness[p]);
                               if (s.colour(sub) != col) ok = false;
                             });
        CHECK(ok);
      }
    }
  }
}

TEST_CASE("ordered Bell numbers: recurrence, enumeration, bound") {
  const long long expected[] = {1, 1, 3, 13, 75, 541, 4683};
  for (int m = 0; m <= 6; ++m) CHECK(ordered_bell(m) == expected[m]);
  CHECK(ordered_bell(7) == 47293);
  for (int m = 1; m <= 12; ++m)
    CHECK(ordered_bell(m) <= ipow(BigInt(m), static_cast<unsigned long>(m)));
}

TEST_CASE("count bound check in exact arithmetic") {
  auto c38 = count_bound_check(8, 3);
  CHECK(c38.a_exact == ordered_bell(7) * ipow(BigInt(2), 35));
  CHECK(c38.b == Rational(ipow(BigInt(2), 70), BigInt(40320)));
  CHECK(c38.exact_less);
  CHECK(c38.relaxed_less);
  CHECK(c38.claim_applies);

  for (auto [h, k] : {std::pair{9, 3}, std::pair{9, 4}, std::pair{10, 5}}) {
    auto c = count_bound_check(h, k);
    CHECK(c.exact_less);
    CHECK(c.relaxed_less);
  }

  // below the h >= k+5 threshold the comparison is reported, not claimed
  auto low = count_bound_check(4, 3);
  CHECK_FALSE(low.claim_applies);
}

TEST_CASE("pattern census: exhaustive at tiny sizes, deterministic when sampled") {
  EdgeColouring base = EdgeColouring::constant(2, 2, 2, kRed);
  StepUpColouring s(base);
  auto census = realizable_pattern_census(s, 3, 10, 0, 0);
  CHECK(census.exhaustive);
  CHECK(census.tuples_examined == 4);  // C(4,3)
  // k=2 never uses the extremum branch, so every edge is base-coloured red
  for (const auto& p : census.patterns)
    for (auto c : p.colours) CHECK(c == kRed);
  CHECK(census.patterns.size() == 1);

  EdgeColouring base2 = random_base(3, 5, 3);
  StepUpColouring s2(base2);
  auto c1 = realizable_pattern_census(s2, 5, 100, 400, 77);
  auto c2 = realizable_pattern_census(s2, 5, 100, 400, 77);
  CHECK_FALSE(c1.exhaustive);
  CHECK(c1.patterns == c2.patterns);

  // census size obeys the counting bound H_{h-1} 2^{C(h-1,k)}
  EdgeColouring base3 = random_base(2, 3, 5);
  StepUpColouring s3(base3);
  auto c3 = realizable_pattern_census(s3, 4, 100, 0, 0);
  CHECK(c3.exhaustive);
  CHECK(BigInt(c3.patterns.size()) <=
        ordered_bell(3) * ipow(BigInt(2), static_cast<unsigned long>(binomial_u64(3, 2))));
}

TEST_CASE("avoided pattern search statuses") {
  EdgeColouring base = random_base(2, 3, 41);
  StepUpColouring s(base);

  AvoidedPatternOptions zero;
  zero.census_budget = 0;
  zero.sample_budget = 0;
  CHECK(find_avoided_pattern(s, 4, zero).status == AvoidedStatus::budget);

  AvoidedPatternOptions opts;
  opts.census_budget = 100;  // C(8,4) = 70 fits: exhaustive
  auto r = find_avoided_pattern(s, 4, opts);
  CHECK(r.census.exhaustive);
  if (r.pattern) {
    CHECK(r.status == AvoidedStatus::avoided);
    CHECK_FALSE(r.census.patterns.contains(*r.pattern));
  } else {
    CHECK(r.status == AvoidedStatus::all_realized);
    CHECK(r.census.patterns.size() == 16);
  }
}

TEST_CASE("stepping-up verification report") {
  EdgeColouring base = EdgeColouring::constant(3, 4, 2, kRed);
  auto report = stepping_up_verify(base, 4, SearchBudget{});
  CHECK(report.bound == 2 * 4 + 4 - 5);
  CHECK(report.red.size >= 4);   // the 16-vertex derived colouring has red cliques
  CHECK(report.blue.size >= 3);  // at least vacuous
  CHECK_FALSE(report.red.exhausted);
  CHECK(report.summary.find("bound=7") != std::string::npos);
}
