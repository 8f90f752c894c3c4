#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hx/core.hpp"
#include "hx/numbers.hpp"

namespace hx::extraction {

// A complete bipartite K_{s,|T|}: every (u, t) pair is a host edge,
// re-verified on construction.
struct KstWitness {
  std::vector<Vertex> u;  // subset of A
  std::vector<Vertex> t;  // subset of B, the common neighbourhood
};

KstWitness make_kst_witness(const BipartiteGraph& host, std::vector<Vertex> u,
                            std::vector<Vertex> t);

enum class KstMode { exact, greedy };

inline constexpr std::uint64_t kDefaultSubsetBudget = std::uint64_t{1} << 26;

// Convexity extractor. Exact mode maximizes the common neighbourhood over
// all s-subsets of A (ties to the lexicographically smallest U) and carries
// the guarantee |T| >= ceil(e^{-sqrt(s)} eps^s |B|) whenever the density
// precondition holds; greedy mode grows U one vertex at a time and carries
// no guarantee.
KstWitness find_kst_dense(const BipartiteGraph& g, int s, KstMode mode, int threads = 1,
                          std::uint64_t subset_budget = kDefaultSubsetBudget);

// ceil(e^{-sqrt(s)} eps^s |B|), with e^{-sqrt(s)} rounded down before the
// exact multiplication so the asserted bound is conservative.
BigInt kst_dense_threshold(int s, const Rational& eps, long long b_size);

// s^{3/2} <= (eps/2) |A|, compared exactly via squares.
bool kst_dense_precondition(int s, const Rational& eps, long long a_size);

// ceil(2^{-|A|} |B|).
BigInt kst_pigeonhole_threshold(long long a_size, long long b_size);

struct PigeonholeResult {
  KstWitness witness;
  int s = 0;
  bool density_precondition_ok = false;  // e(G) >= eps |A| |B|
  std::size_t distinct_traces = 0;
};

// Pigeonhole extractor: buckets B-vertices by their exact neighbourhood
// trace in A and returns the s-subset of A contained in the most traces,
// s = ceil(eps |A|). Exact for |A| <= 30, work-gated.
PigeonholeResult find_kst_pigeonhole(const BipartiteGraph& g, const Rational& eps,
                                     std::uint64_t work_budget = kDefaultSubsetBudget);

// Pipeline-internal form with the subset size given directly.
KstWitness find_kst_pigeonhole_fixed(const BipartiteGraph& g, int s,
                                     std::uint64_t work_budget = kDefaultSubsetBudget);

enum class LinkPair { g12, g23, g31 };

struct GoodEdgeReport {
  std::vector<std::pair<Vertex, Vertex>> good;   // proportion threshold met
  std::vector<std::pair<Vertex, Vertex>> heavy;  // good and enough triangles
  Rational proportion;                           // 1 - 2 eta
  Rational heavy_floor;
};

// Good edges of the named link graph: edge e is good when the number of g3
// triples through e is at least a (1-2 eta)-proportion of the triangles
// through e; heavy edges additionally sit in >= heavy_floor triangles.
GoodEdgeReport good_edges(const TripartiteSystem& sys, const UniformHypergraph& g3,
                          const Rational& eta, LinkPair pair, const Rational& heavy_floor);

struct KsssOverrides {
  std::optional<int> s1, s2, t2, t3;
};

struct KsssResult {
  std::optional<TripartiteWitness> witness;
  std::string failed_stage;  // empty on success
  std::string failure_detail;
  std::vector<std::string> log;
  bool triangle_precondition = false;  // triangles >= delta n^3
  bool coverage_precondition = false;  // g3 covers >= (1-eta) of the triangles
  bool ok() const { return witness.has_value(); }
};

// The chained K_{s,s,s} pipeline: good/heavy filter on G12, convexity
// extraction (S1, T2), re-filter between S1 and V3, pigeonhole extraction
// (S2, T3), then vertex-versus-link-edge extraction over E23 followed by a
// final convexity extraction for (S', S''). Parts are padded to the maximum
// part size for all thresholds (recorded in the log). Stage failures are
// structured results naming what was available versus required.
KsssResult find_ksss(const TripartiteSystem& sys, const UniformHypergraph& g3,
                     const Rational& delta, const Rational& eta, int s,
                     const KsssOverrides& overrides = {}, int threads = 1);

}  // namespace hx::extraction
