#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hx/core.hpp"
#include "hx/extraction.hpp"
#include "hx/numbers.hpp"

namespace hx::density {

// Embedding thresholds c_i = rho^{i^2/2}/t and eps_i = rho^{t^2-i^2/2}/(2t^2).
// Odd i makes the exponents half-integral, so the values are stored exactly
// as squares; every size comparison is made on squares, which is equivalent
// for nonnegative quantities.
struct DensityParams {
  int t = 0;
  Rational rho;
  Rational eps;                     // (2t)^{-10} rho^{3t^2}
  std::vector<Rational> c_sq;       // c_i^2,   i = 0..t
  std::vector<Rational> eps_i_sq;   // eps_i^2, i = 0..t

  static DensityParams for_embedding(int t, const Rational& rho);

  double c_approx(int i) const;
  double eps_i_approx(int i) const;
};

// Smallest integer x with x^2 >= q (q >= 0); used for floors of the form
// ceil(eps_i * size) where only eps_i^2 is rational.
long long ceil_sqrt_rational(const Rational& q);

enum class BidenseVerdict { dense, violation, unknown };

struct BidenseResult {
  BidenseVerdict verdict = BidenseVerdict::unknown;
  std::vector<Vertex> x, y;  // violating pair when verdict == violation
  Rational pair_density;     // d(x, y) for the violating pair
};

enum class BidenseMode { exact, sampled };

// Bi-(eps, rho)-density check. Exact mode enumerates all X subseteq A and
// Y subseteq B with |X| >= eps|A|, |Y| >= eps|B| in lexicographic order and
// returns the first violating pair; it is gated by 2^{|A|+|B|} <= budget.
// Sampled mode tries seeded random pairs plus greedy min-degree peeling and
// never answers "dense".
BidenseResult is_bidense(const BipartiteGraph& g, const Rational& eps, const Rational& rho,
                         BidenseMode mode, std::uint64_t seed = 0,
                         std::uint64_t budget = std::uint64_t{1} << 26);

// Exact verdict with explicit size floors: enumerates X over subsets of A
// and finds the minimizing Y greedily (smallest degrees first), which gives
// the same dense/violation verdict as the definitional double enumeration.
BidenseResult bidense_verdict(const BipartiteGraph& g, long long x_floor, long long y_floor,
                              const Rational& rho);

struct TriDensityWitness {
  std::vector<Vertex> v1, v2, v3;   // host vertex ids
  std::vector<std::pair<Vertex, Vertex>> e12, e23, e31;
  std::uint64_t triangles = 0;      // triangles with one edge in each link
  std::uint64_t matching = 0;       // of those, triples satisfying the predicate
  Rational eps, rho;
  bool meets_triangle_floor = false;  // triangles >= eps n^3
  bool violates_proportion = false;   // matching < rho * triangles
};

using TriplePredicate = std::function<bool(Vertex, Vertex, Vertex)>;  // sorted triple

enum class TridenseMode { exact, sampled };

struct TridenseResult {
  bool dense = false;  // only exact mode may set this
  std::optional<TriDensityWitness> witness;
  std::uint64_t configurations = 0;
};

// Tri-(eps, rho)-density of the predicate over an n-vertex ground set.
// Exact mode enumerates part triples with complete link graphs exhaustively
// and full link subsets while the budget lasts (n <= 9); sampled mode draws
// seeded part triples with link graphs from the complete and
// induced-from-auxiliary-graph families.
TridenseResult is_tridense(Vertex n, const TriplePredicate& pred, const Rational& eps,
                           const Rational& rho, TridenseMode mode, std::uint64_t seed = 0,
                           std::uint64_t budget = std::uint64_t{1} << 22);

// Re-count a stored witness against the predicate.
bool recount_witness(const TriDensityWitness& w, const TriplePredicate& pred);

struct FailureCertificate {
  int step = 0;                  // the target vertex (1-based) that could not be placed
  int j = 0, k = 0;              // pair with |W_jk| >= |W| / (2 t^2)
  std::vector<Vertex> images;    // f(v_1..v_{step-1})
  std::vector<Vertex> w_set;     // W_step
  struct Entry {
    Vertex w = 0;
    std::vector<Vertex> y_j, y_k;    // violating subsets of U_j(w), U_k(w)
    std::uint64_t h_edges = 0;       // edges of H_jk(w) between y_j and y_k
  };
  std::vector<Entry> family;
};

struct EmbedStats {
  std::uint64_t colour_queries = 0;
  std::uint64_t candidates_tested = 0;
};

struct EmbedResult {
  std::optional<std::vector<Vertex>> embedding;  // image of H vertex i at [i-1]
  std::optional<FailureCertificate> certificate;
  bool verified = false;
  std::vector<std::string> trace;
  EmbedStats stats;
};

// The vertex-by-vertex embedding: equipartition hosts U_1..U_t, maintain
// survivor sets and colour-filtered link graphs, place the lowest-id
// candidate that keeps every remaining pair bi-(eps_{i+1}, rho^{i+1})-dense.
// Success is re-verified triple by triple; failure returns a certificate
// whose counts recompute exactly from the host colouring.
EmbedResult embed(const EdgeColouring& target, const EdgeColouring& host, const Rational& rho,
                  bool assert_invariants, std::uint64_t seed, bool want_trace = false);

bool verify_embedding(const EdgeColouring& target, const EdgeColouring& host,
                      std::span<const Vertex> images);

// Recomputes every claim in the certificate from the host colouring alone
// (closed-form survivor sets), independent of the embed code path.
bool verify_failure_certificate(const EdgeColouring& target, const EdgeColouring& host,
                                const Rational& rho, const FailureCertificate& cert,
                                std::string* why = nullptr);

struct LemmaParams {
  Rational eps;
  BigInt n_min;
};

// eps = (2t)^{-10} rho^{3 t^2} and n_min = ceil((2t)^{10} rho^{-3 t^2}).
LemmaParams lemma_params(int t, const Rational& rho);

struct TheoremParams {
  Rational delta_h;          // 1 / (55 t^2)
  double rho = 0;            // (log n)^{-1/(27 t^2)}, negative exponent
  double eps = 0;            // (2t)^{-10} rho^{3t^2}
  long long s = 0;           // floor((log n)^{1/2 + delta_h})
  double term1 = 0, term2 = 0, term3 = 0;  // exponents of the three factors
  bool rho_below_one = false;
  bool rho_at_most_eighth = false;
};

TheoremParams theorem_params(int t, double n);

enum class DichotomyOutcome { induced_copy, tripartite, double_failure };

struct DichotomyResult {
  DichotomyOutcome outcome = DichotomyOutcome::double_failure;
  std::optional<std::vector<Vertex>> induced_copy;      // embed images, verified
  std::optional<TripartiteWitness> tripartite;          // verified against host
  std::optional<FailureCertificate> certificate;
  std::optional<TriDensityWitness> density_witness;     // converted certificate
  extraction::KsssResult pipeline;
  std::vector<std::string> log;
};

struct DichotomyParams {
  Rational rho = Rational(1, 4);
  int s = 2;
};

// Try to embed the target into the 2-colouring; on failure convert the
// certificate into a tri-density witness, flip to the dense colour, and run
// the K_{s,s,s} pipeline with eta = rho and delta = eps. Both branches
// re-verify before returning; a double failure is a structured report.
DichotomyResult dichotomy(const EdgeColouring& host, const EdgeColouring& target,
                          const DichotomyParams& params,
                          const extraction::KsssOverrides& overrides, std::uint64_t seed,
                          int threads = 1);

// Structured text round-trip for certificates (CLI surface).
std::string certificate_to_text(const FailureCertificate& cert);

}  // namespace hx::density
