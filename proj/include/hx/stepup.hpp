#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hx/core.hpp"
#include "hx/numbers.hpp"

namespace hx::stepup {

// Derived colours. Monotone delta sequences take the base colour of the
// delta set; otherwise the first local extremum decides: maximum = blue,
// minimum = red.
inline constexpr Colour kRed = 0;
inline constexpr Colour kBlue = 1;

// A binary vector (gamma_1, .., gamma_n). Coordinates are 1-based to match
// the delta definitions; the public vertex id of a vector is its value
// sum gamma_i 2^{i-1}, giving a fixed bijection with [0, 2^n).
class LabelVector {
 public:
  LabelVector(int dim, std::uint64_t value);
  static LabelVector from_bits(std::span<const int> gamma);  // gamma[0] = gamma_1

  int dim() const { return dim_; }
  std::uint64_t value() const { return value_; }
  int gamma(int i) const;  // 1-based

  bool operator==(const LabelVector&) const = default;

 private:
  int dim_;
  std::uint64_t value_;
};

// Largest 1-based coordinate at which the two vectors differ.
int delta(const LabelVector& a, const LabelVector& b);

// Order by the coordinate rule: a < b iff gamma_i = 0 in a at i = delta(a,b).
// Agrees with integer order on values.
bool less(const LabelVector& a, const LabelVector& b);
std::strong_ordering compare(const LabelVector& a, const LabelVector& b);

// delta(eps_i, eps_j) for a tuple strictly increasing under compare,
// computed directly and as max of consecutive deltas over [i, j-1); the two
// must agree. Indices are 1-based.
int delta_ij(std::span<const LabelVector> tuple, int i, int j);

// Consecutive deltas of a sorted tuple; adjacent entries always differ.
std::vector<int> delta_sequence(std::span<const LabelVector> tuple);

// Canonical rank vector of a total preorder: ranks are 1..t with ties equal;
// two integer sequences map to the same preorder iff they are
// order-isomorphic with ties preserved.
struct TotalPreorder {
  std::vector<int> ranks;
  auto operator<=>(const TotalPreorder&) const = default;
};

TotalPreorder preorder_of(std::span<const int> values);

// The step-up colouring: a red/blue colouring of the (k+1)-subsets of
// [0, 2^n) derived from a 2-colouring of the k-subsets of [0, n).
class StepUpColouring {
 public:
  explicit StepUpColouring(EdgeColouring base);

  int base_uniformity() const { return k_; }
  int base_dimension() const { return n_; }
  int derived_uniformity() const { return k_ + 1; }
  Vertex derived_vertex_count() const { return static_cast<Vertex>(Vertex{1} << n_); }
  const EdgeColouring& base() const { return *base_; }

  // Colour of a set of k+1 distinct vertex ids (any order).
  Colour colour(std::span<const Vertex> tuple) const;
  Colour colour(std::initializer_list<Vertex> tuple) const {
    return colour(std::span<const Vertex>(tuple.begin(), tuple.size()));
  }

  // Implicit EdgeColouring view of the derived colouring.
  EdgeColouring derived() const;

 private:
  std::shared_ptr<const EdgeColouring> base_;
  int k_;
  int n_;
};

inline Colour stepup_colour(const StepUpColouring& s, std::span<const Vertex> tuple) {
  return s.colour(tuple);
}

// A total 2-colouring of the (k+1)-subsets of h ordered vertices; equality
// is on ordered vertices, no isomorphism quotient.
struct ColouredPattern {
  int vertex_count = 0;
  int uniformity = 0;
  std::vector<std::uint8_t> colours;  // lexicographic position-tuple order
  auto operator<=>(const ColouredPattern&) const = default;
};

// Induced pattern of h sorted distinct vertex ids, h >= k+1.
ColouredPattern pattern_of(const StepUpColouring& s, std::span<const Vertex> tuple);

struct CliqueSearchResult {
  int size = 0;
  std::vector<Vertex> witness;
  bool exhausted = false;  // budget ran out; size is a lower bound
  bool vacuous = false;    // no (uniformity)-set of the colour exists
  std::uint64_t nodes = 0;
};

// Exact maximum monochromatic clique by branch and bound: vertices ordered
// by descending colour-degree, greedy-colouring bound on the pairwise
// compatibility relaxation, ties resolved toward the lexicographically
// smallest witness. upper_bound (0 = none) caps the reported size.
CliqueSearchResult max_mono_clique(const EdgeColouring& c, Colour colour, int upper_bound,
                                   const SearchBudget& budget);
CliqueSearchResult max_mono_clique(const StepUpColouring& s, Colour colour, int upper_bound,
                                   const SearchBudget& budget);

struct CensusResult {
  std::set<ColouredPattern> patterns;
  bool exhaustive = false;  // false: sampled, census is a lower bound
  std::uint64_t tuples_examined = 0;
};

// Distinct induced patterns over h-subsets: exhaustive when C(2^n, h) fits
// the budget, otherwise over sample_budget seeded random h-subsets.
CensusResult realizable_pattern_census(const StepUpColouring& s, int h,
                                       std::uint64_t exhaustive_budget,
                                       std::uint64_t sample_budget, std::uint64_t seed);

// Ordered Bell number H_m via the binomial recurrence, cross-checked for
// m <= 7 against direct enumeration of ordered set partitions, with the
// H_m <= m^m sanity bound enforced.
BigInt ordered_bell(int m);

struct CountBoundCheck {
  int h = 0, k = 0;
  BigInt a_exact;        // H_{h-1} 2^C(h-1,k)
  BigInt a_relaxed;      // (h-1)^{h-1} 2^C(h-1,k)
  Rational b;            // 2^C(h,k+1) / h!
  bool exact_less = false;
  bool relaxed_less = false;
  bool claim_applies = false;  // h >= k+5
};

// Exact arithmetic for the census-versus-all-patterns comparison; h >= k+2.
CountBoundCheck count_bound_check(int h, int k);

enum class AvoidedStatus {
  avoided,       // exhaustive census, pattern definitely never occurs
  candidate,     // sampled census only, pattern not seen
  all_realized,  // every pattern occurs in the (exhaustive) census
  budget,        // search did not run within budget
};

struct AvoidedPatternOptions {
  std::uint64_t census_budget = std::uint64_t{1} << 22;
  std::uint64_t sample_budget = 0;
  std::uint64_t pattern_budget = std::uint64_t{1} << 22;
  std::uint64_t seed = 0;
};

struct AvoidedPatternResult {
  std::optional<ColouredPattern> pattern;
  AvoidedStatus status = AvoidedStatus::budget;
  CensusResult census;
};

// First pattern (in colour-table order) absent from the realizable census.
AvoidedPatternResult find_avoided_pattern(const StepUpColouring& s, int h,
                                          const AvoidedPatternOptions& options);

struct SteppingUpReport {
  int base_k = 0, base_n = 0;
  int ell_base = 0;
  int bound = 0;  // 2 ell_base + (k+1) - 5
  CliqueSearchResult red, blue;
  bool bound_holds = false;  // max observed < bound; informational at desk scale
  std::string summary;
};

// Builds the derived colouring on 2^n vertices, searches both colours, and
// reports observed maxima against the stepping-up target bound.
SteppingUpReport stepping_up_verify(const EdgeColouring& base, int ell_base,
                                    const SearchBudget& budget);

}  // namespace hx::stepup
