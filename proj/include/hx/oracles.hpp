#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hx/core.hpp"
#include "hx/stepup.hpp"

namespace hx::oracles {

// Brute-force ground truth for every search in the artifact. These are
// deliberately naive and share no code with the optimized paths, so
// agreement between the two is meaningful evidence.

struct CliqueOracle {
  int size = 0;
  std::vector<Vertex> witness;
  bool exhausted = false;
  bool vacuous = false;
  std::uint64_t nodes = 0;
};

// Exact maximum clique (every k-subset of the witness is an edge) by
// ordered-subset backtracking with degree pruning.
CliqueOracle max_clique_bf(const UniformHypergraph& h, const SearchBudget& budget);
CliqueOracle max_independent_bf(const UniformHypergraph& h, const SearchBudget& budget);

struct InducedCopyOracle {
  std::optional<std::vector<Vertex>> embedding;  // image of pattern vertex i
  bool exhausted = false;
  std::uint64_t nodes = 0;
};

// Backtracking over injections with partial-pattern pruning. An embedding f
// matches membership (hypergraphs) or colour (colourings) on every tuple.
InducedCopyOracle induced_copy_bf(const UniformHypergraph& host, const UniformHypergraph& pattern,
                                  const SearchBudget& budget);
InducedCopyOracle induced_copy_bf(const EdgeColouring& host, const EdgeColouring& pattern,
                                  const SearchBudget& budget);

struct KstOracle {
  bool found = false;
  std::vector<Vertex> u, t;
  std::size_t best_t = 0;  // maximum common neighbourhood size over s-subsets
};

// Exhaustive over s-subsets of A; found iff some common neighbourhood has
// size >= t_target.
KstOracle exists_kst_bf(const BipartiteGraph& g, int s, std::size_t t_target, int threads = 1);

struct KsssOracle {
  bool found = false;
  TripartiteWitness witness;
  bool exhausted = false;
  std::uint64_t nodes = 0;
};

// Exhaustive over part-subset triples of size s; found iff all s^3
// transversal triples are edges of g3.
KsssOracle exists_ksss_bf(const TripartiteSystem& sys, const UniformHypergraph& g3, int s,
                          const SearchBudget& budget);

// All total preorders on m elements as canonical rank vectors; m <= 7.
// Count equals ordered_bell(m).
std::vector<stepup::TotalPreorder> enumerate_preorders(int m);

}  // namespace hx::oracles
