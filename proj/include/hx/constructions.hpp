#pragma once

#include <optional>
#include <string>

#include "hx/core.hpp"
#include "hx/oracles.hpp"

namespace hx::constructions {

// Seeded Erdos-Renyi graph as a 2-uniform hypergraph. Draw i of the
// hx-splitmix64-v1 stream decides edge i in lexicographic pair order:
// the edge is present iff the unit draw is < p.
UniformHypergraph random_graph(Vertex n, double p, std::uint64_t seed);

struct Provenance {
  std::uint64_t seed = 0;
  double p = 0;
};

struct LiftedHypergraph {
  UniformHypergraph base;    // uniformity k-1
  UniformHypergraph lifted;  // uniformity k, same vertex ids
  std::optional<Provenance> provenance;
};

// (i_1 < .. < i_k) is a lifted edge iff (i_1, .., i_{k-1}) is a base edge.
LiftedHypergraph lift(const UniformHypergraph& base, Vertex n);

// The 3-uniform tight cycle on 5 vertices, 0-indexed:
// {0,1,2},{1,2,3},{2,3,4},{0,3,4},{0,1,4}.
UniformHypergraph tight_cycle5();

// With x1 < x2 the two smallest elements of X: true iff the triples
// (x1, x2, x) for x in X \ {x1, x2} are all edges or all non-edges.
bool pair_determination_check(const UniformHypergraph& g3, std::span<const Vertex> x);

struct HfreeReport {
  Vertex n = 0;
  std::uint64_t seed = 0;
  bool h_free = false;
  bool exhausted = false;
  std::uint64_t nodes = 0;
  std::optional<std::vector<Vertex>> copy;  // an induced copy when not H-free
};

// Builds the lift of random_graph(n, 1/2, seed) and runs the induced-copy
// oracle for the pattern (default caller passes tight_cycle5()).
HfreeReport verify_hfree_lift(Vertex n, std::uint64_t seed, const UniformHypergraph& pattern,
                              const SearchBudget& budget);

struct BalancedTripartiteResult {
  int s = 0;  // 0 when no nonempty witness exists
  TripartiteWitness witness;
  bool exhausted = false;
  std::uint64_t nodes = 0;
};

// Largest s admitting disjoint S1, S2, S3 of size s whose transversal
// triples are all edges (complete) or all non-edges (empty); exact
// backtracking within budget.
BalancedTripartiteResult max_balanced_tripartite(const UniformHypergraph& g3,
                                                 TripartiteKind kind,
                                                 const SearchBudget& budget);

}  // namespace hx::constructions
