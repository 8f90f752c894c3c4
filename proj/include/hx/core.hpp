#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "hx/bitset.hpp"
#include "hx/numbers.hpp"

namespace hx {

using Vertex = int;
using Edge = std::vector<Vertex>;  // strictly increasing vertex ids
using Colour = int;

// Node/time caps for searches. Results carry an exhausted flag; results with
// exhausted=false are exact, exhausted=true means best-found lower bound.
struct SearchBudget {
  std::uint64_t node_cap = 0;   // 0 = unlimited
  double seconds_cap = 0.0;     // 0 = unlimited
};

// Clique convention shared by the step-up searcher and the oracles: a vertex
// set smaller than the uniformity is vacuously monochromatic, so searches
// report min(n, k-1) with a vacuous marker when no k-set of the colour exists.
inline int vacuous_clique_size(int uniformity, Vertex n) {
  int v = uniformity - 1;
  return n < v ? static_cast<int>(n) : v;
}

struct EdgeHash {
  std::size_t operator()(const Edge& e) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (Vertex v : e) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// A k-uniform hypergraph on vertices 0..n-1. Edges are strictly increasing
// k-tuples, stored sorted for canonical iteration plus a hash index for O(1)
// membership. Immutable after construction.
class UniformHypergraph {
 public:
  UniformHypergraph(int k, Vertex n, std::vector<Edge> edges = {});

  static UniformHypergraph complete(int k, Vertex n);

  int uniformity() const { return k_; }
  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(std::span<const Vertex> e) const;
  bool has_edge(std::initializer_list<Vertex> e) const {
    return has_edge(std::span<const Vertex>(e.begin(), e.size()));
  }

  std::size_t degree(Vertex v) const;

  bool operator==(const UniformHypergraph& o) const {
    return k_ == o.k_ && n_ == o.n_ && edges_ == o.edges_;
  }

 private:
  int k_;
  Vertex n_;
  std::vector<Edge> edges_;
  std::unordered_set<Edge, EdgeHash> index_;
};

UniformHypergraph complement(const UniformHypergraph& h);

// Induced subhypergraph on S, relabelled 0..|S|-1 by rank in S.
UniformHypergraph induced(const UniformHypergraph& h, std::span<const Vertex> s);

// Rank of a strictly increasing k-tuple in colexicographic order:
// sum of C(v_i, i) over positions i = 1..k. Inverse of unrank_colex.
std::uint64_t colex_rank(std::span<const Vertex> tuple);

// Lexicographic combination enumeration over [0, n).
bool next_combination(std::vector<Vertex>& tuple, Vertex n);
std::vector<Vertex> unrank_combination_lex(Vertex n, int k, std::uint64_t rank);

// Calls fn(tuple) for every strictly increasing k-tuple over [0, n), in
// lexicographic order. fn may return void or bool; returning false stops.
template <typename Fn>
void for_each_combination(Vertex n, int k, Fn&& fn) {
  if (k < 0 || n < k) return;
  std::vector<Vertex> tuple(k);
  for (int i = 0; i < k; ++i) tuple[i] = i;
  if (k == 0) {
    fn(std::span<const Vertex>(tuple));
    return;
  }
  while (true) {
    if constexpr (std::is_same_v<decltype(fn(std::span<const Vertex>(tuple))), bool>) {
      if (!fn(std::span<const Vertex>(tuple))) return;
    } else {
      fn(std::span<const Vertex>(tuple));
    }
    if (!next_combination(tuple, n)) return;
  }
}

// A total colouring of all k-subsets of [0, n) with colours 0..l-1, backed
// either by an explicit table (indexed by colex rank) or by a pure rule.
// Step-up colourings plug in as rules over 2^n vertices.
class EdgeColouring {
 public:
  using Rule = std::function<Colour(std::span<const Vertex>)>;

  static EdgeColouring table(int k, Vertex n, int colours, std::vector<std::uint8_t> by_rank);
  static EdgeColouring constant(int k, Vertex n, int colours, Colour c);
  static EdgeColouring rule(int k, Vertex n, int colours, Rule fn, std::string rule_name);
  // Pure seeded colouring: colour(tuple) = splitmix output at the tuple's
  // colex rank, reduced mod l. Rank-keyed, so query order is irrelevant.
  static EdgeColouring random(int k, Vertex n, int colours, std::uint64_t seed);
  // Colour 0 = edge of g, colour 1 = non-edge (induced-pattern convention).
  static EdgeColouring from_hypergraph(const UniformHypergraph& g);

  int uniformity() const { return k_; }
  Vertex vertex_count() const { return n_; }
  int colour_count() const { return colours_; }
  bool is_explicit() const { return rule_ == nullptr; }
  const std::string& rule_name() const { return rule_name_; }

  Colour colour(std::span<const Vertex> tuple) const;
  Colour colour(std::initializer_list<Vertex> tuple) const {
    return colour(std::span<const Vertex>(tuple.begin(), tuple.size()));
  }
  Colour colour_sorted3(Vertex a, Vertex b, Vertex c) const;  // a < b < c

  const std::vector<std::uint8_t>& table_data() const { return table_; }

 private:
  EdgeColouring() = default;
  int k_ = 0;
  Vertex n_ = 0;
  int colours_ = 0;
  std::vector<std::uint8_t> table_;
  Rule rule_;
  std::string rule_name_;
};

inline constexpr std::uint64_t kDefaultMaterializeCap = 1u << 26;

// Hypergraph of all k-tuples of colour c. Materialization of implicit
// backings is gated by the edge/tuple budget.
UniformHypergraph colour_class(const EdgeColouring& c, Colour which,
                               std::uint64_t tuple_cap = kDefaultMaterializeCap);

// Bipartite graph between the disjoint id ranges A = [a_begin, a_end) and
// B = [b_begin, b_end). Rows are neighbourhood bitsets over B-index space,
// columns over A-index space.
class BipartiteGraph {
 public:
  BipartiteGraph(Vertex a_begin, Vertex a_end, Vertex b_begin, Vertex b_end,
                 std::vector<std::pair<Vertex, Vertex>> edges = {});

  static BipartiteGraph complete(Vertex a_begin, Vertex a_end, Vertex b_begin, Vertex b_end);
  // Edge (a, b) present iff pred(a, b).
  static BipartiteGraph from_predicate(Vertex a_begin, Vertex a_end, Vertex b_begin,
                                       Vertex b_end,
                                       const std::function<bool(Vertex, Vertex)>& pred);

  Vertex a_begin() const { return a_begin_; }
  Vertex a_end() const { return a_end_; }
  Vertex b_begin() const { return b_begin_; }
  Vertex b_end() const { return b_end_; }
  int a_size() const { return static_cast<int>(a_end_ - a_begin_); }
  int b_size() const { return static_cast<int>(b_end_ - b_begin_); }
  std::size_t edge_count() const { return edge_count_; }

  bool has_edge(Vertex a, Vertex b) const;
  std::size_t degree(Vertex a) const;
  // Neighbourhood of a as a bitset over B-indices (id - b_begin).
  const Bitset& row(Vertex a) const;
  // Neighbourhood of b as a bitset over A-indices (id - a_begin).
  const Bitset& col(Vertex b) const;

  Bitset common_neighbourhood(std::span<const Vertex> u) const;

  // e(X, Y) with X, Y as index-space masks.
  std::uint64_t edges_between(const Bitset& x_mask, const Bitset& y_mask) const;

  std::vector<Vertex> b_ids(const Bitset& mask) const;
  std::vector<Vertex> a_ids(const Bitset& mask) const;

 private:
  Vertex a_begin_, a_end_, b_begin_, b_end_;
  std::size_t edge_count_ = 0;
  std::vector<Bitset> rows_, cols_;
};

// Exact edge density e(X,Y) / (|X| |Y|); X and Y nonempty.
Rational edge_density(const BipartiteGraph& g, std::span<const Vertex> x, std::span<const Vertex> y);

// Three disjoint parts with link graphs g12: V1->V2, g23: V2->V3, g31: V3->V1.
class TripartiteSystem {
 public:
  TripartiteSystem(BipartiteGraph g12, BipartiteGraph g23, BipartiteGraph g31);

  const BipartiteGraph& g12() const { return g12_; }
  const BipartiteGraph& g23() const { return g23_; }
  const BipartiteGraph& g31() const { return g31_; }

  Vertex v1_begin() const { return g12_.a_begin(); }
  Vertex v1_end() const { return g12_.a_end(); }
  Vertex v2_begin() const { return g23_.a_begin(); }
  Vertex v2_end() const { return g23_.a_end(); }
  Vertex v3_begin() const { return g31_.a_begin(); }
  Vertex v3_end() const { return g31_.a_end(); }
  int v1_size() const { return g12_.a_size(); }
  int v2_size() const { return g23_.a_size(); }
  int v3_size() const { return g31_.a_size(); }

  bool is_triangle(Vertex v1, Vertex v2, Vertex v3) const {
    return g12_.has_edge(v1, v2) && g23_.has_edge(v2, v3) && g31_.has_edge(v3, v1);
  }

  // Triangles (v1,v2,v3) with one edge in each link graph, lexicographic.
  // fn may return void, or bool where false stops the stream.
  template <typename Fn>
  void for_each_triangle(Fn&& fn) const {
    for (Vertex v1 = v1_begin(); v1 < v1_end(); ++v1) {
      const Bitset& n12 = g12_.row(v1);
      const Bitset& n31 = g31_.col(v1);  // V3-index space
      bool stop = false;
      n12.for_each([&](std::size_t bi) {
        if (stop) return;
        Vertex v2 = v2_begin() + static_cast<Vertex>(bi);
        Bitset third = g23_.row(v2) & n31;
        third.for_each([&](std::size_t ci) {
          if (stop) return;
          Vertex v3 = v3_begin() + static_cast<Vertex>(ci);
          if constexpr (std::is_same_v<decltype(fn(v1, v2, v3)), bool>) {
            if (!fn(v1, v2, v3)) stop = true;
          } else {
            fn(v1, v2, v3);
          }
        });
      });
      if (stop) return;
    }
  }

  std::uint64_t triangle_count() const;
  // Number of triangles through the G12 edge (v1, v2).
  std::uint64_t triangles_through_12(Vertex v1, Vertex v2) const;

 private:
  BipartiteGraph g12_, g23_, g31_;
};

enum class TripartiteKind { complete, empty };

struct TripartiteWitness {
  std::vector<Vertex> s1, s2, s3;
  TripartiteKind kind = TripartiteKind::complete;
};

bool is_complete_tripartite(const UniformHypergraph& g, std::span<const Vertex> s1,
                            std::span<const Vertex> s2, std::span<const Vertex> s3);
bool is_empty_tripartite(const UniformHypergraph& g, std::span<const Vertex> s1,
                         std::span<const Vertex> s2, std::span<const Vertex> s3);

}  // namespace hx
