#include "hx/constructions.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hx/rng.hpp"

namespace hx::constructions {

UniformHypergraph random_graph(Vertex n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("random_graph: p outside [0,1]");
  std::vector<Edge> edges;
  std::uint64_t draw_index = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++draw_index) {
      double u = SplitMix64::to_unit(SplitMix64::at(seed, draw_index));
      if (u < p) edges.push_back({i, j});
    }
  return UniformHypergraph(2, n, std::move(edges));
}

LiftedHypergraph lift(const UniformHypergraph& base, Vertex n) {
  if (base.uniformity() < 2) throw std::invalid_argument("lift: base uniformity must be >= 2");
  if (base.vertex_count() > n) throw std::invalid_argument("lift: base vertices exceed n");
  std::vector<Edge> edges;
  for (const Edge& e : base.edges()) {
    for (Vertex last = e.back() + 1; last < n; ++last) {
      Edge lifted(e);
      lifted.push_back(last);
      edges.push_back(std::move(lifted));
    }
  }
  LiftedHypergraph out{base, UniformHypergraph(base.uniformity() + 1, n, std::move(edges)), {}};
  return out;
}

UniformHypergraph tight_cycle5() {
  return UniformHypergraph(3, 5, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 3, 4}, {0, 1, 4}});
}

bool pair_determination_check(const UniformHypergraph& g3, std::span<const Vertex> x) {
  if (g3.uniformity() != 3)
    throw std::invalid_argument("pair_determination_check: needs a 3-uniform hypergraph");
  if (x.size() < 3) throw std::invalid_argument("pair_determination_check: |X| must be >= 3");
  std::vector<Vertex> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("pair_determination_check: repeated vertex");
  Vertex x1 = sorted[0], x2 = sorted[1];
  bool first = true, all_edges = false;
  for (std::size_t i = 2; i < sorted.size(); ++i) {
    Vertex t[3] = {x1, x2, sorted[i]};
    bool edge = g3.has_edge(std::span<const Vertex>(t, 3));
    if (first) {
      all_edges = edge;
      first = false;
    } else if (edge != all_edges) {
      return false;
    }
  }
  return true;
}

HfreeReport verify_hfree_lift(Vertex n, std::uint64_t seed, const UniformHypergraph& pattern,
                              const SearchBudget& budget) {
  LiftedHypergraph g = lift(random_graph(n, 0.5, seed), n);
  g.provenance = Provenance{seed, 0.5};
  oracles::InducedCopyOracle oracle = oracles::induced_copy_bf(g.lifted, pattern, budget);
  HfreeReport r;
  r.n = n;
  r.seed = seed;
  r.exhausted = oracle.exhausted;
  r.nodes = oracle.nodes;
  r.copy = oracle.embedding;
  r.h_free = !oracle.embedding.has_value() && !oracle.exhausted;
  return r;
}

namespace {

class BalancedSearch {
 public:
  BalancedSearch(const UniformHypergraph& g, TripartiteKind kind, const SearchBudget& budget)
      : g_(g), kind_(kind), budget_(budget), start_(std::chrono::steady_clock::now()) {
    if (g.uniformity() != 3)
      throw std::invalid_argument("max_balanced_tripartite: needs a 3-uniform hypergraph");
  }

  BalancedTripartiteResult run() {
    BalancedTripartiteResult r;
    int cap = g_.vertex_count() / 3;
    for (int s = 1; s <= cap; ++s) {
      found_ = false;
      target_ = s;
      s1_.clear();
      s2_.clear();
      s3_.clear();
      search(0);
      if (exhausted_) {
        r.exhausted = true;
        break;
      }
      if (!found_) break;
      r.s = s;
      r.witness = TripartiteWitness{best1_, best2_, best3_, kind_};
    }
    r.nodes = nodes_;
    return r;
  }

 private:
  bool budget_hit() {
    ++nodes_;
    if (budget_.node_cap && nodes_ > budget_.node_cap) return exhausted_ = true;
    if (budget_.seconds_cap > 0 && (nodes_ & 4095) == 0) {
      auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
      if (dt.count() > budget_.seconds_cap) return exhausted_ = true;
    }
    return false;
  }

  bool triple_ok(Vertex a, Vertex b, Vertex c) const {
    Vertex t[3] = {a, b, c};
    std::sort(t, t + 3);
    bool edge = g_.has_edge(std::span<const Vertex>(t, 3));
    return kind_ == TripartiteKind::complete ? edge : !edge;
  }

  bool placeable(int part, Vertex v) const {
    // all transversal triples involving v and the other two parts so far
    const std::vector<Vertex>&a = part == 1 ? s2_ : s1_,
          &b = part == 3 ? s2_ : s3_;
    for (Vertex x : a)
      for (Vertex y : b)
        if (!triple_ok(v, x, y)) return false;
    return true;
  }

  // branch per vertex: assign v to a part or skip it
  void search(Vertex v) {
    if (found_ || exhausted_ || budget_hit()) return;
    if (static_cast<int>(s1_.size()) == target_ && static_cast<int>(s2_.size()) == target_ &&
        static_cast<int>(s3_.size()) == target_) {
      found_ = true;
      best1_ = s1_;
      best2_ = s2_;
      best3_ = s3_;
      return;
    }
    Vertex n = g_.vertex_count();
    int need = 3 * target_ - static_cast<int>(s1_.size() + s2_.size() + s3_.size());
    if (n - v < need) return;
    for (int part = 1; part <= 3 && !found_ && !exhausted_; ++part) {
      std::vector<Vertex>& slot = part == 1 ? s1_ : part == 2 ? s2_ : s3_;
      if (static_cast<int>(slot.size()) >= target_) continue;
      // symmetry break: parts fill in order of their smallest element
      if (part == 2 && s1_.empty()) continue;
      if (part == 3 && s2_.empty()) continue;
      if (!placeable(part, v)) continue;
      slot.push_back(v);
      search(v + 1);
      slot.pop_back();
    }
    if (!found_ && !exhausted_) search(v + 1);
  }

  const UniformHypergraph& g_;
  TripartiteKind kind_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  int target_ = 0;
  bool found_ = false, exhausted_ = false;
  std::uint64_t nodes_ = 0;
  std::vector<Vertex> s1_, s2_, s3_, best1_, best2_, best3_;
};

}  // namespace

BalancedTripartiteResult max_balanced_tripartite(const UniformHypergraph& g3,
                                                 TripartiteKind kind,
                                                 const SearchBudget& budget) {
  return BalancedSearch(g3, kind, budget).run();
}

}  // namespace hx::constructions
