#include "hx/core.hpp"

#include <algorithm>
#include <stdexcept>

#include "hx/rng.hpp"

namespace hx {

namespace {

void validate_edge(const Edge& e, int k, Vertex n) {
  if (static_cast<int>(e.size()) != k)
    throw std::invalid_argument("edge arity != uniformity");
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0 || e[i] >= n) throw std::invalid_argument("edge vertex out of range");
    if (i > 0 && e[i - 1] >= e[i])
      throw std::invalid_argument("edge not strictly increasing");
  }
}

}  // namespace

UniformHypergraph::UniformHypergraph(int k, Vertex n, std::vector<Edge> edges)
    : k_(k), n_(n), edges_(std::move(edges)) {
  if (k < 2) throw std::invalid_argument("uniformity must be >= 2");
  if (n < k) throw std::invalid_argument("vertex count below uniformity");
  for (const Edge& e : edges_) validate_edge(e, k_, n_);
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) throw std::invalid_argument("duplicate edge");
  index_.reserve(edges_.size() * 2);
  for (const Edge& e : edges_) index_.insert(e);
}

UniformHypergraph UniformHypergraph::complete(int k, Vertex n) {
  std::vector<Edge> edges;
  for_each_combination(n, k, [&](std::span<const Vertex> t) {
    edges.emplace_back(t.begin(), t.end());
  });
  return UniformHypergraph(k, n, std::move(edges));
}

bool UniformHypergraph::has_edge(std::span<const Vertex> e) const {
  if (static_cast<int>(e.size()) != k_) return false;
  thread_local Edge scratch;
  scratch.assign(e.begin(), e.end());
  return index_.contains(scratch);
}

std::size_t UniformHypergraph::degree(Vertex v) const {
  std::size_t d = 0;
  for (const Edge& e : edges_)
    if (std::binary_search(e.begin(), e.end(), v)) ++d;
  return d;
}

UniformHypergraph complement(const UniformHypergraph& h) {
  std::vector<Edge> edges;
  for_each_combination(h.vertex_count(), h.uniformity(), [&](std::span<const Vertex> t) {
    if (!h.has_edge(t)) edges.emplace_back(t.begin(), t.end());
  });
  return UniformHypergraph(h.uniformity(), h.vertex_count(), std::move(edges));
}

UniformHypergraph induced(const UniformHypergraph& h, std::span<const Vertex> s) {
  std::vector<Vertex> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("induced: repeated vertex");
  for (Vertex v : sorted)
    if (v < 0 || v >= h.vertex_count())
      throw std::invalid_argument("induced: vertex out of range");
  std::vector<Edge> edges;
  Edge relabelled(h.uniformity());
  for_each_combination(static_cast<Vertex>(sorted.size()), h.uniformity(),
                       [&](std::span<const Vertex> pos) {
                         Edge original(h.uniformity());
                         for (int i = 0; i < h.uniformity(); ++i) original[i] = sorted[pos[i]];
                         if (h.has_edge(original)) edges.emplace_back(pos.begin(), pos.end());
                       });
  int k = h.uniformity();
  Vertex m = static_cast<Vertex>(sorted.size());
  if (m < k) return UniformHypergraph(k, k, {});  // too few vertices for any edge
  return UniformHypergraph(k, m, std::move(edges));
}

std::uint64_t colex_rank(std::span<const Vertex> tuple) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i)
    r += binomial_u64(tuple[i], static_cast<long long>(i) + 1);
  return r;
}

bool next_combination(std::vector<Vertex>& tuple, Vertex n) {
  int k = static_cast<int>(tuple.size());
  for (int i = k - 1; i >= 0; --i) {
    if (tuple[i] < n - (k - i)) {
      ++tuple[i];
      for (int j = i + 1; j < k; ++j) tuple[j] = tuple[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Vertex> unrank_combination_lex(Vertex n, int k, std::uint64_t rank) {
  std::vector<Vertex> tuple(k);
  Vertex v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      std::uint64_t block = binomial_u64(n - 1 - v, k - 1 - i);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    tuple[i] = v++;
  }
  return tuple;
}

EdgeColouring EdgeColouring::table(int k, Vertex n, int colours,
                                   std::vector<std::uint8_t> by_rank) {
  if (colours < 2 || colours > 255) throw std::invalid_argument("colour count out of range");
  if (k < 2 || n < k) throw std::invalid_argument("bad colouring dimensions");
  if (by_rank.size() != binomial_u64(n, k))
    throw std::invalid_argument("colour table size != C(n,k)");
  for (auto c : by_rank)
    if (c >= colours) throw std::invalid_argument("colour out of range in table");
  EdgeColouring e;
  e.k_ = k;
  e.n_ = n;
  e.colours_ = colours;
  e.table_ = std::move(by_rank);
  e.rule_name_ = "table";
  return e;
}

EdgeColouring EdgeColouring::constant(int k, Vertex n, int colours, Colour c) {
  if (c < 0 || c >= colours) throw std::invalid_argument("constant colour out of range");
  EdgeColouring e;
  e.k_ = k;
  e.n_ = n;
  e.colours_ = colours;
  e.rule_ = [c](std::span<const Vertex>) { return c; };
  e.rule_name_ = "const:" + std::to_string(c);
  return e;
}

EdgeColouring EdgeColouring::rule(int k, Vertex n, int colours, Rule fn, std::string rule_name) {
  if (!fn) throw std::invalid_argument("null colouring rule");
  EdgeColouring e;
  e.k_ = k;
  e.n_ = n;
  e.colours_ = colours;
  e.rule_ = std::move(fn);
  e.rule_name_ = std::move(rule_name);
  return e;
}

EdgeColouring EdgeColouring::random(int k, Vertex n, int colours, std::uint64_t seed) {
  auto fn = [colours, seed](std::span<const Vertex> tuple) -> Colour {
    std::uint64_t draw = SplitMix64::at(seed, colex_rank(tuple));
    return static_cast<Colour>(draw % static_cast<std::uint64_t>(colours));
  };
  return rule(k, n, colours, fn, "random:" + std::to_string(seed));
}

EdgeColouring EdgeColouring::from_hypergraph(const UniformHypergraph& g) {
  // Copy the edge set; the colouring must outlive the source graph.
  auto shared = std::make_shared<UniformHypergraph>(g);
  auto fn = [shared](std::span<const Vertex> tuple) -> Colour {
    return shared->has_edge(tuple) ? 0 : 1;
  };
  return rule(g.uniformity(), g.vertex_count(), 2, fn, "hypergraph");
}

Colour EdgeColouring::colour(std::span<const Vertex> tuple) const {
  if (static_cast<int>(tuple.size()) != k_)
    throw std::invalid_argument("colour query arity != uniformity");
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= n_)
      throw std::invalid_argument("colour query vertex out of range");
    if (i > 0 && tuple[i - 1] >= tuple[i])
      throw std::invalid_argument("colour query tuple not strictly increasing");
  }
  if (rule_) return rule_(tuple);
  return table_[colex_rank(tuple)];
}

Colour EdgeColouring::colour_sorted3(Vertex a, Vertex b, Vertex c) const {
  const Vertex t[3] = {a, b, c};
  return colour(std::span<const Vertex>(t, 3));
}

UniformHypergraph colour_class(const EdgeColouring& c, Colour which, std::uint64_t tuple_cap) {
  if (which < 0 || which >= c.colour_count())
    throw std::invalid_argument("colour_class: colour out of range");
  BigInt total = binomial(c.vertex_count(), c.uniformity());
  if (total > tuple_cap)
    throw std::invalid_argument("colour_class: materialization over budget");
  std::vector<Edge> edges;
  for_each_combination(c.vertex_count(), c.uniformity(), [&](std::span<const Vertex> t) {
    if (c.colour(t) == which) edges.emplace_back(t.begin(), t.end());
  });
  return UniformHypergraph(c.uniformity(), c.vertex_count(), std::move(edges));
}

BipartiteGraph::BipartiteGraph(Vertex a_begin, Vertex a_end, Vertex b_begin, Vertex b_end,
                               std::vector<std::pair<Vertex, Vertex>> edges)
    : a_begin_(a_begin), a_end_(a_end), b_begin_(b_begin), b_end_(b_end) {
  if (a_begin > a_end || b_begin > b_end)
    throw std::invalid_argument("bipartite part range inverted");
  if (std::max(a_begin, b_begin) < std::min(a_end, b_end))
    throw std::invalid_argument("bipartite parts overlap");
  rows_.assign(a_size(), Bitset(b_size()));
  cols_.assign(b_size(), Bitset(a_size()));
  for (auto [a, b] : edges) {
    if (a < a_begin_ || a >= a_end_ || b < b_begin_ || b >= b_end_)
      throw std::invalid_argument("bipartite edge outside part ranges");
    std::size_t ai = a - a_begin_, bi = b - b_begin_;
    if (!rows_[ai].test(bi)) {
      rows_[ai].set(bi);
      cols_[bi].set(ai);
      ++edge_count_;
    }
  }
}

BipartiteGraph BipartiteGraph::complete(Vertex a_begin, Vertex a_end, Vertex b_begin,
                                        Vertex b_end) {
  return from_predicate(a_begin, a_end, b_begin, b_end,
                        [](Vertex, Vertex) { return true; });
}

BipartiteGraph BipartiteGraph::from_predicate(Vertex a_begin, Vertex a_end, Vertex b_begin,
                                              Vertex b_end,
                                              const std::function<bool(Vertex, Vertex)>& pred) {
  BipartiteGraph g(a_begin, a_end, b_begin, b_end);
  for (Vertex a = a_begin; a < a_end; ++a)
    for (Vertex b = b_begin; b < b_end; ++b)
      if (pred(a, b)) {
        g.rows_[a - a_begin].set(b - b_begin);
        g.cols_[b - b_begin].set(a - a_begin);
        ++g.edge_count_;
      }
  return g;
}

bool BipartiteGraph::has_edge(Vertex a, Vertex b) const {
  if (a < a_begin_ || a >= a_end_ || b < b_begin_ || b >= b_end_) return false;
  return rows_[a - a_begin_].test(b - b_begin_);
}

std::size_t BipartiteGraph::degree(Vertex a) const { return rows_.at(a - a_begin_).count(); }

const Bitset& BipartiteGraph::row(Vertex a) const { return rows_.at(a - a_begin_); }
const Bitset& BipartiteGraph::col(Vertex b) const { return cols_.at(b - b_begin_); }

Bitset BipartiteGraph::common_neighbourhood(std::span<const Vertex> u) const {
  Bitset acc = Bitset::full(b_size());
  for (Vertex a : u) acc &= row(a);
  return acc;
}

std::uint64_t BipartiteGraph::edges_between(const Bitset& x_mask, const Bitset& y_mask) const {
  std::uint64_t e = 0;
  x_mask.for_each([&](std::size_t ai) { e += rows_[ai].intersection_count(y_mask); });
  return e;
}

std::vector<Vertex> BipartiteGraph::b_ids(const Bitset& mask) const {
  std::vector<Vertex> out;
  mask.for_each([&](std::size_t i) { out.push_back(b_begin_ + static_cast<Vertex>(i)); });
  return out;
}

std::vector<Vertex> BipartiteGraph::a_ids(const Bitset& mask) const {
  std::vector<Vertex> out;
  mask.for_each([&](std::size_t i) { out.push_back(a_begin_ + static_cast<Vertex>(i)); });
  return out;
}

Rational edge_density(const BipartiteGraph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("density: empty part");
  std::uint64_t e = 0;
  for (Vertex a : x)
    for (Vertex b : y)
      if (g.has_edge(a, b)) ++e;
  return Rational(e) / (Rational(x.size()) * Rational(y.size()));
}

TripartiteSystem::TripartiteSystem(BipartiteGraph g12, BipartiteGraph g23, BipartiteGraph g31)
    : g12_(std::move(g12)), g23_(std::move(g23)), g31_(std::move(g31)) {
  bool parts_match = g12_.b_begin() == g23_.a_begin() && g12_.b_end() == g23_.a_end() &&
                     g23_.b_begin() == g31_.a_begin() && g23_.b_end() == g31_.a_end() &&
                     g31_.b_begin() == g12_.a_begin() && g31_.b_end() == g12_.a_end();
  if (!parts_match) throw std::invalid_argument("link graph parts do not match");
}

std::uint64_t TripartiteSystem::triangle_count() const {
  std::uint64_t c = 0;
  for (Vertex v1 = v1_begin(); v1 < v1_end(); ++v1) {
    const Bitset& n31 = g31_.col(v1);
    g12_.row(v1).for_each([&](std::size_t bi) {
      Vertex v2 = v2_begin() + static_cast<Vertex>(bi);
      c += g23_.row(v2).intersection_count(n31);
    });
  }
  return c;
}

std::uint64_t TripartiteSystem::triangles_through_12(Vertex v1, Vertex v2) const {
  if (!g12_.has_edge(v1, v2)) return 0;
  return g23_.row(v2).intersection_count(g31_.col(v1));
}

namespace {

enum class TransversalMode { complete, empty };

bool check_transversal(const UniformHypergraph& g, std::span<const Vertex> s1,
                       std::span<const Vertex> s2, std::span<const Vertex> s3,
                       TransversalMode mode) {
  if (g.uniformity() != 3)
    throw std::invalid_argument("tripartite check requires a 3-uniform hypergraph");
  std::vector<Vertex> all;
  all.insert(all.end(), s1.begin(), s1.end());
  all.insert(all.end(), s2.begin(), s2.end());
  all.insert(all.end(), s3.begin(), s3.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("tripartite parts overlap");
  Vertex t[3];
  for (Vertex a : s1)
    for (Vertex b : s2)
      for (Vertex c : s3) {
        t[0] = a;
        t[1] = b;
        t[2] = c;
        std::sort(t, t + 3);
        bool edge = g.has_edge(std::span<const Vertex>(t, 3));
        if (mode == TransversalMode::complete && !edge) return false;
        if (mode == TransversalMode::empty && edge) return false;
      }
  return true;
}

}  // namespace

bool is_complete_tripartite(const UniformHypergraph& g, std::span<const Vertex> s1,
                            std::span<const Vertex> s2, std::span<const Vertex> s3) {
  return check_transversal(g, s1, s2, s3, TransversalMode::complete);
}

bool is_empty_tripartite(const UniformHypergraph& g, std::span<const Vertex> s1,
                         std::span<const Vertex> s2, std::span<const Vertex> s3) {
  return check_transversal(g, s1, s2, s3, TransversalMode::empty);
}

}  // namespace hx
