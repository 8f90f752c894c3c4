#include "hx/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "hx/parallel.hpp"

namespace hx::oracles {

namespace {

struct BudgetClock {
  explicit BudgetClock(const SearchBudget& b)
      : budget(b), start(std::chrono::steady_clock::now()) {}
  bool hit(std::uint64_t& nodes) {
    ++nodes;
    if (budget.node_cap && nodes > budget.node_cap) return true;
    if (budget.seconds_cap > 0 && (nodes & 4095) == 0) {
      auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
      if (dt.count() > budget.seconds_cap) return true;
    }
    return false;
  }
  SearchBudget budget;
  std::chrono::steady_clock::time_point start;
};

class CliqueBf {
 public:
  CliqueBf(const UniformHypergraph& h, const SearchBudget& budget) : h_(h), clock_(budget) {
    degree_.assign(static_cast<std::size_t>(h.vertex_count()), 0);
    for (const Edge& e : h.edges())
      for (Vertex v : e) ++degree_[static_cast<std::size_t>(v)];
  }

  CliqueOracle run() {
    std::vector<Vertex> current;
    grow(current, 0);
    CliqueOracle r;
    r.nodes = nodes_;
    r.exhausted = exhausted_;
    int vac = vacuous_clique_size(h_.uniformity(), h_.vertex_count());
    if (static_cast<int>(best_.size()) >= h_.uniformity()) {
      r.size = static_cast<int>(best_.size());
      r.witness = best_;
    } else {
      r.size = vac;
      r.vacuous = true;
      for (Vertex v = 0; v < vac; ++v) r.witness.push_back(v);
    }
    return r;
  }

 private:
  bool extends(const std::vector<Vertex>& current, Vertex v) const {
    int k = h_.uniformity();
    if (static_cast<int>(current.size()) < k - 1) return true;
    // every (k-1)-subset of current together with v must be an edge
    std::vector<Vertex> idx(k - 1);
    for (int i = 0; i < k - 1; ++i) idx[i] = i;
    std::vector<Vertex> tuple(k);
    while (true) {
      for (int i = 0; i < k - 1; ++i) tuple[i] = current[idx[i]];
      tuple[k - 1] = v;
      std::sort(tuple.begin(), tuple.end());
      if (!h_.has_edge(tuple)) return false;
      if (!next_combination(idx, static_cast<Vertex>(current.size()))) break;
    }
    return true;
  }

  void grow(std::vector<Vertex>& current, Vertex next) {
    if (exhausted_ || clock_.hit(nodes_)) {
      exhausted_ = true;
      return;
    }
    if (current.size() > best_.size()) best_ = current;
    Vertex n = h_.vertex_count();
    for (Vertex v = next; v < n; ++v) {
      if (current.size() + static_cast<std::size_t>(n - v) <= best_.size()) return;
      // a vertex of an m-clique lies in at least C(m-1, k-1) edges
      if (static_cast<int>(best_.size()) >= h_.uniformity() &&
          BigInt(degree_[static_cast<std::size_t>(v)]) <
              binomial(static_cast<long long>(best_.size()), h_.uniformity() - 1))
        continue;
      if (!extends(current, v)) continue;
      current.push_back(v);
      grow(current, v + 1);
      current.pop_back();
      if (exhausted_) return;
    }
  }

  const UniformHypergraph& h_;
  BudgetClock clock_;
  std::vector<std::size_t> degree_;
  std::vector<Vertex> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

CliqueOracle max_clique_bf(const UniformHypergraph& h, const SearchBudget& budget) {
  return CliqueBf(h, budget).run();
}

CliqueOracle max_independent_bf(const UniformHypergraph& h, const SearchBudget& budget) {
  return max_clique_bf(complement(h), budget);
}

namespace {

enum class MatchKind { membership, colour };

class InducedBf {
 public:
  InducedBf(MatchKind kind, const UniformHypergraph* ghost, const UniformHypergraph* gpat,
            const EdgeColouring* chost, const EdgeColouring* cpat, const SearchBudget& budget)
      : kind_(kind), ghost_(ghost), gpat_(gpat), chost_(chost), cpat_(cpat), clock_(budget) {
    t_ = kind == MatchKind::membership ? gpat_->vertex_count() : cpat_->vertex_count();
    n_ = kind == MatchKind::membership ? ghost_->vertex_count() : chost_->vertex_count();
    k_ = kind == MatchKind::membership ? ghost_->uniformity() : chost_->uniformity();
  }

  InducedCopyOracle run() {
    if (t_ > n_) throw std::invalid_argument("induced_copy_bf: pattern larger than host");
    InducedCopyOracle r;
    std::vector<Vertex> image;
    std::vector<bool> used(n_, false);
    if (assign(image, used)) r.embedding = image;
    r.nodes = nodes_;
    r.exhausted = exhausted_;
    return r;
  }

 private:
  bool consistent(const std::vector<Vertex>& image) const {
    // check all k-tuples of pattern positions involving the newest vertex
    int placed = static_cast<int>(image.size());
    if (placed < k_) return true;
    std::vector<Vertex> idx(k_ - 1);
    for (int i = 0; i < k_ - 1; ++i) idx[i] = i;
    std::vector<Vertex> ppos(k_), him(k_);
    while (true) {
      for (int i = 0; i < k_ - 1; ++i) ppos[i] = idx[i];
      ppos[k_ - 1] = placed - 1;
      for (int i = 0; i < k_; ++i) him[i] = image[ppos[i]];
      std::sort(him.begin(), him.end());
      if (kind_ == MatchKind::membership) {
        if (ghost_->has_edge(him) != gpat_->has_edge(ppos)) return false;
      } else {
        std::vector<Vertex> sorted_ppos = ppos;
        std::sort(sorted_ppos.begin(), sorted_ppos.end());
        if (chost_->colour(him) != cpat_->colour(sorted_ppos)) return false;
      }
      if (!next_combination(idx, placed - 1)) break;
    }
    return true;
  }

  bool assign(std::vector<Vertex>& image, std::vector<bool>& used) {
    if (exhausted_ || clock_.hit(nodes_)) {
      exhausted_ = true;
      return false;
    }
    if (static_cast<int>(image.size()) == t_) return true;
    for (Vertex v = 0; v < n_; ++v) {
      if (used[v]) continue;
      image.push_back(v);
      used[v] = true;
      if (consistent(image) && assign(image, used)) return true;
      image.pop_back();
      used[v] = false;
      if (exhausted_) return false;
    }
    return false;
  }

  MatchKind kind_;
  const UniformHypergraph* ghost_;
  const UniformHypergraph* gpat_;
  const EdgeColouring* chost_;
  const EdgeColouring* cpat_;
  BudgetClock clock_;
  int t_, k_;
  Vertex n_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

InducedCopyOracle induced_copy_bf(const UniformHypergraph& host, const UniformHypergraph& pattern,
                                  const SearchBudget& budget) {
  if (host.uniformity() != pattern.uniformity())
    throw std::invalid_argument("induced_copy_bf: uniformity mismatch");
  return InducedBf(MatchKind::membership, &host, &pattern, nullptr, nullptr, budget).run();
}

InducedCopyOracle induced_copy_bf(const EdgeColouring& host, const EdgeColouring& pattern,
                                  const SearchBudget& budget) {
  if (host.uniformity() != pattern.uniformity() ||
      host.colour_count() != pattern.colour_count())
    throw std::invalid_argument("induced_copy_bf: shape mismatch");
  return InducedBf(MatchKind::colour, nullptr, nullptr, &host, &pattern, budget).run();
}

KstOracle exists_kst_bf(const BipartiteGraph& g, int s, std::size_t t_target, int threads) {
  if (s < 0 || s > g.a_size()) throw std::invalid_argument("exists_kst_bf: bad s");
  KstOracle best;
  if (s == 0) {
    best.best_t = static_cast<std::size_t>(g.b_size());
    best.found = best.best_t >= t_target;
    for (Vertex b = g.b_begin(); b < g.b_end(); ++b) best.t.push_back(b);
    return best;
  }
  // common neighbourhoods by direct edge queries only; this path must stay
  // independent of the extraction module's bitset machinery
  auto common_of = [&](const std::vector<Vertex>& u) {
    std::vector<Vertex> common;
    for (Vertex b = g.b_begin(); b < g.b_end(); ++b) {
      bool all = true;
      for (Vertex a : u)
        if (!g.has_edge(a, b)) {
          all = false;
          break;
        }
      if (all) common.push_back(b);
    }
    return common;
  };
  std::uint64_t total = binomial_u64(g.a_size(), s);
  struct Chunk {
    std::size_t best_t = 0;
    std::vector<Vertex> u;
  };
  int nthreads = effective_threads(threads);
  std::size_t nchunks = std::max<std::size_t>(
      1, std::min<std::uint64_t>(static_cast<std::uint64_t>(nthreads), total));
  std::vector<Chunk> chunks(nchunks);
  parallel_ranges(nchunks, static_cast<int>(nchunks), [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      std::uint64_t lo = total * c / nchunks, hi = total * (c + 1) / nchunks;
      if (lo >= hi) continue;
      std::vector<Vertex> idx = unrank_combination_lex(g.a_size(), s, lo);
      std::vector<Vertex> u(s);
      Chunk& local = chunks[c];
      for (std::uint64_t r = lo; r < hi; ++r) {
        for (int i = 0; i < s; ++i) u[i] = g.a_begin() + idx[i];
        std::size_t common = common_of(u).size();
        if (common > local.best_t || local.u.empty()) {
          local.best_t = common;
          local.u = u;
        }
        if (r + 1 < hi) next_combination(idx, g.a_size());
      }
    }
  });
  // merge in chunk order: the winner is the lexicographically first subset
  // attaining the global maximum, independent of the chunk count
  for (const Chunk& c : chunks) {
    if (c.u.empty()) continue;
    if (c.best_t > best.best_t || best.u.empty()) {
      best.best_t = c.best_t;
      best.u = c.u;
    }
  }
  best.t = common_of(best.u);
  best.found = best.best_t >= t_target;
  return best;
}

KsssOracle exists_ksss_bf(const TripartiteSystem& sys, const UniformHypergraph& g3, int s,
                          const SearchBudget& budget) {
  if (s < 1) throw std::invalid_argument("exists_ksss_bf: s must be >= 1");
  KsssOracle result;
  if (s > sys.v1_size() || s > sys.v2_size() || s > sys.v3_size()) return result;
  BudgetClock clock(budget);

  std::vector<Vertex> s1(s), s2(s), s3(s);
  Vertex t[3];
  auto all_edges = [&](std::span<const Vertex> a, std::span<const Vertex> b,
                       std::span<const Vertex> c) {
    for (Vertex x : a)
      for (Vertex y : b)
        for (Vertex z : c) {
          t[0] = x;
          t[1] = y;
          t[2] = z;
          std::sort(t, t + 3);
          if (!g3.has_edge(std::span<const Vertex>(t, 3))) return false;
        }
    return true;
  };

  std::vector<Vertex> i1(s), i2(s), i3(s);
  for (int i = 0; i < s; ++i) i1[i] = i;
  do {
    for (int i = 0; i < s; ++i) s1[i] = sys.v1_begin() + i1[i];
    for (int i = 0; i < s; ++i) i2[i] = i;
    do {
      for (int i = 0; i < s; ++i) s2[i] = sys.v2_begin() + i2[i];
      for (int i = 0; i < s; ++i) i3[i] = i;
      do {
        if (clock.hit(result.nodes)) {
          result.exhausted = true;
          return result;
        }
        for (int i = 0; i < s; ++i) s3[i] = sys.v3_begin() + i3[i];
        if (all_edges(s1, s2, s3)) {
          result.found = true;
          result.witness = TripartiteWitness{s1, s2, s3, TripartiteKind::complete};
          return result;
        }
      } while (next_combination(i3, sys.v3_size()));
    } while (next_combination(i2, sys.v2_size()));
  } while (next_combination(i1, sys.v1_size()));
  return result;
}

namespace {

void preorder_rec(std::uint32_t remaining, int m, std::vector<int>& block_of, int block,
                  std::vector<stepup::TotalPreorder>& out) {
  if (remaining == 0) {
    stepup::TotalPreorder p;
    p.ranks = block_of;
    out.push_back(std::move(p));
    return;
  }
  // choose the next block: every nonempty subset of the remaining elements,
  // enumerated in ascending mask order for determinism
  for (std::uint32_t sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
    for (int i = 0; i < m; ++i)
      if (sub & (1u << i)) block_of[i] = block;
    preorder_rec(remaining & ~sub, m, block_of, block + 1, out);
  }
}

}  // namespace

std::vector<stepup::TotalPreorder> enumerate_preorders(int m) {
  if (m < 0 || m > 7) throw std::invalid_argument("enumerate_preorders: m out of range");
  std::vector<stepup::TotalPreorder> out;
  if (m == 0) {
    out.push_back(stepup::TotalPreorder{});
    return out;
  }
  std::vector<int> block_of(m, 0);
  preorder_rec((1u << m) - 1, m, block_of, 1, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hx::oracles
