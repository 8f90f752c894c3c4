#include "hx/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hx/constructions.hpp"
#include "hx/rng.hpp"

namespace hx::density {

DensityParams DensityParams::for_embedding(int t, const Rational& rho) {
  if (t < 3) throw std::invalid_argument("density params: t must be >= 3");
  if (!(rho > 0) || rho > 1) throw std::invalid_argument("density params: rho outside (0,1]");
  DensityParams p;
  p.t = t;
  p.rho = rho;
  p.eps = rpow(Rational(1, 2 * t), 10) * rpow(rho, 3LL * t * t);
  long long t2 = static_cast<long long>(t) * t;
  p.c_sq.resize(t + 1);
  p.eps_i_sq.resize(t + 1);
  for (int i = 0; i <= t; ++i) {
    p.c_sq[i] = rpow(rho, static_cast<long long>(i) * i) / (Rational(t) * t);
    p.eps_i_sq[i] =
        rpow(rho, 2 * t2 - static_cast<long long>(i) * i) / (4 * Rational(t2) * t2);
  }
  for (int i = 1; i <= t; ++i) {
    if (p.c_sq[i] > p.c_sq[i - 1]) throw std::logic_error("c_i not decreasing");
    if (p.eps_i_sq[i] < p.eps_i_sq[i - 1]) throw std::logic_error("eps_i not increasing");
  }
  if (p.eps_i_sq[0] < p.eps * p.eps) throw std::logic_error("eps_0 below eps");
  return p;
}

double DensityParams::c_approx(int i) const {
  return std::sqrt(static_cast<double>(c_sq[i]));
}
double DensityParams::eps_i_approx(int i) const {
  return std::sqrt(static_cast<double>(eps_i_sq[i]));
}

long long ceil_sqrt_rational(const Rational& q) {
  if (q <= 0) return 0;
  long long guess =
      static_cast<long long>(std::floor(std::sqrt(static_cast<double>(q))));
  guess = std::max(0LL, guess - 2);
  while (Rational(guess) * guess < q) ++guess;
  return guess;
}

namespace {

// lexicographic subset enumeration as sorted id lists ({0},{0,1},{0,1,2},..)
template <typename Fn>
bool for_each_subset_lex(Vertex lo, Vertex hi, std::vector<Vertex>& current, Fn&& fn) {
  for (Vertex v = current.empty() ? lo : current.back() + 1; v < hi; ++v) {
    current.push_back(v);
    if (!fn(current)) return false;
    if (!for_each_subset_lex(lo, hi, current, fn)) return false;
    current.pop_back();
  }
  return true;
}

}  // namespace

BidenseResult is_bidense(const BipartiteGraph& g, const Rational& eps, const Rational& rho,
                         BidenseMode mode, std::uint64_t seed, std::uint64_t budget) {
  BidenseResult result;
  long long na = g.a_size(), nb = g.b_size();
  if (mode == BidenseMode::exact) {
    if (na + nb >= 63 || (BigInt(1) << static_cast<unsigned>(na + nb)) > budget)
      throw std::invalid_argument("is_bidense: exact enumeration over budget");
    std::vector<Vertex> x, y;
    bool done_all = for_each_subset_lex(g.a_begin(), g.a_end(), x, [&](const std::vector<Vertex>& xs) {
      if (Rational(xs.size()) < eps * na) return true;  // keep extending
      y.clear();
      return for_each_subset_lex(g.b_begin(), g.b_end(), y, [&](const std::vector<Vertex>& ys) {
        if (Rational(ys.size()) < eps * nb) return true;
        std::uint64_t e = 0;
        for (Vertex a : xs)
          for (Vertex b : ys)
            if (g.has_edge(a, b)) ++e;
        if (Rational(e) < rho * xs.size() * ys.size()) {
          result.verdict = BidenseVerdict::violation;
          result.x = xs;
          result.y = ys;
          result.pair_density = Rational(e) / (Rational(xs.size()) * ys.size());
          return false;
        }
        return true;
      });
    });
    if (done_all) result.verdict = BidenseVerdict::dense;
    return result;
  }

  // sampled: greedy min-degree peeling plus seeded random floor-size pairs
  long long xfloor = std::max<long long>(1, static_cast<long long>(ceil_rational(eps * na)));
  long long yfloor = std::max<long long>(1, static_cast<long long>(ceil_rational(eps * nb)));
  if (xfloor > na || yfloor > nb) return result;  // no admissible pair: unknown

  auto check = [&](const std::vector<Vertex>& xs, const std::vector<Vertex>& ys) {
    std::uint64_t e = 0;
    for (Vertex a : xs) {
      const Bitset& row = g.row(a);
      for (Vertex b : ys)
        if (row.test(b - g.b_begin())) ++e;
    }
    if (Rational(e) < rho * xs.size() * ys.size()) {
      result.verdict = BidenseVerdict::violation;
      result.x = xs;
      result.y = ys;
      result.pair_density = Rational(e) / (Rational(xs.size()) * ys.size());
      return true;
    }
    return false;
  };

  std::vector<Vertex> xs, ys;
  for (Vertex a = g.a_begin(); a < g.a_end(); ++a) xs.push_back(a);
  for (Vertex b = g.b_begin(); b < g.b_end(); ++b) ys.push_back(b);
  while (true) {
    if (check(xs, ys)) return result;
    bool can_x = static_cast<long long>(xs.size()) > xfloor;
    bool can_y = static_cast<long long>(ys.size()) > yfloor;
    if (!can_x && !can_y) break;
    bool peel_x = can_x && (!can_y || xs.size() >= ys.size());
    if (peel_x) {
      std::size_t worst = 0, worst_deg = SIZE_MAX;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        std::size_t d = 0;
        for (Vertex b : ys)
          if (g.has_edge(xs[i], b)) ++d;
        if (d < worst_deg) {
          worst_deg = d;
          worst = i;
        }
      }
      xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(worst));
    } else {
      std::size_t worst = 0, worst_deg = SIZE_MAX;
      for (std::size_t i = 0; i < ys.size(); ++i) {
        std::size_t d = 0;
        for (Vertex a : xs)
          if (g.has_edge(a, ys[i])) ++d;
        if (d < worst_deg) {
          worst_deg = d;
          worst = i;
        }
      }
      ys.erase(ys.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }

  SplitMix64 rng(SplitMix64::split(seed, 0xb1d3ULL));
  for (int trial = 0; trial < 32; ++trial) {
    std::vector<Vertex> rx, ry;
    while (static_cast<long long>(rx.size()) < xfloor) {
      Vertex v = g.a_begin() + static_cast<Vertex>(rng.next_below(static_cast<std::uint64_t>(na)));
      if (std::find(rx.begin(), rx.end(), v) == rx.end()) rx.push_back(v);
    }
    while (static_cast<long long>(ry.size()) < yfloor) {
      Vertex v = g.b_begin() + static_cast<Vertex>(rng.next_below(static_cast<std::uint64_t>(nb)));
      if (std::find(ry.begin(), ry.end(), v) == ry.end()) ry.push_back(v);
    }
    std::sort(rx.begin(), rx.end());
    std::sort(ry.begin(), ry.end());
    if (check(rx, ry)) return result;
  }
  return result;  // unknown
}

BidenseResult bidense_verdict(const BipartiteGraph& g, long long x_floor, long long y_floor,
                              const Rational& rho) {
  if (g.a_size() > 26) throw std::invalid_argument("bidense_verdict: A side too large");
  BidenseResult result;
  long long na = g.a_size(), nb = g.b_size();
  x_floor = std::max<long long>(1, x_floor);
  y_floor = std::max<long long>(1, y_floor);
  if (x_floor > na || y_floor > nb) {
    result.verdict = BidenseVerdict::dense;  // vacuous: no admissible pair
    return result;
  }
  std::vector<Vertex> ybegin_ids(nb);
  for (long long i = 0; i < nb; ++i) ybegin_ids[i] = g.b_begin() + static_cast<Vertex>(i);

  std::uint64_t nmasks = std::uint64_t{1} << na;
  std::vector<int> deg(nb);
  for (std::uint64_t mask = 1; mask < nmasks; ++mask) {
    int xsize = std::popcount(mask);
    if (xsize < x_floor) continue;
    std::fill(deg.begin(), deg.end(), 0);
    for (int ai = 0; ai < na; ++ai)
      if (mask & (std::uint64_t{1} << ai))
        g.row(g.a_begin() + ai).for_each([&](std::size_t bi) { ++deg[bi]; });
    // min density over |Y| = m is attained on the m smallest degrees
    std::vector<int> order(nb);
    for (int i = 0; i < nb; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] < deg[b]; });
    std::uint64_t prefix = 0;
    for (long long m = 1; m <= nb; ++m) {
      prefix += static_cast<std::uint64_t>(deg[order[m - 1]]);
      if (m < y_floor) continue;
      if (Rational(prefix) < rho * xsize * m) {
        result.verdict = BidenseVerdict::violation;
        for (int ai = 0; ai < na; ++ai)
          if (mask & (std::uint64_t{1} << ai)) result.x.push_back(g.a_begin() + ai);
        for (long long i = 0; i < m; ++i) result.y.push_back(ybegin_ids[order[i]]);
        std::sort(result.y.begin(), result.y.end());
        result.pair_density = Rational(prefix) / (Rational(xsize) * m);
        return result;
      }
    }
  }
  result.verdict = BidenseVerdict::dense;
  return result;
}

namespace {

std::uint64_t count_pred(const TriplePredicate& pred, Vertex a, Vertex b, Vertex c) {
  Vertex t[3] = {a, b, c};
  std::sort(t, t + 3);
  return pred(t[0], t[1], t[2]) ? 1 : 0;
}

struct LinkSets {
  std::vector<Vertex> v1, v2, v3;
  std::vector<std::pair<Vertex, Vertex>> e12, e23, e31;
};

// triangle and predicate counts for explicit link edge lists
std::pair<std::uint64_t, std::uint64_t> tri_counts(const LinkSets& ls,
                                                   const TriplePredicate& pred) {
  std::vector<std::pair<Vertex, Vertex>> e31 = ls.e31;
  std::sort(e31.begin(), e31.end());
  std::uint64_t tri = 0, match = 0;
  for (auto [a, b] : ls.e12)
    for (auto [b2, c] : ls.e23) {
      if (b2 != b) continue;
      if (!std::binary_search(e31.begin(), e31.end(), std::make_pair(c, a))) continue;
      ++tri;
      match += count_pred(pred, a, b, c);
    }
  return {tri, match};
}

}  // namespace

bool recount_witness(const TriDensityWitness& w, const TriplePredicate& pred) {
  LinkSets ls{w.v1, w.v2, w.v3, w.e12, w.e23, w.e31};
  auto [tri, match] = tri_counts(ls, pred);
  return tri == w.triangles && match == w.matching;
}

TridenseResult is_tridense(Vertex n, const TriplePredicate& pred, const Rational& eps,
                           const Rational& rho, TridenseMode mode, std::uint64_t seed,
                           std::uint64_t budget) {
  TridenseResult result;
  Rational floor = eps * n * n * n;

  auto try_config = [&](const LinkSets& ls) -> bool {
    auto [tri, match] = tri_counts(ls, pred);
    ++result.configurations;
    if (Rational(tri) < floor) return false;
    if (Rational(match) < rho * tri) {
      TriDensityWitness w;
      w.v1 = ls.v1;
      w.v2 = ls.v2;
      w.v3 = ls.v3;
      w.e12 = ls.e12;
      w.e23 = ls.e23;
      w.e31 = ls.e31;
      w.triangles = tri;
      w.matching = match;
      w.eps = eps;
      w.rho = rho;
      w.meets_triangle_floor = true;
      w.violates_proportion = true;
      result.witness = w;
      return true;
    }
    return false;
  };

  auto complete_links = [&](const std::vector<Vertex>& v1, const std::vector<Vertex>& v2,
                            const std::vector<Vertex>& v3) {
    LinkSets ls;
    ls.v1 = v1;
    ls.v2 = v2;
    ls.v3 = v3;
    for (Vertex a : v1)
      for (Vertex b : v2) ls.e12.emplace_back(a, b);
    for (Vertex b : v2)
      for (Vertex c : v3) ls.e23.emplace_back(b, c);
    for (Vertex c : v3)
      for (Vertex a : v1) ls.e31.emplace_back(c, a);
    return ls;
  };

  if (mode == TridenseMode::exact) {
    if (n > 9) throw std::invalid_argument("is_tridense: exact mode limited to n <= 9");
    std::uint64_t assignments = 1;
    for (Vertex i = 0; i < n; ++i) assignments *= 4;
    std::uint64_t subset_work = 0;
    for (std::uint64_t code = 0; code < assignments; ++code) {
      std::vector<Vertex> v1, v2, v3;
      std::uint64_t c = code;
      for (Vertex i = 0; i < n; ++i, c /= 4) {
        switch (c % 4) {
          case 1: v1.push_back(i); break;
          case 2: v2.push_back(i); break;
          case 3: v3.push_back(i); break;
          default: break;
        }
      }
      if (v1.empty() || v2.empty() || v3.empty()) continue;
      LinkSets complete = complete_links(v1, v2, v3);
      if (try_config(complete)) return result;
      // full link-subset sweep for small products, budget permitting
      std::size_t bits = complete.e12.size() + complete.e23.size() + complete.e31.size();
      if (bits <= 14) {
        std::uint64_t combos = std::uint64_t{1} << bits;
        if (subset_work + combos <= budget) {
          subset_work += combos;
          for (std::uint64_t m = 0; m < combos; ++m) {
            LinkSets ls;
            ls.v1 = v1;
            ls.v2 = v2;
            ls.v3 = v3;
            std::size_t bit = 0;
            for (auto& e : complete.e12) {
              if (m & (std::uint64_t{1} << bit)) ls.e12.push_back(e);
              ++bit;
            }
            for (auto& e : complete.e23) {
              if (m & (std::uint64_t{1} << bit)) ls.e23.push_back(e);
              ++bit;
            }
            for (auto& e : complete.e31) {
              if (m & (std::uint64_t{1} << bit)) ls.e31.push_back(e);
              ++bit;
            }
            if (try_config(ls)) return result;
          }
        }
      }
    }
    result.dense = true;  // dense over the enumerated restricted family
    return result;
  }

  // sampled mode
  std::uint64_t tries = std::min<std::uint64_t>(budget, 512);
  for (std::uint64_t trial = 0; trial < tries; ++trial) {
    std::uint64_t s = SplitMix64::split(seed, trial);
    SplitMix64 rng(s);
    std::vector<Vertex> v1, v2, v3;
    for (Vertex i = 0; i < n; ++i) {
      switch (rng.next_below(4)) {
        case 1: v1.push_back(i); break;
        case 2: v2.push_back(i); break;
        case 3: v3.push_back(i); break;
        default: break;
      }
    }
    if (v1.empty() || v2.empty() || v3.empty()) continue;
    LinkSets ls;
    if (trial % 2 == 0) {
      ls = complete_links(v1, v2, v3);
    } else {
      // links induced from a seeded auxiliary graph
      UniformHypergraph aux =
          constructions::random_graph(n, 0.25 + 0.25 * static_cast<double>(trial % 3),
                                      SplitMix64::split(seed, trial ^ 0xa0a0ULL));
      ls.v1 = v1;
      ls.v2 = v2;
      ls.v3 = v3;
      auto aux_edge = [&](Vertex x, Vertex y) {
        Vertex e[2] = {std::min(x, y), std::max(x, y)};
        return aux.has_edge(std::span<const Vertex>(e, 2));
      };
      for (Vertex a : v1)
        for (Vertex b : v2)
          if (aux_edge(a, b)) ls.e12.emplace_back(a, b);
      for (Vertex b : v2)
        for (Vertex c : v3)
          if (aux_edge(b, c)) ls.e23.emplace_back(b, c);
      for (Vertex c : v3)
        for (Vertex a : v1)
          if (aux_edge(c, a)) ls.e31.emplace_back(c, a);
    }
    if (try_config(ls)) return result;
  }
  return result;  // unknown: no witness, dense stays false
}

LemmaParams lemma_params(int t, const Rational& rho) {
  if (t < 3) throw std::invalid_argument("lemma_params: t must be >= 3");
  if (!(rho > 0) || rho > 1) throw std::invalid_argument("lemma_params: rho outside (0,1]");
  LemmaParams p;
  long long e = 3LL * t * t;
  p.eps = rpow(Rational(1, 2 * t), 10) * rpow(rho, e);
  p.n_min = ceil_rational(rpow(Rational(2 * t), 10) * rpow(rho, -e));
  return p;
}

TheoremParams theorem_params(int t, double n) {
  if (t < 3) throw std::invalid_argument("theorem_params: t must be >= 3");
  if (!(n > 1.0)) throw std::invalid_argument("theorem_params: need n > 1");
  TheoremParams p;
  long long t2 = static_cast<long long>(t) * t;
  p.delta_h = Rational(1, 55 * t2);
  double logn = std::log(n);
  // the text's positive exponent contradicts its own rho <= 1/8 use; the
  // negative exponent is adopted
  p.rho = std::pow(logn, -1.0 / (27.0 * static_cast<double>(t2)));
  p.eps = std::pow(2.0 * t, -10.0) * std::pow(p.rho, 3.0 * static_cast<double>(t2));
  double d = static_cast<double>(p.delta_h);
  p.s = static_cast<long long>(std::floor(std::pow(logn, 0.5 + d)));
  double s_real = std::pow(logn, 0.5 + d);
  p.term1 = 1024.0 / (p.eps * p.eps) * std::pow(s_real, 1.5);
  p.term2 = 32.0 * p.rho * s_real * s_real;
  p.term3 = 64.0 * s_real / p.eps;
  p.rho_below_one = p.rho < 1.0;
  p.rho_at_most_eighth = p.rho <= 0.125;
  return p;
}

// ---------------------------------------------------------------------------
// embedding

namespace {

struct SubViolation {
  std::vector<Vertex> yj, yk;
  std::uint64_t edges = 0;
};

// exact dense/violation verdict on an ad-hoc bipartite subgraph given by
// rows over global ids; enumerates the X side (<= 18), minimizing Y greedily
// per size. The scan prefers the largest violating pair (largest X, then
// largest Y): any pair above the floors certifies the violation, and large
// ones convert into richer tripartite systems downstream.
std::optional<SubViolation> sub_violation_exact(const std::vector<Vertex>& xs,
                                                const std::vector<Vertex>& ys,
                                                const std::vector<Bitset>& xrows,
                                                long long xfloor, long long yfloor,
                                                const Rational& rho_pow) {
  int na = static_cast<int>(xs.size()), nb = static_cast<int>(ys.size());
  if (xfloor > na || yfloor > nb) return std::nullopt;  // vacuously dense
  std::vector<int> deg(nb);
  std::vector<int> order(nb);
  std::vector<Vertex> pos;
  std::optional<SubViolation> found;
  for (int xsize = na; xsize >= xfloor && !found; --xsize) {
    for_each_combination(na, xsize, [&](std::span<const Vertex> sel) {
      if (found) return false;
      std::fill(deg.begin(), deg.end(), 0);
      for (Vertex ai : sel)
        for (int bi = 0; bi < nb; ++bi)
          if (xrows[static_cast<std::size_t>(ai)].test(static_cast<std::size_t>(ys[bi])))
            ++deg[bi];
      for (int i = 0; i < nb; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return deg[a] < deg[b]; });
      std::vector<std::uint64_t> prefix(nb + 1, 0);
      for (int m = 1; m <= nb; ++m)
        prefix[m] = prefix[m - 1] + static_cast<std::uint64_t>(deg[order[m - 1]]);
      for (long long m = nb; m >= yfloor; --m) {
        if (Rational(prefix[m]) < rho_pow * xsize * m) {
          SubViolation v;
          for (Vertex ai : sel) v.yj.push_back(xs[ai]);
          for (long long i = 0; i < m; ++i) v.yk.push_back(ys[order[i]]);
          std::sort(v.yk.begin(), v.yk.end());
          v.edges = prefix[m];
          found = v;
          return false;
        }
      }
      return true;
    });
  }
  return found;
}

std::uint64_t edges_of_subset(const std::vector<Vertex>& xsub, const std::vector<Vertex>& xs,
                              const std::vector<Bitset>& xrows, const Bitset& ymask) {
  std::uint64_t e = 0;
  for (Vertex x : xsub) {
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    e += xrows[static_cast<std::size_t>(it - xs.begin())].intersection_count(ymask);
  }
  return e;
}

std::optional<SubViolation> sub_violation_sampled(const std::vector<Vertex>& xs,
                                                  const std::vector<Vertex>& ys,
                                                  const std::vector<Bitset>& xrows, Vertex n,
                                                  long long xfloor, long long yfloor,
                                                  const Rational& rho_pow, std::uint64_t seed) {
  if (xfloor > static_cast<long long>(xs.size()) || yfloor > static_cast<long long>(ys.size()))
    return std::nullopt;
  auto test = [&](const std::vector<Vertex>& xsub, const std::vector<Vertex>& ysub)
      -> std::optional<SubViolation> {
    Bitset ymask(static_cast<std::size_t>(n));
    for (Vertex y : ysub) ymask.set(static_cast<std::size_t>(y));
    std::uint64_t e = edges_of_subset(xsub, xs, xrows, ymask);
    if (Rational(e) < rho_pow * xsub.size() * ysub.size()) {
      SubViolation v;
      v.yj = xsub;
      v.yk = ysub;
      v.edges = e;
      return v;
    }
    return std::nullopt;
  };

  // peel: repeatedly drop the min-degree vertex from the larger side,
  // keeping both degree arrays incremental so a pass costs O(|xs| |ys|)
  {
    std::vector<Vertex> px = xs, py = ys;
    std::vector<std::size_t> rowidx(px.size());
    for (std::size_t i = 0; i < px.size(); ++i)
      rowidx[i] = static_cast<std::size_t>(
          std::lower_bound(xs.begin(), xs.end(), px[i]) - xs.begin());
    Bitset ymask(static_cast<std::size_t>(n));
    for (Vertex y : py) ymask.set(static_cast<std::size_t>(y));
    std::vector<std::size_t> degx(px.size()), degy(py.size());
    std::uint64_t edges = 0;
    for (std::size_t i = 0; i < px.size(); ++i) {
      degx[i] = xrows[rowidx[i]].intersection_count(ymask);
      edges += degx[i];
    }
    for (std::size_t j = 0; j < py.size(); ++j) {
      std::size_t d = 0;
      for (std::size_t i = 0; i < px.size(); ++i)
        if (xrows[rowidx[i]].test(static_cast<std::size_t>(py[j]))) ++d;
      degy[j] = d;
    }
    while (true) {
      if (static_cast<long long>(px.size()) >= xfloor &&
          static_cast<long long>(py.size()) >= yfloor &&
          Rational(edges) < rho_pow * px.size() * py.size()) {
        SubViolation v;  // px and py stay ascending under erase
        v.yj = px;
        v.yk = py;
        v.edges = edges;
        return v;
      }
      bool can_x = static_cast<long long>(px.size()) > xfloor;
      bool can_y = static_cast<long long>(py.size()) > yfloor;
      if (!can_x && !can_y) break;
      if (can_x && (!can_y || px.size() >= py.size())) {
        std::size_t worst = static_cast<std::size_t>(
            std::min_element(degx.begin(), degx.end()) - degx.begin());
        edges -= degx[worst];
        for (std::size_t j = 0; j < py.size(); ++j)
          if (xrows[rowidx[worst]].test(static_cast<std::size_t>(py[j]))) --degy[j];
        px.erase(px.begin() + static_cast<std::ptrdiff_t>(worst));
        rowidx.erase(rowidx.begin() + static_cast<std::ptrdiff_t>(worst));
        degx.erase(degx.begin() + static_cast<std::ptrdiff_t>(worst));
      } else {
        std::size_t worst = static_cast<std::size_t>(
            std::min_element(degy.begin(), degy.end()) - degy.begin());
        edges -= degy[worst];
        for (std::size_t i = 0; i < px.size(); ++i)
          if (xrows[rowidx[i]].test(static_cast<std::size_t>(py[worst]))) --degx[i];
        ymask.reset(static_cast<std::size_t>(py[worst]));
        py.erase(py.begin() + static_cast<std::ptrdiff_t>(worst));
        degy.erase(degy.begin() + static_cast<std::ptrdiff_t>(worst));
      }
    }
  }

  SplitMix64 rng(seed);
  for (int trial = 0; trial < 16; ++trial) {
    std::vector<Vertex> rx, ry;
    while (static_cast<long long>(rx.size()) < xfloor) {
      Vertex v = xs[rng.next_below(xs.size())];
      if (std::find(rx.begin(), rx.end(), v) == rx.end()) rx.push_back(v);
    }
    while (static_cast<long long>(ry.size()) < yfloor) {
      Vertex v = ys[rng.next_below(ys.size())];
      if (std::find(ry.begin(), ry.end(), v) == ry.end()) ry.push_back(v);
    }
    std::sort(rx.begin(), rx.end());
    std::sort(ry.begin(), ry.end());
    if (auto v = test(rx, ry)) return v;
  }
  return std::nullopt;
}

class Embedder {
 public:
  Embedder(const EdgeColouring& target, const EdgeColouring& host, const Rational& rho,
           bool assert_invariants, std::uint64_t seed, bool want_trace)
      : h_(target), g_(host), rho_(rho), assert_(assert_invariants), seed_(seed),
        trace_(want_trace) {
    if (h_.uniformity() != 3 || g_.uniformity() != 3)
      throw std::invalid_argument("embed: colourings must be 3-uniform");
    if (h_.colour_count() != g_.colour_count())
      throw std::invalid_argument("embed: colour count mismatch between target and host");
    t_ = h_.vertex_count();
    n_ = g_.vertex_count();
    if (t_ < 3) throw std::invalid_argument("embed: target needs at least 3 vertices");
    if (n_ < t_) throw std::invalid_argument("embed: host smaller than target");
    params_ = DensityParams::for_embedding(t_, rho_);
  }

  EmbedResult run() {
    init();
    for (int placed = 0; placed < t_; ++placed) {
      if (!place_next(placed)) return out_;
    }
    out_.embedding = images_;
    out_.verified = verify_embedding(h_, g_, images_);
    if (!out_.verified) throw std::logic_error("embed: produced embedding fails verification");
    return out_;
  }

 private:
  Colour host_colour(Vertex a, Vertex b, Vertex c) {
    Vertex t[3] = {a, b, c};
    std::sort(t, t + 3);
    ++out_.stats.colour_queries;
    return g_.colour(std::span<const Vertex>(t, 3));
  }
  Colour target_colour(int a, int b, int c) const {
    Vertex t[3] = {static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1),
                   static_cast<Vertex>(c - 1)};
    std::sort(t, t + 3);
    return h_.colour(std::span<const Vertex>(t, 3));
  }

  int pidx(int j, int k) const { return (j - 1) * t_ + (k - 1); }

  void init() {
    Vertex m = n_ / t_;
    u_.assign(t_ + 1, Bitset(static_cast<std::size_t>(n_)));
    for (int j = 1; j <= t_; ++j)
      for (Vertex v = (j - 1) * m; v < j * m; ++v) u_[j].set(static_cast<std::size_t>(v));
    rows_.assign(static_cast<std::size_t>(t_) * t_, {});
    for (int j = 1; j <= t_; ++j)
      for (int k = j + 1; k <= t_; ++k) {
        auto& rows = rows_[pidx(j, k)];
        rows.assign(static_cast<std::size_t>(n_), Bitset());
        u_[j].for_each([&](std::size_t x) { rows[x] = u_[k]; });
      }
    if (trace_) {
      std::ostringstream os;
      os << "init t=" << t_ << " n=" << n_ << " block=" << m
         << " eps=" << static_cast<double>(params_.eps);
      out_.trace.push_back(os.str());
    }
  }

  // survivors of U_j adjacent to w in the (i+1, j) link graph
  const Bitset& neighbourhood(int i1, int j, Vertex w) const {
    return rows_[pidx(std::min(i1, j), std::max(i1, j))][static_cast<std::size_t>(w)];
  }

  struct PairCheck {
    bool ok = false;
    SubViolation violation;
    std::uint64_t yj_size = 0, yk_size = 0;
  };

  // H_jk(w): edges xy of G_jk between U_j(w) and U_k(w) whose host colour
  // with w matches chi_H(i+1, j, k)
  void build_hjk(int step, int j, int k, Vertex w, std::vector<Vertex>& xs,
                 std::vector<Vertex>& ys, std::vector<Bitset>& hrows) {
    const Bitset& uj_w = neighbourhood(step, j, w);
    const Bitset& uk_w = neighbourhood(step, k, w);
    Colour want = target_colour(step, j, k);
    xs = uj_w.to_vector();
    ys = uk_w.to_vector();
    hrows.assign(xs.size(), Bitset(static_cast<std::size_t>(n_)));
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      Bitset filtered(static_cast<std::size_t>(n_));
      (rows_[pidx(j, k)][static_cast<std::size_t>(xs[xi])] & uk_w).for_each([&](std::size_t y) {
        if (host_colour(w, xs[xi], static_cast<Vertex>(y)) == want) filtered.set(y);
      });
      hrows[xi] = std::move(filtered);
    }
  }

  std::optional<SubViolation> pair_violation(int step, int j, int k, Vertex w) {
    std::vector<Vertex> xs, ys;
    std::vector<Bitset> hrows;
    build_hjk(step, j, k, w, xs, ys, hrows);
    long long xfloor = std::max<long long>(
        1, ceil_sqrt_rational(params_.eps_i_sq[step] * BigInt(xs.size()) * BigInt(xs.size())));
    long long yfloor = std::max<long long>(
        1, ceil_sqrt_rational(params_.eps_i_sq[step] * BigInt(ys.size()) * BigInt(ys.size())));
    Rational rho_pow = rpow(rho_, step);
    if (xs.size() <= 18 && ys.size() <= 18)
      return sub_violation_exact(xs, ys, hrows, xfloor, yfloor, rho_pow);
    std::uint64_t step_seed = SplitMix64::split(seed_, 0x1000u * step + pidx(j, k));
    return sub_violation_sampled(xs, ys, hrows, n_, xfloor, yfloor, rho_pow, step_seed);
  }

  bool place_next(int placed) {
    int step = placed + 1;  // target vertex being placed, 1-based
    // W filter: candidates with rich neighbourhoods in every later part
    Rational rho_i = rpow(rho_, placed);
    std::vector<Vertex> w_set;
    u_[step].for_each([&](std::size_t wi) {
      Vertex w = static_cast<Vertex>(wi);
      for (int j = step + 1; j <= t_; ++j) {
        std::uint64_t deg = neighbourhood(step, j, w).count();
        if (Rational(deg) < rho_i * u_[j].count()) return;
      }
      w_set.push_back(w);
    });
    if (trace_) {
      std::ostringstream os;
      os << "step=" << step << " |W|=" << w_set.size();
      for (int j = step + 1; j <= t_; ++j) {
        bool size_ok =
            Rational(BigInt(u_[j].count()) * BigInt(u_[j].count())) >=
            params_.c_sq[placed] * BigInt(n_) * BigInt(n_);
        os << " |U" << j << "|=" << u_[j].count() << (size_ok ? "" : "(below c_i)");
      }
      out_.trace.push_back(os.str());
    }

    // family of per-pair bi-density failures, attributed to first failure
    std::vector<std::vector<FailureCertificate::Entry>> fams(
        static_cast<std::size_t>(t_) * t_);
    for (Vertex w : w_set) {
      ++out_.stats.candidates_tested;
      bool good = true;
      for (int j = step + 1; j <= t_ && good; ++j)
        for (int k = j + 1; k <= t_ && good; ++k) {
          if (auto viol = pair_violation(step, j, k, w)) {
            FailureCertificate::Entry e;
            e.w = w;
            e.y_j = viol->yj;
            e.y_k = viol->yk;
            e.h_edges = viol->edges;
            fams[pidx(j, k)].push_back(std::move(e));
            good = false;
          }
        }
      if (good) {
        commit(step, w);
        return true;
      }
    }

    // no good candidate: certificate for the pair with the largest family
    FailureCertificate cert;
    cert.step = step;
    cert.images = images_;
    cert.w_set = w_set;
    std::size_t best = 0;
    for (int j = step + 1; j <= t_; ++j)
      for (int k = j + 1; k <= t_; ++k)
        if (fams[pidx(j, k)].size() > best) {
          best = fams[pidx(j, k)].size();
          cert.j = j;
          cert.k = k;
        }
    if (cert.j != 0) cert.family = fams[pidx(cert.j, cert.k)];
    out_.certificate = std::move(cert);
    if (trace_)
      out_.trace.push_back("fail step=" + std::to_string(step) +
                           " family=" + std::to_string(best));
    return false;
  }

  void commit(int step, Vertex w) {
    images_.push_back(w);
    if (trace_)
      out_.trace.push_back("place v" + std::to_string(step) + " -> " + std::to_string(w));
    // shrink survivor sets and rebuild colour-filtered link graphs
    std::vector<Bitset> new_u = u_;
    for (int j = step + 1; j <= t_; ++j) new_u[j] = neighbourhood(step, j, w);
    for (int j = step + 1; j <= t_; ++j)
      for (int k = j + 1; k <= t_; ++k) {
        Colour want = target_colour(step, j, k);
        auto& rows = rows_[pidx(j, k)];
        std::vector<Bitset> filtered(static_cast<std::size_t>(n_), Bitset());
        new_u[j].for_each([&](std::size_t x) {
          Bitset row = rows[x] & new_u[k];
          Bitset keep(static_cast<std::size_t>(n_));
          row.for_each([&](std::size_t y) {
            if (host_colour(w, static_cast<Vertex>(x), static_cast<Vertex>(y)) == want)
              keep.set(y);
          });
          filtered[x] = keep;
        });
        rows = std::move(filtered);
      }
    u_ = std::move(new_u);
    if (assert_) assert_condition3(step);
  }

  // strict colour-consistency part of the inductive invariant
  void assert_condition3(int placed) {
    for (int j = placed + 1; j <= t_; ++j) {
      u_[j].for_each([&](std::size_t x) {
        for (int h1 = 1; h1 <= placed; ++h1)
          for (int h2 = h1 + 1; h2 <= placed; ++h2)
            if (host_colour(images_[h1 - 1], images_[h2 - 1], static_cast<Vertex>(x)) !=
                target_colour(h1, h2, j))
              throw std::logic_error("embed invariant: survivor colour mismatch");
      });
      for (int k = j + 1; k <= t_; ++k) {
        u_[j].for_each([&](std::size_t x) {
          rows_[pidx(j, k)][x].for_each([&](std::size_t y) {
            for (int h = 1; h <= placed; ++h)
              if (host_colour(images_[h - 1], static_cast<Vertex>(x), static_cast<Vertex>(y)) !=
                  target_colour(h, j, k))
                throw std::logic_error("embed invariant: link edge colour mismatch");
          });
        });
      }
    }
  }

  const EdgeColouring& h_;
  const EdgeColouring& g_;
  Rational rho_;
  bool assert_;
  std::uint64_t seed_;
  bool trace_;
  int t_ = 0;
  Vertex n_ = 0;
  DensityParams params_;
  std::vector<Bitset> u_;                   // u_[j], j = 1..t
  std::vector<std::vector<Bitset>> rows_;   // rows_[pidx(j,k)][global x]
  std::vector<Vertex> images_;
  EmbedResult out_;
};

}  // namespace

EmbedResult embed(const EdgeColouring& target, const EdgeColouring& host, const Rational& rho,
                  bool assert_invariants, std::uint64_t seed, bool want_trace) {
  return Embedder(target, host, rho, assert_invariants, seed, want_trace).run();
}

bool verify_embedding(const EdgeColouring& target, const EdgeColouring& host,
                      std::span<const Vertex> images) {
  int t = target.vertex_count();
  if (static_cast<int>(images.size()) != t) return false;
  std::vector<Vertex> sorted(images.begin(), images.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  bool ok = true;
  for_each_combination(t, 3, [&](std::span<const Vertex> pos) {
    Vertex im[3] = {images[pos[0]], images[pos[1]], images[pos[2]]};
    std::sort(im, im + 3);
    if (host.colour(std::span<const Vertex>(im, 3)) != target.colour(pos)) ok = false;
  });
  return ok;
}

namespace {

// closed-form survivor sets after placing `images`: x survives in U_j iff it
// lies in the j-th block and matches the target colour with every placed pair
bool survives(const EdgeColouring& target, const EdgeColouring& host,
              std::span<const Vertex> images, int j, Vertex x) {
  for (std::size_t h1 = 0; h1 < images.size(); ++h1)
    for (std::size_t h2 = h1 + 1; h2 < images.size(); ++h2) {
      Vertex tg[3] = {static_cast<Vertex>(h1), static_cast<Vertex>(h2),
                      static_cast<Vertex>(j - 1)};
      Vertex hg[3] = {images[h1], images[h2], x};
      std::sort(hg, hg + 3);
      if (host.colour(std::span<const Vertex>(hg, 3)) !=
          target.colour(std::span<const Vertex>(tg, 3)))
        return false;
    }
  return true;
}

bool adjacent_after(const EdgeColouring& target, const EdgeColouring& host,
                    std::span<const Vertex> images, int step, int j, Vertex w, Vertex x) {
  for (std::size_t h = 0; h < images.size(); ++h) {
    Vertex tg[3] = {static_cast<Vertex>(h), static_cast<Vertex>(step - 1),
                    static_cast<Vertex>(j - 1)};
    std::sort(tg, tg + 3);
    Vertex hg[3] = {images[h], w, x};
    std::sort(hg, hg + 3);
    if (host.colour(std::span<const Vertex>(hg, 3)) !=
        target.colour(std::span<const Vertex>(tg, 3)))
      return false;
  }
  return true;
}

}  // namespace

bool verify_failure_certificate(const EdgeColouring& target, const EdgeColouring& host,
                                const Rational& rho, const FailureCertificate& cert,
                                std::string* why) {
  auto reject = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  int t = target.vertex_count();
  Vertex n = host.vertex_count();
  Vertex m = n / t;
  int step = cert.step;
  if (step < 1 || step > t) return reject("step out of range");
  if (static_cast<int>(cert.images.size()) != step - 1) return reject("image count != step-1");
  DensityParams params = DensityParams::for_embedding(t, rho);

  auto block_of = [&](int j) {
    std::vector<Vertex> ids;
    for (Vertex v = (j - 1) * m; v < j * m; ++v) ids.push_back(v);
    return ids;
  };

  // recompute U_j for the current stage
  auto u_of = [&](int j) {
    std::vector<Vertex> out;
    for (Vertex x : block_of(j))
      if (survives(target, host, cert.images, j, x)) out.push_back(x);
    return out;
  };
  // images themselves must be survivors of their own steps
  for (int h = 1; h < step; ++h) {
    Vertex fh = cert.images[h - 1];
    if (fh < (h - 1) * m || fh >= h * m) return reject("image outside its block");
    std::span<const Vertex> prior(cert.images.data(), static_cast<std::size_t>(h - 1));
    if (!survives(target, host, prior, h, fh)) return reject("image not a survivor");
  }

  std::vector<Vertex> u_step = u_of(step);
  std::vector<std::vector<Vertex>> u_later(static_cast<std::size_t>(t) + 1);
  for (int j = step + 1; j <= t; ++j) u_later[j] = u_of(j);

  // recompute W
  Rational rho_i = rpow(rho, step - 1);
  std::vector<Vertex> w_expected;
  for (Vertex w : u_step) {
    bool ok = true;
    for (int j = step + 1; j <= t && ok; ++j) {
      std::size_t deg = 0;
      for (Vertex x : u_later[j])
        if (adjacent_after(target, host, cert.images, step, j, w, x)) ++deg;
      if (Rational(deg) < rho_i * u_later[j].size()) ok = false;
    }
    if (ok) w_expected.push_back(w);
  }
  std::vector<Vertex> w_claimed = cert.w_set;
  std::sort(w_claimed.begin(), w_claimed.end());
  if (w_claimed != w_expected) return reject("W set does not recompute");

  if (step == t || cert.j == 0) {
    if (!w_expected.empty()) return reject("no-pair certificate with nonempty W");
    return cert.family.empty() ? true : reject("no-pair certificate with family");
  }
  int j = cert.j, k = cert.k;
  if (!(step + 1 <= j && j < k && k <= t)) return reject("pair out of range");

  // the pigeonhole claim |W_jk| >= |W| / (2 t^2)
  if (BigInt(cert.family.size()) * 2 * t * t < BigInt(w_expected.size()))
    return reject("family too small for the pigeonhole claim");

  std::vector<Vertex> seen;
  for (const auto& entry : cert.family) {
    if (std::find(w_expected.begin(), w_expected.end(), entry.w) == w_expected.end())
      return reject("family member not in W");
    if (std::find(seen.begin(), seen.end(), entry.w) != seen.end())
      return reject("family member repeated");
    seen.push_back(entry.w);

    auto uw = [&](int part) {
      std::vector<Vertex> out;
      for (Vertex x : u_later[part])
        if (adjacent_after(target, host, cert.images, step, part, entry.w, x)) out.push_back(x);
      return out;
    };
    std::vector<Vertex> uj = uw(j), uk = uw(k);
    auto subset_ok = [&](const std::vector<Vertex>& y, const std::vector<Vertex>& u) {
      for (Vertex v : y)
        if (!std::binary_search(u.begin(), u.end(), v)) return false;
      return true;
    };
    if (!subset_ok(entry.y_j, uj) || !subset_ok(entry.y_k, uk))
      return reject("Y set not inside U(w)");
    if (entry.y_j.empty() || entry.y_k.empty()) return reject("empty Y set");
    // |Y| >= eps_step |U(w)| via squares
    if (Rational(BigInt(entry.y_j.size()) * BigInt(entry.y_j.size())) <
        params.eps_i_sq[step] * BigInt(uj.size()) * BigInt(uj.size()))
      return reject("Y_j below the eps floor");
    if (Rational(BigInt(entry.y_k.size()) * BigInt(entry.y_k.size())) <
        params.eps_i_sq[step] * BigInt(uk.size()) * BigInt(uk.size()))
      return reject("Y_k below the eps floor");

    // recount H_jk(w) edges between Y_j and Y_k
    Colour want = [&] {
      Vertex tg[3] = {static_cast<Vertex>(step - 1), static_cast<Vertex>(j - 1),
                      static_cast<Vertex>(k - 1)};
      return target.colour(std::span<const Vertex>(tg, 3));
    }();
    std::uint64_t edges = 0;
    for (Vertex x : entry.y_j)
      for (Vertex y : entry.y_k) {
        bool in_gjk = true;
        for (std::size_t h = 0; h < cert.images.size() && in_gjk; ++h) {
          Vertex tg[3] = {static_cast<Vertex>(h), static_cast<Vertex>(j - 1),
                          static_cast<Vertex>(k - 1)};
          std::sort(tg, tg + 3);
          Vertex hg[3] = {cert.images[h], x, y};
          std::sort(hg, hg + 3);
          if (host.colour(std::span<const Vertex>(hg, 3)) !=
              target.colour(std::span<const Vertex>(tg, 3)))
            in_gjk = false;
        }
        if (!in_gjk) continue;
        Vertex hg[3] = {entry.w, x, y};
        std::sort(hg, hg + 3);
        if (host.colour(std::span<const Vertex>(hg, 3)) == want) ++edges;
      }
    if (edges != entry.h_edges) return reject("H_jk edge count does not recompute");
    if (!(Rational(edges) < rpow(rho, step) * entry.y_j.size() * entry.y_k.size()))
      return reject("claimed violation is not a violation");
  }
  return true;
}

std::string certificate_to_text(const FailureCertificate& cert) {
  std::ostringstream os;
  os << "certificate step=" << cert.step << " pair=" << cert.j << "," << cert.k << "\n";
  os << "images";
  for (Vertex v : cert.images) os << " " << v;
  os << "\n";
  os << "W";
  for (Vertex v : cert.w_set) os << " " << v;
  os << "\n";
  for (const auto& e : cert.family) {
    os << "entry w=" << e.w << " edges=" << e.h_edges << "\n  yj";
    for (Vertex v : e.y_j) os << " " << v;
    os << "\n  yk";
    for (Vertex v : e.y_k) os << " " << v;
    os << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// dichotomy

DichotomyResult dichotomy(const EdgeColouring& host, const EdgeColouring& target,
                          const DichotomyParams& params,
                          const extraction::KsssOverrides& overrides, std::uint64_t seed,
                          int threads) {
  if (host.colour_count() != 2 || target.colour_count() != 2)
    throw std::invalid_argument("dichotomy: expects 2-colourings");
  DichotomyResult r;
  EmbedResult er = embed(target, host, params.rho, false, seed);
  r.log.push_back("embed " + std::string(er.embedding ? "succeeded" : "failed"));
  if (er.embedding) {
    if (!er.verified) throw std::logic_error("dichotomy: unverified embedding");
    r.outcome = DichotomyOutcome::induced_copy;
    r.induced_copy = er.embedding;
    return r;
  }
  r.certificate = er.certificate;
  const FailureCertificate& cert = *er.certificate;

  // convert the certificate into the proof's tripartite system
  int t = target.vertex_count();
  Vertex m = host.vertex_count() / t;
  std::vector<Vertex> part1, part2, part3;
  for (const auto& e : cert.family) part1.push_back(e.w);
  std::sort(part1.begin(), part1.end());
  if (cert.j != 0) {
    for (Vertex x = (cert.j - 1) * m; x < cert.j * m; ++x)
      if (survives(target, host, cert.images, cert.j, x)) part2.push_back(x);
    for (Vertex x = (cert.k - 1) * m; x < cert.k * m; ++x)
      if (survives(target, host, cert.images, cert.k, x)) part3.push_back(x);
  }
  if (part1.empty() || part2.empty() || part3.empty()) {
    r.pipeline.failed_stage = "certificate-conversion";
    r.pipeline.failure_detail = "degenerate certificate system (empty part)";
    r.log.push_back("pipeline skipped: " + r.pipeline.failure_detail);
    r.outcome = DichotomyOutcome::double_failure;
    return r;
  }

  Colour scarce = [&] {
    Vertex tg[3] = {static_cast<Vertex>(cert.step - 1), static_cast<Vertex>(cert.j - 1),
                    static_cast<Vertex>(cert.k - 1)};
    return target.colour(std::span<const Vertex>(tg, 3));
  }();
  Colour dense_side = 1 - scarce;

  Vertex n1 = static_cast<Vertex>(part1.size());
  Vertex n2 = static_cast<Vertex>(part2.size());
  Vertex n3 = static_cast<Vertex>(part3.size());
  auto index_of = [](const std::vector<Vertex>& set, Vertex v) {
    return static_cast<Vertex>(std::lower_bound(set.begin(), set.end(), v) - set.begin());
  };

  std::vector<std::pair<Vertex, Vertex>> e12, e23, e31;
  for (std::size_t wi = 0; wi < cert.family.size(); ++wi) {
    const auto& entry = cert.family[wi];
    Vertex w_local = index_of(part1, entry.w);
    for (Vertex y : entry.y_j) e12.emplace_back(w_local, n1 + index_of(part2, y));
    for (Vertex y : entry.y_k) e31.emplace_back(n1 + n2 + index_of(part3, y), w_local);
  }
  std::sort(e12.begin(), e12.end());
  e12.erase(std::unique(e12.begin(), e12.end()), e12.end());
  std::sort(e31.begin(), e31.end());
  e31.erase(std::unique(e31.begin(), e31.end()), e31.end());
  // G_jk edges between the survivor sets
  for (Vertex x : part2)
    for (Vertex y : part3) {
      bool in_gjk = true;
      for (std::size_t h = 0; h < cert.images.size() && in_gjk; ++h) {
        Vertex tg[3] = {static_cast<Vertex>(h), static_cast<Vertex>(cert.j - 1),
                        static_cast<Vertex>(cert.k - 1)};
        std::sort(tg, tg + 3);
        Vertex hg[3] = {cert.images[h], x, y};
        std::sort(hg, hg + 3);
        if (host.colour(std::span<const Vertex>(hg, 3)) !=
            target.colour(std::span<const Vertex>(tg, 3)))
          in_gjk = false;
      }
      if (in_gjk) e23.emplace_back(n1 + index_of(part2, x), n1 + n2 + index_of(part3, y));
    }

  BipartiteGraph g12(0, n1, n1, n1 + n2, e12);
  BipartiteGraph g23(n1, n1 + n2, n1 + n2, n1 + n2 + n3, e23);
  BipartiteGraph g31(n1 + n2, n1 + n2 + n3, 0, n1, e31);
  TripartiteSystem sys(std::move(g12), std::move(g23), std::move(g31));

  // density witness: proportion of the scarce colour among triangles
  auto host_triple = [&](Vertex a_local, Vertex b_local, Vertex c_local) {
    Vertex hg[3] = {part1[a_local], part2[b_local - n1], part3[c_local - n1 - n2]};
    std::sort(hg, hg + 3);
    return host.colour(std::span<const Vertex>(hg, 3));
  };
  std::uint64_t tris = 0, scarce_count = 0;
  std::vector<Edge> dense_edges;
  sys.for_each_triangle([&](Vertex a, Vertex b, Vertex c) {
    ++tris;
    Colour col = host_triple(a, b, c);
    if (col == scarce) ++scarce_count;
    if (col == dense_side) {
      Edge e = {a, b, c};
      std::sort(e.begin(), e.end());
      dense_edges.push_back(e);
    }
  });

  LemmaParams lp = lemma_params(t, params.rho);
  TriDensityWitness dw;
  dw.v1 = part1;
  dw.v2 = part2;
  dw.v3 = part3;
  for (auto [a, b] : e12) dw.e12.emplace_back(part1[a], part2[b - n1]);
  for (auto [b, c] : e23) dw.e23.emplace_back(part2[b - n1], part3[c - n1 - n2]);
  for (auto [c, a] : e31) dw.e31.emplace_back(part3[c - n1 - n2], part1[a]);
  dw.triangles = tris;
  dw.matching = scarce_count;
  dw.eps = lp.eps;
  dw.rho = params.rho;
  dw.meets_triangle_floor =
      Rational(tris) >= lp.eps * host.vertex_count() * host.vertex_count() * host.vertex_count();
  dw.violates_proportion = Rational(scarce_count) < params.rho * tris;
  r.density_witness = dw;
  {
    std::ostringstream os;
    os << "certificate system parts=" << n1 << "," << n2 << "," << n3 << " triangles=" << tris
       << " scarce=" << scarce_count << " floor_met=" << dw.meets_triangle_floor
       << " violates=" << dw.violates_proportion;
    r.log.push_back(os.str());
  }

  if (tris == 0 || dense_edges.empty()) {
    r.pipeline.failed_stage = "certificate-conversion";
    r.pipeline.failure_detail = "no dense-side triples in the certificate system";
    r.log.push_back("pipeline skipped: " + r.pipeline.failure_detail);
    r.outcome = DichotomyOutcome::double_failure;
    return r;
  }

  UniformHypergraph g3(3, n1 + n2 + n3, std::move(dense_edges));
  Rational eta = std::min(params.rho, Rational(1, 8));
  if (eta != params.rho)
    r.log.push_back("eta clamped to 1/8 for the pipeline hypothesis");
  r.pipeline = extraction::find_ksss(sys, g3, lp.eps, eta, params.s, overrides, threads);
  for (const std::string& line : r.pipeline.log) r.log.push_back("pipeline " + line);

  if (r.pipeline.witness) {
    // map back to host ids and verify against the host colouring
    TripartiteWitness w = *r.pipeline.witness;
    for (Vertex& v : w.s1) v = part1[v];
    for (Vertex& v : w.s2) v = part2[v - n1];
    for (Vertex& v : w.s3) v = part3[v - n1 - n2];
    w.kind = dense_side == 0 ? TripartiteKind::complete : TripartiteKind::empty;
    for (Vertex a : w.s1)
      for (Vertex b : w.s2)
        for (Vertex c : w.s3) {
          Vertex hg[3] = {a, b, c};
          std::sort(hg, hg + 3);
          if (host.colour(std::span<const Vertex>(hg, 3)) != dense_side)
            throw std::logic_error("dichotomy: tripartite witness fails re-verification");
        }
    r.tripartite = w;
    r.outcome = DichotomyOutcome::tripartite;
    return r;
  }
  r.outcome = DichotomyOutcome::double_failure;
  return r;
}

}  // namespace hx::density
