#include "hx/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hx/parallel.hpp"

namespace hx::extraction {

KstWitness make_kst_witness(const BipartiteGraph& host, std::vector<Vertex> u,
                            std::vector<Vertex> t) {
  for (Vertex a : u)
    for (Vertex b : t)
      if (!host.has_edge(a, b))
        throw std::logic_error("kst witness not complete against host");
  return KstWitness{std::move(u), std::move(t)};
}

KstWitness find_kst_dense(const BipartiteGraph& g, int s, KstMode mode, int threads,
                          std::uint64_t subset_budget) {
  if (s < 0 || s > g.a_size())
    throw std::invalid_argument("find_kst_dense: s out of range");
  if (s == 0) {
    Bitset all = Bitset::full(g.b_size());
    return KstWitness{{}, g.b_ids(all)};
  }
  if (mode == KstMode::greedy) {
    std::vector<Vertex> u;
    Bitset common = Bitset::full(g.b_size());
    for (int step = 0; step < s; ++step) {
      Vertex best = -1;
      std::size_t best_count = 0;
      for (Vertex a = g.a_begin(); a < g.a_end(); ++a) {
        if (std::find(u.begin(), u.end(), a) != u.end()) continue;
        std::size_t c = common.intersection_count(g.row(a));
        if (best == -1 || c > best_count) {
          best = a;
          best_count = c;
        }
      }
      u.push_back(best);
      common &= g.row(best);
    }
    std::sort(u.begin(), u.end());
    return make_kst_witness(g, u, g.b_ids(g.common_neighbourhood(u)));
  }

  BigInt total_big = binomial(g.a_size(), s);
  if (total_big > subset_budget)
    throw std::invalid_argument("find_kst_dense: C(|A|, s) exceeds subset budget");
  std::uint64_t total = static_cast<std::uint64_t>(total_big);

  struct Chunk {
    std::size_t best = 0;
    std::vector<Vertex> u;
  };
  std::size_t nchunks = std::max<std::size_t>(
      1, std::min<std::uint64_t>(static_cast<std::uint64_t>(effective_threads(threads)), total));
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
        std::size_t count = g.common_neighbourhood(u).count();
        if (count > local.best || local.u.empty()) {
          local.best = count;
          local.u = u;
        }
        if (r + 1 < hi) next_combination(idx, g.a_size());
      }
    }
  });
  // chunks are contiguous lex ranges; first chunk attaining the global
  // maximum holds the lexicographically smallest maximizer
  std::vector<Vertex> best_u;
  std::size_t best = 0;
  for (const Chunk& c : chunks) {
    if (c.u.empty()) continue;
    if (c.best > best || best_u.empty()) {
      best = c.best;
      best_u = c.u;
    }
  }
  return make_kst_witness(g, best_u, g.b_ids(g.common_neighbourhood(best_u)));
}

BigInt kst_dense_threshold(int s, const Rational& eps, long long b_size) {
  Rational t = exp_neg_sqrt_rounded_down(s) * rpow(eps, s) * b_size;
  return ceil_rational(t);
}

bool kst_dense_precondition(int s, const Rational& eps, long long a_size) {
  // s^{3/2} <= (eps/2)|A|  <=>  s^3 <= ((eps/2)|A|)^2, both sides nonnegative
  return Rational(BigInt(s) * s * s) <= rpow(eps / 2 * a_size, 2);
}

BigInt kst_pigeonhole_threshold(long long a_size, long long b_size) {
  return ceil_rational(Rational(b_size) / ipow(BigInt(2), static_cast<unsigned long>(a_size)));
}

namespace {

std::uint64_t trace_key(const Bitset& col) {
  std::uint64_t key = 0;
  col.for_each([&](std::size_t i) { key |= std::uint64_t{1} << i; });
  return key;
}

}  // namespace

KstWitness find_kst_pigeonhole_fixed(const BipartiteGraph& g, int s,
                                     std::uint64_t work_budget) {
  if (s < 0 || s > g.a_size())
    throw std::invalid_argument("find_kst_pigeonhole: s out of range");
  if (g.a_size() > 30)
    throw std::invalid_argument("find_kst_pigeonhole: |A| over the trace bucketing cap");
  if (s == 0) return KstWitness{{}, g.b_ids(Bitset::full(g.b_size()))};

  // bucket B-vertices by exact neighbourhood trace in A
  std::map<std::uint64_t, std::uint64_t> traces;
  for (Vertex b = g.b_begin(); b < g.b_end(); ++b) ++traces[trace_key(g.col(b))];

  BigInt work = binomial(g.a_size(), s) * static_cast<std::uint64_t>(traces.size());
  if (work > work_budget)
    throw std::invalid_argument("find_kst_pigeonhole: subset-times-trace work over budget");

  std::vector<Vertex> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  std::uint64_t best_count = 0;
  std::vector<Vertex> best_u;
  do {
    std::uint64_t mask = 0;
    for (int i = 0; i < s; ++i) mask |= std::uint64_t{1} << idx[i];
    std::uint64_t contained = 0;
    for (const auto& [key, mult] : traces)
      if ((key & mask) == mask) contained += mult;
    if (contained > best_count || best_u.empty()) {
      best_count = contained;
      best_u.assign(idx.begin(), idx.end());
      for (Vertex& v : best_u) v += g.a_begin();
    }
  } while (next_combination(idx, g.a_size()));

  return make_kst_witness(g, best_u, g.b_ids(g.common_neighbourhood(best_u)));
}

PigeonholeResult find_kst_pigeonhole(const BipartiteGraph& g, const Rational& eps,
                                     std::uint64_t work_budget) {
  if (eps < 0 || eps > 1) throw std::invalid_argument("find_kst_pigeonhole: eps outside [0,1]");
  PigeonholeResult r;
  r.s = static_cast<int>(ceil_rational(eps * g.a_size()));
  r.density_precondition_ok =
      Rational(g.edge_count()) >= eps * g.a_size() * g.b_size();
  std::map<std::uint64_t, std::uint64_t> traces;
  for (Vertex b = g.b_begin(); b < g.b_end(); ++b) ++traces[trace_key(g.col(b))];
  r.distinct_traces = traces.size();
  r.witness = find_kst_pigeonhole_fixed(g, r.s, work_budget);
  return r;
}

namespace {

struct PartOf {
  const TripartiteSystem& sys;
  int operator()(Vertex v) const {
    if (v >= sys.v1_begin() && v < sys.v1_end()) return 1;
    if (v >= sys.v2_begin() && v < sys.v2_end()) return 2;
    if (v >= sys.v3_begin() && v < sys.v3_end()) return 3;
    return 0;
  }
};

void check_g3_inside_triangles(const TripartiteSystem& sys, const UniformHypergraph& g3) {
  PartOf part{sys};
  for (const Edge& e : g3.edges()) {
    Vertex byp[4] = {-1, -1, -1, -1};
    bool ok = true;
    for (Vertex v : e) {
      int p = part(v);
      if (p == 0 || byp[p] != -1) {
        ok = false;
        break;
      }
      byp[p] = v;
    }
    if (!ok || !sys.is_triangle(byp[1], byp[2], byp[3]))
      throw std::invalid_argument("good_edges: g3 contains a non-triangle triple");
  }
}

std::uint64_t g3_triples_through(const UniformHypergraph& g3, Vertex fixed1, Vertex fixed2,
                                 const Bitset& thirds, Vertex third_begin) {
  std::uint64_t count = 0;
  Vertex t[3];
  thirds.for_each([&](std::size_t i) {
    t[0] = fixed1;
    t[1] = fixed2;
    t[2] = third_begin + static_cast<Vertex>(i);
    std::sort(t, t + 3);
    if (g3.has_edge(std::span<const Vertex>(t, 3))) ++count;
  });
  return count;
}

}  // namespace

GoodEdgeReport good_edges(const TripartiteSystem& sys, const UniformHypergraph& g3,
                          const Rational& eta, LinkPair pair, const Rational& heavy_floor) {
  if (!(eta > 0) || eta > Rational(1, 8))
    throw std::invalid_argument("good_edges: eta must satisfy 0 < eta <= 1/8");
  check_g3_inside_triangles(sys, g3);

  GoodEdgeReport report;
  report.proportion = 1 - 2 * eta;
  report.heavy_floor = heavy_floor;

  auto consider = [&](Vertex x, Vertex y, const Bitset& thirds, Vertex third_begin) {
    std::uint64_t tri = thirds.count();
    std::uint64_t covered = g3_triples_through(g3, x, y, thirds, third_begin);
    if (Rational(covered) >= report.proportion * tri) {
      report.good.emplace_back(x, y);
      if (Rational(tri) >= heavy_floor) report.heavy.emplace_back(x, y);
    }
  };

  switch (pair) {
    case LinkPair::g12:
      for (Vertex v1 = sys.v1_begin(); v1 < sys.v1_end(); ++v1)
        sys.g12().row(v1).for_each([&](std::size_t bi) {
          Vertex v2 = sys.v2_begin() + static_cast<Vertex>(bi);
          consider(v1, v2, sys.g23().row(v2) & sys.g31().col(v1), sys.v3_begin());
        });
      break;
    case LinkPair::g23:
      for (Vertex v2 = sys.v2_begin(); v2 < sys.v2_end(); ++v2)
        sys.g23().row(v2).for_each([&](std::size_t bi) {
          Vertex v3 = sys.v3_begin() + static_cast<Vertex>(bi);
          consider(v2, v3, sys.g12().col(v2) & sys.g31().row(v3), sys.v1_begin());
        });
      break;
    case LinkPair::g31:
      for (Vertex v3 = sys.v3_begin(); v3 < sys.v3_end(); ++v3)
        sys.g31().row(v3).for_each([&](std::size_t bi) {
          Vertex v1 = sys.v1_begin() + static_cast<Vertex>(bi);
          consider(v3, v1, sys.g12().row(v1) & sys.g23().col(v3), sys.v2_begin());
        });
      break;
  }
  return report;
}

namespace {

// Bipartite graph on remapped contiguous ids [0,|aset|) x [|aset|, ..).
BipartiteGraph mapped_bipartite(const std::vector<Vertex>& aset, const std::vector<Vertex>& bset,
                                const std::function<bool(Vertex, Vertex)>& pred) {
  Vertex na = static_cast<Vertex>(aset.size()), nb = static_cast<Vertex>(bset.size());
  return BipartiteGraph::from_predicate(0, na, na, na + nb, [&](Vertex a, Vertex b) {
    return pred(aset[a], bset[b - na]);
  });
}

std::vector<Vertex> map_back(const std::vector<Vertex>& ids, const std::vector<Vertex>& set,
                             Vertex offset) {
  std::vector<Vertex> out;
  out.reserve(ids.size());
  for (Vertex i : ids) out.push_back(set[i - offset]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

KsssResult find_ksss(const TripartiteSystem& sys, const UniformHypergraph& g3,
                     const Rational& delta, const Rational& eta, int s,
                     const KsssOverrides& overrides, int threads) {
  if (!(eta > 0) || eta > Rational(1, 8))
    throw std::invalid_argument("find_ksss: eta must satisfy 0 < eta <= 1/8");
  if (s < 1) throw std::invalid_argument("find_ksss: s must be >= 1");

  KsssResult r;
  auto fail = [&](const std::string& stage, const std::string& detail) {
    r.failed_stage = stage;
    r.failure_detail = detail;
    r.log.push_back("fail stage=" + stage + " " + detail);
    return r;
  };
  auto logf = [&](const std::string& line) { r.log.push_back(line); };

  // pad parts to the maximum size: isolated vertices change no triangle and
  // no extraction, only the thresholds below
  long long n = std::max({sys.v1_size(), sys.v2_size(), sys.v3_size()});
  std::uint64_t tri_total = sys.triangle_count();
  std::uint64_t covered = 0;
  Vertex t3buf[3];
  sys.for_each_triangle([&](Vertex a, Vertex b, Vertex c) {
    t3buf[0] = a;
    t3buf[1] = b;
    t3buf[2] = c;
    std::sort(t3buf, t3buf + 3);
    if (g3.has_edge(std::span<const Vertex>(t3buf, 3))) ++covered;
  });
  r.triangle_precondition = Rational(tri_total) >= delta * n * n * n;
  r.coverage_precondition = Rational(covered) >= (1 - eta) * tri_total;
  {
    std::ostringstream os;
    os << "setup n=" << n << " triangles=" << tri_total << " covered=" << covered
       << " delta=" << to_string(delta) << " eta=" << to_string(eta)
       << " tri_pre=" << (r.triangle_precondition ? 1 : 0)
       << " cover_pre=" << (r.coverage_precondition ? 1 : 0);
    logf(os.str());
  }
  {
    // the asymptotic hypothesis of the lemma, reported but never used to
    // refuse to run
    double d = static_cast<double>(delta), e = static_cast<double>(eta);
    double lhs_log = 1024.0 / (d * d) * std::pow(s, 1.5) + 4.0 * s * std::log(16.0 / d);
    if (1 - 4 * e > 0) lhs_log += -4.0 * s * s * std::log(1 - 4 * e);
    std::ostringstream os;
    os << "asymptotic lhs_log=" << lhs_log << " log_n=" << std::log(static_cast<double>(n))
       << " satisfied=" << (lhs_log <= std::log(static_cast<double>(n)) ? 1 : 0);
    logf(os.str());
  }

  double logn = std::log(static_cast<double>(n));
  double d16 = static_cast<double>(delta) / 16.0;
  int s1 = overrides.s1 ? *overrides.s1
                        : std::max(1, static_cast<int>(std::floor(d16 * logn)));
  int s2 = overrides.s2 ? *overrides.s2
                        : std::max(1, static_cast<int>(std::floor(d16 * d16 * logn)));
  long long t2min = overrides.t2
                        ? *overrides.t2
                        : std::max<long long>(1, static_cast<long long>(std::floor(
                              std::pow(static_cast<double>(n), 0.25))));
  long long t3min = overrides.t3
                        ? *overrides.t3
                        : std::max<long long>(1, static_cast<long long>(std::floor(
                              std::pow(static_cast<double>(n), 0.25))));
  logf("params s1=" + std::to_string(s1) + " s2=" + std::to_string(s2) +
       " t2min=" + std::to_string(t2min) + " t3min=" + std::to_string(t3min) +
       " s=" + std::to_string(s));

  // stage: good/heavy filter on G12, proportion (1-2 eta), floor delta*n/4
  GoodEdgeReport rep12 = good_edges(sys, g3, eta, LinkPair::g12, delta * n / 4);
  logf("good-filter-12 good=" + std::to_string(rep12.good.size()) +
       " heavy=" + std::to_string(rep12.heavy.size()));
  if (rep12.heavy.empty())
    return fail("good-filter-12", "no good edge in >= " + to_string(rep12.heavy_floor) +
                                      " triangles (good=" + std::to_string(rep12.good.size()) +
                                      ")");
  BipartiteGraph h12(sys.v1_begin(), sys.v1_end(), sys.v2_begin(), sys.v2_end(), rep12.heavy);

  // stage: Lemma Zarank extraction of (S1, T2) from the heavy graph
  if (s1 > h12.a_size())
    return fail("extract-12", "s1=" + std::to_string(s1) + " exceeds |V1|");
  KstWitness w12 = find_kst_dense(h12, s1, KstMode::exact, threads);
  logf("extract-12 s1=" + std::to_string(s1) + " |T2|=" + std::to_string(w12.t.size()));
  if (static_cast<long long>(w12.t.size()) < t2min)
    return fail("extract-12", "common neighbourhood " + std::to_string(w12.t.size()) +
                                  " below t2=" + std::to_string(t2min));
  const std::vector<Vertex>& set_s1 = w12.u;
  const std::vector<Vertex>& set_t2 = w12.t;

  // stage: re-filter goodness between S1 and V3 inside (S1, T2, V3) at
  // proportion (1-4 eta), heavy floor (delta/16)|T2|
  Bitset t2mask(sys.g23().a_size());
  for (Vertex v : set_t2) t2mask.set(v - sys.v2_begin());
  Rational floor13 = delta / 16 * static_cast<long long>(set_t2.size());
  Rational prop13 = 1 - 4 * eta;
  std::vector<std::pair<Vertex, Vertex>> heavy13;  // (s1 vertex, v3 vertex)
  std::size_t good13 = 0;
  for (Vertex sv : set_s1) {
    for (Vertex v3 = sys.v3_begin(); v3 < sys.v3_end(); ++v3) {
      if (!sys.g31().has_edge(v3, sv)) continue;
      // triangles of (S1, T2, V3) through (sv, v3): t in T2 with (t,v3) in G23
      Bitset mids = sys.g23().col(v3) & t2mask;
      std::uint64_t tri = mids.count();
      std::uint64_t cov = g3_triples_through(g3, sv, v3, mids, sys.v2_begin());
      if (Rational(cov) >= prop13 * tri) {
        ++good13;
        if (Rational(tri) >= floor13) heavy13.emplace_back(sv, v3);
      }
    }
  }
  logf("good-filter-13 good=" + std::to_string(good13) +
       " heavy=" + std::to_string(heavy13.size()));
  if (heavy13.empty())
    return fail("good-filter-13", "no good S1-V3 edge in >= " + to_string(floor13) +
                                      " triangles (good=" + std::to_string(good13) + ")");

  // stage: Lemma Zarank2 (pigeonhole) extraction of (S2, T3) from H13
  std::vector<Vertex> v3all;
  for (Vertex v = sys.v3_begin(); v < sys.v3_end(); ++v) v3all.push_back(v);
  auto in_heavy13 = [&](Vertex a, Vertex b) {
    return std::find(heavy13.begin(), heavy13.end(), std::make_pair(a, b)) != heavy13.end();
  };
  BipartiteGraph h13 = mapped_bipartite(set_s1, v3all, in_heavy13);
  if (s2 > h13.a_size())
    return fail("extract-13", "s2=" + std::to_string(s2) + " exceeds |S1|");
  KstWitness w13 = find_kst_pigeonhole_fixed(h13, s2);
  std::vector<Vertex> set_s2 = map_back(w13.u, set_s1, 0);
  std::vector<Vertex> set_t3 = map_back(w13.t, v3all, static_cast<Vertex>(set_s1.size()));
  logf("extract-13 s2=" + std::to_string(s2) + " |T3|=" + std::to_string(set_t3.size()));
  if (static_cast<long long>(set_t3.size()) < t3min)
    return fail("extract-13", "common neighbourhood " + std::to_string(set_t3.size()) +
                                  " below t3=" + std::to_string(t3min));

  // stage: vertex-versus-link-edge extraction between S2 and E23
  std::vector<std::pair<Vertex, Vertex>> e23;
  for (Vertex x : set_t2)
    for (Vertex y : set_t3)
      if (sys.g23().has_edge(x, y)) e23.emplace_back(x, y);
  logf("link-graph |E23|=" + std::to_string(e23.size()));
  if (e23.empty()) return fail("link-extract-23", "E23 empty between T2 and T3");
  if (s > static_cast<int>(set_s2.size()))
    return fail("link-extract-23", "s=" + std::to_string(s) + " exceeds |S2|=" +
                                       std::to_string(set_s2.size()));
  Vertex ns2 = static_cast<Vertex>(set_s2.size());
  BipartiteGraph k = BipartiteGraph::from_predicate(
      0, ns2, ns2, ns2 + static_cast<Vertex>(e23.size()), [&](Vertex a, Vertex b) {
        Vertex tuple[3] = {set_s2[a], e23[b - ns2].first, e23[b - ns2].second};
        std::sort(tuple, tuple + 3);
        return g3.has_edge(std::span<const Vertex>(tuple, 3));
      });
  KstWitness wk = find_kst_dense(k, s, KstMode::exact, threads);
  std::vector<Vertex> set_s = map_back(wk.u, set_s2, 0);
  logf("link-extract-23 s=" + std::to_string(s) + " |H23|=" + std::to_string(wk.t.size()));
  if (wk.t.size() < static_cast<std::size_t>(s))
    return fail("link-extract-23", "H23 has " + std::to_string(wk.t.size()) +
                                       " edges, need at least s=" + std::to_string(s));

  // stage: final convexity extraction inside H23 for (S', S'')
  std::vector<std::pair<Vertex, Vertex>> h23_edges;
  h23_edges.reserve(wk.t.size());
  for (Vertex idx : wk.t) h23_edges.push_back(e23[idx - ns2]);
  std::vector<Vertex> t2sorted = set_t2, t3sorted = set_t3;
  auto in_h23 = [&](Vertex a, Vertex b) {
    return std::find(h23_edges.begin(), h23_edges.end(), std::make_pair(a, b)) !=
           h23_edges.end();
  };
  BipartiteGraph h23 = mapped_bipartite(t2sorted, t3sorted, in_h23);
  if (s > h23.a_size())
    return fail("final-extract-23", "s=" + std::to_string(s) + " exceeds |T2|");
  KstWitness wf = find_kst_dense(h23, s, KstMode::exact, threads);
  std::vector<Vertex> set_sp = map_back(wf.u, t2sorted, 0);
  std::vector<Vertex> set_spp_all =
      map_back(wf.t, t3sorted, static_cast<Vertex>(t2sorted.size()));
  logf("final-extract-23 |S'|=" + std::to_string(set_sp.size()) +
       " |S''|=" + std::to_string(set_spp_all.size()));
  if (set_spp_all.size() < static_cast<std::size_t>(s))
    return fail("final-extract-23", "common neighbourhood " +
                                        std::to_string(set_spp_all.size()) +
                                        " below s=" + std::to_string(s));
  set_spp_all.resize(static_cast<std::size_t>(s));

  if (!is_complete_tripartite(g3, set_s, set_sp, set_spp_all))
    throw std::logic_error("find_ksss: assembled witness fails verification");
  r.witness = TripartiteWitness{set_s, set_sp, set_spp_all, TripartiteKind::complete};
  logf("witness verified complete");
  return r;
}

}  // namespace hx::extraction
