#include "hx/stepup.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hx/rng.hpp"

namespace hx::stepup {

LabelVector::LabelVector(int dim, std::uint64_t value) : dim_(dim), value_(value) {
  if (dim < 1 || dim > 62) throw std::invalid_argument("label vector dimension out of range");
  if (dim < 64 && value >= (std::uint64_t{1} << dim))
    throw std::invalid_argument("label vector value exceeds 2^dim");
}

LabelVector LabelVector::from_bits(std::span<const int> gamma) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (gamma[i] != 0 && gamma[i] != 1) throw std::invalid_argument("gamma bit not 0/1");
    if (gamma[i]) v |= std::uint64_t{1} << i;
  }
  return LabelVector(static_cast<int>(gamma.size()), v);
}

int LabelVector::gamma(int i) const {
  if (i < 1 || i > dim_) throw std::invalid_argument("gamma index out of range");
  return static_cast<int>((value_ >> (i - 1)) & 1);
}

int delta(const LabelVector& a, const LabelVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("delta: dimension mismatch");
  std::uint64_t diff = a.value() ^ b.value();
  if (diff == 0) throw std::invalid_argument("delta: equal vectors");
  return 64 - std::countl_zero(diff);  // 1-based index of the highest set bit
}

bool less(const LabelVector& a, const LabelVector& b) {
  int d = delta(a, b);
  return a.gamma(d) == 0;
}

std::strong_ordering compare(const LabelVector& a, const LabelVector& b) {
  if (a.value() == b.value() && a.dim() == b.dim())
    throw std::invalid_argument("compare: equal vectors");
  return less(a, b) ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::vector<int> delta_sequence(std::span<const LabelVector> tuple) {
  if (tuple.size() < 2) return {};
  std::vector<int> d(tuple.size() - 1);
  for (std::size_t i = 0; i + 1 < tuple.size(); ++i) {
    if (!less(tuple[i], tuple[i + 1]))
      throw std::invalid_argument("tuple not strictly increasing");
    d[i] = delta(tuple[i], tuple[i + 1]);
  }
  return d;
}

int delta_ij(std::span<const LabelVector> tuple, int i, int j) {
  int h = static_cast<int>(tuple.size());
  if (i < 1 || j > h || i >= j) throw std::invalid_argument("delta_ij: bad indices");
  int direct = delta(tuple[i - 1], tuple[j - 1]);
  int running = 0;
  for (int l = i; l <= j - 1; ++l) {
    if (!less(tuple[l - 1], tuple[l]))
      throw std::invalid_argument("delta_ij: tuple not strictly increasing");
    running = std::max(running, delta(tuple[l - 1], tuple[l]));
  }
  if (direct != running)
    throw std::logic_error("delta_ij: direct value disagrees with running max");
  return direct;
}

TotalPreorder preorder_of(std::span<const int> values) {
  std::vector<int> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  TotalPreorder p;
  p.ranks.reserve(values.size());
  for (int v : values) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    p.ranks.push_back(static_cast<int>(it - sorted.begin()) + 1);
  }
  return p;
}

StepUpColouring::StepUpColouring(EdgeColouring base)
    : base_(std::make_shared<EdgeColouring>(std::move(base))) {
  if (base_->colour_count() != 2)
    throw std::invalid_argument("step-up base must be 2-coloured");
  k_ = base_->uniformity();
  n_ = base_->vertex_count();
  if (k_ < 2) throw std::invalid_argument("step-up base uniformity must be >= 2");
  if (n_ > 30) throw std::invalid_argument("step-up dimension too large to address 2^n ids");
}

Colour StepUpColouring::colour(std::span<const Vertex> tuple) const {
  if (static_cast<int>(tuple.size()) != k_ + 1)
    throw std::invalid_argument("step-up colour query arity != k+1");
  std::vector<std::uint64_t> values(tuple.begin(), tuple.end());
  for (Vertex v : tuple)
    if (v < 0 || v >= derived_vertex_count())
      throw std::invalid_argument("step-up vertex id out of range");
  std::sort(values.begin(), values.end());
  if (std::adjacent_find(values.begin(), values.end()) != values.end())
    throw std::invalid_argument("step-up colour query has duplicate ids");

  // deltas of the sorted label vectors; adjacent entries always differ
  std::vector<int> d(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    std::uint64_t diff = values[i] ^ values[i + 1];
    d[i] = 64 - std::countl_zero(diff);
  }

  bool increasing = true, decreasing = true;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] == d[i + 1]) throw std::logic_error("adjacent deltas equal in step-up tuple");
    (d[i] < d[i + 1] ? decreasing : increasing) = false;
  }
  if (increasing || decreasing) {
    // colour of the delta set, coordinates mapped to 0-based base vertices
    std::vector<Vertex> dset(d.begin(), d.end());
    for (Vertex& v : dset) --v;
    std::sort(dset.begin(), dset.end());
    return base_->colour(dset);
  }
  for (std::size_t j = 1; j + 1 < d.size(); ++j) {
    if (d[j - 1] < d[j] && d[j] > d[j + 1]) return kBlue;  // first local maximum
    if (d[j - 1] > d[j] && d[j] < d[j + 1]) return kRed;   // first local minimum
  }
  throw std::logic_error("non-monotone delta sequence without local extremum");
}

EdgeColouring StepUpColouring::derived() const {
  StepUpColouring self = *this;  // shares the base via shared_ptr
  auto fn = [self](std::span<const Vertex> tuple) -> Colour { return self.colour(tuple); };
  return EdgeColouring::rule(k_ + 1, derived_vertex_count(), 2, fn,
                             "stepup:" + std::to_string(k_) + ":" + std::to_string(n_));
}

ColouredPattern pattern_of(const StepUpColouring& s, std::span<const Vertex> tuple) {
  int h = static_cast<int>(tuple.size());
  int u = s.derived_uniformity();
  if (h < u) throw std::invalid_argument("pattern_of: tuple smaller than uniformity");
  for (int i = 1; i < h; ++i)
    if (tuple[i - 1] >= tuple[i])
      throw std::invalid_argument("pattern_of: tuple not sorted distinct");
  ColouredPattern p;
  p.vertex_count = h;
  p.uniformity = u;
  p.colours.reserve(binomial_u64(h, u));
  std::vector<Vertex> sub(u);
  for_each_combination(h, u, [&](std::span<const Vertex> pos) {
    for (int i = 0; i < u; ++i) sub[i] = tuple[pos[i]];
    p.colours.push_back(static_cast<std::uint8_t>(s.colour(sub)));
  });
  return p;
}

namespace {

class CliqueSearch {
 public:
  CliqueSearch(const EdgeColouring& c, Colour colour, int upper_bound, const SearchBudget& budget)
      : c_(c), colour_(colour), u_(c.uniformity()), n_(c.vertex_count()),
        upper_bound_(upper_bound), budget_(budget),
        start_(std::chrono::steady_clock::now()) {}

  CliqueSearchResult run() {
    order_vertices();
    std::vector<Vertex> cands = order_;
    std::vector<Vertex> current;
    extend(current, cands);
    CliqueSearchResult r;
    r.nodes = nodes_;
    r.exhausted = exhausted_;
    int vac = vacuous_clique_size(u_, n_);
    if (static_cast<int>(best_.size()) >= u_) {
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
  void order_vertices() {
    std::vector<std::uint64_t> degree(n_, 0);
    bool have_degrees = false;
    if (binomial(n_, u_) <= (std::uint64_t{1} << 22)) {
      for_each_combination(n_, u_, [&](std::span<const Vertex> t) {
        if (c_.colour(t) == colour_)
          for (Vertex v : t) ++degree[v];
      });
      have_degrees = true;
    }
    order_.resize(n_);
    for (Vertex v = 0; v < n_; ++v) order_[v] = v;
    if (have_degrees) {
      std::stable_sort(order_.begin(), order_.end(), [&](Vertex a, Vertex b) {
        if (degree[a] != degree[b]) return degree[a] > degree[b];
        return a < b;
      });
    }
  }

  bool budget_hit() {
    ++nodes_;
    if (budget_.node_cap && nodes_ > budget_.node_cap) return exhausted_ = true;
    if (budget_.seconds_cap > 0 && (nodes_ & 4095) == 0) {
      auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_);
      if (dt.count() > budget_.seconds_cap) return exhausted_ = true;
    }
    return false;
  }

  // v joins current iff every u-subset of current+{v} containing v has the
  // target colour; only subsets using the newest member need rechecking
  // when candidates were filtered at the previous level.
  bool compatible(const std::vector<Vertex>& current, Vertex v) const {
    int need = u_ - 1;
    if (static_cast<int>(current.size()) < need) return true;
    std::vector<Vertex> tuple(u_);
    bool ok = true;
    std::vector<Vertex> idx(need);
    for (int i = 0; i < need; ++i) idx[i] = i;
    while (ok) {
      for (int i = 0; i < need; ++i) tuple[i] = current[idx[i]];
      tuple[need] = v;
      std::sort(tuple.begin(), tuple.end());
      if (c_.colour(tuple) != colour_) ok = false;
      if (!next_combination(idx, static_cast<Vertex>(current.size()))) break;
    }
    return ok;
  }

  // Pairwise coexistence relative to current; defined once |current| >= u-2.
  // Candidates are disjoint from current, so tuples have no duplicates.
  bool pair_compatible(const std::vector<Vertex>& current, Vertex x, Vertex y) const {
    int need = u_ - 2;
    if (static_cast<int>(current.size()) < need) return true;
    std::vector<Vertex> tuple(u_);
    std::vector<Vertex> idx(need);
    for (int i = 0; i < need; ++i) idx[i] = i;
    while (true) {
      for (int i = 0; i < need; ++i) tuple[i] = current[idx[i]];
      tuple[u_ - 2] = x;
      tuple[u_ - 1] = y;
      std::sort(tuple.begin(), tuple.end());
      if (c_.colour(tuple) != colour_) return false;
      if (need == 0 || !next_combination(idx, static_cast<Vertex>(current.size()))) break;
    }
    return true;
  }

  // Greedy colouring of the pairwise-compatibility graph; cliques pick at
  // most one vertex per class, so the class count bounds the extension.
  int colouring_bound(const std::vector<Vertex>& current, const std::vector<Vertex>& cands) const {
    if (static_cast<int>(current.size()) < u_ - 2 || cands.size() < 8 || cands.size() > 64)
      return static_cast<int>(cands.size());
    std::vector<std::vector<Vertex>> classes;
    for (Vertex v : cands) {
      bool placed = false;
      for (auto& cls : classes) {
        bool independent = true;
        for (Vertex w : cls)
          if (pair_compatible(current, std::min(v, w), std::max(v, w))) {
            independent = false;
            break;
          }
        if (independent) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    return static_cast<int>(classes.size());
  }

  void record(const std::vector<Vertex>& current) {
    std::vector<Vertex> sorted = current;
    std::sort(sorted.begin(), sorted.end());
    if (current.size() > best_.size() ||
        (current.size() == best_.size() && sorted < best_)) {
      best_ = sorted;
    }
  }

  void extend(std::vector<Vertex>& current, const std::vector<Vertex>& cands) {
    if (exhausted_ || budget_hit()) return;
    if (current.size() > best_.size()) record(current);
    if (upper_bound_ > 0 && static_cast<int>(best_.size()) >= upper_bound_) return;
    if (cands.empty()) return;
    if (current.size() + cands.size() <= best_.size()) return;
    if (current.size() + static_cast<std::size_t>(colouring_bound(current, cands)) <=
        best_.size())
      return;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (exhausted_) return;
      if (current.size() + (cands.size() - i) <= best_.size()) return;
      Vertex v = cands[i];
      current.push_back(v);
      std::vector<Vertex> next;
      next.reserve(cands.size() - i - 1);
      for (std::size_t j = i + 1; j < cands.size(); ++j)
        if (compatible(current, cands[j])) next.push_back(cands[j]);
      extend(current, next);
      current.pop_back();
    }
  }

  const EdgeColouring& c_;
  Colour colour_;
  int u_;
  Vertex n_;
  int upper_bound_;
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::vector<Vertex> order_;
  std::vector<Vertex> best_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace

CliqueSearchResult max_mono_clique(const EdgeColouring& c, Colour colour, int upper_bound,
                                   const SearchBudget& budget) {
  if (colour < 0 || colour >= c.colour_count())
    throw std::invalid_argument("max_mono_clique: colour out of range");
  return CliqueSearch(c, colour, upper_bound, budget).run();
}

CliqueSearchResult max_mono_clique(const StepUpColouring& s, Colour colour, int upper_bound,
                                   const SearchBudget& budget) {
  return max_mono_clique(s.derived(), colour, upper_bound, budget);
}

CensusResult realizable_pattern_census(const StepUpColouring& s, int h,
                                       std::uint64_t exhaustive_budget,
                                       std::uint64_t sample_budget, std::uint64_t seed) {
  if (h < s.derived_uniformity())
    throw std::invalid_argument("census: h below derived uniformity");
  Vertex nverts = s.derived_vertex_count();
  CensusResult result;
  if (h > nverts) return result;
  BigInt total = binomial(nverts, h);
  if (total <= exhaustive_budget) {
    result.exhaustive = true;
    for_each_combination(nverts, h, [&](std::span<const Vertex> t) {
      result.patterns.insert(pattern_of(s, t));
      ++result.tuples_examined;
    });
    return result;
  }
  SplitMix64 rng(SplitMix64::split(seed, 0x63656e73757321ULL));
  std::vector<Vertex> tuple;
  for (std::uint64_t i = 0; i < sample_budget; ++i) {
    tuple.clear();
    while (static_cast<int>(tuple.size()) < h) {
      Vertex v = static_cast<Vertex>(rng.next_below(static_cast<std::uint64_t>(nverts)));
      if (std::find(tuple.begin(), tuple.end(), v) == tuple.end()) tuple.push_back(v);
    }
    std::sort(tuple.begin(), tuple.end());
    result.patterns.insert(pattern_of(s, tuple));
    ++result.tuples_examined;
  }
  return result;
}

namespace {

// Counts ordered set partitions of [m] by direct recursive enumeration of
// first blocks; no memoisation, every ordered partition is visited once.
BigInt count_ordered_partitions(std::uint32_t remaining) {
  if (remaining == 0) return 1;
  BigInt total = 0;
  // iterate nonempty submasks of `remaining`
  for (std::uint32_t sub = remaining; sub != 0; sub = (sub - 1) & remaining)
    total += count_ordered_partitions(remaining & ~sub);
  return total;
}

}  // namespace

BigInt ordered_bell(int m) {
  if (m < 0) throw std::invalid_argument("ordered_bell: negative argument");
  std::vector<BigInt> h(static_cast<std::size_t>(m) + 1);
  h[0] = 1;
  for (int i = 1; i <= m; ++i) {
    BigInt sum = 0;
    for (int j = 1; j <= i; ++j) sum += binomial(i, j) * h[static_cast<std::size_t>(i - j)];
    h[static_cast<std::size_t>(i)] = sum;
  }
  BigInt result = h[static_cast<std::size_t>(m)];
  if (m >= 1 && m <= 7) {
    BigInt enumerated = count_ordered_partitions((std::uint32_t{1} << m) - 1);
    if (enumerated != result)
      throw std::logic_error("ordered_bell: recurrence and enumeration disagree");
  }
  if (m >= 1 && result > ipow(BigInt(m), static_cast<unsigned long>(m)))
    throw std::logic_error("ordered_bell: H_m <= m^m violated");
  return result;
}

CountBoundCheck count_bound_check(int h, int k) {
  if (k < 2) throw std::invalid_argument("count_bound_check: k must be >= 2");
  if (h < k + 1) throw std::invalid_argument("count_bound_check: requires h >= k+1");
  CountBoundCheck r;
  r.h = h;
  r.k = k;
  BigInt two_pow = ipow(BigInt(2), static_cast<unsigned long>(binomial_u64(h - 1, k)));
  r.a_exact = ordered_bell(h - 1) * two_pow;
  r.a_relaxed = ipow(BigInt(h - 1), static_cast<unsigned long>(h - 1)) * two_pow;
  BigInt hfact = 1;
  for (int i = 2; i <= h; ++i) hfact *= i;
  r.b = Rational(ipow(BigInt(2), static_cast<unsigned long>(binomial_u64(h, k + 1))), hfact);
  r.exact_less = Rational(r.a_exact) < r.b;
  r.relaxed_less = Rational(r.a_relaxed) < r.b;
  r.claim_applies = h >= k + 5;
  return r;
}

AvoidedPatternResult find_avoided_pattern(const StepUpColouring& s, int h,
                                          const AvoidedPatternOptions& options) {
  if (h < s.derived_uniformity())
    throw std::invalid_argument("find_avoided_pattern: h below derived uniformity");
  AvoidedPatternResult result;
  std::uint64_t bits = binomial_u64(h, s.derived_uniformity());
  if (options.census_budget == 0 && options.sample_budget == 0) return result;  // budget
  if (bits >= 63 || (std::uint64_t{1} << bits) > options.pattern_budget) return result;
  result.census = realizable_pattern_census(s, h, options.census_budget,
                                            options.sample_budget, options.seed);
  if (!result.census.exhaustive && result.census.tuples_examined == 0) return result;

  ColouredPattern probe;
  probe.vertex_count = h;
  probe.uniformity = s.derived_uniformity();
  probe.colours.assign(bits, 0);
  std::uint64_t npatterns = std::uint64_t{1} << bits;
  for (std::uint64_t code = 0; code < npatterns; ++code) {
    for (std::uint64_t b = 0; b < bits; ++b)
      probe.colours[b] = static_cast<std::uint8_t>((code >> b) & 1);
    if (!result.census.patterns.contains(probe)) {
      result.pattern = probe;
      result.status =
          result.census.exhaustive ? AvoidedStatus::avoided : AvoidedStatus::candidate;
      return result;
    }
  }
  result.status = AvoidedStatus::all_realized;
  return result;
}

SteppingUpReport stepping_up_verify(const EdgeColouring& base, int ell_base,
                                    const SearchBudget& budget) {
  if (base.uniformity() < 3)
    throw std::invalid_argument("stepping_up_verify: base uniformity must be >= 3");
  StepUpColouring s(base);
  SteppingUpReport r;
  r.base_k = s.base_uniformity();
  r.base_n = s.base_dimension();
  r.ell_base = ell_base;
  r.bound = 2 * ell_base + (s.base_uniformity() + 1) - 5;
  r.red = max_mono_clique(s, kRed, 0, budget);
  r.blue = max_mono_clique(s, kBlue, 0, budget);
  int observed = std::max(r.red.size, r.blue.size);
  r.bound_holds = observed < r.bound;
  std::ostringstream os;
  os << "stepup k=" << r.base_k + 1 << " vertices=" << s.derived_vertex_count()
     << " red=" << r.red.size << (r.red.exhausted ? "(incomplete)" : "")
     << " blue=" << r.blue.size << (r.blue.exhausted ? "(incomplete)" : "")
     << " bound=" << r.bound << " holds=" << (r.bound_holds ? "yes" : "no");
  r.summary = os.str();
  return r;
}

}  // namespace hx::stepup
