#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ideals/bits.hpp"
#include "ideals/counting.hpp"
#include "ideals/hypergraph.hpp"
#include "ideals/trees.hpp"

namespace ideals {

/// Economical hypergraph up to vertex relabeling: how many vertices carry each
/// incidence type. A type is a nonempty subset of the m edges, stored as a mask
/// indexing `counts` (counts[0] is unused and always 0).
struct TypeProfile {
  int n = 0;  // partition size limit the profile was built against
  int m = 0;  // edge count
  std::vector<int> counts;

  int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

  /// Largest exactly-once count over all edge subsets P.
  int max_exactly_once() const {
    int best = 0;
    for (Mask p = 1; p < (Mask{1} << m); ++p) {
      int sum = 0;
      for (Mask t = 1; t < (Mask{1} << m); ++t)
        if (popcount(t & p) == 1) sum += counts[t];
      best = std::max(best, sum);
    }
    return best;
  }

  bool valid() const {
    if (m < 1 || m > n || counts.size() != (std::size_t{1} << m)) return false;
    if (counts[0] != 0) return false;
    for (int c : counts)
      if (c < 0) return false;
    for (int i = 0; i < m; ++i)
      if (counts[bit(i)] < 1) return false;
    return max_exactly_once() <= n;
  }
};

struct SolveResult {
  int value = 0;
  std::optional<TypeProfile> witness;
  bool proved_optimal = false;
  std::uint64_t nodes = 0;
};

/// Vertices numbered by type in ascending mask order; edge i collects every
/// vertex whose type contains i.
inline Hypergraph expand_witness(const TypeProfile& p) {
  std::vector<Mask> edges(static_cast<std::size_t>(p.m), 0);
  int v = 0;
  for (Mask t = 1; t < (Mask{1} << p.m); ++t) {
    for (int c = 0; c < p.counts[t]; ++c, ++v)
      for (int i : to_indices(t)) edges[static_cast<std::size_t>(i)] |= bit(v);
  }
  return Hypergraph(v, std::move(edges));
}

/// Inverse of expand_witness for economical hypergraphs with at most n edges.
inline TypeProfile type_profile(const Hypergraph& h, int n) {
  TypeProfile p;
  p.n = n;
  p.m = static_cast<int>(h.edge_count());
  if (p.m > 20) throw std::invalid_argument("type_profile: too many edges");
  p.counts.assign(std::size_t{1} << p.m, 0);
  for (int v = 0; v < h.vertex_count(); ++v) {
    Mask t = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i)
      if (contains(h.edges()[i], v)) t |= bit(static_cast<int>(i));
    ++p.counts[t];
  }
  p.counts[0] = 0;
  return p;
}

/// floor(sum_{k=1}^n n/k), computed exactly in integers.
inline int harmonic_cap(int n) {
  // n * H_n = n * L / lcm-free: accumulate numerator over n! which fits for n <= 20
  std::int64_t num = 0;
  std::int64_t den = 1;
  for (int k = 1; k <= n; ++k) den *= k;
  for (int k = 1; k <= n; ++k) num += den / k;
  return static_cast<int>((num * n) / den);
}

namespace detail {

/// Branch-and-bound over incidence-type count vectors for a fixed edge count m.
///
/// Variables are ordered by descending type cardinality, ties broken by
/// ascending mask. Every edge subset P yields the constraint
/// sum_{t : |t & P| = 1} counts[t] <= n. Singleton types must be >= 1.
class TypeSearch {
 public:
  using Clock = std::chrono::steady_clock;

  TypeSearch(int n, int m, int incumbent, Clock::time_point deadline)
      : n_(n), m_(m), full_((Mask{1} << m) - 1), best_(incumbent), deadline_(deadline) {
    for (Mask t = 1; t <= full_; ++t) order_.push_back(t);
    std::stable_sort(order_.begin(), order_.end(), [](Mask a, Mask b) {
      return popcount(a) > popcount(b);
    });
    covers_.resize(full_ + 1);
    for (Mask t = 1; t <= full_; ++t)
      for (Mask p = 1; p <= full_; ++p)
        if (popcount(t & p) == 1) covers_[t].push_back(static_cast<std::uint32_t>(p));
    residual_.assign(full_ + 1, n);
    counts_.assign(full_ + 1, 0);
    build_symmetry();
    build_duals();
  }

  bool run() {
    dfs(0, 0);
    return !timed_out_;
  }

  int best() const { return best_; }
  const std::optional<TypeProfile>& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  int n_;
  int m_;
  Mask full_;
  int best_;
  Clock::time_point deadline_;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
  std::vector<Mask> order_;
  std::vector<std::vector<std::uint32_t>> covers_;
  std::vector<int> residual_;
  std::vector<int> counts_;
  std::optional<TypeProfile> witness_;

  // edge permutations acting on types: perm_types_[q][t] = image of t
  std::vector<std::vector<Mask>> perm_types_;
  std::vector<std::size_t> class_start_;  // order_ positions where cardinality drops

  // Dual weights per order_ position: for every remaining type the weighted
  // number of covering constraints is >= 1, so sum_P w_P * residual_P bounds
  // the remaining total.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> duals_;

  void build_symmetry() {
    std::vector<int> perm(static_cast<std::size_t>(m_));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<Mask> img(full_ + 1, 0);
      for (Mask t = 0; t <= full_; ++t) {
        Mask r = 0;
        for (int i : to_indices(t)) r |= bit(perm[static_cast<std::size_t>(i)]);
        img[t] = r;
      }
      bool identity = true;
      for (int i = 0; i < m_; ++i) identity = identity && perm[static_cast<std::size_t>(i)] == i;
      if (!identity) perm_types_.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t i = 1; i < order_.size(); ++i)
      if (popcount(order_[i]) != popcount(order_[i - 1])) class_start_.push_back(i);
    class_start_.push_back(order_.size());
  }

  // Size-uniform weights: a constraint P of size s gets weight y_s, so a type
  // of size k is covered sum_s y_s * k * C(m-k, s-1) times. Each cardinality
  // class boundary gets the y minimizing sum_s y_s * n * C(m,s) subject to
  // coverage >= 1 for every size <= the class size (types of larger size are
  // already fixed). Solved by brute force over supports of size <= 2.
  void build_duals() {
    auto binom = [](int a, int b) -> double {
      if (b < 0 || b > a) return 0.0;
      double r = 1;
      for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
      return r;
    };
    auto coverage = [&](int k, int s) { return k * binom(m_ - k, s - 1); };
    duals_.assign(order_.size() + 1, {});
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
      const int kmax = popcount(order_[pos]);
      std::vector<double> best_y;
      double best_cost = 1e300;
      for (int s1 = 1; s1 <= m_; ++s1) {
        for (int s2 = s1; s2 <= m_; ++s2) {
          // try y on {s1, s2}; choose y to satisfy coverage for all k <= kmax via a
          // small grid of extreme points: solve pairs of tight constraints
          for (int ka = 1; ka <= kmax; ++ka) {
            for (int kb = ka; kb <= kmax; ++kb) {
              double a11 = coverage(ka, s1), a12 = s2 == s1 ? 0 : coverage(ka, s2);
              double a21 = coverage(kb, s1), a22 = s2 == s1 ? 0 : coverage(kb, s2);
              std::vector<double> y(static_cast<std::size_t>(m_ + 1), 0.0);
              if (s1 == s2 || ka == kb) {
                if (a11 <= 0) continue;
                y[static_cast<std::size_t>(s1)] = 1.0 / a11;
              } else {
                double det = a11 * a22 - a12 * a21;
                if (std::abs(det) < 1e-12) continue;
                double y1 = (a22 - a12) / det;
                double y2 = (a11 - a21) / det;
                if (y1 < 0 || y2 < 0) continue;
                y[static_cast<std::size_t>(s1)] = y1;
                y[static_cast<std::size_t>(s2)] = y2;
              }
              bool feasible = true;
              for (int k = 1; k <= kmax && feasible; ++k) {
                double cov = 0;
                for (int s = 1; s <= m_; ++s) cov += y[static_cast<std::size_t>(s)] * coverage(k, s);
                feasible = cov >= 1.0 - 1e-12;
              }
              if (!feasible) continue;
              double cost = 0;
              for (int s = 1; s <= m_; ++s) cost += y[static_cast<std::size_t>(s)] * binom(m_, s);
              if (cost < best_cost) {
                best_cost = cost;
                best_y = y;
              }
            }
          }
        }
      }
      for (Mask p = 1; p <= full_; ++p) {
        const double w = best_y.empty() ? 0.0 : best_y[static_cast<std::size_t>(popcount(p))];
        if (w > 0) duals_[pos].push_back({static_cast<std::uint32_t>(p), w});
      }
    }
  }

  int slack(Mask t) const {
    int s = n_;
    for (auto p : covers_[t]) s = std::min(s, residual_[p]);
    return s;
  }

  int remaining_bound(std::size_t pos) const {
    int by_var = 0;
    for (std::size_t i = pos; i < order_.size(); ++i) by_var += slack(order_[i]);
    double by_dual = 0;
    for (auto [p, w] : duals_[pos]) by_dual += w * residual_[p];
    return std::min(by_var, static_cast<int>(by_dual + 1e-9));
  }

  // Lex-leader test on completed cardinality classes: the assignment read in
  // order_ must not be lexicographically smaller than any edge-relabeled copy.
  bool lex_leader(std::size_t upto) const {
    for (const auto& img : perm_types_) {
      for (std::size_t i = 0; i < upto; ++i) {
        const Mask t = order_[i];
        // value of the permuted vector at t is counts[img^{-1}(t)]; equivalently
        // compare counts[t] against counts of the preimage. Using the forward
        // image of a permutation group element is enough because the group is
        // closed under inverses.
        const int mine = counts_[t];
        const int theirs = counts_[img[t]];
        if (mine > theirs) break;
        if (mine < theirs) return false;
      }
    }
    return true;
  }

  void record(int total) {
    best_ = total;
    TypeProfile p;
    p.n = n_;
    p.m = m_;
    p.counts.assign(full_ + 1, 0);
    for (Mask t = 1; t <= full_; ++t) p.counts[t] = counts_[t];
    witness_ = std::move(p);
  }

  void apply(Mask t, int delta) {
    for (auto p : covers_[t]) residual_[p] -= delta;
    counts_[t] += delta;
  }

  void dfs(std::size_t pos, int total) {
    if (timed_out_) return;
    if ((++nodes_ & 0xFFFF) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (std::binary_search(class_start_.begin(), class_start_.end(), pos) &&
        !lex_leader(pos))
      return;
    if (pos == order_.size()) {
      if (total > best_) record(total);
      return;
    }
    if (total + remaining_bound(pos) <= best_) return;
    const Mask t = order_[pos];
    const int lo = popcount(t) == 1 ? 1 : 0;
    const int hi = slack(t);
    if (hi < lo) return;
    apply(t, hi);
    for (int c = hi; c >= lo; --c) {
      dfs(pos + 1, total + c);
      if (timed_out_) {
        apply(t, -c);
        return;
      }
      apply(t, -1);
    }
    apply(t, -(lo - 1));
  }
};

}  // namespace detail

/// Exact H(n) by branch-and-bound over economical type profiles with m <= n edges.
///
/// `budget` bounds wall time; on expiry the best profile found so far is
/// returned with proved_optimal = false unless it already meets the
/// harmonic cap floor(sum n/k).
inline SolveResult exact_H(int n, std::chrono::duration<double> budget) {
  if (n < 1 || n > 7) throw std::invalid_argument("exact_H: n must be in [1, 7]");
  using Clock = detail::TypeSearch::Clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
  const int cap = harmonic_cap(n);
  SolveResult result;
  bool exhausted = true;
  for (int m = 1; m <= n; ++m) {
    if (result.value >= cap) break;
    detail::TypeSearch search(n, m, result.value, deadline);
    exhausted = search.run() && exhausted;
    result.nodes += search.nodes();
    if (search.witness() && search.best() > result.value) {
      result.value = search.best();
      result.witness = search.witness();
    }
  }
  result.proved_optimal = exhausted || result.value >= cap;
  return result;
}

struct WitnessSearchOptions {
  std::uint64_t seed = 0;
  std::chrono::duration<double> budget{60.0};
  std::uint64_t max_steps = 50'000'000;  // single incidence flips evaluated
  std::uint64_t restart_every = 20'000;
};

struct WitnessSearchResult {
  std::optional<Hypergraph> witness;
  std::uint64_t steps = 0;
  bool from_tree = false;
};

/// Drops vertices v >= keep, then empty and repeated edges.
inline Hypergraph restrict_vertices(const Hypergraph& h, int keep) {
  std::vector<Mask> edges;
  for (Mask e : h.edges()) {
    const Mask r = e & low_bits(keep);
    if (r != 0 && std::find(edges.begin(), edges.end(), r) == edges.end()) edges.push_back(r);
  }
  return Hypergraph(keep, std::move(edges));
}

namespace detail {

/// Excess of a candidate: isolated vertices weigh n + 1 each, and every edge
/// subset P adds max(0, |exactly_once(P)| - n).
inline int witness_cost(const std::vector<Mask>& edges, int n, Mask universe) {
  Mask covered = 0;
  for (Mask e : edges) covered |= e;
  int cost = popcount(universe & ~covered) * (n + 1);
  const std::size_t m = edges.size();
  std::vector<Mask> once(std::size_t{1} << m, 0);
  std::vector<Mask> multi(std::size_t{1} << m, 0);
  for (std::size_t p = 1; p < once.size(); ++p) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(p));
    const std::size_t rest = p & (p - 1);
    const Mask e = edges[low];
    multi[p] = multi[rest] | (once[rest] & e);
    once[p] = (once[rest] ^ e) & ~multi[p];
    cost += std::max(0, popcount(once[p]) - n);
  }
  return cost;
}

}  // namespace detail

/// Hypergraph on v_target vertices with no isolated vertex and no partition
/// larger than n, verified by the exhaustive partition checker.
///
/// Targets up to k_n come from the branch hypergraph of T_n (trimmed to the
/// target). Larger targets run seeded simulated annealing over n edges; a miss
/// says nothing about existence.
inline WitnessSearchResult search_witness(int v_target, int n, const WitnessSearchOptions& opt) {
  if (n < 1 || v_target < 1) throw std::invalid_argument("search_witness: need n >= 1 and v_target >= 1");
  if (v_target > kMaxUniverse) throw std::invalid_argument("search_witness: v_target above 64");
  WitnessSearchResult result;
  auto verified = [&](const Hypergraph& h) {
    return isolated_vertices(h) == 0 && h.vertex_count() == v_target && !partition_larger_than(h, n);
  };
  if (n <= 20 && v_target <= k_value(n)) {
    auto h = restrict_vertices(branch_hypergraph(build_T(n)), v_target);
    if (verified(h)) {
      result.witness = std::move(h);
      result.from_tree = true;
    }
    return result;
  }
  if (n > 16) throw std::invalid_argument("search_witness: annealing supports n <= 16");

  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(opt.budget);
  std::mt19937_64 rng(opt.seed);
  const Mask universe = low_bits(v_target);
  const auto m = static_cast<std::size_t>(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Mask> edges(m, 0);
  int cost = 0;
  double temperature = 1.0;
  for (std::uint64_t step = 0; step < opt.max_steps; ++step) {
    if (step % opt.restart_every == 0) {
      for (auto& e : edges) e = 0;
      for (int v = 0; v < v_target; ++v) edges[rng() % m] |= bit(v);
      cost = detail::witness_cost(edges, n, universe);
      temperature = 1.0;
    }
    if ((step & 0x3FF) == 0 && Clock::now() > deadline) break;
    result.steps = step + 1;
    const auto e = static_cast<std::size_t>(rng() % m);
    const int v = static_cast<int>(rng() % static_cast<std::uint64_t>(v_target));
    edges[e] ^= bit(v);
    const int next = detail::witness_cost(edges, n, universe);
    if (next <= cost || unit(rng) < std::exp((cost - next) / temperature)) {
      cost = next;
    } else {
      edges[e] ^= bit(v);
    }
    temperature = std::max(0.05, temperature * 0.9995);
    if (cost == 0) {
      auto h = restrict_vertices(Hypergraph(v_target, [&] {
                                   std::vector<Mask> dedup;
                                   for (Mask x : edges)
                                     if (x != 0 && std::find(dedup.begin(), dedup.end(), x) == dedup.end())
                                       dedup.push_back(x);
                                   return dedup;
                                 }()),
                                 v_target);
      if (verified(h)) {
        result.witness = std::move(h);
        return result;
      }
      throw std::logic_error("search_witness: zero-cost candidate failed verification");
    }
  }
  return result;
}

}  // namespace ideals
