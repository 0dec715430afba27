#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ideals/bits.hpp"
#include "ideals/hypergraph.hpp"

namespace ideals {

/// Partial map from coordinates 0..k-1 to {p, n}. `positive` marks the
/// coordinates sent to p and is always a subset of `domain`.
struct PartialSignFunction {
  Mask domain = 0;
  Mask positive = 0;

  PartialSignFunction() = default;
  PartialSignFunction(Mask d, Mask p) : domain(d), positive(p & d) {}

  Mask negative() const noexcept { return domain & ~positive; }

  /// Coordinates where both functions are defined and differ.
  Mask disagreement(const PartialSignFunction& o) const noexcept {
    return domain & o.domain & (positive ^ o.positive);
  }

  friend bool operator==(const PartialSignFunction&, const PartialSignFunction&) = default;
};

class Family {
 public:
  Family() = default;
  explicit Family(int k) : k_(k) {
    if (k < 0 || k > kMaxUniverse) throw std::invalid_argument("family: k must be in [0, 64]");
  }
  Family(int k, std::vector<PartialSignFunction> fs) : Family(k) {
    for (const auto& f : fs) add(f);
  }

  void add(const PartialSignFunction& f) {
    if ((f.domain & ~low_bits(k_)) != 0)
      throw std::invalid_argument("family: function domain exceeds k coordinates");
    functions_.push_back(f);
  }

  int k() const noexcept { return k_; }
  std::size_t size() const noexcept { return functions_.size(); }
  const std::vector<PartialSignFunction>& functions() const noexcept { return functions_; }
  const PartialSignFunction& operator[](std::size_t i) const { return functions_.at(i); }

  bool has_duplicates() const {
    for (std::size_t i = 0; i < functions_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (functions_[i] == functions_[j]) return true;
    return false;
  }

 private:
  int k_ = 0;
  std::vector<PartialSignFunction> functions_;
};

/// Function-index set G and coordinate set D on which no two members of G disagree.
struct DaggerWitness {
  Mask functions = 0;
  Mask coords = 0;
};

inline constexpr std::size_t kMaxDaggerFamily = 25;

/// Every coordinate takes both values somewhere in the family.
inline bool is_full(const Family& f) {
  Mask pos = 0;
  Mask neg = 0;
  for (const auto& g : f.functions()) {
    pos |= g.positive;
    neg |= g.negative();
  }
  const Mask all = low_bits(f.k());
  return (pos & all) == all && (neg & all) == all;
}

/// Coordinates in the union of G's domains where all members of G defined there agree.
inline Mask conflict_free_coords(const Family& f, Mask g) {
  if (f.size() < 64 && (g >> f.size()) != 0)
    throw std::out_of_range("conflict_free_coords: function index out of range");
  Mask pos = 0;
  Mask neg = 0;
  for (Mask rest = g; rest != 0; rest &= rest - 1) {
    const auto& fn = f[static_cast<std::size_t>(std::countr_zero(rest))];
    pos |= fn.positive;
    neg |= fn.negative();
  }
  return pos ^ neg;
}

namespace detail {

/// Subset search over G, excluding each function before including it, so the
/// first G reaching a value is the earliest in that order.
struct DaggerSearch {
  const std::vector<PartialSignFunction>& fs;
  std::vector<Mask> suffix_domain;
  int target;
  int best = -1;
  DaggerWitness witness;

  bool done() const { return best >= target; }

  void run(std::size_t idx, Mask chosen, Mask pos, Mask neg) {
    if (done()) return;
    const Mask dead = pos & neg;
    if (popcount((pos ^ neg) | (suffix_domain[idx] & ~dead)) <= best) return;
    if (idx == fs.size()) {
      const int here = popcount(pos ^ neg);
      if (here > best) {
        best = here;
        witness = {chosen, pos ^ neg};
      }
      return;
    }
    run(idx + 1, chosen, pos, neg);
    const auto& f = fs[idx];
    run(idx + 1, chosen | bit(static_cast<int>(idx)), pos | f.positive, neg | f.negative());
  }
};

inline detail::DaggerSearch dagger_search(const Family& f, int target) {
  if (f.size() > kMaxDaggerFamily)
    throw std::invalid_argument("dagger: family larger than 25 functions (exhaustive cap)");
  std::vector<Mask> suffix(f.size() + 1, 0);
  for (std::size_t i = f.size(); i-- > 0;) suffix[i] = suffix[i + 1] | f[i].domain;
  DaggerSearch s{f.functions(), std::move(suffix), target, -1, {}};
  s.run(0, 0, 0, 0);
  return s;
}

}  // namespace detail

/// Largest conflict-free coordinate set over all subfamilies, with a witness.
inline DaggerWitness max_conflict_free(const Family& f) {
  return detail::dagger_search(f, kMaxUniverse + 1).witness;
}

/// Property (dagger)_n: some G and D with |D| >= n on which no two members of G disagree.
inline std::pair<bool, std::optional<DaggerWitness>> dagger_holds(const Family& f, int n) {
  auto s = detail::dagger_search(f, n);
  if (s.best >= n) return {true, s.witness};
  return {false, std::nullopt};
}

/// Full and fails (dagger)_n.
inline bool is_bounding(const Family& f, int n) {
  return is_full(f) && !dagger_holds(f, n).first;
}

/// Hypergraph on the k coordinates whose edges are the distinct nonempty domains.
inline Hypergraph to_hypergraph(const Family& f) {
  std::vector<Mask> edges;
  for (const auto& g : f.functions()) {
    if (g.domain == 0) continue;
    if (std::find(edges.begin(), edges.end(), g.domain) == edges.end()) edges.push_back(g.domain);
  }
  return Hypergraph(f.k(), std::move(edges));
}

enum class SearchOutcome { found, none_exists, budget_exhausted };

struct FamilySearchResult {
  SearchOutcome outcome = SearchOutcome::budget_exhausted;
  std::optional<Family> family;
  std::uint64_t nodes = 0;
};

namespace detail {

/// Depth-first search over minimal full families. Each step takes the first
/// (coordinate, sign) requirement not yet met and branches on every candidate
/// function meeting it; candidates tried in earlier sibling branches are
/// excluded from later ones. Any full family failing (dagger)_n contains a
/// minimal full subfamily that also fails it, so exhausting this tree proves
/// nonexistence.
class FullNonDaggerSearch {
 public:
  using Clock = std::chrono::steady_clock;

  FullNonDaggerSearch(int k, int n, Clock::time_point deadline)
      : k_(k), n_(n), deadline_(deadline) {
    // (dagger)_n already holds for a single function whose domain has n points
    for (Mask d = 1; d < (Mask{1} << k); ++d) {
      if (popcount(d) >= n) continue;
      for (Mask p = d;; p = (p - 1) & d) {
        pool_.emplace_back(d, p);
        if (p == 0) break;
      }
    }
    std::stable_sort(pool_.begin(), pool_.end(), [](const auto& a, const auto& b) {
      return popcount(a.domain) > popcount(b.domain);
    });
    excluded_.assign(pool_.size(), false);
    subsets_.push_back({0, 0});
  }

  FamilySearchResult run() {
    FamilySearchResult r;
    const bool found = dfs();
    r.nodes = nodes_;
    if (found) {
      r.outcome = SearchOutcome::found;
      Family f(k_);
      for (auto i : chosen_) f.add(pool_[i]);
      r.family = std::move(f);
    } else {
      r.outcome = timed_out_ ? SearchOutcome::budget_exhausted : SearchOutcome::none_exists;
    }
    return r;
  }

 private:
  struct Cover {
    Mask pos;
    Mask neg;
  };

  int k_;
  int n_;
  Clock::time_point deadline_;
  bool timed_out_ = false;
  std::uint64_t nodes_ = 0;
  std::vector<PartialSignFunction> pool_;
  std::vector<bool> excluded_;
  std::vector<std::size_t> chosen_;
  std::vector<Cover> subsets_;  // (pos, neg) unions of every subfamily of chosen_

  bool dfs() {
    if ((++nodes_ & 0x3FF) == 0 && Clock::now() > deadline_) timed_out_ = true;
    if (timed_out_) return false;
    Mask pos = 0;
    Mask neg = 0;
    for (auto i : chosen_) {
      pos |= pool_[i].positive;
      neg |= pool_[i].negative();
    }
    const Mask all = low_bits(k_);
    const Mask need_pos = all & ~pos;
    const Mask need_neg = all & ~neg;
    if (need_pos == 0 && need_neg == 0) return true;
    const int coord = std::countr_zero(need_pos | need_neg);
    const bool want_positive = contains(need_pos, coord);

    std::vector<std::size_t> tried;
    bool found = false;
    for (std::size_t i = 0; i < pool_.size() && !found && !timed_out_; ++i) {
      if (excluded_[i]) continue;
      const auto& f = pool_[i];
      if (!contains(f.domain, coord) || contains(f.positive, coord) != want_positive) continue;
      const std::size_t before = subsets_.size();
      if (extend(f)) {
        chosen_.push_back(i);
        found = dfs();
        if (found) return true;
        chosen_.pop_back();
      }
      subsets_.resize(before);
      excluded_[i] = true;
      tried.push_back(i);
    }
    for (auto i : tried) excluded_[i] = false;
    return found;
  }

  // Adds every subfamily containing f; false if one of them reaches n conflict-free coordinates.
  bool extend(const PartialSignFunction& f) {
    const std::size_t count = subsets_.size();
    for (std::size_t s = 0; s < count; ++s) {
      const Cover c{subsets_[s].pos | f.positive, subsets_[s].neg | f.negative()};
      if (popcount(c.pos ^ c.neg) >= n_) return false;
      subsets_.push_back(c);
    }
    return true;
  }
};

}  // namespace detail

/// Full family on k coordinates failing (dagger)_n, or a proof that none exists.
inline FamilySearchResult search_full_non_dagger(int k, int n, std::chrono::duration<double> budget) {
  if (k < 1 || k > 6) throw std::invalid_argument("search_full_non_dagger: k must be in [1, 6]");
  if (n < 1) throw std::invalid_argument("search_full_non_dagger: n must be >= 1");
  using Clock = detail::FullNonDaggerSearch::Clock;
  detail::FullNonDaggerSearch s(
      k, n, Clock::now() + std::chrono::duration_cast<Clock::duration>(budget));
  auto r = s.run();
  if (r.family && (!is_full(*r.family) || dagger_holds(*r.family, n).first))
    throw std::logic_error("search_full_non_dagger: produced an invalid family");
  return r;
}

}  // namespace ideals
