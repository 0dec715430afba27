#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ideals/rational.hpp"
#include "ideals/series.hpp"

namespace ideals {

/// Finite window a^i_k, i < count, 1 <= k <= N.
struct TruncatedSeriesFamily {
  std::vector<std::vector<Rational>> terms;  // terms[i][k - 1]

  int count() const { return static_cast<int>(terms.size()); }
  int length() const { return terms.empty() ? 0 : static_cast<int>(terms.front().size()); }
  const Rational& at(int i, int k) const {
    return terms.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k - 1));
  }

  void validate() const {
    if (terms.empty()) throw std::invalid_argument("series family: no series");
    for (const auto& t : terms)
      if (t.size() != terms.front().size())
        throw std::invalid_argument("series family: series have different lengths");
  }

  /// The 2n constructed series restricted to indices 1..N (N capped at the spec's end).
  static TruncatedSeriesFamily from_spec(const SeriesSpec& s, int window) {
    const Integer end = s.end();
    const int n = end < window ? static_cast<int>(end) : window;
    TruncatedSeriesFamily f;
    for (int i = 1; i <= s.series_count(); ++i) {
      std::vector<Rational> row;
      row.reserve(static_cast<std::size_t>(n));
      for (int k = 1; k <= n; ++k) row.push_back(term(s, i, k));
      f.terms.push_back(std::move(row));
    }
    return f;
  }
};

/// Index set over 1..N as a membership vector; entry k - 1 stands for index k.
using IndexSet = std::vector<bool>;

inline std::vector<int> members(const IndexSet& s) {
  std::vector<int> out;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k]) out.push_back(static_cast<int>(k) + 1);
  return out;
}

/// Nested sets C_0 ⊇ C_1 ⊇ ... and thresholds 0 = k_0 < k_1 < ...
///
/// Level l is achieved when thresholds[l + 1] exists: the series-0 sum over
/// C_l ∩ (k_l, k_{l+1}] is then at least 1. `nonnegative_side[l]` records
/// whether C_l kept the terms of series l that are >= 0 (level 0 always does).
struct TameChainCertificate {
  int window = 0;
  std::vector<IndexSet> sets;
  std::vector<int> thresholds;
  std::vector<Rational> block_sums;
  std::vector<bool> nonnegative_side;
  int requested_depth = 0;

  int achieved_levels() const { return static_cast<int>(block_sums.size()); }
  bool complete() const { return achieved_levels() == requested_depth + 1; }
};

namespace detail {

inline Rational positive_mass(const TruncatedSeriesFamily& fam, const IndexSet& set, int after) {
  Rational s = 0;
  for (int k = after + 1; k <= fam.length(); ++k)
    if (set[static_cast<std::size_t>(k - 1)] && fam.at(0, k) > 0) s += fam.at(0, k);
  return s;
}

}  // namespace detail

/// How a level picks between the two sign classes of C_{l-1}.
enum class TameSidePolicy {
  more_mass,            // side with more series-0 mass past k_l, nonnegative on ties
  prefer_nonnegative,   // nonnegative side unless it has no mass left
  prefer_negative,      // negative side unless it has no mass left
};

/// Runs the tame-set recursion for series 0 up to level `depth` inside the window.
///
/// C_0 keeps the indices where series 0 is >= 0. Level l splits C_{l-1} by the
/// sign of series l (zeros go with the nonnegative side) and keeps a side chosen
/// by `policy`. The
/// next threshold is the least index whose running block sum reaches 1. The
/// recursion stops early when the window runs out.
inline TameChainCertificate build_tame_chain(const TruncatedSeriesFamily& fam, int depth,
                                             TameSidePolicy policy = TameSidePolicy::more_mass) {
  fam.validate();
  if (depth < 0) throw std::invalid_argument("build_tame_chain: depth must be >= 0");
  const int window = fam.length();
  TameChainCertificate cert;
  cert.window = window;
  cert.requested_depth = depth;
  cert.thresholds.push_back(0);

  IndexSet current(static_cast<std::size_t>(window), true);
  for (int level = 0; level <= depth && level < fam.count(); ++level) {
    IndexSet nonneg(current.size(), false);
    IndexSet neg(current.size(), false);
    for (int k = 1; k <= window; ++k) {
      const auto idx = static_cast<std::size_t>(k - 1);
      if (!current[idx]) continue;
      (fam.at(level, k) >= 0 ? nonneg : neg)[idx] = true;
    }
    const int after = cert.thresholds.back();
    bool keep_nonneg = true;
    if (level > 0) {
      const Rational up = detail::positive_mass(fam, nonneg, after);
      const Rational down = detail::positive_mass(fam, neg, after);
      switch (policy) {
        case TameSidePolicy::more_mass: keep_nonneg = up >= down; break;
        case TameSidePolicy::prefer_nonnegative: keep_nonneg = up > 0 || down == 0; break;
        case TameSidePolicy::prefer_negative: keep_nonneg = down == 0 && up > 0; break;
      }
    }
    current = keep_nonneg ? nonneg : neg;
    cert.sets.push_back(current);
    cert.nonnegative_side.push_back(keep_nonneg);

    Rational acc = 0;
    std::optional<int> next;
    for (int k = after + 1; k <= window; ++k) {
      if (!current[static_cast<std::size_t>(k - 1)]) continue;
      acc += fam.at(0, k);
      if (acc >= 1) {
        next = k;
        break;
      }
    }
    if (!next) break;
    cert.thresholds.push_back(*next);
    cert.block_sums.push_back(acc);
  }
  return cert;
}

/// Union over achieved levels of C_l ∩ (k_l, k_{l+1}].
inline IndexSet assemble_A(const TameChainCertificate& cert) {
  IndexSet a(static_cast<std::size_t>(cert.window), false);
  for (int level = 0; level < cert.achieved_levels(); ++level) {
    const auto& c = cert.sets.at(static_cast<std::size_t>(level));
    const int lo = cert.thresholds.at(static_cast<std::size_t>(level));
    const int hi = cert.thresholds.at(static_cast<std::size_t>(level) + 1);
    for (int k = lo + 1; k <= hi; ++k)
      if (c[static_cast<std::size_t>(k - 1)]) a[static_cast<std::size_t>(k - 1)] = true;
  }
  return a;
}

/// Union of each set restricted to [cutoff, N].
inline IndexSet combine_tails(const std::vector<IndexSet>& sets, const std::vector<int>& cutoffs) {
  if (sets.size() != cutoffs.size()) throw std::invalid_argument("combine_tails: length mismatch");
  std::size_t window = 0;
  for (const auto& s : sets) window = std::max(window, s.size());
  IndexSet out(window, false);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t k = 0; k < sets[i].size(); ++k)
      if (sets[i][k] && static_cast<int>(k) + 1 >= cutoffs[i]) out[k] = true;
  return out;
}

}  // namespace ideals
