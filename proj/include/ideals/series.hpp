#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "ideals/rational.hpp"

namespace ideals {

/// 2n series on consecutive blocks I_1, ..., I_M of even lengths b_m.
///
/// Block m is special for series pair (j, n+j) where j = ((m - 1) mod n) + 1.
/// On it, series i <= n with i != j read +1/m at odd and -1/m at even
/// positions, series j the reverse, series n+j reads +1/b_m at odd and -1/b_m
/// at even positions, and every other series n+i is zero.
struct SeriesSpec {
  int n = 0;
  std::vector<Integer> lengths;  // b_1..b_M
  std::vector<Integer> starts;   // first index of each block (always odd)

  int blocks() const { return static_cast<int>(lengths.size()); }
  int series_count() const { return 2 * n; }
  int special(int m) const { return (m - 1) % n + 1; }
  const Integer& length(int m) const { return lengths.at(static_cast<std::size_t>(m - 1)); }
  const Integer& start(int m) const { return starts.at(static_cast<std::size_t>(m - 1)); }
  Integer end() const { return starts.back() + lengths.back() - 1; }

  /// b_1 + ... + b_{m-1}
  Integer prefix_length(int m) const { return start(m) - 1; }

  /// Block containing global index k (1-based).
  int block_of(const Integer& k) const {
    if (k < 1 || k > end()) throw std::out_of_range("series: index beyond truncation");
    auto it = std::upper_bound(starts.begin(), starts.end(), k);
    return static_cast<int>(it - starts.begin());
  }
};

/// Minimal admissible lengths: b_1 = 2, b_{m+1} the least even integer >= m^3 (b_1 + ... + b_m).
inline SeriesSpec build_spec(int n, int blocks) {
  if (n < 2) throw std::invalid_argument("build_spec: n must be >= 2");
  if (blocks < 1) throw std::invalid_argument("build_spec: need at least one block");
  SeriesSpec s;
  s.n = n;
  Integer total = 0;
  for (int m = 1; m <= blocks; ++m) {
    Integer b = 2;
    if (m > 1) {
      const Integer prev = m - 1;
      b = prev * prev * prev * total;
      if (b % 2 != 0) b += 1;
    }
    s.starts.push_back(total + 1);
    s.lengths.push_back(b);
    total += b;
  }
  return s;
}

/// a^i_k for series i in 1..2n and global index k.
inline Rational term(const SeriesSpec& s, int i, const Integer& k) {
  if (i < 1 || i > s.series_count()) throw std::out_of_range("term: series index out of range");
  const int m = s.block_of(k);
  const int j = s.special(m);
  const bool odd = (k % 2) != 0;
  const int sign = odd ? 1 : -1;
  if (i <= s.n) {
    const Rational mag(1, m);
    return i == j ? Rational(-sign) * mag : Rational(sign) * mag;
  }
  if (i == s.n + j) return Rational(Integer(sign), s.length(m));
  return 0;
}

/// Per-block counts of selected odd and even positions.
struct BlockPattern {
  std::vector<Integer> odd;
  std::vector<Integer> even;

  static BlockPattern empty(const SeriesSpec& s) {
    return {std::vector<Integer>(s.lengths.size(), 0), std::vector<Integer>(s.lengths.size(), 0)};
  }

  Integer imbalance(int m) const {
    return odd.at(static_cast<std::size_t>(m - 1)) - even.at(static_cast<std::size_t>(m - 1));
  }

  bool fits(const SeriesSpec& s) const {
    if (odd.size() != s.lengths.size() || even.size() != s.lengths.size()) return false;
    for (std::size_t m = 0; m < odd.size(); ++m) {
      const Integer half = s.lengths[m] / 2;
      if (odd[m] < 0 || even[m] < 0 || odd[m] > half || even[m] > half) return false;
    }
    return true;
  }
};

/// Every odd position in the blocks special for series 1, nothing elsewhere.
inline BlockPattern demo_pattern(const SeriesSpec& s) {
  auto p = BlockPattern::empty(s);
  for (int m = 1; m <= s.blocks(); ++m)
    if (s.special(m) == 1) p.odd[static_cast<std::size_t>(m - 1)] = s.length(m) / 2;
  return p;
}

namespace detail {

inline Integer random_below_eq(const Integer& bound, std::mt19937_64& rng) {
  if (bound <= 0) return 0;
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  for (;;) {
    Integer r = 0;
    for (unsigned done = 0; done < bits; done += 64) {
      r <<= 64;
      r += rng();
    }
    r >>= (64 - bits % 64) % 64;
    if (r <= bound) return r;
  }
}

}  // namespace detail

/// Random pattern mixing uniform blocks with extreme all-odd or all-even blocks.
inline BlockPattern random_pattern(const SeriesSpec& s, std::mt19937_64& rng) {
  auto p = BlockPattern::empty(s);
  for (std::size_t m = 0; m < s.lengths.size(); ++m) {
    const Integer half = s.lengths[m] / 2;
    switch (rng() % 4) {
      case 0:
        p.odd[m] = half;
        p.even[m] = detail::random_below_eq(half / 8, rng);
        break;
      case 1:
        p.even[m] = half;
        p.odd[m] = detail::random_below_eq(half / 8, rng);
        break;
      default:
        p.odd[m] = detail::random_below_eq(half, rng);
        p.even[m] = detail::random_below_eq(half, rng);
    }
  }
  return p;
}

/// Signed sum of series i over the selection within block m.
inline Rational block_contribution(const SeriesSpec& s, const BlockPattern& p, int i, int m) {
  const int j = s.special(m);
  const Integer delta = p.imbalance(m);
  if (i <= s.n) return i == j ? Rational(-delta, m) : Rational(delta, m);
  if (i == s.n + j) return Rational(delta, s.length(m));
  return 0;
}

/// Cumulative sums at the end of each block: sums[i-1][m-1] for series i, block m.
struct BoundaryReport {
  std::vector<std::vector<Rational>> sums;

  const Rational& at(int i, int m) const {
    return sums.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(m - 1));
  }
  /// Sum before block m starts.
  Rational before(int i, int m) const { return m == 1 ? Rational(0) : at(i, m - 1); }
};

inline BoundaryReport boundary_sums(const SeriesSpec& s, const BlockPattern& p) {
  if (!p.fits(s)) throw std::invalid_argument("boundary_sums: pattern does not fit spec");
  BoundaryReport r;
  r.sums.assign(static_cast<std::size_t>(s.series_count()), {});
  for (int i = 1; i <= s.series_count(); ++i) {
    Rational acc = 0;
    for (int m = 1; m <= s.blocks(); ++m) {
      acc += block_contribution(s, p, i, m);
      r.sums[static_cast<std::size_t>(i - 1)].push_back(acc);
    }
  }
  return r;
}

/// Explicit selection within the first blocks, as global indices.
using IndexSelection = std::vector<Integer>;

/// Term-by-term cumulative sums over an explicit sorted selection, reported for
/// the first `blocks` blocks only.
inline BoundaryReport explicit_boundary_sums(const SeriesSpec& s, int blocks,
                                             const IndexSelection& selected) {
  BoundaryReport r;
  r.sums.assign(static_cast<std::size_t>(s.series_count()), {});
  for (int i = 1; i <= s.series_count(); ++i) {
    Rational acc = 0;
    std::size_t next = 0;
    for (int m = 1; m <= blocks; ++m) {
      const Integer last = s.start(m) + s.length(m) - 1;
      while (next < selected.size() && selected[next] <= last) acc += term(s, i, selected[next++]);
      r.sums[static_cast<std::size_t>(i - 1)].push_back(acc);
    }
  }
  return r;
}

/// Block aggregate of an explicit (sorted) selection.
inline BlockPattern pattern_of(const SeriesSpec& s, const IndexSelection& selected) {
  auto p = BlockPattern::empty(s);
  for (const auto& k : selected) {
    const auto m = static_cast<std::size_t>(s.block_of(k) - 1);
    if (k % 2 != 0) {
      p.odd[m] += 1;
    } else {
      p.even[m] += 1;
    }
  }
  return p;
}

struct ClaimTrigger {
  int block = 0;
  int series = 0;      // the special series j of the block
  Integer imbalance;
  bool own_negative = false;      // series j below 0 at block end
  bool others_positive = false;   // every other i <= n above 0 at block end
};

struct ClaimAudit {
  std::vector<ClaimTrigger> triggers;
  int prior_bound_violations = 0;
  int violations = 0;

  bool passed() const { return violations == 0 && prior_bound_violations == 0; }
};

/// Finite sign implications on every block whose imbalance beats m (b_1 + ... + b_{m-1}).
///
/// Also checks, for every block m and series i <= n, that the cumulative sum
/// before block m is below b_1 + ... + b_{m-1} in absolute value (for m = 1
/// both sides are 0 and the sum must vanish).
inline ClaimAudit claim_audit(const SeriesSpec& s, const BlockPattern& p) {
  const auto report = boundary_sums(s, p);
  ClaimAudit a;
  for (int m = 1; m <= s.blocks(); ++m) {
    const Integer prefix = s.prefix_length(m);
    for (int i = 1; i <= s.n; ++i) {
      const Rational before = report.before(i, m);
      const Rational mag = before < 0 ? Rational(-before) : before;
      const bool ok = m == 1 ? before == 0 : mag < prefix;
      if (!ok) ++a.prior_bound_violations;
    }
    const Integer delta = p.imbalance(m);
    if (delta <= Integer(m) * prefix) continue;
    ClaimTrigger t;
    t.block = m;
    t.series = s.special(m);
    t.imbalance = delta;
    t.own_negative = report.at(t.series, m) < 0;
    t.others_positive = true;
    for (int i = 1; i <= s.n; ++i)
      if (i != t.series && !(report.at(i, m) > 0)) t.others_positive = false;
    if (!t.own_negative || !t.others_positive) ++a.violations;
    a.triggers.push_back(std::move(t));
  }
  return a;
}

enum class Trend { rising, falling, oscillating, flat };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::rising: return "rising";
    case Trend::falling: return "falling";
    case Trend::oscillating: return "oscillating";
    case Trend::flat: return "flat";
  }
  return "?";
}

struct SeriesVerdict {
  int series = 0;
  Trend trend = Trend::flat;
  Rational positive_part;  // sum of selected positive terms
  Rational negative_part;  // sum of selected negative terms (<= 0)
  Rational final_sum;
};

/// Trend of the boundary sums over the last ceil(M/2) blocks (measured from the
/// boundary just before that window), plus the positive and negative parts of
/// the selected terms.
inline std::vector<SeriesVerdict> classify_pattern(const SeriesSpec& s, const BlockPattern& p) {
  const auto report = boundary_sums(s, p);
  const int window = (s.blocks() + 1) / 2;
  std::vector<SeriesVerdict> out;
  for (int i = 1; i <= s.series_count(); ++i) {
    SeriesVerdict v;
    v.series = i;
    bool up = false;
    bool down = false;
    for (int m = s.blocks() - window + 1; m <= s.blocks(); ++m) {
      const Rational d = report.at(i, m) - report.before(i, m);
      up = up || d > 0;
      down = down || d < 0;
    }
    v.trend = up && down ? Trend::oscillating : up ? Trend::rising : down ? Trend::falling : Trend::flat;
    for (int m = 1; m <= s.blocks(); ++m) {
      const auto idx = static_cast<std::size_t>(m - 1);
      const int j = s.special(m);
      Rational step;
      Integer up_count;
      Integer down_count;
      if (i <= s.n) {
        step = Rational(1, m);
        up_count = i == j ? p.even[idx] : p.odd[idx];
        down_count = i == j ? p.odd[idx] : p.even[idx];
      } else if (i == s.n + j) {
        step = Rational(Integer(1), s.length(m));
        up_count = p.odd[idx];
        down_count = p.even[idx];
      } else {
        continue;
      }
      v.positive_part += step * up_count;
      v.negative_part -= step * down_count;
    }
    v.final_sum = report.at(i, s.blocks());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ideals
