#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ideals/hypergraph.hpp"
#include "ideals/rational.hpp"

namespace ideals {

/// Euler-Mascheroni constant to 30 digits.
inline constexpr const char* kEulerGamma = "0.577215664901532860606512090082";

/// k_1 = 1, k_n = floor(n/2) + k_{floor(n/2)} + k_{floor((n+1)/2)}. Index 0 is unused.
inline std::vector<std::int64_t> k_sequence(int nmax) {
  if (nmax < 1) throw std::invalid_argument("k_sequence: nmax must be >= 1");
  std::vector<std::int64_t> k(static_cast<std::size_t>(nmax) + 1, 0);
  k[1] = 1;
  for (int n = 2; n <= nmax; ++n)
    k[static_cast<std::size_t>(n)] =
        n / 2 + k[static_cast<std::size_t>(n / 2)] + k[static_cast<std::size_t>((n + 1) / 2)];
  return k;
}

inline std::int64_t k_value(int n) { return k_sequence(n)[static_cast<std::size_t>(n)]; }

/// sum_{k=1}^n n/k
inline Rational upper_bound_H(int n) {
  if (n < 1) throw std::invalid_argument("upper_bound_H: n must be >= 1");
  Rational s = 0;
  for (int k = 1; k <= n; ++k) s += Rational(n, k);
  return s;
}

struct IneqAudit {
  Integer lhs;
  Integer rhs;
  bool holds = false;
};

/// sum_{k=1}^{j+1} m_k C(n-k, j-k+1) <= n C(n, j) for an economical hypergraph
/// with no partition larger than n.
inline IneqAudit ineq_j_audit(const Hypergraph& h, int n, int j) {
  if (j < 0 || j >= n) throw std::invalid_argument("ineq_j_audit: need 0 <= j < n");
  if (!is_economical(h)) throw std::invalid_argument("ineq_j_audit: hypergraph is not economical");
  if (partition_larger_than(h, n))
    throw std::invalid_argument("ineq_j_audit: hypergraph has a partition larger than n");
  const auto profile = degree_profile(h);
  IneqAudit a;
  for (auto [k, mk] : profile.weighted)
    if (k <= j + 1) a.lhs += Integer(mk) * binomial(n - k, j - k + 1);
  a.rhs = Integer(n) * binomial(n, j);
  a.holds = a.lhs <= a.rhs;
  return a;
}

struct AggregationAudit {
  Rational combined;   // sum_j lhs_j / C(n-1, j)
  Rational collapsed;  // sum_k n m_k / k
  Rational vertex_sum; // sum_k m_k / k
  bool equal = false;
  bool vertex_sum_matches = false;
};

/// Reciprocal-Pascal-row combination of every (Ineq_j) for `h`, compared with its closed form.
inline AggregationAudit aggregation_audit(const Hypergraph& h, int n) {
  const auto profile = degree_profile(h);
  AggregationAudit a;
  for (int j = 0; j < n; ++j) {
    Integer lhs = 0;
    for (auto [k, mk] : profile.weighted)
      if (k <= j + 1) lhs += Integer(mk) * binomial(n - k, j - k + 1);
    a.combined += Rational(lhs, binomial(n - 1, j));
  }
  for (auto [k, mk] : profile.weighted) {
    a.collapsed += Rational(Integer(n) * mk, k);
    a.vertex_sum += Rational(mk, k);
  }
  a.equal = a.combined == a.collapsed;
  a.vertex_sum_matches = profile.isolated == 0 && a.vertex_sum == h.vertex_count();
  return a;
}

struct IdentityCheck {
  Rational lhs;
  Rational rhs;
  bool equal = false;
};

/// sum_{j=k-1}^{n-1} C(n-k, j-k+1) / C(n-1, j) against n/k.
inline IdentityCheck identity_ddagger(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("identity_ddagger: need 1 <= k <= n");
  IdentityCheck c;
  for (int j = k - 1; j <= n - 1; ++j)
    c.lhs += Rational(binomial(n - k, j - k + 1), binomial(n - 1, j));
  c.rhs = Rational(n, k);
  c.equal = c.lhs == c.rhs;
  return c;
}

inline bool hockey_stick(int m, int r) {
  if (r < 0 || r > m) throw std::invalid_argument("hockey_stick: need 0 <= r <= m");
  Integer s = 0;
  for (int j = r; j <= m; ++j) s += binomial(j, r);
  return s == binomial(m + 1, r + 1);
}

inline bool trinomial_revision(int m, int r, int s) {
  if (s < 0 || s > r || r > m) throw std::invalid_argument("trinomial_revision: need s <= r <= m");
  return binomial(m, r) * binomial(r, s) == binomial(m, s) * binomial(m - s, r - s);
}

// ---------------------------------------------------------------------------
// Real-valued bounds, evaluated with outward-rounded intervals.

/// (x log2 x - x + 1) / 2
inline Interval convex_lower(Interval x) {
  return (x * log2(x) - x + Interval::exact(1)) * Interval::exact(0.5L);
}

inline Interval convex_lower(long long n) { return convex_lower(Interval::of(n)); }

namespace detail {

/// 2^e > b^b, exactly.
inline bool pow2_exceeds_self_power(long long e, long long b) {
  if (e < 0) return false;
  Integer lhs = 1;
  lhs <<= static_cast<unsigned>(e);
  return lhs > boost::multiprecision::pow(Integer(b), static_cast<unsigned>(b));
}

}  // namespace detail

struct LowerBoundAudit {
  int nmax = 0;
  bool f_below_k = true;        // f(n) < k_n for 1 <= n <= nmax
  std::optional<int> first_f_failure;
  int exact_fallbacks = 0;      // interval was inconclusive, integer comparison used
  bool convexity = true;        // f(x + 1/2) <= (f(x) + f(x+1)) / 2 on all samples
  int convexity_samples = 0;
  int convexity_inconclusive = 0;
  bool k_explicit = true;       // k_n > (n-1) log2(n-1)/2 - n/2 + 2 for 2 <= n <= nmax
  std::optional<int> first_k_failure;

  bool passed() const { return f_below_k && convexity && k_explicit && convexity_inconclusive == 0; }
};

inline LowerBoundAudit lower_bound_audit(int nmax) {
  if (nmax < 2) throw std::invalid_argument("lower_bound_audit: nmax must be >= 2");
  LowerBoundAudit r;
  r.nmax = nmax;
  const auto k = k_sequence(nmax);
  for (int n = 1; n <= nmax; ++n) {
    const auto kn = k[static_cast<std::size_t>(n)];
    const Interval f = convex_lower(n);
    bool ok;
    if (f.hi < static_cast<long double>(kn)) {
      ok = true;
    } else if (f.lo >= static_cast<long double>(kn)) {
      ok = false;
    } else {
      // f(n) < k_n  <=>  n^n < 2^(2 k_n + n - 1)
      ++r.exact_fallbacks;
      ok = detail::pow2_exceeds_self_power(2 * kn + n - 1, n);
    }
    if (!ok && r.f_below_k) {
      r.f_below_k = false;
      r.first_f_failure = n;
    }
    if (n >= 2) {
      const Interval b = Interval::of(n - 1) * log2(Interval::of(n - 1)) * Interval::exact(0.5L) -
                         Interval::of(n) * Interval::exact(0.5L) + Interval::exact(2);
      bool ok2;
      if (b.hi < static_cast<long double>(kn)) {
        ok2 = true;
      } else if (b.lo >= static_cast<long double>(kn)) {
        ok2 = false;
      } else {
        ++r.exact_fallbacks;
        ok2 = detail::pow2_exceeds_self_power(2 * kn + n - 4, n - 1);
      }
      if (!ok2 && r.k_explicit) {
        r.k_explicit = false;
        r.first_k_failure = n;
      }
    }
  }
  // midpoint convexity at quarter steps up to 64 and at the half-integers n/2 the
  // induction step uses, thinned geometrically beyond that
  auto sample = [&](long double x) {
    const Interval xi = Interval::exact(x);
    const Interval lhs = convex_lower(xi + Interval::exact(0.5L));
    const Interval rhs =
        (convex_lower(xi) + convex_lower(xi + Interval::exact(1))) * Interval::exact(0.5L);
    ++r.convexity_samples;
    if (lhs.less_eq(rhs)) return;
    if (lhs.lo > rhs.hi) {
      r.convexity = false;
    } else {
      ++r.convexity_inconclusive;
    }
  };
  for (int q = 1; q <= 256; ++q) sample(q / 4.0L);
  for (long long x = 64; x <= nmax / 2; x += std::max<long long>(1, x / 64)) {
    sample(static_cast<long double>(x));
    sample(static_cast<long double>(x) + 0.5L);
  }
  return r;
}

struct HarmonicAudit {
  int nmax = 0;
  bool holds = true;
  std::optional<int> first_failure;
};

/// sum_{k<=n} n/k < n ln n + gamma n + 1/2 for 1 <= n <= nmax.
inline HarmonicAudit harmonic_audit(int nmax) {
  HarmonicAudit r;
  r.nmax = nmax;
  const Interval gamma = Interval::parse(kEulerGamma);
  Interval h = Interval::exact(0);
  for (int n = 1; n <= nmax; ++n) {
    h = h + Interval::exact(1) / Interval::of(n);
    const Interval nn = Interval::of(n);
    const Interval lhs = nn * h;
    const Interval rhs = nn * log(nn) + gamma * nn + Interval::exact(0.5L);
    if (!lhs.less(rhs) && r.holds) {
      r.holds = false;
      r.first_failure = n;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bounds table

struct IntRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool exact() const { return lo == hi; }
};

struct BoundsRow {
  int n = 0;
  std::int64_t k = 0;
  long double lower_f = 0;   // (n log2 n - n + 1) / 2, midpoint of its enclosure
  Rational upper_H;          // sum n/k
  IntRange H;                // H(n)
  IntRange I;                // I(n)
  IntRange I_next;           // I(n+1)
  bool H_from_solver = false;
  std::int64_t quad_H = 0;   // n^2
  std::int64_t quad_I = 0;   // n^2 - 2n + 2
  long double cor_H_upper = 0;  // n ln n + gamma n + 1/2
  long double cor_I_upper = 0;  // n ln n + gamma n - ln n + 3/2 - gamma
  long double cor_H_lower = 0;  // n log2 n / 2 - n/2 + 1/2
  long double cor_I_lower = 0;  // n log2 n / 2 - n/2 - log2 n / 2 + (ln 16 - 1)/ln 4
};

/// Proven or witnessed H values fed in from the solver.
struct SolverFacts {
  std::map<int, std::int64_t> proven;     // n -> H(n)
  std::map<int, std::int64_t> witnessed;  // n -> best lower bound found
};

inline std::vector<BoundsRow> derive_tables(int nmax, const SolverFacts& facts = {}) {
  if (nmax < 1) throw std::invalid_argument("derive_tables: nmax must be >= 1");
  const auto k = k_sequence(nmax);
  const long double gamma = std::strtold(kEulerGamma, nullptr);
  std::vector<BoundsRow> rows;
  for (int n = 1; n <= nmax; ++n) {
    BoundsRow r;
    r.n = n;
    r.k = k[static_cast<std::size_t>(n)];
    r.lower_f = convex_lower(n).mid();
    r.upper_H = upper_bound_H(n);
    r.H = {r.k, static_cast<std::int64_t>(floor_of(r.upper_H))};
    if (auto w = facts.witnessed.find(n); w != facts.witnessed.end())
      r.H.lo = std::max(r.H.lo, w->second);
    if (auto p = facts.proven.find(n); p != facts.proven.end()) {
      r.H = {p->second, p->second};
      r.H_from_solver = true;
    }
    r.I_next = {r.k + 1, r.H.hi + 1};
    if (n == 1) {
      r.I = {1, 1};
    } else {
      r.I = rows.back().I_next;
    }
    r.quad_H = static_cast<std::int64_t>(n) * n;
    r.quad_I = static_cast<std::int64_t>(n) * n - 2 * n + 2;
    const long double x = n;
    const long double ln = std::log(x);
    const long double lg = std::log2(x);
    r.cor_H_upper = x * ln + gamma * x + 0.5L;
    r.cor_I_upper = x * ln + gamma * x - ln + 1.5L - gamma;
    r.cor_H_lower = 0.5L * x * lg - 0.5L * x + 0.5L;
    r.cor_I_lower = 0.5L * x * lg - 0.5L * x - 0.5L * lg + (std::log(16.0L) - 1) / std::log(4.0L);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace ideals
