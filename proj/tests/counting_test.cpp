#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ideals/counting.hpp"
#include "ideals/solver.hpp"
#include "ideals/trees.hpp"

using namespace ideals;
using namespace std::chrono_literals;

namespace {

// sum over incidences (v, e) of n / deg(v)
Rational per_vertex_sum(const Hypergraph& h, int n) {
  Rational s = 0;
  for (int v = 0; v < h.vertex_count(); ++v) {
    int deg = 0;
    for (Mask e : h.edges()) deg += contains(e, v) ? 1 : 0;
    for (int i = 0; i < deg; ++i) s += Rational(n, deg);
  }
  return s;
}

std::vector<Hypergraph> solver_witnesses() {
  std::vector<Hypergraph> out;
  for (int n = 1; n <= 6; ++n) {
    const auto r = exact_H(n, 600s);
    out.push_back(expand_witness(*r.witness));
  }
  return out;
}

}  // namespace

TEST(Counting, KSequence) {
  const auto k = k_sequence(20);
  EXPECT_EQ(std::vector<std::int64_t>(k.begin() + 1, k.begin() + 7),
            (std::vector<std::int64_t>{1, 3, 5, 8, 10, 13}));
  EXPECT_EQ(k_value(7), 16);
  EXPECT_EQ(k_value(1), 1);
  EXPECT_EQ(k_value(10), 25);
  EXPECT_EQ(k_value(20), 60);
  for (int n = 1; n <= 40; ++n) EXPECT_EQ(k_value(n), build_T(n).size()) << n;
}

TEST(Counting, UpperBound) {
  EXPECT_EQ(upper_bound_H(5), Rational(137, 12));
  EXPECT_EQ(floor_of(upper_bound_H(5)), 11);
  EXPECT_EQ(upper_bound_H(6), Rational(147, 10));
  EXPECT_EQ(floor_of(upper_bound_H(6)), 14);
  EXPECT_EQ(upper_bound_H(1), Rational(1));
}

TEST(Counting, IneqExamples) {
  const auto h = Hypergraph::from_lists(3, {{0, 2}, {1, 2}});
  const auto a0 = ineq_j_audit(h, 2, 0);
  EXPECT_EQ(a0.lhs, 2);
  EXPECT_EQ(a0.rhs, 2);
  EXPECT_TRUE(a0.holds);
  const auto a1 = ineq_j_audit(h, 2, 1);
  EXPECT_EQ(a1.lhs, 4);
  EXPECT_EQ(a1.rhs, 4);
  const auto all2 = Hypergraph::from_lists(3, {{0, 1, 2}});
  EXPECT_THROW(ineq_j_audit(all2, 2, 0), std::invalid_argument);  // partition of size 3
  EXPECT_THROW(ineq_j_audit(Hypergraph::from_lists(2, {{0}, {0, 1}, {1}}), 3, 0), std::invalid_argument);
}

TEST(Counting, IneqEmptySum) {
  const auto a = ineq_j_audit(Hypergraph(0, {}), 3, 1);
  EXPECT_EQ(a.lhs, 0);
  EXPECT_EQ(a.rhs, 9);
  EXPECT_TRUE(a.holds);
  // degree-2 vertices do not enter the j = 0 sum
  const auto h = Hypergraph::from_lists(4, {{0, 2, 3}, {1, 2, 3}});
  EXPECT_EQ(ineq_j_audit(h, 4, 0).lhs, 2);
}

TEST(Counting, IneqOnWitnessesAndTrees) {
  const auto witnesses = solver_witnesses();
  for (int n = 1; n <= 6; ++n)
    for (int j = 0; j < n; ++j) EXPECT_TRUE(ineq_j_audit(witnesses[n - 1], n, j).holds) << n << " " << j;
  for (int n = 1; n <= 12; ++n) {
    const auto h = branch_hypergraph(build_T(n));
    for (int j = 0; j < n; ++j) EXPECT_TRUE(ineq_j_audit(h, n, j).holds) << n << " " << j;
  }
}

TEST(Counting, IdentityDdagger) {
  const auto c = identity_ddagger(4, 2);
  EXPECT_EQ(c.lhs, Rational(2));
  EXPECT_TRUE(c.equal);
  for (int n = 1; n <= 60; ++n) {
    EXPECT_EQ(identity_ddagger(n, n).lhs, Rational(1));
    EXPECT_EQ(identity_ddagger(n, 1).lhs, Rational(n));
    for (int k = 1; k <= n; ++k) ASSERT_TRUE(identity_ddagger(n, k).equal) << n << " " << k;
  }
  EXPECT_THROW(identity_ddagger(3, 4), std::invalid_argument);
}

TEST(Counting, BinomialIdentities) {
  EXPECT_TRUE(hockey_stick(4, 2));
  EXPECT_EQ(binomial(2, 2) + binomial(3, 2) + binomial(4, 2), binomial(5, 3));
  EXPECT_TRUE(trinomial_revision(5, 3, 2));
  EXPECT_EQ(binomial(5, 3) * binomial(3, 2), 30);
  for (int m = 0; m <= 60; ++m)
    for (int r = 0; r <= m; ++r) {
      ASSERT_TRUE(hockey_stick(m, r));
      for (int s = 0; s <= r; ++s) ASSERT_TRUE(trinomial_revision(m, r, s));
    }
  EXPECT_EQ(binomial(60, 30), Integer("118264581564861424"));
}

TEST(Counting, AggregationIdentity) {
  const auto witnesses = solver_witnesses();
  for (int n = 1; n <= 6; ++n) {
    const auto& h = witnesses[n - 1];
    const auto a = aggregation_audit(h, n);
    EXPECT_TRUE(a.equal);
    EXPECT_TRUE(a.vertex_sum_matches);
    EXPECT_EQ(a.collapsed, per_vertex_sum(h, n));
    EXPECT_LE(a.vertex_sum, upper_bound_H(n));
  }
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = 1 + static_cast<int>(rng() % 8);
    std::vector<Mask> edges;
    for (int i = 0; i < 4; ++i) {
      const Mask e = (rng() & low_bits(v)) | bit(static_cast<int>(rng() % static_cast<unsigned>(v)));
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    }
    Hypergraph h(v, edges);
    if (isolated_vertices(h) != 0) continue;
    const int n = static_cast<int>(edges.size()) + static_cast<int>(rng() % 3);  // degrees stay <= n
    const auto a = aggregation_audit(h, n);
    EXPECT_TRUE(a.equal);
    EXPECT_EQ(a.collapsed, per_vertex_sum(h, n));
  }
}

TEST(Counting, LowerBoundAuditSmall) {
  const auto r = lower_bound_audit(1 << 12);
  EXPECT_TRUE(r.f_below_k);
  EXPECT_TRUE(r.k_explicit);
  EXPECT_TRUE(r.convexity);
  EXPECT_EQ(r.convexity_inconclusive, 0);
  EXPECT_TRUE(r.passed());
}

TEST(Counting, ExactFallbackAgreesWithLongDouble) {
  for (int n = 1; n <= 200; ++n) {
    const auto kn = k_value(n);
    const long double f = (n * std::log2(static_cast<long double>(n)) - n + 1) / 2;
    if (std::fabs(f - static_cast<long double>(kn)) < 1e-9L) continue;
    EXPECT_EQ(detail::pow2_exceeds_self_power(2 * kn + n - 1, n), f < static_cast<long double>(kn)) << n;
  }
  EXPECT_TRUE(detail::pow2_exceeds_self_power(5, 2));   // 32 > 4
  EXPECT_FALSE(detail::pow2_exceeds_self_power(2, 2));  // 4 > 4 fails
}

TEST(Counting, HarmonicAudit) {
  const auto r = harmonic_audit(5000);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.first_failure);
}

TEST(Counting, IntervalEnclosures) {
  const auto g = Interval::parse(kEulerGamma);
  EXPECT_LE(g.lo, 0.5772156649015328606L);
  EXPECT_GE(g.hi, 0.5772156649015328606L);
  const auto third = Interval::exact(1) / Interval::of(3);
  EXPECT_LT(third.lo, third.hi);
  const auto l = log(Interval::of(2));
  EXPECT_LE(l.lo, 0.69314718055994530942L);
  EXPECT_GE(l.hi, 0.69314718055994530942L);
  EXPECT_THROW(log(Interval::exact(0)), std::domain_error);
  EXPECT_THROW((Interval::exact(1) / Interval{-1, 1}), std::domain_error);
}

TEST(Counting, TablesWithoutSolver) {
  const auto rows = derive_tables(6);
  const std::int64_t I_expected[][2] = {{1, 1}, {2, 2}, {4, 4}, {6, 6}, {9, 9}, {11, 12}};
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(rows[n - 1].I.lo, I_expected[n - 1][0]) << n;
    EXPECT_EQ(rows[n - 1].I.hi, I_expected[n - 1][1]) << n;
  }
  EXPECT_EQ(rows[2].I_next.lo, 6);
  EXPECT_TRUE(rows[2].I_next.exact());
  EXPECT_EQ(rows[4].H.lo, 10);
  EXPECT_EQ(rows[4].H.hi, 11);
}

TEST(Counting, TablesWithSolverFacts) {
  SolverFacts facts;
  const std::int64_t H[] = {1, 3, 5, 8, 10, 14};
  for (int n = 1; n <= 6; ++n) facts.proven[n] = H[n - 1];
  const auto rows = derive_tables(6, facts);
  const std::int64_t I[] = {1, 2, 4, 6, 9, 11};
  for (int n = 1; n <= 6; ++n) {
    EXPECT_TRUE(rows[n - 1].I.exact()) << n;
    EXPECT_EQ(rows[n - 1].I.lo, I[n - 1]) << n;
    EXPECT_TRUE(rows[n - 1].H_from_solver);
  }
  EXPECT_EQ(rows[5].I_next.lo, 14);
  EXPECT_EQ(rows[5].I_next.hi, 15);
  for (const auto& r : rows) {
    EXPECT_LE(r.H.hi, r.quad_H);
    EXPECT_LE(r.I.hi, r.quad_I);
    EXPECT_LT(static_cast<long double>(r.H.hi), r.cor_H_upper);
  }
}

TEST(Counting, WitnessedLowerBoundRaisesRange) {
  SolverFacts facts;
  facts.witnessed[6] = 14;
  const auto rows = derive_tables(6, facts);
  EXPECT_EQ(rows[5].H.lo, 14);
  EXPECT_EQ(rows[5].H.hi, 14);
  EXPECT_FALSE(rows[5].H_from_solver);
}
