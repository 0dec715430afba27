#include <chrono>
#include <random>

#include <gtest/gtest.h>

#include "ideals/families.hpp"
#include "ideals/trees.hpp"

using namespace ideals;
using namespace std::chrono_literals;

namespace {

Family left_figure() {
  // {1 -> p}, {1 -> p, 2 -> p, 3 -> p}, {2 -> n, 3 -> n}
  return Family(3, {{0b001, 0b001}, {0b111, 0b111}, {0b110, 0b000}});
}

// Definition-level check: every pair of G members defined at a coordinate of D agrees there.
bool oracle_no_disagreement(const Family& f, Mask g, Mask d) {
  Mask union_domain = 0;
  for (int i : to_indices(g)) union_domain |= f[static_cast<std::size_t>(i)].domain;
  if ((d & ~union_domain) != 0) return false;
  for (int i : to_indices(g))
    for (int j : to_indices(g)) {
      const auto& a = f[static_cast<std::size_t>(i)];
      const auto& b = f[static_cast<std::size_t>(j)];
      for (int c : to_indices(d))
        if (contains(a.domain, c) && contains(b.domain, c) && contains(a.positive, c) != contains(b.positive, c))
          return false;
    }
  return true;
}

int oracle_max_conflict_free(const Family& f) {
  int best = 0;
  for (Mask g = 1; g < (Mask{1} << f.size()); ++g) {
    // the largest D for this G is the set of coordinates with a single symbol
    Mask d = 0;
    for (int c = 0; c < f.k(); ++c) {
      bool p = false;
      bool n = false;
      for (int i : to_indices(g)) {
        const auto& fn = f[static_cast<std::size_t>(i)];
        if (!contains(fn.domain, c)) continue;
        (contains(fn.positive, c) ? p : n) = true;
      }
      if (p != n) d |= bit(c);
    }
    EXPECT_TRUE(oracle_no_disagreement(f, g, d));
    best = std::max(best, popcount(d));
  }
  return best;
}

Family random_family(std::mt19937_64& rng, int k, int size) {
  Family f(k);
  for (int i = 0; i < size; ++i) {
    const Mask d = rng() & low_bits(k);
    f.add({d, rng() & d});
  }
  return f;
}

}  // namespace

TEST(Families, Fullness) {
  EXPECT_FALSE(is_full(left_figure()));
  for (int k = 1; k <= 6; ++k) EXPECT_TRUE(is_full(Family(k, {{low_bits(k), low_bits(k)}, {low_bits(k), 0}})));
  EXPECT_TRUE(is_full(build_bounding_family(2)));
}

TEST(Families, ConflictFreeCoords) {
  const Family totals(3, {{0b111, 0b111}, {0b111, 0}});
  EXPECT_EQ(conflict_free_coords(totals, 0b01), Mask{0b111});
  EXPECT_EQ(conflict_free_coords(totals, 0b11), Mask{0});
  EXPECT_EQ(conflict_free_coords(left_figure(), 0b101), Mask{0b111});
  EXPECT_THROW(conflict_free_coords(left_figure(), 0b1000), std::out_of_range);
}

TEST(Families, DaggerExamples) {
  for (int n = 1; n <= 5; ++n) {
    const Family single(n, {{low_bits(n), low_bits(n)}});
    const auto [holds, w] = dagger_holds(single, n);
    EXPECT_TRUE(holds);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->functions, Mask{1});
    EXPECT_EQ(w->coords, low_bits(n));
  }
  const auto [holds, w] = dagger_holds(left_figure(), 3);
  EXPECT_TRUE(holds);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->functions, Mask{0b010});
  EXPECT_EQ(w->coords, Mask{0b111});
  EXPECT_FALSE(dagger_holds(build_bounding_family(2), 3).first);
}

TEST(Families, Bounding) {
  EXPECT_FALSE(is_bounding(left_figure(), 4));
  EXPECT_FALSE(is_bounding(Family(1, {{1, 1}, {1, 0}}), 1));
  EXPECT_TRUE(is_bounding(Family(1, {{1, 1}, {1, 0}}), 2));
}

TEST(Families, ToHypergraph) {
  EXPECT_EQ(to_hypergraph(left_figure()), Hypergraph::from_lists(3, {{0}, {0, 1, 2}, {1, 2}}));
  const Family totals(4, {{0b1111, 0b1111}, {0b1111, 0b0101}});
  EXPECT_EQ(to_hypergraph(totals), Hypergraph::from_lists(4, {{0, 1, 2, 3}}));
}

TEST(Families, DaggerMatchesEnumeration) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 8);
    const int size = 1 + static_cast<int>(rng() % 10);
    const auto f = random_family(rng, k, size);
    const int best = oracle_max_conflict_free(f);
    const auto w = max_conflict_free(f);
    ASSERT_EQ(popcount(w.coords), best) << trial;
    EXPECT_EQ(conflict_free_coords(f, w.functions), w.coords);
    EXPECT_TRUE(oracle_no_disagreement(f, w.functions, w.coords));
    for (int n = 1; n <= k + 1; ++n) {
      const auto [holds, wit] = dagger_holds(f, n);
      EXPECT_EQ(holds, best >= n) << trial << " " << n;
      if (holds) {
        EXPECT_GE(popcount(wit->coords), n);
        EXPECT_TRUE(oracle_no_disagreement(f, wit->functions, wit->coords));
      }
    }
  }
}

TEST(Families, DaggerMonotone) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_family(rng, 1 + static_cast<int>(rng() % 8), 1 + static_cast<int>(rng() % 8));
    bool seen_false = false;
    for (int n = 1; n <= f.k() + 1; ++n) {
      const bool holds = dagger_holds(f, n).first;
      if (seen_false) { EXPECT_FALSE(holds); }
      seen_false = seen_false || !holds;
    }
  }
}

// A partition of size n + 1 in the domain hypergraph of a full family gives (dagger)_{n+1}.
TEST(Families, PartitionImpliesDagger) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 8);
    const auto f = random_family(rng, k, 2 + static_cast<int>(rng() % 8));
    if (!is_full(f)) continue;
    const auto h = to_hypergraph(f);
    const int p = max_partition(h).size();
    if (p == 0) continue;
    ++checked;
    EXPECT_TRUE(dagger_holds(f, p).first) << trial;
  }
  for (int n = 1; n <= 8; ++n) {
    const auto f = build_bounding_family(n);
    const int p = max_partition(to_hypergraph(f)).size();
    EXPECT_TRUE(dagger_holds(f, p).first);
  }
  EXPECT_GT(checked, 100);
}

TEST(Families, DaggerCap) {
  Family big(3);
  for (int i = 0; i < 26; ++i) big.add({0b111, static_cast<Mask>(i % 8)});
  EXPECT_THROW(dagger_holds(big, 2), std::invalid_argument);
  EXPECT_TRUE(big.has_duplicates());
}

TEST(Families, SearchFullNonDagger) {
  const auto r33 = search_full_non_dagger(3, 3, 120s);
  ASSERT_EQ(r33.outcome, SearchOutcome::found);
  EXPECT_TRUE(is_full(*r33.family));
  EXPECT_FALSE(dagger_holds(*r33.family, 3).first);

  const auto r54 = search_full_non_dagger(5, 4, 600s);
  ASSERT_EQ(r54.outcome, SearchOutcome::found);
  EXPECT_TRUE(is_bounding(*r54.family, 4));

  EXPECT_EQ(search_full_non_dagger(2, 2, 60s).outcome, SearchOutcome::none_exists);
  EXPECT_EQ(search_full_non_dagger(1, 1, 60s).outcome, SearchOutcome::none_exists);
  EXPECT_EQ(search_full_non_dagger(1, 2, 60s).outcome, SearchOutcome::found);
}

// No bounding family for (dagger)_n on I(n) or more coordinates: I(3) = 4.
TEST(Families, SearchAgreesWithTables) {
  EXPECT_EQ(search_full_non_dagger(4, 3, 600s).outcome, SearchOutcome::none_exists);
  EXPECT_EQ(search_full_non_dagger(3, 2, 600s).outcome, SearchOutcome::none_exists);
}

TEST(Families, RejectsBadInput) {
  EXPECT_THROW(Family(65), std::invalid_argument);
  Family f(2);
  EXPECT_THROW(f.add({0b100, 0}), std::invalid_argument);
  EXPECT_THROW(search_full_non_dagger(7, 3, 1s), std::invalid_argument);
}
