#include <gtest/gtest.h>

#include "ideals/json_io.hpp"

using namespace ideals;
using ideals::json_io::json;

TEST(JsonIo, HypergraphRoundTrip) {
  const auto h = Hypergraph::from_lists(3, {{0, 2}, {1, 2}});
  const auto j = json_io::to_json(h);
  EXPECT_EQ(j.dump(), R"({"vertices":3,"edges":[[0,2],[1,2]]})");
  EXPECT_EQ(json_io::hypergraph_from_json(json::parse(j.dump())), h);
  EXPECT_THROW(json_io::hypergraph_from_json(json::parse(R"({"vertices":2,"edges":[[0,5]]})")),
               std::invalid_argument);
  EXPECT_THROW(json_io::hypergraph_from_json(json::parse(R"({"edges":[]})")), json::exception);
}

TEST(JsonIo, WitnessRoundTrip) {
  const auto w = max_partition(Hypergraph::from_lists(3, {{0, 2}, {1, 2}}));
  const auto j = json_io::to_json(w);
  EXPECT_EQ(j.at("size"), 2);
  const auto back = json_io::witness_from_json(j);
  EXPECT_EQ(back.vertices, w.vertices);
  EXPECT_EQ(back.edges, w.edges);
  EXPECT_THROW(json_io::witness_from_json(json::parse(R"({"size":3,"D":[0],"P":[0]})")), std::invalid_argument);
}

TEST(JsonIo, FamilyRoundTrip) {
  const auto text = R"({"k":3,"functions":[{"1":"p"},{"1":"p","2":"p","3":"p"},{"2":"n","3":"n"}]})";
  const auto f = json_io::family_from_json(json::parse(text));
  EXPECT_EQ(f.k(), 3);
  ASSERT_EQ(f.size(), 3U);
  EXPECT_EQ(f[0], (PartialSignFunction{0b001, 0b001}));
  EXPECT_EQ(f[2], (PartialSignFunction{0b110, 0}));
  EXPECT_EQ(json_io::to_json(f).dump(), text);
  for (int n = 1; n <= 6; ++n) {
    const auto g = build_bounding_family(n);
    const auto again = json_io::family_from_json(json::parse(json_io::to_json(g).dump()));
    EXPECT_EQ(again.functions(), g.functions());
  }
}

TEST(JsonIo, FamilyRejectsBadKeys) {
  for (const char* bad : {R"({"k":2,"functions":[{"0":"p"}]})", R"({"k":2,"functions":[{"3":"p"}]})",
                          R"({"k":2,"functions":[{"x":"p"}]})", R"({"k":2,"functions":[{"1":"q"}]})",
                          R"({"k":2,"functions":[{"1a":"p"}]})", R"({"k":2,"functions":[["1"]]})"})
    EXPECT_THROW(json_io::family_from_json(json::parse(bad)), std::exception) << bad;
}

TEST(JsonIo, TypeProfileRoundTrip) {
  TypeProfile p{2, 2, {0, 1, 1, 1}};
  const auto back = json_io::type_profile_from_json(json::parse(json_io::to_json(p).dump()));
  EXPECT_EQ(back.counts, p.counts);
  EXPECT_EQ(back.n, 2);
}

TEST(JsonIo, TreeRoundTrip) {
  const auto t = build_T(6);
  const auto back = json_io::tree_from_json(json::parse(json_io::to_json(t).dump()));
  EXPECT_EQ(back.parents(), t.parents());
  EXPECT_THROW(json_io::tree_from_json(json::parse(R"({"vertices":2,"parent":[-1,1]})")), std::invalid_argument);
}

TEST(JsonIo, BoundsRow) {
  const auto rows = derive_tables(6);
  const auto j = json_io::to_json(rows[5]);
  EXPECT_EQ(j.at("k"), 13);
  EXPECT_EQ(j.at("sum_n_over_k"), "147/10");
  EXPECT_EQ(j.at("I"), json::array({11, 12}));
  EXPECT_EQ(json_io::to_json(rows[3]).at("I"), 6);
}

TEST(JsonIo, SeriesRow) {
  const auto row = json_io::series_row(3, 4, Rational(-7, 6), "falling");
  EXPECT_EQ(row.dump(), R"({"block":3,"series":4,"sum_num":"-7","sum_den":"6","verdict":"falling"})");
  EXPECT_EQ(json_io::sum_from_row(row), Rational(-7, 6));
}

TEST(JsonIo, CertificateRoundTrip) {
  const auto fam = TruncatedSeriesFamily::from_spec(build_spec(2, 4), 1008);
  const auto c = build_tame_chain(fam, 2);
  const auto j = json_io::to_json(c);
  const auto back = json_io::certificate_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.thresholds, c.thresholds);
  EXPECT_EQ(back.sets, c.sets);
  EXPECT_EQ(back.block_sums, c.block_sums);
  EXPECT_EQ(back.nonnegative_side, c.nonnegative_side);
  EXPECT_EQ(json_io::to_json(back).dump(), j.dump());
}

TEST(JsonIo, Ranges) {
  const IndexSet s = {true, true, false, true, false, false, true};
  EXPECT_EQ(json_io::ranges(s).dump(), "[[1,2],[4,4],[7,7]]");
  EXPECT_EQ(json_io::bitmap(s), "1101001");
  EXPECT_EQ(json_io::bitmap_from("1101001"), s);
  EXPECT_THROW(json_io::bitmap_from("10x"), std::invalid_argument);
}

TEST(JsonIo, SeriesInput) {
  const auto f = json_io::series_family_from_json(json::parse(R"({"terms":[["1","-1/2",3],["0","0","0"]]})"), 0);
  EXPECT_EQ(f.count(), 2);
  EXPECT_EQ(f.at(0, 2), Rational(-1, 2));
  EXPECT_EQ(f.at(0, 3), Rational(3));
  const auto cut = json_io::series_family_from_json(json::parse(R"({"terms":[["1","-1/2",3]]})"), 2);
  EXPECT_EQ(cut.length(), 2);
  const auto g = json_io::series_family_from_json(json::parse(R"({"generate":{"n":2,"blocks":3}})"), 0);
  EXPECT_EQ(g.count(), 4);
  EXPECT_EQ(g.length(), 36);
  EXPECT_THROW(json_io::series_family_from_json(json::parse(R"({"terms":[["1"],["1","2"]]})"), 0),
               std::invalid_argument);
}
