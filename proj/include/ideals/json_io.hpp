#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ideals/counting.hpp"
#include "ideals/families.hpp"
#include "ideals/hypergraph.hpp"
#include "ideals/series.hpp"
#include "ideals/solver.hpp"
#include "ideals/tame.hpp"
#include "ideals/trees.hpp"

namespace ideals::json_io {

using json = nlohmann::ordered_json;

// {"vertices": V, "edges": [[...], ...]}

inline json to_json(const Hypergraph& h) {
  json edges = json::array();
  for (Mask e : h.edges()) edges.push_back(to_indices(e));
  return {{"vertices", h.vertex_count()}, {"edges", std::move(edges)}};
}

inline Hypergraph hypergraph_from_json(const json& j) {
  std::vector<std::vector<int>> lists;
  for (const auto& e : j.at("edges")) lists.push_back(e.get<std::vector<int>>());
  return Hypergraph::from_lists(j.at("vertices").get<int>(), lists);
}

// {"size": s, "D": [...], "P": [...]}, P holding edge indices

inline json to_json(const PartitionWitness& w) {
  return {{"size", w.size()}, {"D", to_indices(w.vertices)}, {"P", to_indices(w.edges)}};
}

inline PartitionWitness witness_from_json(const json& j) {
  PartitionWitness w{from_indices(j.at("D").get<std::vector<int>>()),
                     from_indices(j.at("P").get<std::vector<int>>())};
  if (j.contains("size") && j.at("size").get<int>() != w.size())
    throw std::invalid_argument("witness: size does not match D");
  return w;
}

// {"k": k, "functions": [{"1": "p", "3": "n"}, ...]}, coordinates 1-based

inline json to_json(const PartialSignFunction& f) {
  json out = json::object();
  for (int c : to_indices(f.domain)) out[std::to_string(c + 1)] = contains(f.positive, c) ? "p" : "n";
  return out;
}

inline json to_json(const Family& f) {
  json fs = json::array();
  for (const auto& g : f.functions()) fs.push_back(to_json(g));
  return {{"k", f.k()}, {"functions", std::move(fs)}};
}

inline Family family_from_json(const json& j) {
  Family f(j.at("k").get<int>());
  for (const auto& g : j.at("functions")) {
    if (!g.is_object()) throw std::invalid_argument("family: each function must be an object");
    Mask domain = 0;
    Mask positive = 0;
    for (const auto& [key, value] : g.items()) {
      std::size_t used = 0;
      int coord = 0;
      try {
        coord = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size() || coord < 1 || coord > f.k())
        throw std::invalid_argument("family: bad coordinate key \"" + key + "\"");
      const auto sym = value.get<std::string>();
      if (sym != "p" && sym != "n") throw std::invalid_argument("family: value must be \"p\" or \"n\"");
      domain |= bit(coord - 1);
      if (sym == "p") positive |= bit(coord - 1);
    }
    f.add({domain, positive});
  }
  return f;
}

inline json to_json(const DaggerWitness& w) {
  return {{"G", to_indices(w.functions)}, {"D", to_indices(w.coords)}};
}

// {"n": n, "m": m, "types": [{"type": [edges], "count": c}, ...]}

inline json to_json(const TypeProfile& p) {
  json types = json::array();
  for (Mask t = 1; t < p.counts.size(); ++t)
    if (p.counts[t] > 0) types.push_back({{"type", to_indices(t)}, {"count", p.counts[t]}});
  return {{"n", p.n}, {"m", p.m}, {"types", std::move(types)}};
}

inline TypeProfile type_profile_from_json(const json& j) {
  TypeProfile p;
  p.n = j.at("n").get<int>();
  p.m = j.at("m").get<int>();
  if (p.m < 1 || p.m > 20) throw std::invalid_argument("type profile: m out of range");
  p.counts.assign(std::size_t{1} << p.m, 0);
  for (const auto& t : j.at("types")) {
    const Mask mask = from_indices(t.at("type").get<std::vector<int>>());
    if (mask == 0 || mask >= p.counts.size()) throw std::invalid_argument("type profile: bad type");
    p.counts[mask] = t.at("count").get<int>();
  }
  return p;
}

// {"vertices": V, "parent": [...]} with the root's parent -1

inline json to_json(const RootedTree& t) {
  return {{"vertices", t.size()}, {"parent", t.parents()}};
}

inline RootedTree tree_from_json(const json& j) {
  auto parent = j.at("parent").get<std::vector<int>>();
  if (j.contains("vertices") && j.at("vertices").get<std::size_t>() != parent.size())
    throw std::invalid_argument("tree: vertex count does not match parent array");
  return RootedTree(std::move(parent));
}

inline json range_json(const IntRange& r) {
  if (r.exact()) return r.lo;
  return json::array({r.lo, r.hi});
}

inline json to_json(const BoundsRow& r) {
  return {{"n", r.n},
          {"k", r.k},
          {"f_lower", static_cast<double>(r.lower_f)},
          {"sum_n_over_k", to_string(r.upper_H)},
          {"H", range_json(r.H)},
          {"H_from_solver", r.H_from_solver},
          {"I", range_json(r.I)},
          {"I_next", range_json(r.I_next)},
          {"quad_H", r.quad_H},
          {"quad_I", r.quad_I},
          {"cor_H_lower", static_cast<double>(r.cor_H_lower)},
          {"cor_H_upper", static_cast<double>(r.cor_H_upper)},
          {"cor_I_lower", static_cast<double>(r.cor_I_lower)},
          {"cor_I_upper", static_cast<double>(r.cor_I_upper)}};
}

// {block, series, sum_num, sum_den, verdict}

inline json series_row(int block, int series, const Rational& sum, const std::string& verdict) {
  return {{"block", block},
          {"series", series},
          {"sum_num", numerator(sum).str()},
          {"sum_den", denominator(sum).str()},
          {"verdict", verdict}};
}

inline Rational sum_from_row(const json& row) {
  return Rational(Integer(row.at("sum_num").get<std::string>()), Integer(row.at("sum_den").get<std::string>()));
}

inline std::string bitmap(const IndexSet& s) {
  std::string out(s.size(), '0');
  for (std::size_t k = 0; k < s.size(); ++k)
    if (s[k]) out[k] = '1';
  return out;
}

inline IndexSet bitmap_from(const std::string& s) {
  IndexSet out(s.size(), false);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] != '0' && s[k] != '1') throw std::invalid_argument("bitmap: expected only 0 and 1");
    out[k] = s[k] == '1';
  }
  return out;
}

/// Maximal runs of members as [first, last] pairs, 1-based.
inline json ranges(const IndexSet& s) {
  json out = json::array();
  std::size_t k = 0;
  while (k < s.size()) {
    if (!s[k]) {
      ++k;
      continue;
    }
    std::size_t e = k;
    while (e + 1 < s.size() && s[e + 1]) ++e;
    out.push_back({k + 1, e + 1});
    k = e + 1;
  }
  return out;
}

inline json to_json(const TameChainCertificate& c) {
  json levels = json::array();
  for (std::size_t l = 0; l < c.sets.size(); ++l) {
    json level = {{"level", l},
                  {"side", c.nonnegative_side[l] ? "nonnegative" : "negative"},
                  {"C", bitmap(c.sets[l])},
                  {"C_ranges", ranges(c.sets[l])}};
    if (l < c.block_sums.size()) {
      level["from"] = c.thresholds[l];
      level["to"] = c.thresholds[l + 1];
      level["block_sum"] = to_string(c.block_sums[l]);
    }
    levels.push_back(std::move(level));
  }
  const auto a = assemble_A(c);
  return {{"window", c.window},
          {"requested_depth", c.requested_depth},
          {"achieved_levels", c.achieved_levels()},
          {"complete", c.complete()},
          {"thresholds", c.thresholds},
          {"levels", std::move(levels)},
          {"A", bitmap(a)}};
}

inline TameChainCertificate certificate_from_json(const json& j) {
  TameChainCertificate c;
  c.window = j.at("window").get<int>();
  c.requested_depth = j.at("requested_depth").get<int>();
  c.thresholds = j.at("thresholds").get<std::vector<int>>();
  for (const auto& level : j.at("levels")) {
    c.sets.push_back(bitmap_from(level.at("C").get<std::string>()));
    c.nonnegative_side.push_back(level.at("side").get<std::string>() == "nonnegative");
    if (level.contains("block_sum")) c.block_sums.push_back(parse_rational(level.at("block_sum").get<std::string>()));
  }
  return c;
}

/// {"terms": [["1", "-1/2", ...], ...]} or {"generate": {"n": n, "blocks": M}}.
/// `window` caps the number of indices kept (0 keeps everything given).
inline TruncatedSeriesFamily series_family_from_json(const json& j, int window) {
  if (j.contains("generate")) {
    const auto& g = j.at("generate");
    const auto spec = build_spec(g.at("n").get<int>(), g.at("blocks").get<int>());
    if (window <= 0) {
      if (spec.end() > 1'000'000) throw std::invalid_argument("series: generated family needs a window");
      window = static_cast<int>(spec.end());
    }
    return TruncatedSeriesFamily::from_spec(spec, window);
  }
  TruncatedSeriesFamily f;
  for (const auto& row : j.at("terms")) {
    std::vector<Rational> terms;
    for (const auto& t : row) {
      if (window > 0 && static_cast<int>(terms.size()) == window) break;
      terms.push_back(t.is_string() ? parse_rational(t.get<std::string>()) : Rational(t.get<long long>()));
    }
    f.terms.push_back(std::move(terms));
  }
  f.validate();
  return f;
}

}  // namespace ideals::json_io
