#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ideals/bits.hpp"
#include "ideals/families.hpp"
#include "ideals/hypergraph.hpp"

namespace ideals {

/// Rooted tree as a parent array plus ordered child lists. Vertex 0 is the root.
class RootedTree {
 public:
  RootedTree() = default;

  explicit RootedTree(std::vector<int> parent) : parent_(std::move(parent)) {
    children_.resize(parent_.size());
    int roots = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      const int p = parent_[v];
      if (p < 0) {
        ++roots;
        if (v != 0) throw std::invalid_argument("rooted tree: root must be vertex 0");
        continue;
      }
      if (static_cast<std::size_t>(p) >= parent_.size())
        throw std::invalid_argument("rooted tree: parent out of range");
      children_[static_cast<std::size_t>(p)].push_back(static_cast<int>(v));
    }
    if (!parent_.empty() && roots != 1)
      throw std::invalid_argument("rooted tree: need exactly one root");
    depth_.assign(parent_.size(), -1);
    // every vertex must reach the root
    std::vector<int> stack = parent_.empty() ? std::vector<int>{} : std::vector<int>{0};
    if (!parent_.empty()) depth_[0] = 0;
    std::size_t seen = 0;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++seen;
      for (int c : children_[static_cast<std::size_t>(v)]) {
        depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(v)] + 1;
        stack.push_back(c);
      }
    }
    if (seen != parent_.size()) throw std::invalid_argument("rooted tree: cycle or unreachable vertex");
  }

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  int root() const noexcept { return 0; }
  int parent(int v) const { return parent_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& parents() const noexcept { return parent_; }
  const std::vector<int>& children(int v) const { return children_.at(static_cast<std::size_t>(v)); }
  int depth(int v) const { return depth_.at(static_cast<std::size_t>(v)); }

  bool is_maximal(int v) const { return children(v).empty(); }
  bool is_splitting(int v) const { return children(v).size() > 1; }

  /// v <= w in the tree order: v lies on the root path of w.
  bool below_eq(int v, int w) const {
    while (w >= 0 && depth(w) > depth(v)) w = parent(w);
    return w == v;
  }

  bool comparable(int a, int b) const { return below_eq(a, b) || below_eq(b, a); }

 private:
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
};

namespace detail {

inline void append_T(int n, int attach_to, std::vector<int>& parent) {
  if (n == 1) {
    parent.push_back(attach_to);
    return;
  }
  int top = attach_to;
  for (int i = 0; i < n / 2; ++i) {
    parent.push_back(top);
    top = static_cast<int>(parent.size()) - 1;
  }
  append_T(n / 2, top, parent);
  append_T((n + 1) / 2, top, parent);
}

}  // namespace detail

/// T_1 is a single vertex; T_n is a path of floor(n/2) vertices whose top carries
/// a copy of T_{floor(n/2)} followed by a copy of T_{floor((n+1)/2)}. Vertices
/// are numbered in preorder.
inline RootedTree build_T(int n) {
  if (n < 1) throw std::invalid_argument("build_T: n must be >= 1");
  std::vector<int> parent;
  detail::append_T(n, -1, parent);
  return RootedTree(std::move(parent));
}

/// Least splitting vertex weakly above v.
inline int sigma(const RootedTree& t, int v) {
  if (t.is_maximal(v)) throw std::invalid_argument("sigma: vertex " + std::to_string(v) + " is maximal");
  while (!t.is_splitting(v)) {
    if (t.is_maximal(v)) throw std::invalid_argument("sigma: no splitting vertex above");
    v = t.children(v).front();
  }
  return v;
}

/// Greatest common lower bound of incomparable b, c.
inline int meet(const RootedTree& t, int b, int c) {
  if (t.comparable(b, c)) throw std::invalid_argument("meet: vertices are comparable");
  while (t.depth(b) > t.depth(c)) b = t.parent(b);
  while (t.depth(c) > t.depth(b)) c = t.parent(c);
  while (b != c) {
    b = t.parent(b);
    c = t.parent(c);
  }
  return b;
}

/// Some a, b, c in D with b, c incomparable and sigma(a) = b meet c.
inline std::optional<std::tuple<int, int, int>> triple_claim_check(const RootedTree& t,
                                                                   const std::vector<int>& d) {
  for (int b : d)
    for (int c : d) {
      if (b >= c || t.comparable(b, c)) continue;
      const int m = meet(t, b, c);
      for (int a : d)
        if (!t.is_maximal(a) && sigma(t, a) == m) return std::tuple{a, b, c};
    }
  return std::nullopt;
}

/// Root-to-leaf vertex lists, leaves in preorder.
inline std::vector<std::vector<int>> maximal_chains(const RootedTree& t) {
  std::vector<std::vector<int>> out;
  if (t.size() == 0) return out;
  std::vector<int> path;
  auto walk = [&](auto&& self, int v) -> void {
    path.push_back(v);
    if (t.is_maximal(v)) out.push_back(path);
    for (int c : t.children(v)) self(self, c);
    path.pop_back();
  };
  walk(walk, t.root());
  return out;
}

/// Hypergraph on the tree's vertices whose edges are the maximal chains.
inline Hypergraph branch_hypergraph(const RootedTree& t) {
  std::vector<Mask> edges;
  for (const auto& chain : maximal_chains(t)) edges.push_back(from_indices(chain));
  return Hypergraph(t.size(), std::move(edges));
}

/// For each splitting vertex, whether its first child maps to p (the second then maps to n).
struct ChainFamilyLabeling {
  std::vector<bool> first_child_positive;  // indexed by vertex; ignored for non-splitting

  static ChainFamilyLabeling standard(const RootedTree& t) {
    return {std::vector<bool>(static_cast<std::size_t>(t.size()), true)};
  }

  static ChainFamilyLabeling random(const RootedTree& t, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ChainFamilyLabeling l;
    l.first_child_positive.resize(static_cast<std::size_t>(t.size()));
    for (std::size_t v = 0; v < l.first_child_positive.size(); ++v)
      l.first_child_positive[v] = (rng() & 1U) != 0;
    return l;
  }

  /// Sign of child `c` of splitting vertex `s`: true for p.
  bool positive(const RootedTree& t, int s, int c) const {
    const bool first = t.children(s).front() == c;
    return first == static_cast<bool>(first_child_positive.at(static_cast<std::size_t>(s)));
  }
};

/// f_P^+ and f_P^- for every maximal chain P, on coordinates = tree vertices.
///
/// Below the top of P both functions read the label of the successor of
/// sigma(v) along P; at the top f_P^+ is p and f_P^- is n.
inline Family build_bounding_family(const RootedTree& t, const ChainFamilyLabeling& labeling) {
  if (t.size() > kMaxUniverse) throw std::invalid_argument("build_bounding_family: tree too large");
  Family f(t.size());
  for (const auto& chain : maximal_chains(t)) {
    Mask domain = 0;
    Mask positive = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      const int v = chain[i];
      domain |= bit(v);
      if (i + 1 == chain.size()) break;
      const int s = sigma(t, v);
      // s lies on the chain at or above v
      std::size_t pos = i;
      while (chain[pos] != s) ++pos;
      if (labeling.positive(t, s, chain[pos + 1])) positive |= bit(v);
    }
    const int top = chain.back();
    f.add(PartialSignFunction{domain, positive | bit(top)});
    f.add(PartialSignFunction{domain, positive & ~bit(top)});
  }
  return f;
}

inline Family build_bounding_family(int n) {
  const auto t = build_T(n);
  return build_bounding_family(t, ChainFamilyLabeling::standard(t));
}

}  // namespace ideals
