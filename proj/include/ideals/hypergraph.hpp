#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ideals/bits.hpp"

namespace ideals {

/// Hypergraph on vertices 0..vertex_count-1 with pairwise distinct edges.
///
/// Edges are stored as vertex masks, so the universe is capped at 64 vertices.
/// Edge order is preserved; witness edge indices refer to it.
class Hypergraph {
 public:
  Hypergraph() = default;

  Hypergraph(int vertex_count, std::vector<Mask> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ < 0 || vertex_count_ > kMaxUniverse)
      throw std::invalid_argument("hypergraph: vertex count must be in [0, 64]");
    const Mask universe = low_bits(vertex_count_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if ((edges_[i] & ~universe) != 0)
        throw std::invalid_argument("hypergraph: edge " + std::to_string(i) +
                                    " references a vertex outside the universe");
      for (std::size_t j = 0; j < i; ++j)
        if (edges_[i] == edges_[j])
          throw std::invalid_argument("hypergraph: duplicate edge at index " +
                                      std::to_string(i));
    }
  }

  static Hypergraph from_lists(int vertex_count,
                               const std::vector<std::vector<int>>& lists) {
    std::vector<Mask> edges;
    edges.reserve(lists.size());
    for (const auto& l : lists) {
      Mask m = 0;
      for (int v : l) {
        if (v < 0 || v >= vertex_count)
          throw std::invalid_argument("hypergraph: vertex " + std::to_string(v) +
                                      " out of range");
        m |= bit(v);
      }
      edges.push_back(m);
    }
    return Hypergraph(vertex_count, std::move(edges));
  }

  int vertex_count() const noexcept { return vertex_count_; }
  const std::vector<Mask>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  Mask universe() const noexcept { return low_bits(vertex_count_); }

  Mask covered() const noexcept {
    return std::accumulate(edges_.begin(), edges_.end(), Mask{0},
                           [](Mask a, Mask b) { return a | b; });
  }

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<Mask> edges_;
};

/// Vertex set D and edge subset P such that every vertex of D lies in exactly one edge of P.
struct PartitionWitness {
  Mask vertices = 0;
  Mask edges = 0;  // bit i selects edge i

  int size() const noexcept { return popcount(vertices); }
};

struct DegreeProfile {
  std::vector<int> degrees;          // per vertex
  std::map<int, int> class_sizes;    // k -> |D_k|, k >= 1
  std::map<int, int> weighted;       // k -> m_k = k * |D_k|
  int isolated = 0;
};

inline constexpr std::size_t kMaxPartitionEdges = 30;

inline Mask isolated_vertices(const Hypergraph& h) noexcept {
  return h.universe() & ~h.covered();
}

/// Vertices covered by exactly one edge selected in `edge_set`.
inline Mask exactly_once_set(const Hypergraph& h, Mask edge_set) {
  if (h.edge_count() < 64 && (edge_set >> h.edge_count()) != 0)
    throw std::out_of_range("exactly_once_set: edge index out of range");
  Mask once = 0;
  Mask multi = 0;
  for (Mask rest = edge_set; rest != 0; rest &= rest - 1) {
    const Mask e = h.edges()[static_cast<std::size_t>(std::countr_zero(rest))];
    multi |= once & e;
    once = (once ^ e) & ~multi;
  }
  return once;
}

/// True iff `w` is a valid partition in `h`.
inline bool is_partition(const Hypergraph& h, const PartitionWitness& w) {
  if (h.edge_count() < 64 && (w.edges >> h.edge_count()) != 0) return false;
  return (w.vertices & ~exactly_once_set(h, w.edges)) == 0;
}

namespace detail {

struct PartitionSearch {
  const std::vector<Mask>& edges;
  std::vector<Mask> suffix_union;
  int best = -1;
  int stop_above = 0;  // stop as soon as best exceeds this
  PartitionWitness witness;

  void run(std::size_t idx, Mask chosen, Mask once, Mask multi) {
    if (best > stop_above) return;
    const int here = popcount(once);
    if (here > best) {
      best = here;
      witness = {once, chosen};
    }
    if (idx == edges.size()) return;
    if (popcount(once | (suffix_union[idx] & ~multi)) <= best) return;
    const Mask e = edges[idx];
    const Mask new_multi = multi | (once & e);
    const Mask new_once = (once ^ e) & ~new_multi;
    run(idx + 1, chosen | bit(static_cast<int>(idx)), new_once, new_multi);
    run(idx + 1, chosen, once, multi);
  }
};

inline PartitionWitness partition_search(const Hypergraph& h, int stop_above) {
  if (h.edge_count() > kMaxPartitionEdges)
    throw std::invalid_argument("max_partition: more than 30 edges (exhaustive search cap)");
  std::vector<Mask> suffix(h.edge_count() + 1, 0);
  for (std::size_t i = h.edge_count(); i-- > 0;) suffix[i] = suffix[i + 1] | h.edges()[i];
  PartitionSearch s{h.edges(), std::move(suffix), -1, stop_above, {}};
  s.run(0, 0, 0, 0);
  return s.witness;
}

}  // namespace detail

/// Largest partition in `h`, found by exhaustive branch-and-bound over edge subsets.
///
/// Any partition (D, P) has D inside exactly_once_set(P), so maximizing
/// |exactly_once_set(P)| over all P gives the largest partition size.
inline PartitionWitness max_partition(const Hypergraph& h) {
  return detail::partition_search(h, h.vertex_count());
}

/// Some partition of size > n, if one exists. Stops at the first one found.
inline std::optional<PartitionWitness> partition_larger_than(const Hypergraph& h, int n) {
  auto w = detail::partition_search(h, n);
  if (w.size() > n) return w;
  return std::nullopt;
}

/// Removes edges, largest first, while no vertex becomes isolated; restarts after each removal.
inline Hypergraph trim_economical(const Hypergraph& h) {
  if (isolated_vertices(h) != 0)
    throw std::invalid_argument("trim_economical: input has isolated vertices");
  std::vector<Mask> edges = h.edges();
  const Mask universe = h.universe();
  auto covered_without = [&](std::size_t skip) {
    Mask m = 0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (i != skip) m |= edges[i];
    return m;
  };
  for (bool removed = true; removed;) {
    removed = false;
    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return popcount(edges[a]) > popcount(edges[b]);
    });
    for (std::size_t i : order) {
      if ((covered_without(i) & universe) == universe) {
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(i));
        removed = true;
        break;
      }
    }
  }
  return Hypergraph(h.vertex_count(), std::move(edges));
}

/// No isolated vertices, and every edge owns a vertex no other edge covers.
inline bool is_economical(const Hypergraph& h) {
  if (isolated_vertices(h) != 0) return false;
  const auto& e = h.edges();
  for (std::size_t i = 0; i < e.size(); ++i) {
    Mask others = 0;
    for (std::size_t j = 0; j < e.size(); ++j)
      if (j != i) others |= e[j];
    if ((e[i] & ~others) == 0) return false;
  }
  return true;
}

inline DegreeProfile degree_profile(const Hypergraph& h) {
  DegreeProfile p;
  p.degrees.assign(static_cast<std::size_t>(h.vertex_count()), 0);
  for (Mask e : h.edges())
    for (int v : to_indices(e)) ++p.degrees[static_cast<std::size_t>(v)];
  for (int d : p.degrees) {
    if (d == 0) {
      ++p.isolated;
    } else {
      ++p.class_sizes[d];
    }
  }
  for (auto [k, size] : p.class_sizes) p.weighted[k] = k * size;
  return p;
}

}  // namespace ideals
