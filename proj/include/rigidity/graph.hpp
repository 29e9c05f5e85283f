#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigidity/rng.hpp"

namespace rigidity {

/// Simple undirected graph with sorted adjacency lists. Immutable after
/// construction.
class Graph {
public:
  explicit Graph(int n) : n_(n), m_(0), adj_(std::size_t(std::max(n, 0))) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  }

  Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
    for (auto [u, v] : edges) add_edge_unchecked(u, v);
    finalize();
  }

  int n() const { return n_; }
  std::size_t m() const { return m_; }

  std::span<const int> neighbors(int v) const {
    check_vertex(v);
    return adj_[std::size_t(v)];
  }

  int degree(int v) const { return int(neighbors(v).size()); }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& a = adj_[std::size_t(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Common neighborhood of i and j, i != j. Never contains i or j since the
  /// graph has no self-loops.
  std::vector<int> common_neighbors(int i, int j) const {
    check_vertex(i);
    check_vertex(j);
    if (i == j) throw std::invalid_argument("common_neighbors: i == j");
    std::vector<int> out;
    const auto& a = adj_[std::size_t(i)];
    const auto& b = adj_[std::size_t(j)];
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
  }

  std::vector<std::pair<int, int>> edge_list() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(m_);
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[std::size_t(u)])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// Induced subgraph on `vertices` plus the index mapping back to this graph.
  Graph induced(const std::vector<int>& vertices) const {
    std::vector<int> rank(std::size_t(n_), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      check_vertex(vertices[i]);
      rank[std::size_t(vertices[i])] = int(i);
    }
    Graph sub(int(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (int w : neighbors(vertices[i])) {
        int rw = rank[std::size_t(w)];
        if (rw >= 0 && int(i) < rw) sub.add_edge_unchecked(int(i), rw);
      }
    sub.finalize();
    return sub;
  }

private:
  int n_;
  std::size_t m_;
  std::vector<std::vector<int>> adj_;

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex out of range");
  }

  void add_edge_unchecked(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop");
    adj_[std::size_t(u)].push_back(v);
    adj_[std::size_t(v)].push_back(u);
    ++m_;
  }

  void finalize() {
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end())
        throw std::invalid_argument("Graph: duplicate edge");
    }
  }
};

/// Dense adjacency bitmap for the clique and closure machinery. One bit row
/// per vertex; intersections are AND + popcount over words.
class BitAdjacency {
public:
  explicit BitAdjacency(int n)
      : n_(n), words_((std::size_t(n) + 63) / 64),
        bits_(std::size_t(n) * ((std::size_t(n) + 63) / 64), 0) {}

  explicit BitAdjacency(const Graph& g) : BitAdjacency(g.n()) {
    for (int u = 0; u < g.n(); ++u)
      for (int v : g.neighbors(u)) set(u, v);
  }

  int n() const { return n_; }
  std::size_t words() const { return words_; }

  void set(int u, int v) {
    bits_[row_offset(u) + std::size_t(v) / 64] |= std::uint64_t(1) << (v % 64);
  }

  void clear(int u, int v) {
    bits_[row_offset(u) + std::size_t(v) / 64] &=
        ~(std::uint64_t(1) << (v % 64));
  }

  bool test(int u, int v) const {
    return (bits_[row_offset(u) + std::size_t(v) / 64] >> (v % 64)) & 1;
  }

  std::span<const std::uint64_t> row(int u) const {
    return {bits_.data() + row_offset(u), words_};
  }

  int degree(int u) const {
    int d = 0;
    for (std::uint64_t w : row(u)) d += std::popcount(w);
    return d;
  }

  int common_count(int u, int v) const {
    auto ru = row(u), rv = row(v);
    int c = 0;
    for (std::size_t w = 0; w < words_; ++w) c += std::popcount(ru[w] & rv[w]);
    return c;
  }

  /// Vertices adjacent to both u and v, ascending.
  std::vector<int> common_list(int u, int v) const {
    auto ru = row(u), rv = row(v);
    std::vector<int> out;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bitsw = ru[w] & rv[w];
      while (bitsw) {
        int b = std::countr_zero(bitsw);
        out.push_back(int(w * 64) + b);
        bitsw &= bitsw - 1;
      }
    }
    return out;
  }

  template <typename Fn>
  void for_each_neighbor(int u, Fn&& fn) const {
    auto ru = row(u);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bitsw = ru[w];
      while (bitsw) {
        int b = std::countr_zero(bitsw);
        fn(int(w * 64) + b);
        bitsw &= bitsw - 1;
      }
    }
  }

private:
  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;

  std::size_t row_offset(int u) const { return std::size_t(u) * words_; }
};

/// Visits each unordered pair {i,j} of [0,n) independently with probability p,
/// in lexicographic order, calling emit(i,j) for the selected ones.
///
/// Uses geometric gap-skipping over the pair enumeration: O(n + expected
/// selected) time, so a sweep at n = 10^4 over hundreds of trials stays in
/// seconds even at p ~ ln(n)/n.
template <typename Emit>
void sample_pairs(int n, double p, std::uint64_t seed, Emit&& emit) {
  if (n < 0) throw std::invalid_argument("sample_pairs: negative n");
  if (n < 2 || p <= 0.0) return;
  if (p >= 1.0) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) emit(i, j);
    return;
  }
  Rng rng(seed);
  const double log_q = std::log1p(-p);
  const std::uint64_t total = std::uint64_t(n) * std::uint64_t(n - 1) / 2;
  std::uint64_t t = 0;  // index of the next candidate pair
  int i = 0, j = 1;     // pair at index t_pos
  std::uint64_t t_pos = 0;
  for (;;) {
    double skip_f = std::floor(std::log1p(-rng.unit()) / log_q);
    if (!(skip_f < double(total - t))) break;  // also catches +inf
    std::uint64_t idx = t + std::uint64_t(skip_f);
    // Advance (i,j) from t_pos to idx; the row pointer only moves forward,
    // so this is amortized O(n) over the whole enumeration.
    std::uint64_t adv = idx - t_pos;
    while (adv > 0) {
      std::uint64_t row_left = std::uint64_t(n - 1 - j);
      if (adv <= row_left) {
        j += int(adv);
        adv = 0;
      } else {
        adv -= row_left + 1;
        ++i;
        j = i + 1;
      }
    }
    t_pos = idx;
    emit(i, j);
    t = idx + 1;
  }
}

/// G(n,p) sample with deterministic seed.
inline Graph sample_gnp(int n, double p, std::uint64_t seed) {
  std::vector<std::pair<int, int>> edges;
  sample_pairs(n, p, seed, [&](int i, int j) { edges.emplace_back(i, j); });
  return Graph(n, edges);
}

}  // namespace rigidity
