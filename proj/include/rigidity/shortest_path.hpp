#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigidity/measurement.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

/// Adjacency view of a measurement set for repeated shortest-path queries.
struct WeightedAdjacency {
  int n;
  std::vector<std::vector<std::pair<int, Scalar>>> nbrs;

  explicit WeightedAdjacency(const MeasurementSet& m)
      : n(m.n()), nbrs(std::size_t(m.n())) {
    for (const auto& e : m.edges()) {
      nbrs[std::size_t(e.u)].emplace_back(e.v, e.w);
      nbrs[std::size_t(e.v)].emplace_back(e.u, e.w);
    }
  }
};

/// Single-source shortest-path distances in the weighted measurement graph,
/// exact rational arithmetic. reached[v] == 0 marks an infinite estimate.
struct EstResult {
  int source = 0;
  std::vector<Scalar> dist;
  std::vector<std::uint8_t> reached;

  bool finite(int v) const { return reached[std::size_t(v)] != 0; }
  const Scalar& at(int v) const {
    if (!finite(v)) throw std::logic_error("EstResult: vertex unreachable");
    return dist[std::size_t(v)];
  }
};

inline EstResult est_from(const WeightedAdjacency& adj, int source) {
  if (source < 0 || source >= adj.n)
    throw std::out_of_range("est_from: source out of range");
  EstResult r;
  r.source = source;
  r.dist.assign(std::size_t(adj.n), Scalar(0));
  r.reached.assign(std::size_t(adj.n), 0);
  std::vector<std::uint8_t> settled(std::size_t(adj.n), 0);

  using Entry = std::pair<Scalar, int>;
  auto cmp = [](const Entry& a, const Entry& b) {
    return b.first < a.first || (a.first == b.first && b.second < a.second);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  r.dist[std::size_t(source)] = Scalar(0);
  r.reached[std::size_t(source)] = 1;
  heap.push({Scalar(0), source});

  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (settled[std::size_t(v)]) continue;
    settled[std::size_t(v)] = 1;
    for (const auto& [w, len] : adj.nbrs[std::size_t(v)]) {
      if (settled[std::size_t(w)]) continue;
      Scalar cand = d + len;
      if (!r.reached[std::size_t(w)] || cand < r.dist[std::size_t(w)]) {
        r.dist[std::size_t(w)] = std::move(cand);
        r.reached[std::size_t(w)] = 1;
        heap.push({r.dist[std::size_t(w)], w});
      }
    }
  }
  return r;
}

/// Est(source, .) over the measurement graph.
inline EstResult est_from(const MeasurementSet& m, int source) {
  return est_from(WeightedAdjacency(m), source);
}

}  // namespace rigidity
