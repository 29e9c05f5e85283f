#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigidity/geometry.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

struct WeightedEdge {
  int u, v;  // u < v after normalization
  Scalar w;
};

/// The known pairs with their measured distances: the weighted graph (V, P).
class MeasurementSet {
public:
  MeasurementSet(int n, std::vector<WeightedEdge> edges)
      : n_(n), edges_(std::move(edges)) {
    if (n < 0) throw std::invalid_argument("MeasurementSet: negative n");
    for (auto& e : edges_) {
      if (e.u > e.v) std::swap(e.u, e.v);
      if (e.u < 0 || e.v >= n_)
        throw std::out_of_range("MeasurementSet: endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("MeasurementSet: self-loop");
      if (e.w.sign() < 0)
        throw std::invalid_argument("MeasurementSet: negative weight");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const WeightedEdge& a, const WeightedEdge& b) {
                return std::pair(a.u, a.v) < std::pair(b.u, b.v);
              });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
        throw std::invalid_argument("MeasurementSet: duplicate pair");
  }

  int n() const { return n_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  Graph graph() const {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(edges_.size());
    for (const auto& e : edges_) pairs.emplace_back(e.u, e.v);
    return Graph(n_, pairs);
  }

private:
  int n_;
  std::vector<WeightedEdge> edges_;
};

/// Each pair included independently with probability p, weighted by the true
/// distance of the configuration. Deterministic given the seed.
inline MeasurementSet sample_measurements(const PointConfig& cfg, double p,
                                          std::uint64_t seed) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("sample_measurements: p outside [0,1]");
  std::vector<WeightedEdge> edges;
  sample_pairs(cfg.n(), p, seed, [&](int i, int j) {
    edges.push_back({i, j, cfg.distance(i, j)});
  });
  return MeasurementSet(cfg.n(), std::move(edges));
}

/// All pairs measured.
inline MeasurementSet measure_all(const PointConfig& cfg) {
  std::vector<WeightedEdge> edges;
  edges.reserve(std::size_t(cfg.n()) * std::size_t(cfg.n() - 1) / 2);
  for (int i = 0; i < cfg.n(); ++i)
    for (int j = i + 1; j < cfg.n(); ++j)
      edges.push_back({i, j, cfg.distance(i, j)});
  return MeasurementSet(cfg.n(), std::move(edges));
}

/// Symmetric pair -> Scalar map with presence flags, triangular storage.
class PairTable {
public:
  explicit PairTable(int n)
      : n_(n), val_(std::size_t(n) * std::size_t(std::max(n - 1, 0)) / 2),
        has_(val_.size(), 0) {
    if (n < 0) throw std::invalid_argument("PairTable: negative n");
  }

  int n() const { return n_; }

  bool has(int i, int j) const { return has_[index(i, j)] != 0; }

  const Scalar& get(int i, int j) const {
    std::size_t k = index(i, j);
    if (!has_[k]) throw std::logic_error("PairTable: pair not set");
    return val_[k];
  }

  void set(int i, int j, Scalar v) {
    std::size_t k = index(i, j);
    val_[k] = std::move(v);
    has_[k] = 1;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto h : has_) c += h;
    return c;
  }

  bool complete() const { return count() == val_.size(); }

  friend bool operator==(const PairTable& a, const PairTable& b) {
    if (a.n_ != b.n_ || a.has_ != b.has_) return false;
    for (std::size_t k = 0; k < a.val_.size(); ++k)
      if (a.has_[k] && a.val_[k] != b.val_[k]) return false;
    return true;
  }
  friend bool operator!=(const PairTable& a, const PairTable& b) {
    return !(a == b);
  }

private:
  int n_;
  std::vector<Scalar> val_;
  std::vector<std::uint8_t> has_;

  std::size_t index(int i, int j) const {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_)
      throw std::out_of_range("PairTable: bad pair");
    if (i > j) std::swap(i, j);
    return std::size_t(j) * (std::size_t(j) - 1) / 2 + std::size_t(i);
  }
};

/// Distance table of all pairs of a configuration.
inline PairTable full_distance_map(const PointConfig& cfg) {
  PairTable t(cfg.n());
  for (int i = 0; i < cfg.n(); ++i)
    for (int j = i + 1; j < cfg.n(); ++j) t.set(i, j, cfg.distance(i, j));
  return t;
}

}  // namespace rigidity
