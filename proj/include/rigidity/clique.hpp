#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigidity/graph.hpp"
#include "rigidity/local_determination.hpp"
#include "rigidity/measurement.hpp"
#include "rigidity/rng.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

namespace detail {

/// Iteratively delete vertices of current degree < |E|/n, where |E| and n are
/// taken from the original graph. The surviving set is the same for every
/// deletion order; `order_seed` only shuffles the processing order so tests
/// can exercise confluence.
inline std::vector<int> prune_with_order(const Graph& g,
                                         std::uint64_t order_seed) {
  const int n = g.n();
  const std::uint64_t m = g.m();
  if (m == 0) throw std::invalid_argument("prune_min_degree: graph has no edges");

  std::vector<std::uint64_t> deg(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) deg[std::size_t(v)] = std::uint64_t(g.degree(v));
  std::vector<std::uint8_t> alive(std::size_t(n), 1);

  // degree < |E|/n  <=>  degree * n < |E|
  auto below = [&](int v) {
    return deg[std::size_t(v)] * std::uint64_t(n) < m;
  };

  std::vector<int> stack;
  std::vector<int> seed_order(static_cast<std::size_t>(n));
  std::iota(seed_order.begin(), seed_order.end(), 0);
  if (order_seed != 0) {
    Rng rng(order_seed);
    rng.shuffle(seed_order);
  }
  std::vector<std::uint8_t> pending(std::size_t(n), 0);
  for (int v : seed_order)
    if (below(v)) {
      stack.push_back(v);
      pending[std::size_t(v)] = 1;
    }

  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    pending[std::size_t(v)] = 0;
    if (!alive[std::size_t(v)] || !below(v)) continue;
    alive[std::size_t(v)] = 0;
    for (int w : g.neighbors(v)) {
      if (!alive[std::size_t(w)]) continue;
      --deg[std::size_t(w)];
      if (below(w) && !pending[std::size_t(w)]) {
        stack.push_back(w);
        pending[std::size_t(w)] = 1;
      }
    }
  }

  std::vector<int> kept;
  for (int v = 0; v < n; ++v)
    if (alive[std::size_t(v)]) kept.push_back(v);
  if (kept.empty())
    throw std::logic_error("prune_min_degree: deletion emptied the graph");
  return kept;
}

}  // namespace detail

/// Vertices of the induced subgraph with minimum degree >= |E|/n. Canonical:
/// the result does not depend on deletion order.
inline std::vector<int> prune_min_degree(const Graph& g) {
  return detail::prune_with_order(g, 0);
}

/// Independent set admitting no 1-for-2 improvement: there are no two
/// non-adjacent outside vertices x, y whose unique neighbor in the set is the
/// same member s. Greedy seed (ascending degree, seed shuffles within equal
/// degree) followed by exhaustive swap search; each swap grows the set, so at
/// most n rounds run.
inline std::vector<int> swap_optimal_independent_set(const Graph& g,
                                                     std::uint64_t seed) {
  const int n = g.n();
  if (n == 0) return {};
  BitAdjacency adj(g);

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) < g.degree(b); });
  Rng rng(seed);
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() &&
           g.degree(order[hi]) == g.degree(order[lo]))
      ++hi;
    for (std::size_t i = hi - lo; i > 1; --i) {
      std::size_t j = rng.below(i);
      std::swap(order[lo + i - 1], order[lo + j]);
    }
    lo = hi;
  }

  std::vector<std::uint8_t> in_set(std::size_t(n), 0), blocked(std::size_t(n), 0);
  for (int v : order)
    if (!blocked[std::size_t(v)]) {
      in_set[std::size_t(v)] = 1;
      blocked[std::size_t(v)] = 1;
      for (int w : g.neighbors(v)) blocked[std::size_t(w)] = 1;
    }

  // uniq[v] = the only set member adjacent to v, or -1 (none / more than one).
  std::vector<int> uniq(static_cast<std::size_t>(n));
  auto recompute_uniq = [&]() {
    for (int v = 0; v < n; ++v) {
      if (in_set[std::size_t(v)]) {
        uniq[std::size_t(v)] = -1;
        continue;
      }
      int hit = -1, count = 0;
      for (int w : g.neighbors(v)) {
        if (in_set[std::size_t(w)]) {
          hit = w;
          if (++count > 1) break;
        }
      }
      uniq[std::size_t(v)] = count == 1 ? hit : -1;
    }
  };

  bool improved = true;
  while (improved) {
    improved = false;
    recompute_uniq();
    std::vector<std::vector<int>> bucket(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      if (uniq[std::size_t(v)] >= 0)
        bucket[std::size_t(uniq[std::size_t(v)])].push_back(v);
    for (int s = 0; s < n && !improved; ++s) {
      const auto& b = bucket[std::size_t(s)];
      for (std::size_t x = 0; x < b.size() && !improved; ++x)
        for (std::size_t y = x + 1; y < b.size(); ++y) {
          if (!adj.test(b[x], b[y])) {
            in_set[std::size_t(s)] = 0;
            in_set[std::size_t(b[x])] = 1;
            in_set[std::size_t(b[y])] = 1;
            improved = true;
            break;
          }
        }
    }
  }

  std::vector<int> result;
  for (int v = 0; v < n; ++v)
    if (in_set[std::size_t(v)]) result.push_back(v);
  return result;
}

/// B_i = { u : Gamma(u) ∩ I = {s_i} }, aligned with I. I must be independent.
inline std::vector<std::vector<int>> unique_neighbor_sets(
    const Graph& g, const std::vector<int>& I) {
  const int n = g.n();
  std::vector<int> member(std::size_t(n), -1);
  for (std::size_t i = 0; i < I.size(); ++i) {
    if (I[i] < 0 || I[i] >= n)
      throw std::out_of_range("unique_neighbor_sets: vertex out of range");
    if (member[std::size_t(I[i])] != -1)
      throw std::invalid_argument("unique_neighbor_sets: repeated vertex");
    member[std::size_t(I[i])] = int(i);
  }
  for (std::size_t i = 0; i < I.size(); ++i)
    for (int w : g.neighbors(I[i]))
      if (member[std::size_t(w)] != -1)
        throw std::invalid_argument("unique_neighbor_sets: set not independent");

  std::vector<std::vector<int>> b(I.size());
  for (int v = 0; v < n; ++v) {
    if (member[std::size_t(v)] != -1) continue;
    int hit = -1, count = 0;
    for (int w : g.neighbors(v)) {
      if (member[std::size_t(w)] != -1) {
        hit = member[std::size_t(w)];
        if (++count > 1) break;
      }
    }
    if (count == 1) b[std::size_t(hit)].push_back(v);
  }
  return b;
}

inline bool is_clique(const Graph& g, const std::vector<int>& vs) {
  BitAdjacency adj(g);
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!adj.test(vs[a], vs[b])) return false;
  return true;
}

struct CliqueCertificate {
  std::vector<int> pruned_vertices;          // surviving vertex set V'
  long long min_degree_pruned = 0;           // delta of the induced subgraph
  std::vector<int> independent_set;          // swap-optimal IS on V'
  std::vector<std::vector<int>> b_sets;      // aligned with independent_set
  std::vector<int> clique;                   // largest B_i ∪ {s_i}, verified
  int k = 0;                                 // intersection bound used
};

/// prune -> swap-optimal IS on the pruned graph -> B_i sets -> largest
/// B_i ∪ {s_i}. The returned set is verified complete.
///
/// When every two non-adjacent vertices share at most k neighbors and
/// |E| >= 8n*sqrt(kn), the clique has size >= |E|/(4n). Below the threshold a
/// verified (possibly small) clique is still returned.
inline CliqueCertificate extract_clique(const Graph& g, int k,
                                        std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("extract_clique: negative k");
  CliqueCertificate cert;
  cert.k = k;

  if (g.m() == 0) {
    cert.pruned_vertices.resize(std::size_t(g.n()));
    std::iota(cert.pruned_vertices.begin(), cert.pruned_vertices.end(), 0);
    cert.independent_set = cert.pruned_vertices;
    cert.b_sets.assign(cert.independent_set.size(), {});
    if (g.n() > 0) cert.clique = {0};
    return cert;
  }

  cert.pruned_vertices = prune_min_degree(g);
  Graph sub = g.induced(cert.pruned_vertices);
  cert.min_degree_pruned = sub.n() > 0 ? sub.degree(0) : 0;
  for (int v = 0; v < sub.n(); ++v)
    cert.min_degree_pruned = std::min(cert.min_degree_pruned,
                                      (long long)sub.degree(v));

  std::vector<int> is_sub = swap_optimal_independent_set(sub, seed);
  std::vector<std::vector<int>> b_sub = unique_neighbor_sets(sub, is_sub);

  std::size_t best = 0;
  for (std::size_t i = 1; i < is_sub.size(); ++i)
    if (b_sub[i].size() > b_sub[best].size()) best = i;

  auto original = [&](int v) { return cert.pruned_vertices[std::size_t(v)]; };
  for (std::size_t i = 0; i < is_sub.size(); ++i) {
    cert.independent_set.push_back(original(is_sub[i]));
    std::vector<int> mapped;
    mapped.reserve(b_sub[i].size());
    for (int v : b_sub[i]) mapped.push_back(original(v));
    std::sort(mapped.begin(), mapped.end());
    cert.b_sets.push_back(std::move(mapped));
  }

  cert.clique = cert.b_sets[best];
  cert.clique.push_back(cert.independent_set[best]);
  std::sort(cert.clique.begin(), cert.clique.end());

  if (!is_clique(g, cert.clique))
    throw std::logic_error("extract_clique: candidate failed verification");
  return cert;
}

/// Corradi's bound r^2 N / (r + (N-1)k) as an exact rational. Used as a test
/// oracle against measured neighborhood-union sizes.
inline Scalar corradi_bound(long long r, long long N, long long k) {
  if (r < 1 || N < 1 || k < 0)
    throw std::invalid_argument("corradi_bound: need r >= 1, N >= 1, k >= 0");
  return Scalar(r) * Scalar(r) * Scalar(N) /
         (Scalar(r) + Scalar(N - 1) * Scalar(k));
}

/// Necessary conditions for global rigidity in R: minimum degree >= 2, the
/// degree-2 vertices form an independent set, average degree >= 12/5. A graph
/// failing either of the first two is certainly not globally rigid.
struct RigidityReport {
  bool min_degree_ok = false;
  bool v2_independent = false;
  bool avg_degree_ok = false;
  bool certified_not_rigid() const { return !min_degree_ok || !v2_independent; }
};

inline RigidityReport check_rigidity_necessary(const Graph& g) {
  if (g.n() < 4)
    throw std::invalid_argument("check_rigidity_necessary: need |V| >= 4");
  RigidityReport r;
  r.min_degree_ok = true;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) < 2) r.min_degree_ok = false;
  r.v2_independent = true;
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) != 2) continue;
    for (int w : g.neighbors(v))
      if (g.degree(w) == 2) r.v2_independent = false;
  }
  // 2|E|/n >= 12/5  <=>  5|E| >= 6n
  r.avg_degree_ok = 5 * std::uint64_t(g.m()) >= 6 * std::uint64_t(g.n());
  return r;
}

struct DenseReconstruction {
  std::vector<int> vertices;  // the reconstructible subset V'
  PairTable distances;        // determined values on V' x V'
};

/// Dense-measurement pipeline: close the measurement set, then extract a
/// clique from the determined graph with k = locality - 1 (a pair with
/// locality-many common determined neighbors is itself determined, so
/// non-determined pairs share at most locality - 1).
inline DenseReconstruction reconstruct_dense(const MeasurementSet& m,
                                             Space space,
                                             std::uint64_t seed = 1) {
  DeterminedGraph dg = closure(m, space);
  Graph g = dg.graph();
  CliqueCertificate cert = extract_clique(g, locality(space) - 1, seed);
  DenseReconstruction out{cert.clique, PairTable(m.n())};
  for (std::size_t a = 0; a < cert.clique.size(); ++a)
    for (std::size_t b = a + 1; b < cert.clique.size(); ++b) {
      int i = cert.clique[a], j = cert.clique[b];
      out.distances.set(i, j, dg.determined().get(i, j));
    }
  return out;
}

}  // namespace rigidity
