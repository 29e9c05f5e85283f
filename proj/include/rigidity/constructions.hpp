#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rigidity/geometry.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/rng.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; std::int64_t(d) * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// Bipartite point/line incidence graph of the projective plane of order q
/// (equivalently, lines vs planes through the origin of F_q^3):
/// 2(q^2+q+1) vertices, (q+1)(q^2+q+1) edges, C4-free. Points come first,
/// lines after.
inline Graph gen_incidence_c4free(int q) {
  if (!is_prime(q)) throw std::invalid_argument("gen_incidence_c4free: q must be prime");
  // Normalized homogeneous triples: (1,a,b), (0,1,a), (0,0,1).
  std::vector<std::array<int, 3>> reps;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) reps.push_back({1, a, b});
  for (int a = 0; a < q; ++a) reps.push_back({0, 1, a});
  reps.push_back({0, 0, 1});
  const int N = int(reps.size());  // q^2 + q + 1

  std::vector<std::pair<int, int>> edges;
  for (int p = 0; p < N; ++p)
    for (int l = 0; l < N; ++l) {
      long long dot = 0;
      for (int c = 0; c < 3; ++c)
        dot += (long long)reps[std::size_t(p)][std::size_t(c)] *
               reps[std::size_t(l)][std::size_t(c)];
      if (dot % q == 0) edges.emplace_back(p, N + l);
    }
  return Graph(2 * N, edges);
}

/// Replace each vertex by a k-clique and each edge by a complete bipartite
/// bundle between the corresponding cliques. Vertex (v, c) maps to v*k + c.
inline Graph blow_up(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("blow_up: need k >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < g.n(); ++v)
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        edges.emplace_back(v * k + a, v * k + b);
  for (auto [u, v] : g.edge_list())
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        edges.emplace_back(u * k + a, v * k + b);
  return Graph(g.n() * k, edges);
}

/// T(G): each edge replaced by three parallel length-2 paths. Original
/// vertices keep their ids; the i-th subdivision vertex of edge number e is
/// n + 3e + i.
inline Graph gen_T(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  const auto original = g.edge_list();
  for (std::size_t e = 0; e < original.size(); ++e) {
    auto [u, v] = original[e];
    for (int i = 0; i < 3; ++i) {
      int mid = g.n() + int(3 * e) + i;
      edges.emplace_back(u, mid);
      edges.emplace_back(v, mid);
    }
  }
  return Graph(g.n() + 3 * int(original.size()), edges);
}

/// Two abstract point sets over 2s points that agree on every cross pair yet
/// differ within the sides: the 3-regular-tree ambiguity witness. Sides are
/// index ranges [0,s) and [s,2s); the shared measurement set is all s^2 cross
/// pairs, every one at distance 6*t_scale.
struct AmbiguityInstance {
  int t_scale = 1;
  int per_side = 2;
  std::vector<std::vector<Scalar>> r1, r2;  // symmetric 2s x 2s, zero diagonal
  std::vector<std::pair<int, int>> cross_pairs;
};

inline AmbiguityInstance gen_tree_ambiguity(int t_scale, int per_side = 2) {
  if (t_scale < 1) throw std::invalid_argument("gen_tree_ambiguity: t_scale >= 1");
  if (per_side < 2) throw std::invalid_argument("gen_tree_ambiguity: per_side >= 2");
  if (t_scale < 31 && per_side > (1 << t_scale))
    throw std::invalid_argument("gen_tree_ambiguity: per_side > 2^t_scale");

  // Side points are binary strings of length 3*t_scale in the infinite binary
  // tree: S1 = prefix of 2*t_scale zeros + w, S2 = w + suffix of zeros. Tree
  // distance is 2*(depth - common prefix), so pairwise distances inside S1
  // stay <= 2*t_scale and inside S2 are >= 4*t_scale.
  auto common_prefix = [&](std::uint64_t a, std::uint64_t b) {
    int cp = 0;
    for (int bit = t_scale - 1; bit >= 0; --bit) {
      std::uint64_t ba = bit < 63 ? (a >> bit) & 1 : 0;
      std::uint64_t bb = bit < 63 ? (b >> bit) & 1 : 0;
      if (ba != bb) break;
      ++cp;
    }
    return cp;
  };

  const int s = per_side;
  AmbiguityInstance inst;
  inst.t_scale = t_scale;
  inst.per_side = s;
  inst.r1.assign(std::size_t(2 * s), std::vector<Scalar>(std::size_t(2 * s), Scalar(0)));
  inst.r2 = inst.r1;

  const Scalar cross = Scalar(6) * Scalar(t_scale);
  for (int a = 0; a < 2 * s; ++a)
    for (int b = a + 1; b < 2 * s; ++b) {
      Scalar d1, d2;
      if ((a < s) == (b < s)) {
        int cp = common_prefix(std::uint64_t(a % s), std::uint64_t(b % s));
        d1 = Scalar(2) * Scalar(t_scale - cp);
        d2 = Scalar(2) * (Scalar(3) * Scalar(t_scale) - Scalar(cp));
      } else {
        d1 = cross;
        d2 = cross;
      }
      inst.r1[std::size_t(a)][std::size_t(b)] = d1;
      inst.r1[std::size_t(b)][std::size_t(a)] = d1;
      inst.r2[std::size_t(a)][std::size_t(b)] = d2;
      inst.r2[std::size_t(b)][std::size_t(a)] = d2;
    }
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) inst.cross_pairs.emplace_back(a, s + b);
  return inst;
}

enum class PlantedKind { UniformRational, Clustered, IntegerGrid };

/// Test-input factory for line configurations. Clustered places two tight
/// clusters far apart to stress shortest-path estimation on close pairs.
inline PointConfig gen_planted_line(int n, PlantedKind kind,
                                    std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_planted_line: need n >= 2");
  std::vector<Scalar> pos;
  pos.reserve(std::size_t(n));
  Rng rng(seed);
  const std::int64_t den = std::int64_t(1) << 32;

  auto draw_distinct = [&](int count, const Scalar& base) {
    std::vector<std::uint64_t> nums;
    while (int(nums.size()) < count) {
      std::uint64_t v = rng.below(std::uint64_t(den));
      bool dup = false;
      for (std::uint64_t o : nums)
        if (o == v) {
          dup = true;
          break;
        }
      if (!dup) nums.push_back(v);
    }
    for (std::uint64_t v : nums)
      pos.push_back(base + Scalar::fraction(std::int64_t(v), den));
  };

  switch (kind) {
    case PlantedKind::IntegerGrid:
      for (int i = 1; i <= n; ++i) pos.push_back(Scalar(i));
      break;
    case PlantedKind::UniformRational:
      draw_distinct(n, Scalar(0));
      break;
    case PlantedKind::Clustered:
      draw_distinct((n + 1) / 2, Scalar(0));
      draw_distinct(n / 2, Scalar(100000));
      break;
  }
  return PointConfig(Space::Line, std::move(pos));
}

/// Distinct rational positions in [0,1).
inline PointConfig gen_planted_circle(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_planted_circle: need n >= 2");
  Rng rng(seed);
  const std::int64_t den = std::int64_t(1) << 32;
  std::vector<std::uint64_t> nums;
  while (int(nums.size()) < n) {
    std::uint64_t v = rng.below(std::uint64_t(den));
    bool dup = false;
    for (std::uint64_t o : nums)
      if (o == v) {
        dup = true;
        break;
      }
    if (!dup) nums.push_back(v);
  }
  std::vector<Scalar> pos;
  pos.reserve(std::size_t(n));
  for (std::uint64_t v : nums) pos.push_back(Scalar::fraction(std::int64_t(v), den));
  return PointConfig(Space::Circle, std::move(pos));
}

}  // namespace rigidity
