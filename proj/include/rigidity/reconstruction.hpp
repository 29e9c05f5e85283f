#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/geometry.hpp"
#include "rigidity/local_determination.hpp"
#include "rigidity/measurement.hpp"
#include "rigidity/rng.hpp"
#include "rigidity/scalar.hpp"
#include "rigidity/shortest_path.hpp"

namespace rigidity {

/// True iff the largest of the three equals the sum of the other two. Exact;
/// the signature of collinearity on the line.
inline bool triangle_equality(const Scalar& a, const Scalar& b,
                              const Scalar& c) {
  if (a.sign() < 0 || b.sign() < 0 || c.sign() < 0)
    throw std::invalid_argument("triangle_equality: negative input");
  const Scalar& m = max(a, max(b, c));
  return m + m == a + b + c;
}

/// Int(u,v): vertices x (finite in both estimate maps, x != u,v) with
/// duv = est_u(x) + est_v(x), i.e. triangle equality with duv maximal.
inline std::vector<int> int_set(int u, int v, const EstResult& est_u,
                                const EstResult& est_v, const Scalar& duv) {
  std::vector<int> out;
  for (int x = 0; x < int(est_u.dist.size()); ++x) {
    if (x == u || x == v) continue;
    if (!est_u.finite(x) || !est_v.finite(x)) continue;
    if (est_u.dist[std::size_t(x)] + est_v.dist[std::size_t(x)] == duv)
      out.push_back(x);
  }
  return out;
}

/// True iff emb_b = ±emb_a + t for some translation t, checked exactly.
inline bool isometry_match(const std::vector<Scalar>& emb_a,
                           const std::vector<Scalar>& emb_b) {
  if (emb_a.size() != emb_b.size())
    throw std::invalid_argument("isometry_match: size mismatch");
  if (emb_a.size() < 2)
    throw std::invalid_argument("isometry_match: need at least 2 vertices");
  for (int sigma : {1, -1}) {
    Scalar s(sigma);
    Scalar t = emb_b[0] - s * emb_a[0];
    bool ok = true;
    for (std::size_t i = 1; i < emb_a.size() && ok; ++i)
      ok = emb_b[i] == s * emb_a[i] + t;
    if (ok) return true;
  }
  return false;
}

struct EmbeddingResult {
  enum class Status { Success, Failed };
  Status status = Status::Failed;
  std::vector<Scalar> emb;  // valid on Success
  int iterations_used = 0;
};

struct Algorithm1Options {
  int max_rounds = 0;  // 0 = ceil(ln n)
};

/// Randomized linear-expected-time embedding. Each round samples distinct
/// u, v, computes the shortest-path estimates from both, and fires when the
/// estimated interior Int(u,v) holds at least n/2 vertices: the interior is
/// embedded directly by est_u, the rest via the two middle interior vertices.
/// Rounds with an infinite estimate on a needed vertex, an est tie on an
/// outside vertex, or a non-injective result are abandoned and resampled.
inline EmbeddingResult algorithm1(const MeasurementSet& m, std::uint64_t seed,
                                  Algorithm1Options opt = {}) {
  const int n = m.n();
  if (n < 16) throw std::invalid_argument("algorithm1: need n >= 16");
  const int max_rounds =
      opt.max_rounds > 0 ? opt.max_rounds : int(std::ceil(std::log(double(n))));
  const int trim = (n + 7) / 8;  // never zero for n >= 8

  WeightedAdjacency adj(m);
  Rng rng(seed);
  EmbeddingResult result;

  for (int round = 1; round <= max_rounds; ++round) {
    result.iterations_used = round;
    int u = int(rng.below(std::uint64_t(n)));
    int v = int(rng.below(std::uint64_t(n)));
    while (v == u) v = int(rng.below(std::uint64_t(n)));

    EstResult est_u = est_from(adj, u);
    if (!est_u.finite(v)) continue;
    EstResult est_v = est_from(adj, v);
    const Scalar duv = est_u.dist[std::size_t(v)];

    std::vector<int> interior = int_set(u, v, est_u, est_v, duv);
    if (2 * interior.size() < std::size_t(n)) continue;

    // Int': drop the trim vertices closest to u and closest to v.
    auto smallest_by = [&](const EstResult& est) {
      std::vector<int> ord = interior;
      std::sort(ord.begin(), ord.end(), [&](int a, int b) {
        int c = Scalar::compare(est.dist[std::size_t(a)],
                                est.dist[std::size_t(b)]);
        return c < 0 || (c == 0 && a < b);
      });
      ord.resize(std::size_t(std::min<std::size_t>(ord.size(),
                                                   std::size_t(trim))));
      return ord;
    };
    std::vector<std::uint8_t> dropped(std::size_t(n), 0);
    for (int x : smallest_by(est_u)) dropped[std::size_t(x)] = 1;
    for (int x : smallest_by(est_v)) dropped[std::size_t(x)] = 1;
    std::vector<int> prime;
    for (int x : interior)
      if (!dropped[std::size_t(x)]) prime.push_back(x);
    if (prime.size() < 2) continue;

    std::sort(prime.begin(), prime.end(), [&](int a, int b) {
      int c = Scalar::compare(est_u.dist[std::size_t(a)],
                              est_u.dist[std::size_t(b)]);
      return c < 0 || (c == 0 && a < b);
    });
    const std::size_t mid = prime.size() / 2;
    const int x_u = prime[mid - 1];  // nearer u
    const int x_v = prime[mid];

    EstResult est_a = est_from(adj, x_u);
    EstResult est_b = est_from(adj, x_v);

    std::vector<Scalar> emb(static_cast<std::size_t>(n));
    std::vector<std::uint8_t> in_prime(std::size_t(n), 0);
    emb[std::size_t(u)] = Scalar(0);
    for (int w : prime) {
      in_prime[std::size_t(w)] = 1;
      emb[std::size_t(w)] = est_u.dist[std::size_t(w)];
    }
    const Scalar emb_xu = emb[std::size_t(x_u)];

    bool aborted = false;
    for (int w = 0; w < n && !aborted; ++w) {
      if (w == u || in_prime[std::size_t(w)]) continue;
      if (!est_a.finite(w) || !est_b.finite(w)) {
        aborted = true;
        break;
      }
      int c = Scalar::compare(est_a.dist[std::size_t(w)],
                              est_b.dist[std::size_t(w)]);
      if (c > 0) {
        emb[std::size_t(w)] = emb_xu + est_a.dist[std::size_t(w)];
      } else if (c < 0) {
        emb[std::size_t(w)] = emb_xu - est_a.dist[std::size_t(w)];
      } else {
        aborted = true;  // tie: pathological sample, resample the round
      }
    }
    if (aborted) continue;

    std::vector<Scalar> sorted = emb;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      continue;  // non-injective result: treat as a failed round

    result.status = EmbeddingResult::Status::Success;
    result.emb = std::move(emb);
    return result;
  }

  result.status = EmbeddingResult::Status::Failed;
  return result;
}

// --- corrupted-distance machinery ------------------------------------------

enum class CorruptionKind { RandomPerVertex, AdversarialShift };

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::RandomPerVertex;
  double c = 0.0;       // per-vertex corrupted-pair count stays <= c*n
  std::uint64_t seed = 1;
  Scalar shift = Scalar(0);  // AdversarialShift only
};

namespace detail {
inline std::int64_t floor_to_int64(const Scalar& s) {
  BigInt q = s.numerator() / s.denominator();
  if (s.sign() < 0 && q * s.denominator() != s.numerator()) q -= 1;
  return q.convert_to<std::int64_t>();
}
}  // namespace detail

/// Corrupt up to c*n pairs per vertex with uniformly random wrong values drawn
/// from (0, 2*diameter] as rationals with bounded denominator.
inline PairTable corrupt_random_per_vertex(const PairTable& truth, double c,
                                           std::uint64_t seed) {
  const int n = truth.n();
  if (!truth.complete())
    throw std::invalid_argument("corrupt_random_per_vertex: map not complete");
  const int cap = int(c * n);
  PairTable out = truth;
  if (cap <= 0 || n < 2) return out;

  Scalar diam(0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) diam = max(diam, truth.get(i, j));
  const std::int64_t den = 1 << 16;
  const std::int64_t hi =
      std::max<std::int64_t>(1, detail::floor_to_int64(Scalar(2) * diam * Scalar(den)));

  Rng rng(seed);
  std::vector<int> count(std::size_t(n), 0);
  std::vector<std::uint8_t> hit(std::size_t(n) * std::size_t(n), 0);
  const std::size_t attempts = std::size_t(n) * std::size_t(cap) * 4;
  for (std::size_t a = 0; a < attempts; ++a) {
    int i = int(rng.below(std::uint64_t(n)));
    int j = int(rng.below(std::uint64_t(n)));
    if (i == j) continue;
    if (i > j) std::swap(i, j);
    if (count[std::size_t(i)] >= cap || count[std::size_t(j)] >= cap) continue;
    auto& flag = hit[std::size_t(i) * std::size_t(n) + std::size_t(j)];
    if (flag) continue;
    Scalar wrong;
    do {
      wrong = Scalar::fraction(std::int64_t(rng.below(std::uint64_t(hi))) + 1, den);
    } while (wrong == truth.get(i, j));
    out.set(i, j, wrong);
    flag = 1;
    ++count[std::size_t(i)];
    ++count[std::size_t(j)];
  }
  return out;
}

/// Line configuration with the first half translated by `shift`.
inline PointConfig shifted_first_half(const PointConfig& cfg,
                                      const Scalar& shift) {
  if (cfg.space() != Space::Line)
    throw std::invalid_argument("shifted_first_half: line configurations only");
  std::vector<Scalar> pos = cfg.positions();
  for (std::size_t i = 0; i < pos.size() / 2; ++i) pos[i] += shift;
  return PointConfig(Space::Line, std::move(pos));
}

/// The ambiguity construction: n = 4k points, k perfect matchings of the
/// complete bipartite graph between the two halves; on matched pairs the
/// reported distance comes from the configuration with the first half shifted
/// by `shift`, elsewhere the true distance. Every vertex ends up with exactly
/// k = n/4 corrupted pairs.
inline PairTable make_adversarial_corruption(const PointConfig& cfg,
                                             const Scalar& shift,
                                             std::uint64_t seed) {
  if (cfg.space() != Space::Line)
    throw std::invalid_argument(
        "make_adversarial_corruption: line configurations only");
  const int n = cfg.n();
  if (n % 4 != 0)
    throw std::invalid_argument(
        "make_adversarial_corruption: n must be a multiple of 4");
  const int half = n / 2, k = n / 4;

  // K_{2k,2k} decomposes into 2k cyclic perfect matchings; pick k of them.
  std::vector<int> offsets(static_cast<std::size_t>(half), 0);
  std::iota(offsets.begin(), offsets.end(), 0);
  Rng rng(seed);
  rng.shuffle(offsets);
  offsets.resize(std::size_t(k));

  PairTable out = full_distance_map(cfg);
  for (int t : offsets)
    for (int i = 0; i < half; ++i) {
      int j = half + (i + t) % half;
      out.set(i, j, abs(cfg.position(i) + shift - cfg.position(j)));
    }
  return out;
}

inline PairTable apply_corruption(const PointConfig& cfg,
                                  const CorruptionSpec& spec) {
  if (spec.kind == CorruptionKind::RandomPerVertex)
    return corrupt_random_per_vertex(full_distance_map(cfg), spec.c, spec.seed);
  return make_adversarial_corruption(cfg, spec.shift, spec.seed);
}

/// Largest per-vertex count of pairs on which the two complete maps disagree.
inline int max_per_vertex_disagreement(const PairTable& a, const PairTable& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("max_per_vertex_disagreement: size mismatch");
  std::vector<int> count(std::size_t(a.n()), 0);
  for (int j = 0; j < a.n(); ++j)
    for (int i = 0; i < j; ++i)
      if (a.get(i, j) != b.get(i, j)) {
        ++count[std::size_t(i)];
        ++count[std::size_t(j)];
      }
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

struct CorrectionResult {
  enum class Status { Corrected, Failed };
  Status status = Status::Failed;
  PairTable map{0};
  std::string reason;
};

/// Two-phase correction of a fully known but corrupted distance map.
/// VOTE keeps d'(i,j) iff it satisfies triangle equality with more than n/2
/// other points; CLOSE re-derives the discarded pairs by the line closure.
/// The parameter c is the hypothesis dial (per-vertex corruption <= c*n,
/// guaranteed recovery for c < 1/4); the voting threshold itself is fixed.
inline CorrectionResult correct_distances(const PairTable& dp, double c) {
  (void)c;
  const int n = dp.n();
  if (!dp.complete())
    throw std::invalid_argument("correct_distances: map must cover all pairs");

  std::vector<WeightedEdge> kept;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const Scalar& dij = dp.get(i, j);
      int votes = 0;
      for (int z = 0; z < n; ++z) {
        if (z == i || z == j) continue;
        if (triangle_equality(dij, dp.get(i, z), dp.get(j, z))) {
          if (2 * (++votes) > n) break;
        }
        // Not enough vertices left to reach the threshold?
        int remaining = n - 1 - z;
        if (2 * (votes + remaining) <= n) break;
      }
      if (2 * votes > n) kept.push_back({i, j, dij});
    }

  CorrectionResult result;
  try {
    DeterminedGraph dg = closure(MeasurementSet(n, std::move(kept)), Space::Line);
    if (!dg.determined().complete()) {
      result.reason = "closure left pairs undetermined";
      return result;
    }
    result.status = CorrectionResult::Status::Corrected;
    result.map = dg.determined();
  } catch (const InconsistentInput& e) {
    result.reason = e.what();
  }
  return result;
}

}  // namespace rigidity
