#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/graph.hpp"
#include "rigidity/measurement.hpp"
#include "rigidity/rng.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

/// A common neighbor z of the pair being determined, with its two known
/// distances to the endpoints.
struct WitnessTriple {
  int z;
  Scalar d_iz, d_zj;
};

/// Distances on the line are 3-locally determined, on the circle 5-locally.
constexpr int locality(Space space) { return space == Space::Line ? 3 : 5; }

/// Raised when two determinations of the same pair collide, i.e. the input is
/// not realizable by any injective placement.
struct InconsistentInput : std::runtime_error {
  int u, v;
  InconsistentInput(int u_, int v_)
      : std::runtime_error("inconsistent input at pair {" +
                           std::to_string(u_ + 1) + "," +
                           std::to_string(v_ + 1) + "}"),
        u(u_), v(v_) {}
};

namespace detail {

inline void validate_witnesses(std::span<const WitnessTriple> ws,
                               bool circle) {
  std::vector<int> ids;
  ids.reserve(ws.size());
  for (const auto& w : ws) {
    if (w.d_iz.sign() <= 0 || w.d_zj.sign() <= 0)
      throw std::invalid_argument("witness with non-positive distance");
    if (circle) {
      static const Scalar half = Scalar::fraction(1, 2);
      if (w.d_iz > half || w.d_zj > half)
        throw std::invalid_argument(
            "witness distance exceeds 1/2 on the unit circle");
    }
    ids.push_back(w.z);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("duplicate witness index");
}

// f(z) = |d(i,z) - d(z,j)|. On both spaces f never exceeds the true distance
// and equals it exactly when z sits outside the segment (line) / in the
// antipodal-free region (circle), so the minimizer of f is an interior point
// whenever the f values are not all equal.
inline const WitnessTriple& min_f_witness(std::span<const WitnessTriple> ws,
                                          std::vector<Scalar>& f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ws.size(); ++i) {
    int c = Scalar::compare(f[i], f[best]);
    if (c < 0 || (c == 0 && ws[i].z < ws[best].z)) best = i;
  }
  return ws[best];
}

}  // namespace detail

/// Determine d(i,j) on the line from >= 3 distinct common neighbors.
/// Returns nullopt below the locality threshold.
inline std::optional<Scalar> determine_line(
    std::span<const WitnessTriple> ws) {
  detail::validate_witnesses(ws, false);
  if (ws.size() < 3) return std::nullopt;
  std::vector<Scalar> f;
  f.reserve(ws.size());
  for (const auto& w : ws) f.push_back(abs(w.d_iz - w.d_zj));
  bool all_equal = std::all_of(f.begin(), f.end(),
                               [&](const Scalar& v) { return v == f[0]; });
  if (all_equal) return f[0];
  const WitnessTriple& z = detail::min_f_witness(ws, f);
  return z.d_iz + z.d_zj;
}

/// Determine d(i,j) on the unit circle from >= 5 distinct common neighbors.
/// With more than 5 witnesses the all-equal branch still requires every f
/// value to agree, which stays sound.
inline std::optional<Scalar> determine_circle(
    std::span<const WitnessTriple> ws) {
  detail::validate_witnesses(ws, true);
  if (ws.size() < 5) return std::nullopt;
  std::vector<Scalar> f;
  f.reserve(ws.size());
  for (const auto& w : ws) f.push_back(abs(w.d_iz - w.d_zj));
  bool all_equal = std::all_of(f.begin(), f.end(),
                               [&](const Scalar& v) { return v == f[0]; });
  if (all_equal) return f[0];
  const WitnessTriple& z = detail::min_f_witness(ws, f);
  Scalar s = z.d_iz + z.d_zj;
  static const Scalar half = Scalar::fraction(1, 2);
  if (s >= half) return Scalar(1) - s;  // witness on the far arc
  return s;
}

inline std::optional<Scalar> determine(Space space,
                                       std::span<const WitnessTriple> ws) {
  return space == Space::Line ? determine_line(ws) : determine_circle(ws);
}

/// The closure of a measurement set under the locality rule: every base edge
/// with its original weight plus every pair that eventually acquires k common
/// determined neighbors, with the inferred distance.
class DeterminedGraph {
public:
  DeterminedGraph(Space space, MeasurementSet base, PairTable determined)
      : space_(space), base_(std::move(base)), determined_(std::move(determined)) {}

  Space space() const { return space_; }
  int n() const { return base_.n(); }
  const MeasurementSet& base() const { return base_; }
  const PairTable& determined() const { return determined_; }

  /// Unweighted view of all determined pairs.
  Graph graph() const {
    std::vector<std::pair<int, int>> pairs;
    for (int j = 0; j < n(); ++j)
      for (int i = 0; i < j; ++i)
        if (determined_.has(i, j)) pairs.emplace_back(i, j);
    return Graph(n(), pairs);
  }

private:
  Space space_;
  MeasurementSet base_;
  PairTable determined_;
};

namespace detail {

/// Worklist fixpoint. schedule_seed == 0 processes FIFO; any other value pops
/// in a seeded random order, which must not change the result on inputs
/// consistent with an injective placement (exercised by tests).
inline DeterminedGraph closure_scheduled(const MeasurementSet& m, Space space,
                                         std::uint64_t schedule_seed) {
  const int n = m.n();
  const int k = locality(space);
  PairTable det(n);
  BitAdjacency adj(n);

  for (const auto& e : m.edges()) {
    det.set(e.u, e.v, e.w);
    if (e.w.sign() > 0) {  // zero-weight garbage is stored but never witnesses
      adj.set(e.u, e.v);
      adj.set(e.v, e.u);
    }
  }

  std::vector<std::pair<int, int>> queue;
  std::vector<std::uint8_t> queued(std::size_t(n) * std::size_t(n), 0);
  auto qflag = [&](int i, int j) -> std::uint8_t& {
    if (i > j) std::swap(i, j);
    return queued[std::size_t(i) * std::size_t(n) + std::size_t(j)];
  };
  auto enqueue = [&](int i, int j) {
    if (det.has(i, j)) return;
    auto& flag = qflag(i, j);
    if (flag) return;
    flag = 1;
    queue.emplace_back(std::min(i, j), std::max(i, j));
  };

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (!det.has(i, j) && adj.common_count(i, j) >= k) enqueue(i, j);

  Rng sched(schedule_seed);
  std::vector<std::pair<int, int>> inferred;
  std::size_t head = 0;
  auto gather = [&](int i, int j) {
    std::vector<WitnessTriple> ws;
    for (int z : adj.common_list(i, j))
      ws.push_back({z, det.get(std::min(i, z), std::max(i, z)),
                    det.get(std::min(z, j), std::max(z, j))});
    return ws;
  };

  while (head < queue.size()) {
    std::pair<int, int> pr;
    if (schedule_seed == 0) {
      pr = queue[head++];
    } else {
      std::size_t pick = head + sched.below(queue.size() - head);
      std::swap(queue[head], queue[pick]);
      pr = queue[head++];
    }
    auto [i, j] = pr;
    qflag(i, j) = 0;
    if (det.has(i, j)) continue;
    auto ws = gather(i, j);
    if (int(ws.size()) < k) continue;
    std::optional<Scalar> val = determine(space, ws);
    det.set(i, j, *val);
    inferred.emplace_back(i, j);
    if (val->sign() > 0) {
      adj.set(i, j);
      adj.set(j, i);
      // Pairs gaining a common neighbor through the new edge.
      adj.for_each_neighbor(i, [&](int w) {
        if (w != j) enqueue(w, j);
      });
      adj.for_each_neighbor(j, [&](int w) {
        if (w != i) enqueue(w, i);
      });
    }
  }

  // Consistency pass: re-evaluate every inferred pair against the full final
  // witness set. A collision means no injective placement realizes the input.
  for (auto [i, j] : inferred) {
    auto ws = gather(i, j);
    std::optional<Scalar> val = determine(space, ws);
    if (!val || *val != det.get(i, j)) throw InconsistentInput(i, j);
  }

  return DeterminedGraph(space, m, std::move(det));
}

}  // namespace detail

/// Least fixpoint of the k-local determination rule over the measurement set.
/// Throws InconsistentInput when two determinations collide.
inline DeterminedGraph closure(const MeasurementSet& m, Space space) {
  return detail::closure_scheduled(m, space, 0);
}

}  // namespace rigidity
