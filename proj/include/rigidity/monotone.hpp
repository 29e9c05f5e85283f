#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "rigidity/graph.hpp"
#include "rigidity/rng.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

/// True iff there is a path source = w0 < w1 < ... < wm = target with every
/// consecutive pair adjacent. One ascending sweep, O(|E|).
inline bool has_monotone_path(const Graph& g, int source, int target) {
  if (source > target)
    throw std::invalid_argument("has_monotone_path: source > target");
  if (source == target) return true;
  std::vector<std::uint8_t> reach(std::size_t(target) + 1, 0);
  reach[std::size_t(source)] = 1;
  for (int j = source + 1; j <= target; ++j) {
    for (int i : g.neighbors(j)) {
      if (i >= source && i < j && reach[std::size_t(i)]) {
        reach[std::size_t(j)] = 1;
        break;
      }
    }
  }
  return reach[std::size_t(target)] != 0;
}

/// Number of vertices >= source reachable from source by an ascending
/// monotone path (the source itself counts).
inline int monotone_reach_count(const Graph& g, int source) {
  const int n = g.n();
  std::vector<std::uint8_t> reach(std::size_t(n), 0);
  reach[std::size_t(source)] = 1;
  int count = 1;
  for (int j = source + 1; j < n; ++j) {
    for (int i : g.neighbors(j)) {
      if (i >= source && i < j && reach[std::size_t(i)]) {
        reach[std::size_t(j)] = 1;
        ++count;
        break;
      }
    }
  }
  return count;
}

/// Number of monotone paths from source to target (test oracle for the first
/// moment computation; counts fit comfortably at the sizes we use it).
inline std::uint64_t count_monotone_paths(const Graph& g, int source,
                                          int target) {
  if (source > target)
    throw std::invalid_argument("count_monotone_paths: source > target");
  if (source == target) return 1;
  std::vector<std::uint64_t> ways(std::size_t(target) + 1, 0);
  ways[std::size_t(source)] = 1;
  for (int j = source + 1; j <= target; ++j)
    for (int i : g.neighbors(j))
      if (i >= source && i < j) ways[std::size_t(j)] += ways[std::size_t(i)];
  return ways[std::size_t(target)];
}

/// Exact expected number of monotone paths from 1 to n in G(n,p):
/// p * (1+p)^(n-2).
inline Scalar first_moment_bound(int n, const Scalar& p) {
  if (n < 2) throw std::invalid_argument("first_moment_bound: need n >= 2");
  if (p.sign() < 0 || p > Scalar(1))
    throw std::invalid_argument("first_moment_bound: p outside [0,1]");
  return p * pow(Scalar(1) + p, std::uint64_t(n - 2));
}

/// Runs `trials` independent boolean experiments, trial i seeded by
/// derive_seed(seed, i). The per-trial seeding makes the success count
/// identical for any thread count or scheduling order.
template <typename TrialFn>
int run_trials(int trials, int threads, TrialFn&& fn) {
  if (trials < 0) throw std::invalid_argument("run_trials: negative trials");
  std::vector<std::uint8_t> outcome(std::size_t(trials), 0);
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) outcome[std::size_t(t)] = fn(t) ? 1 : 0;
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (;;) {
        int t = next.fetch_add(1);
        if (t >= trials) return;
        outcome[std::size_t(t)] = fn(t) ? 1 : 0;
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  int successes = 0;
  for (auto o : outcome) successes += o;
  return successes;
}

struct SweepRow {
  double epsilon = 0.0;
  double p = 0.0;
  bool clipped = false;  // p fell outside [0,1] and was clamped
  int successes = 0;
  int trials = 0;
  Scalar fraction;  // successes/trials, exact
};

struct ThresholdSweep {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;
};

/// For each epsilon, the fraction of G(n, (1+eps) ln(n)/n) samples containing
/// a monotone path from vertex 1 to vertex n.
inline ThresholdSweep threshold_sweep(int n, const std::vector<double>& epsilons,
                                      int trials, std::uint64_t seed,
                                      int threads = 1) {
  if (n < 10) throw std::invalid_argument("threshold_sweep: need n >= 10");
  if (trials < 1) throw std::invalid_argument("threshold_sweep: need trials >= 1");
  ThresholdSweep sweep{n, trials, seed, {}};
  for (std::size_t e = 0; e < epsilons.size(); ++e) {
    SweepRow row;
    row.epsilon = epsilons[e];
    double p = (1.0 + row.epsilon) * std::log(double(n)) / double(n);
    row.clipped = p < 0.0 || p > 1.0;
    row.p = std::min(1.0, std::max(0.0, p));
    row.trials = trials;
    row.successes = run_trials(trials, threads, [&](int t) {
      std::uint64_t s = derive_seed(seed, e * std::size_t(trials) + std::size_t(t));
      Graph g = sample_gnp(n, row.p, s);
      return has_monotone_path(g, 0, n - 1);
    });
    row.fraction = Scalar(row.successes) / Scalar(trials);
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

struct CoverageResult {
  int n = 0;
  double C = 0.0;
  double p = 0.0;
  int successes = 0;
  int trials = 0;
  Scalar fraction;
};

/// Fraction of G(n, C ln(n)/n) samples in which EVERY pair {i,j} with
/// |i-j| >= n/8 is joined by a monotone path (n ascending sweeps per graph).
inline CoverageResult pair_coverage(int n, double C, int trials,
                                    std::uint64_t seed, int threads = 1) {
  if (C <= 0.0) throw std::invalid_argument("pair_coverage: need C > 0");
  if (n < 2 || trials < 1)
    throw std::invalid_argument("pair_coverage: need n >= 2, trials >= 1");
  CoverageResult res;
  res.n = n;
  res.C = C;
  res.p = std::min(1.0, C * std::log(double(n)) / double(n));
  res.trials = trials;
  res.successes = run_trials(trials, threads, [&](int t) {
    Graph g = sample_gnp(n, res.p, derive_seed(seed, std::uint64_t(t)));
    for (int s = 0; s < n; ++s) {
      std::vector<std::uint8_t> reach(std::size_t(n), 0);
      reach[std::size_t(s)] = 1;
      for (int j = s + 1; j < n; ++j)
        for (int i : g.neighbors(j))
          if (i >= s && i < j && reach[std::size_t(i)]) {
            reach[std::size_t(j)] = 1;
            break;
          }
      for (int j = s; j < n; ++j)
        if (8 * (j - s) >= n && !reach[std::size_t(j)]) return false;
    }
    return true;
  });
  res.fraction = Scalar(res.successes) / Scalar(trials);
  return res;
}

// --- randomly labelled trees -------------------------------------------------

/// Rooted tree as a parent array: parent[0] == -1 and parent[v] < v, so a
/// single ascending pass visits parents before children.
struct LabelledTree {
  std::vector<int> parent;

  explicit LabelledTree(std::vector<int> parent_) : parent(std::move(parent_)) {
    if (parent.empty() || parent[0] != -1)
      throw std::invalid_argument("LabelledTree: vertex 0 must be the root");
    for (std::size_t v = 1; v < parent.size(); ++v)
      if (parent[v] < 0 || parent[v] >= int(v))
        throw std::invalid_argument("LabelledTree: need parent[v] < v");
  }

  int size() const { return int(parent.size()); }

  std::vector<int> depths() const {
    std::vector<int> d(parent.size(), 0);
    for (std::size_t v = 1; v < parent.size(); ++v)
      d[v] = d[std::size_t(parent[v])] + 1;
    return d;
  }

  /// r_i = number of vertices at distance i from the root; r_0 = 1.
  std::vector<std::int64_t> level_sizes() const {
    std::vector<int> d = depths();
    int maxd = 0;
    for (int x : d) maxd = std::max(maxd, x);
    std::vector<std::int64_t> r(std::size_t(maxd) + 1, 0);
    for (int x : d) ++r[std::size_t(x)];
    return r;
  }
};

/// Exact E[|M_pi|] = sum_i r_i / i! for a uniformly random labelling with the
/// root labelled 1.
inline Scalar labelled_tree_exact_mean(const LabelledTree& t) {
  Scalar total(0);
  BigInt fact(1);
  auto levels = t.level_sizes();
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i > 0) fact *= int(i);
    total += Scalar::fraction(BigInt(levels[i]), fact);
  }
  return total;
}

struct TreeMeanEstimate {
  Scalar exact;      // sum r_i / i!
  Scalar estimate;   // Monte Carlo mean of |M_pi|
  double std_error;  // sample standard error of the estimate
  int samples = 0;
};

/// Monte Carlo mean of |M_pi| over uniform bijections pi with pi(root) = 1,
/// where M_pi holds the vertices whose root-path labels increase. Reported
/// alongside the exact value.
inline TreeMeanEstimate labelled_tree_monotone_mean(const LabelledTree& t,
                                                    int samples,
                                                    std::uint64_t seed) {
  if (samples < 1)
    throw std::invalid_argument("labelled_tree_monotone_mean: samples >= 1");
  const int n = t.size();
  Rng rng(seed);
  std::vector<int> label(static_cast<std::size_t>(n));   // label ranks; root = 0 (smallest)
  std::vector<int> pool(static_cast<std::size_t>(std::max(n - 1, 0)));
  std::vector<std::uint8_t> inc(static_cast<std::size_t>(n));
  std::uint64_t sum = 0;
  double sum_sq = 0.0;

  for (int s = 0; s < samples; ++s) {
    for (int i = 0; i < n - 1; ++i) pool[std::size_t(i)] = i + 1;
    rng.shuffle(pool);
    label[0] = 0;
    for (int v = 1; v < n; ++v) label[std::size_t(v)] = pool[std::size_t(v - 1)];
    inc[0] = 1;
    int count = 1;
    for (int v = 1; v < n; ++v) {
      int p = t.parent[std::size_t(v)];
      inc[std::size_t(v)] =
          inc[std::size_t(p)] && label[std::size_t(v)] > label[std::size_t(p)];
      count += inc[std::size_t(v)];
    }
    sum += std::uint64_t(count);
    sum_sq += double(count) * double(count);
  }

  TreeMeanEstimate out;
  out.samples = samples;
  out.exact = labelled_tree_exact_mean(t);
  out.estimate = Scalar(std::int64_t(sum)) / Scalar(samples);
  double mean = double(sum) / double(samples);
  double var = std::max(0.0, sum_sq / double(samples) - mean * mean);
  out.std_error = std::sqrt(var / double(samples));
  return out;
}

/// Uniform random recursive tree on n vertices: parent[v] uniform in [0, v).
inline LabelledTree sample_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_random_tree: need n >= 1");
  Rng rng(seed);
  std::vector<int> parent(static_cast<std::size_t>(n));
  parent[0] = -1;
  for (int v = 1; v < n; ++v) parent[std::size_t(v)] = int(rng.below(std::uint64_t(v)));
  return LabelledTree(std::move(parent));
}

/// Galton-Watson tree with Poisson(mu) offspring, stopped at depth max_depth
/// (and truncated at max_vertices as a safety valve).
inline LabelledTree sample_galton_watson_poisson(double mu, int max_depth,
                                                 std::uint64_t seed,
                                                 int max_vertices = 200000) {
  if (mu < 0.0) throw std::invalid_argument("galton_watson: negative mean");
  Rng rng(seed);
  auto poisson = [&]() {
    double limit = std::exp(-mu), prod = rng.unit();
    int k = 0;
    while (prod > limit) {
      ++k;
      prod *= rng.unit();
    }
    return k;
  };
  std::vector<int> parent{-1};
  std::vector<int> depth{0};
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (depth[v] >= max_depth) continue;
    int kids = poisson();
    for (int c = 0; c < kids && int(parent.size()) < max_vertices; ++c) {
      parent.push_back(int(v));
      depth.push_back(depth[v] + 1);
    }
  }
  return LabelledTree(std::move(parent));
}

}  // namespace rigidity
