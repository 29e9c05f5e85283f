#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rigidity/clique.hpp"
#include "rigidity/constructions.hpp"
#include "rigidity/io.hpp"
#include "rigidity/local_determination.hpp"
#include "rigidity/measurement.hpp"
#include "rigidity/monotone.hpp"
#include "rigidity/reconstruction.hpp"

namespace rigidity::cli {

// Exit codes: 0 success, 2 inconsistent input, 3 algorithm-reported failure,
// 64 usage / malformed input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInconsistent = 2;
inline constexpr int kExitFailed = 3;
inline constexpr int kExitUsage = 64;

// Bare invocations reproduce: the default seed is a fixed constant, never the
// wall clock.
inline constexpr std::uint64_t kDefaultSeed = 1;

namespace detail {

struct OutputFile {
  std::ofstream file;
  std::ostream& stream;

  explicit OutputFile(const std::string& path)
      : stream(path == "-" ? std::cout : file) {
    if (path != "-") {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file " + path);
    }
  }
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path);
  return in;
}

inline int thread_cap(int requested) {
  int hw = int(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int cap = hw;
  if (const char* env = std::getenv("RIGIDITY_THREADS")) {
    try {
      cap = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      cap = hw;
    }
  }
  int t = requested > 0 ? requested : hw;
  return std::min(t, cap);
}

inline std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t pos = 0;
    double v = std::stod(item, &pos);
    if (pos != item.size())
      throw std::runtime_error("bad number \"" + item + "\" in list");
    out.push_back(v);
  }
  if (out.empty()) throw std::runtime_error("empty number list");
  return out;
}

inline Space parse_space(const std::string& s) {
  if (s == "line") return Space::Line;
  if (s == "circle") return Space::Circle;
  throw std::runtime_error("unknown space \"" + s + "\" (line|circle)");
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
  CLI::App app{"distance-geometry reconstruction toolkit for the line and circle"};
  app.require_subcommand(1);

  // close
  std::string close_input, close_output = "-", close_space = "line";
  auto* close_cmd = app.add_subcommand(
      "close", "closure of a measurement set under the locality rule");
  close_cmd->add_option("--input", close_input, "measurement file")->required();
  close_cmd->add_option("--space", close_space, "line|circle");
  close_cmd->add_option("--output", close_output, "output path or -");

  // clique
  std::string clique_input, clique_output = "-";
  int clique_k = 0;
  std::uint64_t clique_seed = kDefaultSeed;
  auto* clique_cmd = app.add_subcommand(
      "clique", "bounded-intersection clique extraction certificate");
  clique_cmd->add_option("--input", clique_input, "edge-list file")->required();
  clique_cmd->add_option("--k", clique_k, "intersection bound")->required();
  clique_cmd->add_option("--seed", clique_seed, "RNG seed");
  clique_cmd->add_option("--output", clique_output, "output path or -");

  // reconstruct
  std::string rec_input, rec_output = "-";
  std::uint64_t rec_seed = kDefaultSeed;
  int rec_max_rounds = 0;
  auto* rec_cmd = app.add_subcommand(
      "reconstruct", "randomized line embedding from a measurement set");
  rec_cmd->add_option("--input", rec_input, "measurement file")->required();
  rec_cmd->add_option("--seed", rec_seed, "RNG seed");
  rec_cmd->add_option("--max-rounds", rec_max_rounds,
                      "override the default ceil(ln n) round count");
  rec_cmd->add_option("--output", rec_output, "output path or -");

  // correct
  std::string cor_input, cor_output = "-";
  double cor_c = 0.25;
  auto* cor_cmd = app.add_subcommand(
      "correct", "triangle-equality voting correction of a full distance map");
  cor_cmd->add_option("--input", cor_input, "matrix file")->required();
  cor_cmd->add_option("--c", cor_c, "per-vertex corruption fraction bound");
  cor_cmd->add_option("--output", cor_output, "output path or -");

  // threshold
  int th_n = 0, th_trials = 0, th_threads = 0;
  std::string th_eps, th_output = "-";
  std::uint64_t th_seed = kDefaultSeed;
  auto* th_cmd = app.add_subcommand(
      "threshold", "monotone-path sharp threshold sweep in G(n,p)");
  th_cmd->add_option("--n", th_n, "vertex count")->required();
  th_cmd->add_option("--eps-list", th_eps, "comma-separated epsilons")->required();
  th_cmd->add_option("--trials", th_trials, "trials per epsilon")->required();
  th_cmd->add_option("--seed", th_seed, "RNG seed");
  th_cmd->add_option("--threads", th_threads, "trial parallelism (default: cores)");
  th_cmd->add_option("--output", th_output, "output path or -");

  // coverage
  int cov_n = 0, cov_trials = 0, cov_threads = 0;
  double cov_C = 0.0;
  std::string cov_output = "-";
  std::uint64_t cov_seed = kDefaultSeed;
  auto* cov_cmd = app.add_subcommand(
      "coverage", "fraction of graphs where all far pairs have monotone paths");
  cov_cmd->add_option("--n", cov_n, "vertex count")->required();
  cov_cmd->add_option("--C", cov_C, "p = C ln(n)/n")->required();
  cov_cmd->add_option("--trials", cov_trials, "number of graphs")->required();
  cov_cmd->add_option("--seed", cov_seed, "RNG seed");
  cov_cmd->add_option("--threads", cov_threads, "trial parallelism (default: cores)");
  cov_cmd->add_option("--output", cov_output, "output path or -");

  // gen
  std::string gen_kind, gen_input, gen_output = "-", gen_dist = "uniform",
              gen_space = "line";
  int gen_q = 2, gen_k = 1, gen_t_scale = 1, gen_per_side = 2, gen_n = 0;
  std::uint64_t gen_seed = kDefaultSeed;
  auto* gen_cmd = app.add_subcommand("gen", "extremal instance generators");
  gen_cmd->add_option("--kind", gen_kind,
                      "incidence|blowup|tgraph|tree-ambiguity|planted")
      ->required();
  gen_cmd->add_option("--q", gen_q, "prime order (incidence)");
  gen_cmd->add_option("--k", gen_k, "clique size (blowup)");
  gen_cmd->add_option("--input", gen_input, "base graph (blowup, tgraph)");
  gen_cmd->add_option("--t-scale", gen_t_scale, "scale (tree-ambiguity)");
  gen_cmd->add_option("--per-side", gen_per_side, "points per side (tree-ambiguity)");
  gen_cmd->add_option("--n", gen_n, "point count (planted)");
  gen_cmd->add_option("--dist", gen_dist, "uniform|clustered|grid (planted)");
  gen_cmd->add_option("--space", gen_space, "line|circle (planted)");
  gen_cmd->add_option("--seed", gen_seed, "RNG seed");
  gen_cmd->add_option("--output", gen_output, "output path or -");

  // demo
  int demo_n = 500;
  double demo_C = 20.0;
  std::uint64_t demo_seed = kDefaultSeed;
  std::string demo_dist = "uniform";
  auto* demo_cmd = app.add_subcommand(
      "demo", "plant -> sample -> reconstruct -> isometry verdict");
  demo_cmd->add_option("--n", demo_n, "point count");
  demo_cmd->add_option("--C", demo_C, "p = C ln(n)/n");
  demo_cmd->add_option("--seed", demo_seed, "RNG seed");
  demo_cmd->add_option("--dist", demo_dist, "uniform|clustered|grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (close_cmd->parsed()) {
      auto in = detail::open_input(close_input);
      MeasurementSet m = read_measurement(in);
      DeterminedGraph dg = closure(m, detail::parse_space(close_space));
      detail::OutputFile out(close_output);
      write_pair_map(out.stream, dg.determined());
      return kExitOk;
    }

    if (clique_cmd->parsed()) {
      auto in = detail::open_input(clique_input);
      Graph g = read_graph(in);
      CliqueCertificate cert = extract_clique(g, clique_k, clique_seed);
      detail::OutputFile out(clique_output);
      write_certificate(out.stream, cert);
      return kExitOk;
    }

    if (rec_cmd->parsed()) {
      auto in = detail::open_input(rec_input);
      MeasurementSet m = read_measurement(in);
      Algorithm1Options opt;
      opt.max_rounds = rec_max_rounds;
      EmbeddingResult r = algorithm1(m, rec_seed, opt);
      if (r.status != EmbeddingResult::Status::Success) {
        std::cerr << "reconstruction failed after " << r.iterations_used
                  << " rounds\n";
        return kExitFailed;
      }
      detail::OutputFile out(rec_output);
      write_embedding(out.stream, r.emb);
      return kExitOk;
    }

    if (cor_cmd->parsed()) {
      auto in = detail::open_input(cor_input);
      PairTable dp = read_matrix(in);
      CorrectionResult r = correct_distances(dp, cor_c);
      if (r.status != CorrectionResult::Status::Corrected) {
        std::cerr << "correction failed: " << r.reason << "\n";
        return kExitFailed;
      }
      detail::OutputFile out(cor_output);
      write_matrix(out.stream, r.map);
      return kExitOk;
    }

    if (th_cmd->parsed()) {
      auto eps = detail::parse_double_list(th_eps);
      ThresholdSweep sweep = threshold_sweep(th_n, eps, th_trials, th_seed,
                                             detail::thread_cap(th_threads));
      for (const auto& row : sweep.rows)
        if (row.clipped)
          std::cerr << "warning: p clipped to [0,1] at epsilon "
                    << row.epsilon << "\n";
      detail::OutputFile out(th_output);
      write_threshold_csv(out.stream, sweep);
      return kExitOk;
    }

    if (cov_cmd->parsed()) {
      CoverageResult res = pair_coverage(cov_n, cov_C, cov_trials, cov_seed,
                                         detail::thread_cap(cov_threads));
      detail::OutputFile out(cov_output);
      write_coverage_csv(out.stream, res);
      return kExitOk;
    }

    if (gen_cmd->parsed()) {
      detail::OutputFile out(gen_output);
      if (gen_kind == "incidence") {
        write_graph(out.stream, gen_incidence_c4free(gen_q));
      } else if (gen_kind == "blowup") {
        if (gen_input.empty()) throw std::runtime_error("blowup needs --input");
        auto in = detail::open_input(gen_input);
        write_graph(out.stream, blow_up(read_graph(in), gen_k));
      } else if (gen_kind == "tgraph") {
        if (gen_input.empty()) throw std::runtime_error("tgraph needs --input");
        auto in = detail::open_input(gen_input);
        write_graph(out.stream, gen_T(read_graph(in)));
      } else if (gen_kind == "tree-ambiguity") {
        write_ambiguity(out.stream, gen_tree_ambiguity(gen_t_scale, gen_per_side));
      } else if (gen_kind == "planted") {
        if (gen_n < 2) throw std::runtime_error("planted needs --n >= 2");
        Space space = detail::parse_space(gen_space);
        if (space == Space::Circle) {
          write_config(out.stream, gen_planted_circle(gen_n, gen_seed));
        } else {
          PlantedKind kind;
          if (gen_dist == "uniform") {
            kind = PlantedKind::UniformRational;
          } else if (gen_dist == "clustered") {
            kind = PlantedKind::Clustered;
          } else if (gen_dist == "grid") {
            kind = PlantedKind::IntegerGrid;
          } else {
            throw std::runtime_error("unknown --dist (uniform|clustered|grid)");
          }
          write_config(out.stream, gen_planted_line(gen_n, kind, gen_seed));
        }
      } else {
        throw std::runtime_error("unknown --kind");
      }
      return kExitOk;
    }

    if (demo_cmd->parsed()) {
      PlantedKind kind = PlantedKind::UniformRational;
      if (demo_dist == "clustered") kind = PlantedKind::Clustered;
      else if (demo_dist == "grid") kind = PlantedKind::IntegerGrid;
      else if (demo_dist != "uniform")
        throw std::runtime_error("unknown --dist (uniform|clustered|grid)");
      PointConfig cfg = gen_planted_line(demo_n, kind, derive_seed(demo_seed, 0));
      double p = std::min(1.0, demo_C * std::log(double(demo_n)) / double(demo_n));
      MeasurementSet m = sample_measurements(cfg, p, derive_seed(demo_seed, 1));
      std::cout << "n=" << demo_n << " p=" << csv_double(p)
                << " edges=" << m.edges().size() << " seed=" << demo_seed << "\n";
      EmbeddingResult r = algorithm1(m, derive_seed(demo_seed, 2));
      if (r.status != EmbeddingResult::Status::Success) {
        std::cout << "FAILED after " << r.iterations_used << " rounds\n";
        return kExitFailed;
      }
      bool match = isometry_match(r.emb, cfg.positions());
      std::cout << "SUCCESS rounds=" << r.iterations_used << "\n";
      std::cout << "isometry=" << (match ? "MATCH" : "MISMATCH") << "\n";
      return match ? kExitOk : kExitFailed;
    }
  } catch (const InconsistentInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("rigidity");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(int(argv.size()), argv.data());
}

}  // namespace rigidity::cli
