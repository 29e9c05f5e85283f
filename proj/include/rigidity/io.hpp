#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigidity/clique.hpp"
#include "rigidity/constructions.hpp"
#include "rigidity/geometry.hpp"
#include "rigidity/graph.hpp"
#include "rigidity/local_determination.hpp"
#include "rigidity/measurement.hpp"
#include "rigidity/monotone.hpp"
#include "rigidity/scalar.hpp"

namespace rigidity {

/// Malformed input file; carries the 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

namespace io_detail {

class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty line; throws with context when the stream ends.
  std::vector<std::string> expect_tokens(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto toks = split(line);
      if (!toks.empty()) return toks;
    }
    throw ParseError(line_no_ + 1, std::string("expected ") + what);
  }

  bool next_tokens(std::vector<std::string>& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      out = split(line);
      if (!out.empty()) return true;
    }
    return false;
  }

  int line() const { return line_no_; }

  long long to_int(const std::string& tok, const char* what) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line_no_, std::string("bad ") + what + " \"" + tok + "\"");
    }
  }

  Scalar to_scalar(const std::string& tok, const char* what) {
    try {
      return Scalar::parse(tok);
    } catch (const std::exception&) {
      throw ParseError(line_no_, std::string("bad ") + what + " \"" + tok + "\"");
    }
  }

private:
  std::istream& in_;
  int line_no_ = 0;

  static std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
  }
};

inline int to_index(LineReader& r, const std::string& tok, int n,
                    const char* what) {
  long long v = r.to_int(tok, what);
  if (v < 1 || v > n)
    throw ParseError(r.line(), std::string(what) + " out of range 1.." +
                                   std::to_string(n));
  return int(v - 1);
}

}  // namespace io_detail

// --- config files: "space n" then n lines "i x" -----------------------------

inline void write_config(std::ostream& out, const PointConfig& cfg) {
  out << space_name(cfg.space()) << " " << cfg.n() << "\n";
  for (int i = 0; i < cfg.n(); ++i)
    out << i + 1 << " " << cfg.position(i).str() << "\n";
}

inline PointConfig read_config(std::istream& in) {
  io_detail::LineReader r(in);
  auto head = r.expect_tokens("\"space n\" header");
  if (head.size() != 2) throw ParseError(r.line(), "expected \"space n\"");
  Space space;
  if (head[0] == "line") {
    space = Space::Line;
  } else if (head[0] == "circle") {
    space = Space::Circle;
  } else {
    throw ParseError(r.line(), "unknown space \"" + head[0] + "\"");
  }
  long long n = r.to_int(head[1], "vertex count");
  if (n < 1) throw ParseError(r.line(), "vertex count must be positive");
  std::vector<Scalar> pos(static_cast<std::size_t>(n));
  std::vector<std::uint8_t> seen(std::size_t(n), 0);
  for (long long k = 0; k < n; ++k) {
    auto toks = r.expect_tokens("\"i x\" line");
    if (toks.size() != 2) throw ParseError(r.line(), "expected \"i x\"");
    int i = io_detail::to_index(r, toks[0], int(n), "index");
    if (seen[std::size_t(i)])
      throw ParseError(r.line(), "duplicate index " + toks[0]);
    seen[std::size_t(i)] = 1;
    pos[std::size_t(i)] = r.to_scalar(toks[1], "position");
  }
  return PointConfig(space, std::move(pos));
}

// --- measurement files: "n m" then m lines "i j d" --------------------------

inline void write_measurement(std::ostream& out, const MeasurementSet& m) {
  out << m.n() << " " << m.edges().size() << "\n";
  for (const auto& e : m.edges())
    out << e.u + 1 << " " << e.v + 1 << " " << e.w.str() << "\n";
}

/// Determined maps share the measurement format.
inline void write_pair_map(std::ostream& out, const PairTable& t) {
  out << t.n() << " " << t.count() << "\n";
  for (int i = 0; i < t.n(); ++i)
    for (int j = i + 1; j < t.n(); ++j)
      if (t.has(i, j)) out << i + 1 << " " << j + 1 << " " << t.get(i, j).str() << "\n";
}

inline MeasurementSet read_measurement(std::istream& in) {
  io_detail::LineReader r(in);
  auto head = r.expect_tokens("\"n m\" header");
  if (head.size() != 2) throw ParseError(r.line(), "expected \"n m\"");
  long long n = r.to_int(head[0], "vertex count");
  long long m = r.to_int(head[1], "edge count");
  if (n < 0 || m < 0) throw ParseError(r.line(), "negative count");
  std::vector<WeightedEdge> edges;
  edges.reserve(std::size_t(m));
  for (long long k = 0; k < m; ++k) {
    auto toks = r.expect_tokens("\"i j d\" line");
    if (toks.size() != 3) throw ParseError(r.line(), "expected \"i j d\"");
    int i = io_detail::to_index(r, toks[0], int(n), "endpoint");
    int j = io_detail::to_index(r, toks[1], int(n), "endpoint");
    Scalar d = r.to_scalar(toks[2], "distance");
    if (i == j) throw ParseError(r.line(), "self-loop");
    if (d.sign() < 0) throw ParseError(r.line(), "negative distance");
    edges.push_back({i, j, std::move(d)});
  }
  try {
    return MeasurementSet(int(n), std::move(edges));
  } catch (const std::exception& e) {
    throw ParseError(r.line(), e.what());
  }
}

// --- full-matrix files: "n" then n(n-1)/2 lines "i j d" ----------------------

inline void write_matrix(std::ostream& out, const PairTable& t) {
  out << t.n() << "\n";
  for (int i = 0; i < t.n(); ++i)
    for (int j = i + 1; j < t.n(); ++j)
      out << i + 1 << " " << j + 1 << " " << t.get(i, j).str() << "\n";
}

inline PairTable read_matrix(std::istream& in) {
  io_detail::LineReader r(in);
  auto head = r.expect_tokens("\"n\" header");
  if (head.size() != 1) throw ParseError(r.line(), "expected \"n\" alone");
  long long n = r.to_int(head[0], "vertex count");
  if (n < 2) throw ParseError(r.line(), "need n >= 2");
  PairTable t(static_cast<int>(n));
  long long pairs = n * (n - 1) / 2;
  for (long long k = 0; k < pairs; ++k) {
    auto toks = r.expect_tokens("\"i j d\" line");
    if (toks.size() != 3) throw ParseError(r.line(), "expected \"i j d\"");
    int i = io_detail::to_index(r, toks[0], int(n), "endpoint");
    int j = io_detail::to_index(r, toks[1], int(n), "endpoint");
    if (i == j) throw ParseError(r.line(), "self-loop");
    if (t.has(i, j)) throw ParseError(r.line(), "duplicate pair");
    t.set(i, j, r.to_scalar(toks[2], "distance"));
  }
  return t;
}

// --- edge-list files: "n m" then m lines "i j" -------------------------------

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n() << " " << g.m() << "\n";
  for (auto [u, v] : g.edge_list()) out << u + 1 << " " << v + 1 << "\n";
}

inline Graph read_graph(std::istream& in) {
  io_detail::LineReader r(in);
  auto head = r.expect_tokens("\"n m\" header");
  if (head.size() != 2) throw ParseError(r.line(), "expected \"n m\"");
  long long n = r.to_int(head[0], "vertex count");
  long long m = r.to_int(head[1], "edge count");
  if (n < 0 || m < 0) throw ParseError(r.line(), "negative count");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(std::size_t(m));
  for (long long k = 0; k < m; ++k) {
    auto toks = r.expect_tokens("\"i j\" line");
    if (toks.size() != 2) throw ParseError(r.line(), "expected \"i j\"");
    int i = io_detail::to_index(r, toks[0], int(n), "endpoint");
    int j = io_detail::to_index(r, toks[1], int(n), "endpoint");
    if (i == j) throw ParseError(r.line(), "self-loop");
    edges.emplace_back(i, j);
  }
  try {
    return Graph(int(n), edges);
  } catch (const std::exception& e) {
    throw ParseError(r.line(), e.what());
  }
}

// --- embeddings: n lines "i x" ------------------------------------------------

inline void write_embedding(std::ostream& out, const std::vector<Scalar>& emb) {
  for (std::size_t i = 0; i < emb.size(); ++i)
    out << i + 1 << " " << emb[i].str() << "\n";
}

inline std::vector<Scalar> read_embedding(std::istream& in) {
  io_detail::LineReader r(in);
  std::vector<std::pair<long long, Scalar>> rows;
  std::vector<std::string> toks;
  while (r.next_tokens(toks)) {
    if (toks.size() != 2) throw ParseError(r.line(), "expected \"i x\"");
    rows.emplace_back(r.to_int(toks[0], "index"), r.to_scalar(toks[1], "value"));
  }
  std::vector<Scalar> emb(rows.size());
  std::vector<std::uint8_t> seen(rows.size(), 0);
  for (auto& [i, x] : rows) {
    if (i < 1 || i > (long long)rows.size())
      throw ParseError(0, "embedding index out of range");
    if (seen[std::size_t(i - 1)]) throw ParseError(0, "duplicate embedding index");
    seen[std::size_t(i - 1)] = 1;
    emb[std::size_t(i - 1)] = std::move(x);
  }
  return emb;
}

// --- clique certificates -------------------------------------------------------

inline void write_certificate(std::ostream& out, const CliqueCertificate& c) {
  auto ids = [&](const std::vector<int>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(vs[i] + 1);
    }
    return s;
  };
  out << "K " << c.k << "\n";
  out << "PRUNED " << c.pruned_vertices.size() << " " << c.min_degree_pruned
      << "\n";
  out << ids(c.pruned_vertices) << "\n";
  out << "IS " << c.independent_set.size() << "\n";
  out << ids(c.independent_set) << "\n";
  out << "BSETS " << c.b_sets.size() << "\n";
  for (std::size_t i = 0; i < c.b_sets.size(); ++i)
    out << c.independent_set[i] + 1 << " : " << ids(c.b_sets[i]) << "\n";
  out << "CLIQUE " << c.clique.size() << "\n";
  out << ids(c.clique) << "\n";
}

inline CliqueCertificate read_certificate(std::istream& in) {
  io_detail::LineReader r(in);
  CliqueCertificate c;
  auto expect_section = [&](const char* name, std::size_t min_tokens) {
    auto toks = r.expect_tokens(name);
    if (toks[0] != name || toks.size() < min_tokens)
      throw ParseError(r.line(), std::string("expected ") + name + " section");
    return toks;
  };
  auto read_ids = [&](std::size_t count) {
    std::vector<int> vs;
    if (count == 0) return vs;
    auto toks = r.expect_tokens("id list");
    if (toks.size() != count) throw ParseError(r.line(), "wrong id count");
    for (auto& t : toks) vs.push_back(int(r.to_int(t, "vertex id")) - 1);
    return vs;
  };
  auto k_toks = expect_section("K", 2);
  c.k = int(r.to_int(k_toks[1], "k"));
  auto p_toks = expect_section("PRUNED", 3);
  std::size_t pruned_count = std::size_t(r.to_int(p_toks[1], "count"));
  c.min_degree_pruned = r.to_int(p_toks[2], "min degree");
  c.pruned_vertices = read_ids(pruned_count);
  auto i_toks = expect_section("IS", 2);
  c.independent_set = read_ids(std::size_t(r.to_int(i_toks[1], "count")));
  auto b_toks = expect_section("BSETS", 2);
  std::size_t bcount = std::size_t(r.to_int(b_toks[1], "count"));
  for (std::size_t i = 0; i < bcount; ++i) {
    auto toks = r.expect_tokens("b-set line");
    if (toks.size() < 2 || toks[1] != ":")
      throw ParseError(r.line(), "expected \"s : members\"");
    std::vector<int> members;
    for (std::size_t t = 2; t < toks.size(); ++t)
      members.push_back(int(r.to_int(toks[t], "vertex id")) - 1);
    c.b_sets.push_back(std::move(members));
  }
  auto c_toks = expect_section("CLIQUE", 2);
  c.clique = read_ids(std::size_t(r.to_int(c_toks[1], "count")));
  return c;
}

// --- ambiguity instances --------------------------------------------------------

inline void write_ambiguity(std::ostream& out, const AmbiguityInstance& a) {
  int total = 2 * a.per_side;
  out << "tree-ambiguity " << a.t_scale << " " << a.per_side << "\n";
  for (const auto* mat : {&a.r1, &a.r2}) {
    for (int i = 0; i < total; ++i) {
      for (int j = 0; j < total; ++j)
        out << (j ? " " : "") << (*mat)[std::size_t(i)][std::size_t(j)].str();
      out << "\n";
    }
  }
  out << "P " << a.cross_pairs.size() << "\n";
  for (auto [i, j] : a.cross_pairs) out << i + 1 << " " << j + 1 << "\n";
}

inline AmbiguityInstance read_ambiguity(std::istream& in) {
  io_detail::LineReader r(in);
  auto head = r.expect_tokens("tree-ambiguity header");
  if (head.size() != 3 || head[0] != "tree-ambiguity")
    throw ParseError(r.line(), "expected \"tree-ambiguity t_scale per_side\"");
  AmbiguityInstance a;
  a.t_scale = int(r.to_int(head[1], "t_scale"));
  a.per_side = int(r.to_int(head[2], "per_side"));
  int total = 2 * a.per_side;
  for (auto* mat : {&a.r1, &a.r2}) {
    mat->assign(std::size_t(total), std::vector<Scalar>(std::size_t(total)));
    for (int i = 0; i < total; ++i) {
      auto toks = r.expect_tokens("matrix row");
      if (int(toks.size()) != total) throw ParseError(r.line(), "wrong row width");
      for (int j = 0; j < total; ++j)
        (*mat)[std::size_t(i)][std::size_t(j)] = r.to_scalar(toks[std::size_t(j)], "entry");
    }
  }
  auto p_head = r.expect_tokens("P header");
  if (p_head.size() != 2 || p_head[0] != "P")
    throw ParseError(r.line(), "expected \"P count\"");
  long long pairs = r.to_int(p_head[1], "pair count");
  for (long long k = 0; k < pairs; ++k) {
    auto toks = r.expect_tokens("pair line");
    if (toks.size() != 2) throw ParseError(r.line(), "expected \"i j\"");
    a.cross_pairs.emplace_back(
        io_detail::to_index(r, toks[0], total, "endpoint"),
        io_detail::to_index(r, toks[1], total, "endpoint"));
  }
  return a;
}

// --- CSV ------------------------------------------------------------------------

inline std::string csv_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline void write_threshold_csv(std::ostream& out, const ThresholdSweep& s) {
  out << "epsilon,p,successes,trials,fraction\n";
  for (const auto& row : s.rows)
    out << csv_double(row.epsilon) << "," << csv_double(row.p) << ","
        << row.successes << "," << row.trials << ","
        << csv_double(row.fraction.to_double()) << "\n";
}

inline void write_coverage_csv(std::ostream& out, const CoverageResult& c) {
  out << "n,C,p,successes,trials,fraction\n";
  out << c.n << "," << csv_double(c.C) << "," << csv_double(c.p) << ","
      << c.successes << "," << c.trials << ","
      << csv_double(c.fraction.to_double()) << "\n";
}

/// Minimal CSV reader (no quoting; our writers never emit commas in fields).
inline std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rigidity
