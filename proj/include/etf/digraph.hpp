#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etf/errors.hpp"
#include "etf/seidel.hpp"

// Directed graphs with at most one arc per vertex pair, their text format
// (.dg), and the correspondence with Seidel matrices: an arc u->v stands for
// the entry w at (u,v), no edge stands for 1. Omega-switching at a vertex is
// the graph form of multiplying a matrix row by w.
//
// Vertices are 0-based programmatically, 1-based in the file format.

namespace etf {

class Digraph {
 public:
  // Relation codes match Seidel entry exponents: 0 none, 1 arc u->v, 2 arc v->u.
  static Digraph from_arcs(int m, const std::vector<std::pair<int, int>>& arcs) {
    if (m < 1) throw std::invalid_argument("digraph: need at least one vertex");
    std::vector<std::int8_t> rel(static_cast<std::size_t>(m) * m, 0);
    Digraph g(m, std::move(rel));
    for (const auto& [u, v] : arcs) {
      if (u < 0 || u >= m || v < 0 || v >= m)
        throw std::invalid_argument("digraph: arc endpoint out of range");
      if (u == v) throw std::invalid_argument("digraph: loops are not allowed");
      if (g.relation(u, v) != 0)
        throw std::invalid_argument("digraph: at most one arc per vertex pair");
      g.set_relation(u, v, 1);
    }
    return g;
  }

  int order() const { return m_; }

  int relation(int u, int v) const {
    return rel_[static_cast<std::size_t>(u) * m_ + v];
  }

  bool has_arc(int u, int v) const { return relation(u, v) == 1; }

  int arc_count() const {
    int total = 0;
    for (int u = 0; u < m_; ++u)
      for (int v = u + 1; v < m_; ++v)
        if (relation(u, v) != 0) ++total;
    return total;
  }

  std::vector<std::pair<int, int>> arcs() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < m_; ++u)
      for (int v = 0; v < m_; ++v)
        if (relation(u, v) == 1) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  Digraph(int m, std::vector<std::int8_t> rel) : m_(m), rel_(std::move(rel)) {}

  void set_relation(int u, int v, int code) {
    rel_[static_cast<std::size_t>(u) * m_ + v] = static_cast<std::int8_t>(code);
    rel_[static_cast<std::size_t>(v) * m_ + u] = static_cast<std::int8_t>((3 - code) % 3);
  }

  friend Digraph omega_switch(const Digraph& G, int v);
  friend Digraph remove_vertex(const Digraph& G, int v);

  int m_;
  std::vector<std::int8_t> rel_;
};

// ---------------------------------------------------------------------------
// .dg text format: "m a" on line 1, then a lines "u v" (1-based arc u->v).

inline Digraph parse_dg(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char ch : text) {
      if (ch == '\n') lines.push_back(std::exchange(cur, {}));
      else cur.push_back(ch);
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  if (lines.empty()) throw format_error("dg: empty input");

  const auto parse_int = [](const std::string& tok, const char* what) -> long long {
    if (tok.empty()) throw format_error(std::string("dg: missing ") + what);
    long long value = 0;
    for (char ch : tok) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw format_error(std::string("dg: ") + what + " is not a decimal integer");
      value = value * 10 + (ch - '0');
      if (value > 1000000000LL) throw format_error(std::string("dg: ") + what + " too large");
    }
    return value;
  };

  const auto head = detail::split_ws(lines[0]);
  if (head.size() != 2) throw format_error("dg: first line must be \"m a\"");
  const long long m = parse_int(head[0], "vertex count");
  const long long a = parse_int(head[1], "arc count");
  if (m < 1) throw format_error("dg: need at least one vertex");
  if (m > 32768) throw format_error("dg: vertex count too large");
  if (static_cast<long long>(lines.size()) < 1 + a) throw format_error("dg: missing arc lines");
  for (std::size_t extra = static_cast<std::size_t>(1 + a); extra < lines.size(); ++extra)
    if (!detail::split_ws(lines[extra]).empty())
      throw format_error("dg: trailing content after the arc list");

  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(static_cast<std::size_t>(a));
  for (long long i = 0; i < a; ++i) {
    const auto toks = detail::split_ws(lines[static_cast<std::size_t>(i) + 1]);
    if (toks.size() != 2)
      throw format_error("dg: arc line " + std::to_string(i + 1) + " must be \"u v\"");
    const long long u = parse_int(toks[0], "arc tail");
    const long long v = parse_int(toks[1], "arc head");
    if (u < 1 || u > m || v < 1 || v > m)
      throw format_error("dg: arc (" + std::to_string(u) + ", " + std::to_string(v) +
                         ") out of range");
    arcs.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
  }
  try {
    return Digraph::from_arcs(static_cast<int>(m), arcs);
  } catch (const std::invalid_argument& err) {
    throw format_error(std::string("dg: ") + err.what());
  }
}

inline std::string emit_dg(const Digraph& G) {
  const auto arcs = G.arcs();
  std::string out = std::to_string(G.order());
  out.push_back(' ');
  out += std::to_string(arcs.size());
  out.push_back('\n');
  for (const auto& [u, v] : arcs) {
    out += std::to_string(u + 1);
    out.push_back(' ');
    out += std::to_string(v + 1);
    out.push_back('\n');
  }
  return out;
}

// ---------------------------------------------------------------------------
// Correspondence with Seidel matrices.

inline Digraph graph_of(const SeidelMatrix& Q) {
  const int n = Q.order();
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && Q.code(i, j) == 1) arcs.emplace_back(i, j);
  return Digraph::from_arcs(n, arcs);
}

inline SeidelMatrix seidel_of(const Digraph& G) {
  const int m = G.order();
  if (m < 2) throw std::invalid_argument("seidel_of: need at least two vertices");
  std::vector<CubeRoot> upper;
  upper.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) upper.push_back(CubeRoot::from_exponent(G.relation(u, v)));
  return SeidelMatrix::from_upper(m, upper);
}

// (m+1) x (m+1) matrix: all-ones first row/column bordering seidel_of(G).
inline SeidelMatrix bordered(const Digraph& G) {
  const int m = G.order();
  std::vector<CubeRoot> upper;
  upper.reserve(static_cast<std::size_t>(m + 1) * m / 2);
  for (int j = 0; j < m; ++j) upper.push_back(CubeRoot::one());
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) upper.push_back(CubeRoot::from_exponent(G.relation(u, v)));
  return SeidelMatrix::from_upper(m + 1, upper);
}

// ---------------------------------------------------------------------------
// Switching.

// One omega-switch at v: no-edge (v,u) gains the arc v->u, an arc v->u
// reverses to u->v, an arc u->v disappears. Order three.
inline Digraph omega_switch(const Digraph& G, int v) {
  const int m = G.order();
  if (v < 0 || v >= m) throw std::invalid_argument("omega_switch: vertex out of range");
  Digraph out = G;
  for (int u = 0; u < m; ++u) {
    if (u == v) continue;
    out.set_relation(v, u, (G.relation(v, u) + 1) % 3);
  }
  return out;
}

inline Digraph remove_vertex(const Digraph& G, int v) {
  const int m = G.order();
  if (v < 0 || v >= m) throw std::invalid_argument("remove_vertex: vertex out of range");
  if (m == 1) throw std::invalid_argument("remove_vertex: cannot empty the graph");
  std::vector<std::int8_t> rel(static_cast<std::size_t>(m - 1) * (m - 1), 0);
  Digraph out(m - 1, std::move(rel));
  for (int u = 0; u < m; ++u) {
    if (u == v) continue;
    const int uu = u - (u > v);
    for (int w = 0; w < m; ++w) {
      if (w == v || w == u) continue;
      const int ww = w - (w > v);
      out.rel_[static_cast<std::size_t>(uu) * (m - 1) + ww] =
          static_cast<std::int8_t>(G.relation(u, w));
    }
  }
  return out;
}

// Switches at the other vertices until v has no relations, then removes v.
// Clearing the pair (v, u) takes one switch at u when the arc is v->u and two
// when it is u->v; the result is the unique switching representative with v
// isolated, independent of the order the switches are applied in.
inline Digraph isolate_vertex(const Digraph& G, int v) {
  const int m = G.order();
  if (v < 0 || v >= m) throw std::invalid_argument("isolate_vertex: vertex out of range");
  Digraph work = G;
  for (int u = 0; u < m; ++u) {
    if (u == v) continue;
    const int needed = (3 - work.relation(u, v)) % 3;
    for (int s = 0; s < needed; ++s) work = omega_switch(work, u);
  }
  return remove_vertex(work, v);
}

// ---------------------------------------------------------------------------
// Regularity and the pair-count conditions.

inline std::optional<std::int64_t> is_e_regular(const Digraph& G) {
  const int m = G.order();
  std::int64_t e = -1;
  for (int v = 0; v < m; ++v) {
    std::int64_t out_deg = 0, in_deg = 0;
    for (int u = 0; u < m; ++u) {
      if (u == v) continue;
      if (G.relation(v, u) == 1) ++out_deg;
      else if (G.relation(v, u) == 2) ++in_deg;
    }
    if (out_deg != in_deg) return std::nullopt;
    if (e < 0) e = out_deg;
    else if (out_deg != e) return std::nullopt;
  }
  return e;
}

// table[s][t] = #{u : relation(v,u) = s and relation(u,w) = t}, u outside
// {v, w}. Class indices match Seidel entry exponents, so relative to the
// bordered matrix the (0,0) count here is C - 1.
inline PairCounts digraph_pair_counts(const Digraph& G, int v, int w) {
  const int m = G.order();
  if (v < 0 || v >= m || w < 0 || w >= m)
    throw std::invalid_argument("digraph_pair_counts: vertex out of range");
  if (v == w) throw std::invalid_argument("digraph_pair_counts: vertices must differ");
  if (G.relation(v, w) == 2)
    throw precondition_error(
        "digraph_pair_counts: pair statistics are defined for an arc v->w or no edge "
        "(use the transposed pair)");
  PairCounts pc;
  for (int u = 0; u < m; ++u) {
    if (u == v || u == w) continue;
    pc.table[static_cast<std::size_t>(G.relation(v, u))]
            [static_cast<std::size_t>(G.relation(u, w))]++;
  }
  return pc;
}

// Conditions at an arc v->w of an e-regular graph on m vertices, stated with
// all terms multiplied by 3 so divisibility failures surface as violations.
inline bool arc_pair_system_holds(const PairCounts& pc, std::int64_t m, std::int64_t e) {
  const std::int64_t alpha = pc.at(1, 2), beta = pc.at(1, 1), gamma = pc.at(1, 0);
  const std::int64_t a = pc.at(2, 2), b = pc.at(2, 1), c = pc.at(2, 0);
  const std::int64_t A = pc.at(0, 2), B = pc.at(0, 1), C1 = pc.at(0, 0);
  return 3 * (alpha - B) == 6 * e + 1 - 2 * m && 3 * (beta - C1) == 6 * e + 1 - 2 * m &&
         3 * (gamma + B + C1) == 4 * m - 9 * e - 5 && 3 * (a - C1) == 3 * e - m + 2 &&
         3 * (b + B + C1) == 2 * m - 3 * e - 4 && 3 * (c - B) == 3 * e - m + 2 &&
         A + B + C1 == m - 2 * e - 1;
}

// Conditions at a non-adjacent pair (v, w).
inline bool nonadjacent_pair_system_holds(const PairCounts& pc, std::int64_t m, std::int64_t e) {
  const std::int64_t alpha = pc.at(1, 2), beta = pc.at(1, 1), gamma = pc.at(1, 0);
  const std::int64_t a = pc.at(2, 2), b = pc.at(2, 1), c = pc.at(2, 0);
  const std::int64_t A = pc.at(0, 2), B = pc.at(0, 1), C1 = pc.at(0, 0);
  const std::int64_t rem = m - 2 * e - 2 - B - C1;
  return alpha == B && beta == C1 + 3 * e + 2 - m && gamma == rem &&
         a == C1 + 3 * e + 2 - m && b == rem && c == B && A == rem;
}

struct DigraphCheckFailure {
  int v{-1};
  int w{-1};
  std::string reason;
};

struct DigraphReport {
  std::optional<std::int64_t> e;
  std::optional<DigraphCheckFailure> failure;
};

// Decides whether a non-empty e-regular graph corresponds to a signature
// matrix of order m+1 (equivalently: bordered(G) is one, with mu = m - 3e - 1).
inline DigraphReport check_digraph_conditions_explained(const Digraph& G) {
  const int m = G.order();
  const auto e = is_e_regular(G);
  if (!e) {
    for (int v = 0; v < m; ++v) {
      std::int64_t out_deg = 0, in_deg = 0;
      for (int u = 0; u < m; ++u) {
        if (u == v) continue;
        if (G.relation(v, u) == 1) ++out_deg;
        else if (G.relation(v, u) == 2) ++in_deg;
      }
      if (out_deg != in_deg)
        return {std::nullopt,
                DigraphCheckFailure{v, v, "vertex " + std::to_string(v + 1) + " has out-degree " +
                                              std::to_string(out_deg) + " but in-degree " +
                                              std::to_string(in_deg)}};
    }
    return {std::nullopt, DigraphCheckFailure{0, 0, "vertices do not share a common degree"}};
  }
  if (*e == 0)
    return {std::nullopt, DigraphCheckFailure{0, 0, "graph has no arcs"}};

  for (int v = 0; v < m; ++v) {
    for (int w = 0; w < m; ++w) {
      if (v == w) continue;
      const int rel = G.relation(v, w);
      if (rel == 2) continue;
      const PairCounts pc = digraph_pair_counts(G, v, w);
      const bool ok = (rel == 1) ? arc_pair_system_holds(pc, m, *e)
                                 : nonadjacent_pair_system_holds(pc, m, *e);
      if (!ok)
        return {std::nullopt,
                DigraphCheckFailure{v, w, std::string(rel == 1 ? "arc" : "non-adjacent") +
                                              " pair conditions fail at (" +
                                              std::to_string(v + 1) + ", " +
                                              std::to_string(w + 1) + ")"}};
    }
  }
  return {*e, std::nullopt};
}

inline std::optional<std::int64_t> check_digraph_conditions(const Digraph& G) {
  return check_digraph_conditions_explained(G).e;
}

}  // namespace etf
