#pragma once

// Minimal separator inequalities  y_a + y_b - sum_{u in C} y_u <= 1,
// projected onto edge variables through y_u = sum_{e in delta(u)} x_e.
// Construction, minimality, dominance, and the two separation routines used
// by the branch-and-cut solver.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/inequality.hpp"
#include "cmpoly/matchings.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly {

struct Separator {
  Vertex a = 0;
  Vertex b = 0;
  VertexSet c;  // sorted
};

/// Throws PreconditionError unless s is a well-formed (a, b)-separator.
inline void require_separator(const Graph& g, const Separator& s) {
  if (!std::is_sorted(s.c.begin(), s.c.end()) || std::adjacent_find(s.c.begin(), s.c.end()) != s.c.end())
    throw PreconditionError("separator set must be sorted and duplicate free");
  if (!is_separator(g, s.a, s.b, s.c))
    throw PreconditionError("C=" + format_set(s.c) + " does not separate " + std::to_string(s.a) + " from " +
                            std::to_string(s.b));
}

namespace detail {

/// Whether u has a neighbor labeled `side`.
inline bool borders(const Graph& g, Vertex u, const std::vector<int>& label, int side) {
  for (EdgeId e : g.incident(u)) {
    const Edge& ed = g.edge(e);
    const Vertex w = ed.u == u ? ed.v : ed.u;
    if (label[static_cast<std::size_t>(w)] == side) return true;
  }
  return false;
}

}  // namespace detail

/// Every u in C borders both the a-side and the b-side component of G - C.
inline bool is_minimal_separator(const Graph& g, const Separator& s) {
  require_separator(g, s);
  const auto sides = sides_after_removal(g, s.a, s.b, s.c);
  return std::all_of(s.c.begin(), s.c.end(), [&](Vertex u) {
    return detail::borders(g, u, sides.label, sides.a_side) && detail::borders(g, u, sides.label, sides.b_side);
  });
}

/// Drops, smallest id first, any vertex of C not bordering both sides until
/// none is left.  The result still separates a from b.
inline Separator minimalize(const Graph& g, Separator s) {
  require_separator(g, s);
  for (;;) {
    const auto sides = sides_after_removal(g, s.a, s.b, s.c);
    auto it = std::find_if(s.c.begin(), s.c.end(), [&](Vertex u) {
      return !detail::borders(g, u, sides.label, sides.a_side) || !detail::borders(g, u, sides.label, sides.b_side);
    });
    if (it == s.c.end()) return s;
    s.c.erase(it);
  }
}

inline std::string msi_provenance(const Separator& s) {
  return "a=" + std::to_string(s.a) + " b=" + std::to_string(s.b) + " C=" + format_set(s.c);
}

/// Coefficient of x_e is [e in delta(a)] + [e in delta(b)] - |{u in C : e in delta(u)}|; rhs 1.
inline Inequality project_msi(const Graph& g, const Separator& s) {
  require_separator(g, s);
  Inequality q;
  q.coeffs.assign(g.num_edges(), Rat(0));
  for (EdgeId e : g.incident(s.a)) q.coeffs[e.index - 1] += 1;
  for (EdgeId e : g.incident(s.b)) q.coeffs[e.index - 1] += 1;
  for (Vertex u : s.c)
    for (EdgeId e : g.incident(u)) q.coeffs[e.index - 1] -= 1;
  q.rhs = 1;
  q.tag = "msi";
  q.provenance = msi_provenance(s);
  return q;
}

/// Smallest positive rho with rho*p >= q componentwise and rho*p.rhs <= q.rhs,
/// if any exists.  Then p implies q on the nonnegative orthant.
inline std::optional<Rat> dominance_factor(const Inequality& p, const Inequality& q) {
  if (p.dim() != q.dim()) throw PreconditionError("dominance between rows of different dimension");
  std::optional<Rat> lo;  // rho >= lo; absent means rho > 0 only
  std::optional<Rat> hi;  // rho <= hi
  auto need = [&](const Rat& pc, const Rat& qc, bool upper_side) {
    // upper_side: constraint rho*pc >= qc, otherwise rho*pc <= qc
    if (pc == 0) return upper_side ? qc <= 0 : qc >= 0;
    const Rat ratio = qc / pc;
    const bool lower_bound = (pc > 0) == upper_side;
    if (lower_bound) {
      if (!lo || ratio > *lo) lo = ratio;
    } else {
      if (!hi || ratio < *hi) hi = ratio;
    }
    return true;
  };
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (!need(p.coeffs[i], q.coeffs[i], true)) return std::nullopt;
  if (!need(p.rhs, q.rhs, false)) return std::nullopt;

  if (hi && *hi <= 0) return std::nullopt;
  if (lo && hi && *lo > *hi) return std::nullopt;
  if (lo && *lo > 0) return *lo;
  // every rho in (0, hi] works; report 1 when admissible, else hi
  if (!hi || *hi >= 1) return Rat(1);
  return *hi;
}

inline bool dominates(const Inequality& p, const Inequality& q) { return dominance_factor(p, q).has_value(); }

/// rho*p >= q componentwise and rho*p.rhs <= q.rhs for the given rho > 0.
inline bool dominates_with(const Inequality& p, const Inequality& q, const Rat& rho) {
  if (p.dim() != q.dim() || rho <= 0) return false;
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (rho * p.coeffs[i] < q.coeffs[i]) return false;
  return rho * p.rhs <= q.rhs;
}

namespace detail {

/// Edmonds-Karp maximum flow with exact capacities on a dense digraph.
class RationalMaxFlow {
 public:
  explicit RationalMaxFlow(std::size_t n) : n_(n), cap_(n * n, Rat(0)) {}

  void add_arc(std::size_t from, std::size_t to, const Rat& c) { cap(from, to) += c; }

  Rat run(std::size_t s, std::size_t t) {
    Rat total(0);
    std::vector<std::size_t> parent(n_);
    for (;;) {
      std::fill(parent.begin(), parent.end(), n_);
      parent[s] = s;
      std::deque<std::size_t> queue{s};
      while (!queue.empty() && parent[t] == n_) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n_; ++v) {
          if (parent[v] == n_ && cap(u, v) > 0) {
            parent[v] = u;
            queue.push_back(v);
          }
        }
      }
      if (parent[t] == n_) return total;
      Rat push = cap(parent[t], t);
      for (std::size_t v = t; v != s; v = parent[v]) push = std::min(push, cap(parent[v], v));
      for (std::size_t v = t; v != s; v = parent[v]) {
        cap(parent[v], v) -= push;
        cap(v, parent[v]) += push;
      }
      total += push;
    }
  }

  /// Nodes reachable from s in the residual network.
  std::vector<char> reachable(std::size_t s) {
    std::vector<char> seen(n_, 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n_; ++v) {
        if (!seen[v] && cap(u, v) > 0) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return seen;
  }

 private:
  Rat& cap(std::size_t u, std::size_t v) { return cap_[u * n_ + v]; }

  std::size_t n_;
  std::vector<Rat> cap_;
};

inline std::vector<Rat> vertex_loads(const Graph& g, const std::vector<Rat>& x) {
  std::vector<Rat> y(static_cast<std::size_t>(g.num_vertices()) + 1, Rat(0));
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    y[static_cast<std::size_t>(g.edges()[i].u)] += x[i];
    y[static_cast<std::size_t>(g.edges()[i].v)] += x[i];
  }
  return y;
}

/// Minimum y-weight (a, b)-vertex separator through the split digraph
/// (v_in -> v_out with capacity y_v, unbounded arcs for edges).
inline VertexSet min_weight_separator(const Graph& g, const std::vector<Rat>& y, Vertex a, Vertex b) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  auto in = [](Vertex v) { return 2 * static_cast<std::size_t>(v - 1); };
  auto out = [](Vertex v) { return 2 * static_cast<std::size_t>(v - 1) + 1; };
  Rat unbounded(1);
  for (Vertex v = 1; v <= g.num_vertices(); ++v) unbounded += y[static_cast<std::size_t>(v)];

  RationalMaxFlow flow(2 * n);
  for (Vertex v = 1; v <= g.num_vertices(); ++v)
    flow.add_arc(in(v), out(v), (v == a || v == b) ? unbounded : y[static_cast<std::size_t>(v)]);
  for (const Edge& e : g.edges()) {
    flow.add_arc(out(e.u), in(e.v), unbounded);
    flow.add_arc(out(e.v), in(e.u), unbounded);
  }
  flow.run(out(a), in(b));
  const auto seen = flow.reachable(out(a));
  VertexSet c;
  for (Vertex v = 1; v <= g.num_vertices(); ++v)
    if (seen[in(v)] && !seen[out(v)]) c.push_back(v);
  return c;
}

}  // namespace detail

/// Projected MSI violated at a fractional point.  For every non-adjacent pair
/// (a, b) with y*_a + y*_b > 1, a minimum-weight separator is computed by
/// max flow, minimalized, and emitted when y*_a + y*_b - y*(C) > 1.  Rows are
/// canonical and duplicate free, in pair order.
inline std::vector<Inequality> separate_fractional(const Graph& g, const std::vector<Rat>& xstar) {
  if (xstar.size() != g.num_edges()) throw PreconditionError("point dimension differs from edge count");
  for (const Rat& v : xstar)
    if (v < 0 || v > 1) throw PreconditionError("point outside the unit cube");
  const auto y = detail::vertex_loads(g, xstar);
  for (Vertex v = 1; v <= g.num_vertices(); ++v)
    if (y[static_cast<std::size_t>(v)] > 1) throw PreconditionError("degree sum above 1 at vertex " + std::to_string(v));

  std::vector<Inequality> cuts;
  std::set<std::pair<std::vector<Rat>, Rat>> seen;
  for (Vertex a = 1; a <= g.num_vertices(); ++a) {
    for (Vertex b = a + 1; b <= g.num_vertices(); ++b) {
      if (g.adjacent(a, b)) continue;
      const Rat ends = y[static_cast<std::size_t>(a)] + y[static_cast<std::size_t>(b)];
      if (ends <= 1) continue;
      Separator s{a, b, detail::min_weight_separator(g, y, a, b)};
      Rat cut_weight(0);
      for (Vertex u : s.c) cut_weight += y[static_cast<std::size_t>(u)];
      if (ends - cut_weight <= 1) continue;
      s = minimalize(g, std::move(s));
      Inequality q = canonicalize(project_msi(g, s));
      if (q.lhs(xstar) <= q.rhs) continue;
      if (seen.emplace(q.coeffs, q.rhs).second) cuts.push_back(std::move(q));
    }
  }
  return cuts;
}

/// Projected MSI cutting off a disconnected matching M: a is the smallest
/// covered vertex, b the smallest covered vertex outside a's component of
/// G[V(M)], and C the minimalized set of uncovered vertices.  The row
/// evaluates to 2 at the incidence vector of M.
inline Inequality lazy_cut_for_disconnected(const Graph& g, const Matching& m) {
  for (EdgeId e : m) g.check(e);
  if (!is_matching(g, m)) throw PreconditionError("edge set is not a matching");
  if (m.size() < 2) throw PreconditionError("a disconnected matching needs at least two edges");
  const VertexSet covered = covered_vertices(g, m);
  const auto comps = induced_components(g, covered);
  if (comps.size() < 2) throw PreconditionError("matching is connected");
  Separator s{comps[0].front(), comps[1].front(), {}};
  for (Vertex v = 1; v <= g.num_vertices(); ++v)
    if (!std::binary_search(covered.begin(), covered.end(), v)) s.c.push_back(v);
  s = minimalize(g, std::move(s));
  return project_msi(g, s);
}

}  // namespace cmpoly
