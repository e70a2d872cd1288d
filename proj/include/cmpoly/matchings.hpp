#pragma once

// Connected matchings: predicates, exhaustive enumeration (the vertices of
// the connected matching polytope) and the brute-force optimization oracle.

#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly {

using Matching = EdgeSet;
using IncidenceVector = std::vector<int>;

inline constexpr std::size_t kDefaultEnumerationLimit = 200000;

inline bool is_matching(const Graph& g, const EdgeSet& m) {
  std::vector<char> used(static_cast<std::size_t>(g.num_vertices()) + 1, 0);
  for (EdgeId e : m) {
    const Edge& ed = g.edge(e);
    if (used[static_cast<std::size_t>(ed.u)] || used[static_cast<std::size_t>(ed.v)]) return false;
    used[static_cast<std::size_t>(ed.u)] = used[static_cast<std::size_t>(ed.v)] = 1;
  }
  return true;
}

/// M is a matching and G[V(M)] is connected.
inline bool is_connected_matching(const Graph& g, const EdgeSet& m) {
  return is_matching(g, m) && is_connected_induced(g, covered_vertices(g, m));
}

inline IncidenceVector incidence_vector(const Graph& g, const EdgeSet& m) {
  IncidenceVector x(g.num_edges(), 0);
  for (EdgeId e : m) x[e.index - 1] = 1;
  return x;
}

inline EdgeSet support(const IncidenceVector& x) {
  EdgeSet s;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) s.emplace_back(i + 1);
  return s;
}

namespace detail {

/// Backtracking over matchings built from increasing edge ids.  Visits
/// every matching reachable from `current` in lexicographic order of the
/// sorted id sets; `visit` returns false to stop the walk.  Only edges whose
/// mask entry is set are used.
class MatchingWalker {
 public:
  MatchingWalker(const Graph& g, std::vector<char> allowed)
      : g_(g), allowed_(std::move(allowed)), used_(static_cast<std::size_t>(g.num_vertices()) + 1, 0) {}

  void mark(EdgeId e, char v) {
    const Edge& ed = g_.edge(e);
    used_[static_cast<std::size_t>(ed.u)] = used_[static_cast<std::size_t>(ed.v)] = v;
  }

  bool fits(EdgeId e) const {
    const Edge& ed = g_.edge(e);
    return allowed_[e.index] && !used_[static_cast<std::size_t>(ed.u)] && !used_[static_cast<std::size_t>(ed.v)];
  }

  template <class Visit>
  bool walk(EdgeSet& current, std::size_t next, Visit&& visit) {
    if (!visit(static_cast<const EdgeSet&>(current))) return false;
    for (std::size_t i = next; i <= g_.num_edges(); ++i) {
      EdgeId e(i);
      if (!fits(e)) continue;
      mark(e, 1);
      current.push_back(e);
      const bool go_on = walk(current, i + 1, visit);
      current.pop_back();
      mark(e, 0);
      if (!go_on) return false;
    }
    return true;
  }

 private:
  const Graph& g_;
  std::vector<char> allowed_;
  std::vector<char> used_;
};

}  // namespace detail

/// Calls `visit(const EdgeSet&)` for every connected matching in
/// lexicographic order of sorted edge-id sets (the empty set first).
/// Connectivity is tested at emission; the walk prunes on matching
/// violations only.  Returning false from `visit` stops early.
template <class Visit>
void for_each_connected_matching(const Graph& g, Visit&& visit) {
  detail::MatchingWalker walker(g, std::vector<char>(g.num_edges() + 1, 1));
  EdgeSet current;
  walker.walk(current, 1, [&](const EdgeSet& m) {
    if (!is_connected_induced(g, covered_vertices(g, m))) return true;
    return static_cast<bool>(visit(m));
  });
}

/// Every connected matching as a 0/1 vector, in canonical order.  Throws
/// LimitExceeded when more than `limit` would be produced.
inline std::vector<IncidenceVector> enumerate_connected_matchings(const Graph& g,
                                                                  std::size_t limit = kDefaultEnumerationLimit) {
  std::vector<IncidenceVector> out;
  bool overflow = false;
  for_each_connected_matching(g, [&](const EdgeSet& m) {
    if (out.size() == limit) {
      overflow = true;
      return false;
    }
    out.push_back(incidence_vector(g, m));
    return true;
  });
  if (overflow)
    throw LimitExceeded("more than " + std::to_string(limit) + " connected matchings");
  return out;
}

/// Whether some connected matching of g contains the matching R and avoids
/// every edge of `forbidden`.  Forbidden edges still count for connectivity
/// of the covered vertex set; they are only barred from the matching.
inline bool exists_cm_superset(const Graph& g, const EdgeSet& required, const EdgeSet& forbidden) {
  for (EdgeId e : required) g.check(e);
  for (EdgeId e : forbidden) g.check(e);
  if (!is_matching(g, required)) throw PreconditionError("required edge set is not a matching");
  std::vector<char> allowed(g.num_edges() + 1, 1);
  allowed[0] = 0;
  for (EdgeId e : required) allowed[e.index] = 0;
  for (EdgeId e : forbidden) allowed[e.index] = 0;
  detail::MatchingWalker walker(g, std::move(allowed));
  for (EdgeId e : required) walker.mark(e, 1);

  bool found = false;
  EdgeSet extra;
  walker.walk(extra, 1, [&](const EdgeSet& added) {
    EdgeSet all = required;
    all.insert(all.end(), added.begin(), added.end());
    if (is_connected_induced(g, covered_vertices(g, all))) found = true;
    return !found;
  });
  return found;
}

/// Whether some connected matching of g contains the matching R.
inline bool exists_cm_superset(const Graph& g, const EdgeSet& required) {
  return exists_cm_superset(g, required, {});
}

struct OracleResult {
  Rat value;
  Matching matching;
};

/// Maximum-weight connected matching by exhaustive enumeration.  Ties go to
/// the lexicographically smallest edge-id set.
inline OracleResult brute_force_max_weight_cm(const Graph& g, const std::vector<Rat>& w,
                                              std::size_t limit = kDefaultEnumerationLimit) {
  if (w.size() != g.num_edges()) throw PreconditionError("weight vector length differs from edge count");
  OracleResult best{Rat(0), {}};
  std::size_t count = 0;
  bool overflow = false;
  for_each_connected_matching(g, [&](const EdgeSet& m) {
    if (++count > limit) {
      overflow = true;
      return false;
    }
    Rat value(0);
    for (EdgeId e : m) value += w[e.index - 1];
    if (value > best.value) best = {value, m};
    return true;
  });
  if (overflow) throw LimitExceeded("more than " + std::to_string(limit) + " connected matchings");
  return best;
}

/// V-description file: `m <m> k <count>` then one 0/1 row per vector.
inline std::string format_vdescription(std::size_t m, const std::vector<IncidenceVector>& points) {
  std::ostringstream out;
  out << "m " << m << " k " << points.size() << '\n';
  for (const auto& p : points) {
    for (std::size_t j = 0; j < p.size(); ++j) out << (j ? " " : "") << p[j];
    out << '\n';
  }
  return out.str();
}

}  // namespace cmpoly
