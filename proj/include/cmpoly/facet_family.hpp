#pragma once

// The pair inequalities  x_e' + x_e'' - sum_{f in Lambda} x_f <= 1  for
// disconnected matchings {e', e''}, where Lambda holds the edges at
// line-graph distance exactly two from both, together with their validity
// and facet certificates.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/inequality.hpp"
#include "cmpoly/matchings.hpp"

namespace cmpoly {

struct FamilyCertificate {
  std::pair<EdgeId, EdgeId> pair;
  EdgeSet lambda;
  bool disconnected_pair = false;
  bool valid = false;            // every connected matching containing the pair uses Lambda
  bool path_precheck = false;    // G - Lambda has no path joining the pair
  bool facet_certified = false;  // valid, Lambda nonempty clique in L(G), triples 2-connected
  bool empty_lambda = false;
};

inline constexpr std::size_t kDefaultFamilyEdgeLimit = 64;

/// Lambda(e1, e2) = { f : d_L(f, e1) = d_L(f, e2) = 2 }.
inline EdgeSet lambda_set(const Graph& g, EdgeId e1, EdgeId e2) {
  if (e1 == e2) throw PreconditionError("lambda_set needs two distinct edges");
  const auto d1 = line_distances_from(g, e1);
  const auto d2 = line_distances_from(g, e2);
  EdgeSet out;
  for (std::size_t i = 1; i <= g.num_edges(); ++i)
    if (d1[i] == std::size_t{2} && d2[i] == std::size_t{2}) out.emplace_back(i);
  return out;
}

/// e1, e2 vertex-disjoint and G[V(e1) u V(e2)] disconnected.
inline bool is_disconnected_pair(const Graph& g, EdgeId e1, EdgeId e2) {
  if (e1 == e2) throw PreconditionError("a pair needs two distinct edges");
  const Edge& a = g.edge(e1);
  const Edge& b = g.edge(e2);
  if (a.touches(b)) return false;
  return !g.adjacent(a.u, b.u) && !g.adjacent(a.u, b.v) && !g.adjacent(a.v, b.u) && !g.adjacent(a.v, b.v);
}

namespace detail {

inline void require_disconnected_pair(const Graph& g, EdgeId e1, EdgeId e2) {
  if (!is_disconnected_pair(g, e1, e2))
    throw PreconditionError("edges " + std::to_string(e1.index) + "," + std::to_string(e2.index) +
                            " do not form a disconnected matching");
}

inline std::string family_provenance(EdgeId e1, EdgeId e2, const EdgeSet& lambda) {
  return "pair=(" + std::to_string(std::min(e1, e2).index) + "," + std::to_string(std::max(e1, e2).index) +
         ") lambda=" + format_set(lambda);
}

}  // namespace detail

inline Inequality family_inequality(const Graph& g, EdgeId e1, EdgeId e2) {
  detail::require_disconnected_pair(g, e1, e2);
  const EdgeSet lambda = lambda_set(g, e1, e2);
  Inequality q;
  q.coeffs.assign(g.num_edges(), Rat(0));
  q.coeffs[e1.index - 1] = 1;
  q.coeffs[e2.index - 1] = 1;
  for (EdgeId f : lambda) q.coeffs[f.index - 1] = -1;
  q.rhs = 1;
  q.tag = "family";
  q.provenance = detail::family_provenance(e1, e2, lambda);
  return q;
}

/// No connected matching of G built from edges outside Lambda contains
/// {e1, e2}.  Connectivity is that of the covered vertex set in G itself:
/// a Lambda edge between covered vertices keeps them connected even though
/// it cannot be in the matching.  Decided by exact search.
inline bool check_validity_hypothesis(const Graph& g, EdgeId e1, EdgeId e2) {
  detail::require_disconnected_pair(g, e1, e2);
  return !exists_cm_superset(g, make_sorted({e1, e2}), lambda_set(g, e1, e2));
}

/// Sufficient condition for validity: e1 and e2 lie in different components
/// of G - Lambda.
inline bool path_precheck(const Graph& g, EdgeId e1, EdgeId e2) {
  const auto sub = delete_edges(g, lambda_set(g, e1, e2));
  VertexSet all(static_cast<std::size_t>(g.num_vertices()));
  for (Vertex v = 1; v <= g.num_vertices(); ++v) all[static_cast<std::size_t>(v - 1)] = v;
  const auto comps = induced_components(sub.graph, all);
  auto comp_of = [&](Vertex v) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (std::binary_search(comps[i].begin(), comps[i].end(), v)) return i;
    return comps.size();
  };
  return comp_of(g.edge(e1).u) != comp_of(g.edge(e2).u);
}

/// Lambda nonempty, Lambda a clique in L(G) (edges pairwise sharing an
/// endpoint), and G[V(e1) u V(e2) u V(f)] 2-connected for each f in Lambda.
inline bool check_facet_hypothesis(const Graph& g, EdgeId e1, EdgeId e2, const EdgeSet& lambda) {
  if (lambda.empty()) return false;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if (!g.edge(lambda[i]).touches(g.edge(lambda[j]))) return false;
  for (EdgeId f : lambda) {
    if (!is_biconnected_induced(g, covered_vertices(g, make_sorted({e1, e2, f})))) return false;
  }
  return true;
}

inline FamilyCertificate certify_pair(const Graph& g, EdgeId e1, EdgeId e2) {
  FamilyCertificate c;
  c.pair = {std::min(e1, e2), std::max(e1, e2)};
  c.disconnected_pair = is_disconnected_pair(g, e1, e2);
  if (!c.disconnected_pair) return c;
  c.lambda = lambda_set(g, e1, e2);
  c.empty_lambda = c.lambda.empty();
  c.valid = check_validity_hypothesis(g, e1, e2);
  c.path_precheck = path_precheck(g, e1, e2);
  c.facet_certified = c.valid && check_facet_hypothesis(g, e1, e2, c.lambda);
  return c;
}

struct FamilyMember {
  Inequality inequality;
  FamilyCertificate certificate;
};

/// One entry per unordered disconnected pair whose validity hypothesis holds,
/// ordered by (smaller id, larger id).
inline std::vector<FamilyMember> generate_family(const Graph& g, std::size_t edge_limit = kDefaultFamilyEdgeLimit) {
  if (g.num_edges() > edge_limit)
    throw LimitExceeded("family generation limited to " + std::to_string(edge_limit) + " edges");
  std::vector<FamilyMember> out;
  for (std::size_t i = 1; i <= g.num_edges(); ++i) {
    for (std::size_t j = i + 1; j <= g.num_edges(); ++j) {
      const EdgeId a(i), b(j);
      if (!is_disconnected_pair(g, a, b)) continue;
      FamilyCertificate cert = certify_pair(g, a, b);
      if (!cert.valid) continue;
      out.push_back({family_inequality(g, a, b), std::move(cert)});
    }
  }
  return out;
}

inline std::string format_certificate(const FamilyCertificate& c) {
  return "valid=" + std::to_string(c.valid) + " precheck=" + std::to_string(c.path_precheck) +
         " facet_certified=" + std::to_string(c.facet_certified) + " empty_lambda=" + std::to_string(c.empty_lambda);
}

}  // namespace cmpoly
