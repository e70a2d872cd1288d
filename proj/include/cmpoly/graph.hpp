#pragma once

// Simple undirected graphs with stable 1-based vertex and edge numbering,
// the text file format, named generators, and the structural predicates the
// rest of the library is built on.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly {

using Vertex = int;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate free

/// 1-based edge index into the owning graph.
struct EdgeId {
  std::size_t index = 0;

  constexpr EdgeId() = default;
  constexpr explicit EdgeId(std::size_t i) : index(i) {}

  friend constexpr auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

using EdgeSet = std::vector<EdgeId>;  // sorted, duplicate free

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  bool has(Vertex w) const noexcept { return u == w || v == w; }
  bool touches(const Edge& o) const noexcept { return has(o.u) || has(o.v); }
};

inline EdgeSet make_sorted(EdgeSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline EdgeSet make_edge_set(std::initializer_list<std::size_t> ids) {
  EdgeSet s;
  for (auto i : ids) s.emplace_back(i);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

class Graph {
 public:
  Graph() = default;

  Graph(int n, std::vector<Edge> edges, std::vector<Rat> weights = {})
      : n_(n), edges_(std::move(edges)), weights_(std::move(weights)) {
    if (n_ < 0) throw PreconditionError("negative vertex count");
    if (weights_.empty()) weights_.assign(edges_.size(), Rat(1));
    if (weights_.size() != edges_.size()) throw PreconditionError("weight vector length differs from edge count");
    for (Rat& w : weights_) w.canonicalize();
    incident_.assign(static_cast<std::size_t>(n_) + 1, {});
    std::set<std::pair<Vertex, Vertex>> seen;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      auto& e = edges_[i];
      if (e.u < 1 || e.u > n_ || e.v < 1 || e.v > n_)
        throw PreconditionError("edge " + std::to_string(i + 1) + " has a vertex out of range");
      if (e.u == e.v) throw PreconditionError("edge " + std::to_string(i + 1) + " is a loop");
      if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second)
        throw PreconditionError("edge " + std::to_string(i + 1) + " duplicates an earlier edge");
      incident_[static_cast<std::size_t>(e.u)].emplace_back(i + 1);
      incident_[static_cast<std::size_t>(e.v)].emplace_back(i + 1);
    }
  }

  int num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  const Edge& edge(EdgeId e) const {
    check(e);
    return edges_[e.index - 1];
  }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<Rat>& weights() const noexcept { return weights_; }

  /// delta(v): edges incident to v, increasing id.
  const EdgeSet& incident(Vertex v) const {
    if (v < 1 || v > n_) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    return incident_[static_cast<std::size_t>(v)];
  }

  std::optional<EdgeId> find_edge(Vertex u, Vertex v) const {
    if (u < 1 || u > n_ || v < 1 || v > n_) return std::nullopt;
    for (EdgeId e : incident_[static_cast<std::size_t>(u)])
      if (edge(e).has(v)) return e;
    return std::nullopt;
  }

  bool adjacent(Vertex u, Vertex v) const { return u != v && find_edge(u, v).has_value(); }

  std::vector<Vertex> neighbors(Vertex v) const {
    std::vector<Vertex> out;
    for (EdgeId e : incident(v)) {
      const Edge& ed = edge(e);
      out.push_back(ed.u == v ? ed.v : ed.u);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool valid(EdgeId e) const noexcept { return e.index >= 1 && e.index <= edges_.size(); }

  void check(EdgeId e) const {
    if (!valid(e)) throw PreconditionError("edge id " + std::to_string(e.index) + " out of range");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.n_ != b.n_ || a.edges_.size() != b.edges_.size() || a.weights_ != b.weights_) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i)
      if (a.edges_[i].u != b.edges_[i].u || a.edges_[i].v != b.edges_[i].v) return false;
    return true;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<Rat> weights_;
  std::vector<EdgeSet> incident_;
};

/// G with some edges deleted (vertices retained); original[i-1] is the id in
/// the parent graph of edge i of the subgraph.
struct EdgeDeletedSubgraph {
  Graph graph;
  std::vector<EdgeId> original;

  std::optional<EdgeId> to_sub(EdgeId parent) const {
    auto it = std::lower_bound(original.begin(), original.end(), parent);
    if (it == original.end() || *it != parent) return std::nullopt;
    return EdgeId(static_cast<std::size_t>(it - original.begin()) + 1);
  }
};

inline EdgeDeletedSubgraph delete_edges(const Graph& g, const EdgeSet& removed) {
  std::vector<Edge> kept;
  std::vector<Rat> weights;
  std::vector<EdgeId> original;
  for (std::size_t i = 1; i <= g.num_edges(); ++i) {
    EdgeId e(i);
    if (std::binary_search(removed.begin(), removed.end(), e)) continue;
    kept.push_back(g.edge(e));
    weights.push_back(g.weights()[i - 1]);
    original.push_back(e);
  }
  return {Graph(g.num_vertices(), std::move(kept), std::move(weights)), std::move(original)};
}

// ---------------------------------------------------------------------------
// File format

/// Parses the `p <n> <m>` / `e <u> <v> [w <num>/<den>]` format.  Edge order
/// in the file defines edge ids.
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::pair<int, std::size_t>> header;
  std::vector<Edge> edges;
  std::vector<Rat> weights;
  std::set<std::pair<Vertex, Vertex>> seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "p") {
      long long n = -1, m = -1;
      std::string extra;
      if (header) throw ParseError(lineno, "duplicate header");
      if (!(ls >> n >> m) || n < 0 || m < 0 || (ls >> extra)) throw ParseError(lineno, "malformed header");
      header.emplace(static_cast<int>(n), static_cast<std::size_t>(m));
    } else if (tag == "e") {
      if (!header) throw ParseError(lineno, "edge before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw ParseError(lineno, "malformed edge");
      Rat w(1);
      std::string key;
      if (ls >> key) {
        std::string num;
        if (key != "w" || !(ls >> num)) throw ParseError(lineno, "malformed edge weight");
        try {
          w = parse_rational(num);
        } catch (const ParseError& err) {
          throw ParseError(lineno, err.what());
        }
        std::string extra;
        if (ls >> extra) throw ParseError(lineno, "trailing text after edge");
      }
      const auto n = header->first;
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError(lineno, "vertex out of range");
      if (u == v) throw ParseError(lineno, "loop at vertex " + std::to_string(u));
      auto key_pair = std::make_pair(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
      if (!seen.insert(key_pair).second) throw ParseError(lineno, "duplicate edge");
      edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
      weights.push_back(w);
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
  }
  if (!header) throw ParseError(lineno, "missing header");
  if (edges.size() != header->second)
    throw ParseError(lineno, "header announces " + std::to_string(header->second) + " edges, found " +
                                 std::to_string(edges.size()));
  return Graph(header->first, std::move(edges), std::move(weights));
}

/// Writes the graph file format; weights are written only when some weight
/// differs from 1.
inline std::string format_graph(const Graph& g) {
  std::ostringstream out;
  const bool weighted =
      std::any_of(g.weights().begin(), g.weights().end(), [](const Rat& w) { return w != 1; });
  out << "p " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    out << "e " << e.u << ' ' << e.v;
    if (weighted) out << " w " << to_string(g.weights()[i]);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline int parse_generator_arg(std::string_view name, std::string_view arg, int minimum) {
  int k = 0;
  if (arg.empty() || arg.size() > 6 || !std::all_of(arg.begin(), arg.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw PreconditionError("generator '" + std::string(name) + "' needs a numeric argument");
  for (char c : arg) k = k * 10 + (c - '0');
  if (k < minimum)
    throw PreconditionError("generator '" + std::string(name) + "' needs argument >= " + std::to_string(minimum));
  return k;
}

}  // namespace detail

/// Named deterministic graphs: path:k, cycle:k, complete:k, cube:d,
/// petersen, j26 (skeleton of the gyrobifastigium).
inline Graph generate(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  std::vector<Edge> edges;

  if (name == "path") {
    const int k = detail::parse_generator_arg(name, arg, 1);
    for (int i = 1; i < k; ++i) edges.push_back({i, i + 1});
    return Graph(k, std::move(edges));
  }
  if (name == "cycle") {
    const int k = detail::parse_generator_arg(name, arg, 3);
    for (int i = 1; i < k; ++i) edges.push_back({i, i + 1});
    edges.push_back({k, 1});
    return Graph(k, std::move(edges));
  }
  if (name == "complete") {
    const int k = detail::parse_generator_arg(name, arg, 1);
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) edges.push_back({i, j});
    return Graph(k, std::move(edges));
  }
  if (name == "cube") {
    const int d = detail::parse_generator_arg(name, arg, 1);
    if (d > 10) throw PreconditionError("cube dimension above 10");
    // vertex v <-> bit string v-1; edges by increasing lower endpoint, then bit
    const int n = 1 << d;
    for (int x = 0; x < n; ++x)
      for (int b = 0; b < d; ++b)
        if (!(x & (1 << b))) edges.push_back({x + 1, (x | (1 << b)) + 1});
    return Graph(n, std::move(edges));
  }
  if (!arg.empty() || colon != std::string_view::npos) {
    if (name == "petersen" || name == "j26")
      throw PreconditionError("generator '" + std::string(name) + "' takes no argument");
  }
  if (name == "petersen") {
    for (int i = 0; i < 5; ++i) edges.push_back({i + 1, (i + 1) % 5 + 1});
    for (int i = 0; i < 5; ++i) edges.push_back({i + 1, i + 6});
    for (int i = 0; i < 5; ++i) edges.push_back({i + 6, (i + 2) % 5 + 6});
    return Graph(10, std::move(edges));
  }
  if (name == "j26") {
    edges = {{1, 2}, {2, 3}, {3, 4}, {1, 4},          // central square
             {1, 5}, {2, 5}, {3, 6}, {4, 6}, {5, 6},  // top ridge
             {2, 7}, {3, 7}, {4, 8}, {1, 8}, {7, 8}}; // bottom ridge, turned 90 degrees
    return Graph(8, std::move(edges));
  }
  throw PreconditionError("unknown generator '" + std::string(spec) + "'");
}

// ---------------------------------------------------------------------------
// Structural predicates

/// Line-graph distances from e to every edge (index 0 unused); nullopt marks
/// edges in a different component.
inline std::vector<std::optional<std::size_t>> line_distances_from(const Graph& g, EdgeId e) {
  g.check(e);
  std::vector<std::optional<std::size_t>> dist(g.num_edges() + 1);
  std::deque<EdgeId> queue{e};
  dist[e.index] = 0;
  while (!queue.empty()) {
    const EdgeId cur = queue.front();
    queue.pop_front();
    const Edge& ce = g.edge(cur);
    for (Vertex end : {ce.u, ce.v}) {
      for (EdgeId f : g.incident(end)) {
        if (dist[f.index]) continue;
        dist[f.index] = *dist[cur.index] + 1;
        queue.push_back(f);
      }
    }
  }
  return dist;
}

/// d_L(e, f): shortest-path distance between e and f in the line graph;
/// nullopt when they lie in different components.
inline std::optional<std::size_t> line_distance(const Graph& g, EdgeId e, EdgeId f) {
  g.check(f);
  return line_distances_from(g, e)[f.index];
}

namespace detail {

/// Component label per vertex of G[S] (0 for vertices outside S); returns
/// the number of components.
inline int label_components(const Graph& g, const std::vector<char>& in_set, std::vector<int>& label) {
  label.assign(static_cast<std::size_t>(g.num_vertices()) + 1, 0);
  int count = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= g.num_vertices(); ++s) {
    if (!in_set[static_cast<std::size_t>(s)] || label[static_cast<std::size_t>(s)]) continue;
    ++count;
    label[static_cast<std::size_t>(s)] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.incident(u)) {
        const Edge& ed = g.edge(e);
        const Vertex w = ed.u == u ? ed.v : ed.u;
        if (in_set[static_cast<std::size_t>(w)] && !label[static_cast<std::size_t>(w)]) {
          label[static_cast<std::size_t>(w)] = count;
          stack.push_back(w);
        }
      }
    }
  }
  return count;
}

inline std::vector<char> membership(const Graph& g, const VertexSet& s) {
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()) + 1, 0);
  for (Vertex v : s) {
    if (v < 1 || v > g.num_vertices()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    in[static_cast<std::size_t>(v)] = 1;
  }
  return in;
}

}  // namespace detail

/// Components of G[S], each as a sorted vertex list, ordered by smallest vertex.
inline std::vector<VertexSet> induced_components(const Graph& g, const VertexSet& s) {
  std::vector<int> label;
  const int count = detail::label_components(g, detail::membership(g, s), label);
  std::vector<VertexSet> comps(static_cast<std::size_t>(count));
  for (Vertex v = 1; v <= g.num_vertices(); ++v)
    if (label[static_cast<std::size_t>(v)]) comps[static_cast<std::size_t>(label[static_cast<std::size_t>(v)] - 1)].push_back(v);
  return comps;
}

/// True iff G[S] is connected; the empty set and singletons count as connected.
inline bool is_connected_induced(const Graph& g, const VertexSet& s) {
  std::vector<int> label;
  return detail::label_components(g, detail::membership(g, s), label) <= 1;
}

/// True iff G[S] is connected without articulation vertices.  |S| < 3 is
/// degenerate and rejected.
inline bool is_biconnected_induced(const Graph& g, const VertexSet& s) {
  auto in = detail::membership(g, s);
  const auto size = std::count(in.begin(), in.end(), 1);
  if (size < 3) throw PreconditionError("biconnectivity test needs at least 3 vertices");
  std::vector<int> label;
  if (detail::label_components(g, in, label) != 1) return false;
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (!in[static_cast<std::size_t>(v)]) continue;
    in[static_cast<std::size_t>(v)] = 0;
    const int parts = detail::label_components(g, in, label);
    in[static_cast<std::size_t>(v)] = 1;
    if (parts != 1) return false;
  }
  return true;
}

/// Checks the (a, b, C) separator preconditions, naming the violated one.
inline void require_separable(const Graph& g, Vertex a, Vertex b, const VertexSet& c) {
  const int n = g.num_vertices();
  if (a < 1 || a > n || b < 1 || b > n) throw PreconditionError("separator endpoint out of range");
  if (a == b) throw PreconditionError("separator endpoints coincide");
  if (std::find(c.begin(), c.end(), a) != c.end() || std::find(c.begin(), c.end(), b) != c.end())
    throw PreconditionError("separator contains an endpoint");
  if (g.adjacent(a, b)) throw PreconditionError("adjacent vertices " + std::to_string(a) + "," + std::to_string(b) + " are not separable");
}

/// Vertex sets of the components containing a and b in G - C.
struct SeparatedSides {
  std::vector<int> label;  // component label per vertex, 0 for C
  int a_side = 0;
  int b_side = 0;
};

inline SeparatedSides sides_after_removal(const Graph& g, Vertex a, Vertex b, const VertexSet& c) {
  std::vector<char> in(static_cast<std::size_t>(g.num_vertices()) + 1, 1);
  in[0] = 0;
  for (Vertex v : c) in[static_cast<std::size_t>(v)] = 0;
  SeparatedSides s;
  detail::label_components(g, in, s.label);
  s.a_side = s.label[static_cast<std::size_t>(a)];
  s.b_side = s.label[static_cast<std::size_t>(b)];
  return s;
}

/// True iff a and b lie in different components of G - C.
inline bool is_separator(const Graph& g, Vertex a, Vertex b, const VertexSet& c) {
  require_separable(g, a, b, c);
  detail::membership(g, c);
  const auto s = sides_after_removal(g, a, b, c);
  return s.a_side != s.b_side;
}

inline VertexSet covered_vertices(const Graph& g, const EdgeSet& edges) {
  VertexSet vs;
  for (EdgeId e : edges) {
    vs.push_back(g.edge(e).u);
    vs.push_back(g.edge(e).v);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

inline std::string format_set(const EdgeSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i].index);
  return out + "}";
}

inline std::string format_set(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

inline std::ostream& operator<<(std::ostream& os, EdgeId e) { return os << 'e' << e.index; }

}  // namespace cmpoly
