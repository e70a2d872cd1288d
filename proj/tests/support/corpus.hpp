#pragma once

// Seeded graph and weight generators shared by the unit tests and the
// acceptance binary.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cmpoly/graph.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly::testing {

/// Random spanning tree plus each remaining pair with probability p.
inline Graph random_connected_graph(std::mt19937& rng, int n, double p) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(n) + 1, std::vector<char>(static_cast<std::size_t>(n) + 1, 0));
  for (std::size_t i = 1; i < order.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    const Vertex u = order[i];
    const Vertex v = order[pick(rng)];
    adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = 1;
    adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = 1;
  }
  std::bernoulli_distribution extra(p);
  std::vector<Edge> edges;
  for (Vertex u = 1; u <= n; ++u) {
    for (Vertex v = u + 1; v <= n; ++v) {
      auto& cell = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (!cell && extra(rng)) cell = 1;
      if (cell) edges.push_back({u, v});
    }
  }
  std::shuffle(edges.begin(), edges.end(), rng);
  return Graph(n, std::move(edges));
}

/// Rationals k/d with d in 1..4 and k/d in [-5, 5].
inline std::vector<Rat> random_weights(std::mt19937& rng, std::size_t m) {
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rat> w;
  for (std::size_t i = 0; i < m; ++i) {
    const int d = den(rng);
    std::uniform_int_distribution<int> num(-5 * d, 5 * d);
    Rat r(num(rng), d);
    r.canonicalize();
    w.push_back(r);
  }
  return w;
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline std::vector<NamedGraph> random_suite(std::size_t count, int max_n, double p, unsigned seed) {
  std::vector<NamedGraph> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937 rng(seed + static_cast<unsigned>(i));
    std::uniform_int_distribution<int> size(2, max_n);
    const int n = size(rng);
    out.push_back({"random#" + std::to_string(i) + "(n=" + std::to_string(n) + ")", random_connected_graph(rng, n, p)});
  }
  return out;
}

/// Paths, cycles, cube:3, petersen, j26 and 100 random connected graphs with n <= 8.
inline std::vector<NamedGraph> corpus() {
  std::vector<NamedGraph> out;
  for (int k = 2; k <= 8; ++k) out.push_back({"path:" + std::to_string(k), generate("path:" + std::to_string(k))});
  for (int k = 3; k <= 8; ++k) out.push_back({"cycle:" + std::to_string(k), generate("cycle:" + std::to_string(k))});
  for (const char* name : {"cube:3", "petersen", "j26"}) out.push_back({name, generate(name)});
  for (auto& g : random_suite(100, 8, 0.3, 7000)) out.push_back(std::move(g));
  return out;
}

}  // namespace cmpoly::testing
