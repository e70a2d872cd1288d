#pragma once

// Exact branch-and-cut for maximum-weight connected matching.
//
// The LP relaxation holds bounds and degree rows; the cut pool starts with
// the pair-family rows (optional) and grows with projected separator
// inequalities, separated at fractional points and added lazily at integral
// points whose covered vertices are disconnected.  Every LP is solved by the
// exact rational simplex, so bounds and the final value are exact.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/facet_family.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/inequality.hpp"
#include "cmpoly/matchings.hpp"
#include "cmpoly/msi.hpp"
#include "cmpoly/rational.hpp"
#include "cmpoly/simplex.hpp"

namespace cmpoly {

struct SolverConfig {
  bool use_family_cuts = true;
  bool use_msi_separation = true;
  std::size_t node_limit = 100000;
  std::size_t cut_round_limit = 20;  // fractional separation rounds per node
  std::size_t dormant_after = 10;    // consecutive slack LPs before a cut is parked
};

struct Model {
  Graph graph;
  std::vector<Rat> objective;
  std::vector<Inequality> base_rows;  // upper bounds and degree rows; x >= 0 is implicit
  std::vector<Inequality> cuts;       // cut pool
  SolverConfig config;
};

/// Bounds x_e <= 1, one degree row per non-isolated vertex, and (with
/// use_family_cuts) every valid pair-family row in the pool.
inline Model build_base_lp(const Graph& g, const std::vector<Rat>& w, const SolverConfig& config = {}) {
  if (w.size() != g.num_edges()) throw PreconditionError("weight vector length differs from edge count");
  Model model{g, w, {}, {}, config};
  const std::size_t m = g.num_edges();
  for (std::size_t i = 0; i < m; ++i) {
    Inequality q{std::vector<Rat>(m, Rat(0)), Rat(1), "bound", "e=" + std::to_string(i + 1)};
    q.coeffs[i] = 1;
    model.base_rows.push_back(std::move(q));
  }
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    if (g.incident(v).empty()) continue;
    Inequality q{std::vector<Rat>(m, Rat(0)), Rat(1), "degree", "v=" + std::to_string(v)};
    for (EdgeId e : g.incident(v)) q.coeffs[e.index - 1] = 1;
    model.base_rows.push_back(std::move(q));
  }
  if (config.use_family_cuts)
    for (auto& member : generate_family(g)) model.cuts.push_back(std::move(member.inequality));
  return model;
}

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
  std::vector<std::size_t> basis;
  std::size_t pivots = 0;
};

namespace detail {

/// LP over the free variables after fixing some to 0/1 (fixed[i] = -1 for
/// free).  Rows reduce to the free columns; a row with no free column is
/// either dropped or proves infeasibility.
inline LpSolution solve_restricted(const std::vector<Rat>& c, const std::vector<const Inequality*>& rows,
                                   const std::vector<int>& fixed) {
  const std::size_t m = c.size();
  std::vector<std::size_t> free_cols;
  Rat constant(0);
  for (std::size_t j = 0; j < m; ++j) {
    if (fixed[j] < 0)
      free_cols.push_back(j);
    else if (fixed[j] == 1)
      constant += c[j];
  }
  std::vector<Rat> cr;
  for (std::size_t j : free_cols) cr.push_back(c[j]);
  std::vector<LpRow> lp;
  for (const Inequality* q : rows) {
    LpRow row{{}, q->rhs};
    bool any = false;
    for (std::size_t j = 0; j < m; ++j)
      if (fixed[j] == 1) row.rhs -= q->coeffs[j];
    for (std::size_t j : free_cols) {
      row.coeffs.push_back(q->coeffs[j]);
      if (q->coeffs[j] != 0) any = true;
    }
    if (!any) {
      if (row.rhs < 0) return {LpStatus::Infeasible, {}, {}, {}, 0};
      continue;
    }
    lp.push_back(std::move(row));
  }
  const LpResult res = solve_lp(cr, lp);
  LpSolution out{res.status, {}, {}, res.basis, res.pivots};
  if (res.status != LpStatus::Optimal) return out;
  out.value = res.value + constant;
  out.x.assign(m, Rat(0));
  for (std::size_t j = 0; j < m; ++j)
    if (fixed[j] == 1) out.x[j] = 1;
  for (std::size_t k = 0; k < free_cols.size(); ++k) out.x[free_cols[k]] = res.x[k];
  return out;
}

}  // namespace detail

/// Exact optimum of the LP relaxation over base rows and the whole pool.
inline LpSolution solve_lp_exact(const Model& model) {
  std::vector<const Inequality*> rows;
  for (const auto& q : model.base_rows) rows.push_back(&q);
  for (const auto& q : model.cuts) rows.push_back(&q);
  return detail::solve_restricted(model.objective, rows, std::vector<int>(model.objective.size(), -1));
}

enum class SolveStatus { Optimal, NodeLimit };

struct NodeRecord {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::optional<Rat> bound;  // absent when the node LP is infeasible
  std::string status;        // frac | int | pruned
};

struct SolveStats {
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  std::size_t lp_pivots = 0;
  std::map<std::string, std::size_t> cuts_by_class;  // family, msi, lazy
  double wall_seconds = 0;
};

struct SolveResult {
  Rat value;
  Matching matching;
  SolveStatus status = SolveStatus::Optimal;
  Rat upper_bound;  // equals value when optimal
  SolveStats stats;
  std::vector<NodeRecord> trail;
  std::vector<Inequality> cuts;  // every cut that entered the pool, in order
};

namespace detail {

struct PoolRow {
  Inequality row;
  std::size_t idle = 0;
  bool dormant = false;
};

struct OpenNode {
  Rat bound;
  std::size_t id;
  std::size_t parent;
  std::vector<int> fixed;
};

struct NodeOrder {
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    if (a.bound != b.bound) return a.bound < b.bound;  // best bound first
    return a.id > b.id;
  }
};

inline bool integral(const std::vector<Rat>& x) {
  return std::all_of(x.begin(), x.end(), [](const Rat& v) { return v == 0 || v == 1; });
}

}  // namespace detail

/// Branch-and-cut with best-bound node selection.  At each node: solve the
/// LP; separate projected MSI at fractional points (up to cut_round_limit
/// rounds); add a lazy cut at integral disconnected points; branch on the
/// most fractional variable (smallest id on ties), x = 1 child first.
inline SolveResult branch_and_cut(const Graph& g, const std::vector<Rat>& w, const SolverConfig& config = {},
                                  std::ostream* log = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  const Model model = build_base_lp(g, w, config);
  const std::size_t m = g.num_edges();

  SolveResult result;
  result.value = 0;  // the empty matching is always feasible
  std::vector<detail::PoolRow> pool;
  std::set<std::pair<std::vector<Rat>, Rat>> in_pool;
  auto add_cut = [&](Inequality q, const std::string& cls) {
    if (!in_pool.emplace(q.coeffs, q.rhs).second) return false;
    ++result.stats.cuts_by_class[cls];
    result.cuts.push_back(q);
    pool.push_back({std::move(q), 0, false});
    return true;
  };
  for (const auto& q : model.cuts) add_cut(q, "family");

  std::priority_queue<detail::OpenNode, std::vector<detail::OpenNode>, detail::NodeOrder> open;
  std::size_t next_id = 0;
  // the root carries no meaningful parent bound; sum of positive weights bounds every matching
  Rat root_key(0);
  for (const Rat& c : w)
    if (c > 0) root_key += c;
  open.push({root_key, next_id++, 0, std::vector<int>(m, -1)});

  auto emit = [&](const NodeRecord& rec, std::size_t cuts_here) {
    result.trail.push_back(rec);
    if (!log) return;
    *log << "node " << rec.id << " bound " << (rec.bound ? to_string(*rec.bound) : std::string("infeasible"))
         << " cuts " << cuts_here << " status " << rec.status << '\n';
  };

  while (!open.empty()) {
    if (result.stats.nodes >= config.node_limit) break;
    detail::OpenNode node = open.top();
    open.pop();
    ++result.stats.nodes;
    NodeRecord rec{node.id, node.id == 0 ? std::nullopt : std::optional<std::size_t>(node.parent), std::nullopt, ""};
    if (node.bound <= result.value) {
      rec.bound = node.bound;
      rec.status = "pruned";
      emit(rec, 0);
      continue;
    }

    std::size_t rounds = 0;
    std::size_t cuts_here = 0;
    for (;;) {
      std::vector<const Inequality*> rows;
      for (const auto& q : model.base_rows) rows.push_back(&q);
      std::vector<std::size_t> active;
      for (std::size_t k = 0; k < pool.size(); ++k)
        if (!pool[k].dormant) {
          rows.push_back(&pool[k].row);
          active.push_back(k);
        }
      const LpSolution lp = detail::solve_restricted(w, rows, node.fixed);
      ++result.stats.lp_solves;
      result.stats.lp_pivots += lp.pivots;
      if (lp.status == LpStatus::Infeasible) {
        rec.status = "pruned";
        break;
      }
      if (lp.status != LpStatus::Optimal) throw Error("node LP unbounded despite unit bounds");

      // parked rows must hold before this LP counts as optimal for the pool
      bool woke = false;
      for (auto& pr : pool)
        if (pr.dormant && !pr.row.satisfied_by(lp.x)) {
          pr.dormant = false;
          pr.idle = 0;
          woke = true;
        }
      if (woke) continue;
      for (std::size_t k : active) {
        auto& pr = pool[k];
        if (pr.row.slack(lp.x) > 0) {
          if (++pr.idle >= config.dormant_after) pr.dormant = true;
        } else {
          pr.idle = 0;
        }
      }

      rec.bound = lp.value;
      if (lp.value <= result.value) {
        rec.status = "pruned";
        break;
      }
      if (detail::integral(lp.x)) {
        Matching mt;
        for (std::size_t j = 0; j < m; ++j)
          if (lp.x[j] == 1) mt.emplace_back(j + 1);
        if (is_connected_matching(g, mt)) {
          result.value = lp.value;
          result.matching = std::move(mt);
          rec.status = "int";
          break;
        }
        if (!add_cut(lazy_cut_for_disconnected(g, mt), "lazy")) throw Error("lazy cut already in the pool");
        ++cuts_here;
        continue;
      }
      if (config.use_msi_separation && rounds < config.cut_round_limit) {
        std::size_t added = 0;
        for (auto& q : separate_fractional(g, lp.x))
          if (add_cut(std::move(q), "msi")) ++added;
        if (added > 0) {
          ++rounds;
          cuts_here += added;
          continue;
        }
      }
      // most fractional variable, smallest id on ties
      std::size_t branch = m;
      Rat best_gap;
      const Rat half(1, 2);
      for (std::size_t j = 0; j < m; ++j) {
        if (lp.x[j] == 0 || lp.x[j] == 1) continue;
        const Rat gap = abs(lp.x[j] - half);
        if (branch == m || gap < best_gap) {
          branch = j;
          best_gap = gap;
        }
      }
      for (int value : {1, 0}) {
        std::vector<int> fixed = node.fixed;
        fixed[branch] = value;
        open.push({lp.value, next_id++, node.id, std::move(fixed)});
      }
      rec.status = "frac";
      break;
    }
    emit(rec, cuts_here);
  }

  result.status = open.empty() ? SolveStatus::Optimal : SolveStatus::NodeLimit;
  result.upper_bound = result.value;
  if (!open.empty() && open.top().bound > result.upper_bound) result.upper_bound = open.top().bound;
  result.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (log) {
    if (result.status == SolveStatus::Optimal)
      *log << "opt " << to_string(result.value) << " matching " << format_set(result.matching) << '\n';
    else
      *log << "node-limit " << to_string(result.value) << " bound " << to_string(result.upper_bound) << " matching "
           << format_set(result.matching) << '\n';
  }
  return result;
}

struct RootGap {
  Rat lp_no_family;
  Rat lp_with_family;
};

/// Root LP values over bounds and degree rows, without and with the family rows.
inline RootGap root_gap_report(const Graph& g, const std::vector<Rat>& w) {
  SolverConfig plain;
  plain.use_family_cuts = false;
  SolverConfig with_family;
  with_family.use_family_cuts = true;
  return {solve_lp_exact(build_base_lp(g, w, plain)).value, solve_lp_exact(build_base_lp(g, w, with_family)).value};
}

}  // namespace cmpoly
