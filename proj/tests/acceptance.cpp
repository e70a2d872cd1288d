// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cmpoly/cmpoly.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace cmpoly;
namespace ct = cmpoly::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

/// The J26 facet list, computed once.
struct J26 {
  Graph g = generate("j26");
  VRep v;
  HRep h;
  std::vector<FacetClass> classes;
  double seconds = 0;

  J26() {
    const auto t = Clock::now();
    v = vrep(g);
    h = hrep(v);
    for (const auto& q : h.facets) classes.push_back(classify(q, g));
    seconds = since(t);
  }

  /// Family facets with coefficient multiset {+1,+1,-1,-1} and |Lambda| = 2.
  std::vector<Inequality> lifting_pattern() const {
    std::vector<Inequality> out;
    for (std::size_t i = 0; i < h.facets.size(); ++i) {
      const auto* f = std::get_if<FamilyRow>(&classes[i]);
      if (!f || f->lambda.size() != 2) continue;
      std::vector<Rat> nz;
      for (const Rat& c : h.facets[i].coeffs)
        if (c != 0) nz.push_back(c);
      std::sort(nz.begin(), nz.end());
      if (nz == std::vector<Rat>{-1, -1, 1, 1} && h.facets[i].rhs == 1) out.push_back(h.facets[i]);
    }
    return out;
  }
};

const J26& j26() {
  static const J26 instance;
  return instance;
}

Verdict census() {
  const auto& j = j26();
  const auto hist = class_histogram(j.classes);
  std::size_t handles = 0, triangles = 0;
  bool handle_rhs = true;
  for (std::size_t i = 0; i < j.classes.size(); ++i) {
    const auto* b = std::get_if<Blossom>(&j.classes[i]);
    if (!b) continue;
    if (b->handle.size() == 7) {
      ++handles;
      handle_rhs = handle_rhs && j.h.facets[i].rhs == 3;
    }
    if (b->handle.size() == 3) ++triangles;
  }
  std::ostringstream d;
  d << "NonNegativity=" << hist.at("NonNegativity") << " Blossom|H|=7=" << handles << " Family=" << hist.at("Family")
    << " (triangle blossoms " << triangles << ", facets " << j.h.facets.size() << ", " << j.seconds << " s)";
  return {hist.at("NonNegativity") == 14 && handles == 8 && handle_rhs && hist.at("Family") == 5 && j.seconds < 300,
          d.str()};
}

Verdict lifting() {
  const auto found = j26().lifting_pattern();
  std::ostringstream d;
  d << found.size() << " Family facets with pattern (+1,+1,-1,-1), e.g. "
    << (found.empty() ? std::string("none") : pretty_inequality(found.front()));
  return {!found.empty(), d.str()};
}

Verdict dominance() {
  const auto& j = j26();
  const auto facets = j.lifting_pattern();
  if (facets.empty()) return {false, "no facet from criterion 2"};
  std::ostringstream d;
  bool pass = true;
  for (const auto& f : facets) {
    std::set<std::pair<Vertex, Vertex>> pairs;
    for (Vertex a = 1; a <= j.g.num_vertices(); ++a)
      for (Vertex b = a + 1; b <= j.g.num_vertices(); ++b) {
        if (j.g.adjacent(a, b)) continue;
        for (const auto& c : ct::minimal_separators(j.g, a, b)) {
          if (c.size() != 4) continue;
          if (dominates_with(f, project_msi(j.g, {a, b, c}), 1)) pairs.emplace(a, b);
        }
      }
    pass = pass && pairs.size() >= 4;
    d << pretty_inequality(f) << ": " << pairs.size() << " pairs;";
  }
  return {pass, d.str()};
}

Verdict full_dimensional(const std::vector<ct::NamedGraph>& corpus) {
  std::size_t bad = 0;
  std::string first;
  for (const auto& [name, g] : corpus)
    if (polytope_dimension(vrep(g)) != static_cast<int>(g.num_edges()) && bad++ == 0) first = name;
  return {bad == 0, std::to_string(corpus.size()) + " graphs, " + std::to_string(bad) + " not full-dimensional" +
                        (bad ? " (first " + first + ")" : "")};
}

Verdict family_validity(const std::vector<ct::NamedGraph>& corpus) {
  std::size_t rows = 0, violations = 0;
  for (const auto& [name, g] : corpus) {
    const VRep v = vrep(g);
    for (const auto& f : generate_family(g)) {
      ++rows;
      violations += verify_valid(f.inequality, v).size();
    }
  }
  return {violations == 0, std::to_string(rows) + " rows, " + std::to_string(violations) + " violating vertices"};
}

Verdict family_facets(const std::vector<ct::NamedGraph>& corpus) {
  std::size_t certified = 0, failures = 0;
  for (const auto& [name, g] : corpus) {
    const VRep v = vrep(g);
    for (const auto& f : generate_family(g)) {
      if (!f.certificate.facet_certified) continue;
      ++certified;
      if (face_dimension(f.inequality, v) != static_cast<int>(g.num_edges()) - 1) ++failures;
    }
  }
  return {failures == 0 && certified > 0,
          std::to_string(certified) + " certified rows, " + std::to_string(failures) + " with face dimension != m-1"};
}

Verdict hull_round_trip(const std::vector<ct::NamedGraph>& corpus) {
  std::size_t facets = 0, failures = 0;
  std::string first;
  for (const auto& [name, g] : corpus) {
    const VRep v = vrep(g);
    for (const auto& q : hrep(v).facets) {
      ++facets;
      if (!verify_valid(q, v).empty() || affinely_independent_tight_set(q, v).size() != g.num_edges())
        if (failures++ == 0) first = name;
    }
  }
  std::string cubes;
  bool cube_ok = true;
  for (std::size_t d = 1; d <= 4; ++d) {
    const std::size_t rows = hrep(hypercube(d)).facets.size();
    cube_ok = cube_ok && rows == 2 * d;
    cubes += " d=" + std::to_string(d) + ":" + std::to_string(rows);
  }
  return {failures == 0 && cube_ok, std::to_string(facets) + " facets checked, " + std::to_string(failures) +
                                        " failures" + (failures ? " (first " + first + ")" : "") + "; cube rows" +
                                        cubes};
}

Verdict solver_exactness() {
  const auto t = Clock::now();
  std::size_t mismatches = 0, nodes = 0;
  for (unsigned seed = 0; seed < 100; ++seed) {
    std::mt19937 rng(424242 + seed);
    std::uniform_int_distribution<int> size(2, 10);
    const Graph g = ct::random_connected_graph(rng, size(rng), 0.3);
    const auto w = ct::random_weights(rng, g.num_edges());
    const auto r = branch_and_cut(g, w);
    nodes += r.stats.nodes;
    if (r.status != SolveStatus::Optimal || r.value != brute_force_max_weight_cm(g, w).value) ++mismatches;
  }
  const double seconds = since(t);
  std::ostringstream d;
  d << "100 instances, " << mismatches << " mismatches, " << nodes << " nodes, " << seconds << " s";
  return {mismatches == 0 && seconds < 600, d.str()};
}

Verdict root_tightening() {
  std::ostringstream d;
  const auto c6 = root_gap_report(generate("cycle:6"), {1, 0, 0, 1, 0, 0});
  d << "cycle:6 (" << to_string(c6.lp_no_family) << ", " << to_string(c6.lp_with_family) << ")";
  bool pass = c6.lp_no_family == 2 && c6.lp_with_family == 1;

  // J26: weight each pair whose row is a facet of the polytope.
  const auto& j = j26().g;
  const auto& v = j26().v;
  std::size_t strict = 0, tried = 0;
  for (const auto& f : generate_family(j)) {
    if (!is_facet(f.inequality, v)) continue;
    std::vector<Rat> w(j.num_edges(), Rat(0));
    w[f.certificate.pair.first.index - 1] = w[f.certificate.pair.second.index - 1] = 1;
    for (EdgeId e : f.certificate.lambda) w[e.index - 1] = -1;
    const auto gap = root_gap_report(j, w);
    ++tried;
    if (gap.lp_with_family < gap.lp_no_family) ++strict;
  }
  d << "; j26 strict on " << strict << "/" << tried << " facet pairs";
  return {pass && tried > 0 && strict == tried, d.str()};
}

}  // namespace

int main() {
  const auto corpus = ct::corpus();
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"J26 facet census", census},
      {"J26 lifting pattern", lifting},
      {"J26 separator dominance", dominance},
      {"full dimension over corpus", [&] { return full_dimensional(corpus); }},
      {"family validity over corpus", [&] { return family_validity(corpus); }},
      {"certified family rows are facets", [&] { return family_facets(corpus); }},
      {"hull round trip", [&] { return hull_round_trip(corpus); }},
      {"branch-and-cut vs brute force", solver_exactness},
      {"root LP tightening", root_tightening},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << "criterion " << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << v.detail << std::endl;
  }
  std::cout << (failed ? "acceptance FAILED (" + std::to_string(failed) + ")" : std::string("acceptance PASSED"))
            << std::endl;
  return failed ? 1 : 0;
}
