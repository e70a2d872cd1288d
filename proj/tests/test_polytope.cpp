#include <gtest/gtest.h>

#include <random>

#include "cmpoly/polytope.hpp"
#include "cmpoly/simplex.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace cmpoly;
namespace ct = cmpoly::testing;

namespace {

Inequality row(std::initializer_list<int> coeffs, int rhs) {
  Inequality q;
  for (int c : coeffs) q.coeffs.emplace_back(c);
  q.rhs = rhs;
  return q;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

/// Same graph with vertices and edge order permuted.
Graph relabel(const Graph& g, std::mt19937& rng) {
  std::vector<Vertex> perm(static_cast<std::size_t>(g.num_vertices()));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) edges.push_back({perm[static_cast<std::size_t>(e.u - 1)], perm[static_cast<std::size_t>(e.v - 1)]});
  std::shuffle(edges.begin(), edges.end(), rng);
  return Graph(g.num_vertices(), edges);
}

/// Row i is irredundant when maximizing its left side over the other rows
/// exceeds its rhs.  Free variables are split as x = u - v.
bool irredundant(const std::vector<Inequality>& rows, std::size_t i) {
  const std::size_t m = rows[i].dim();
  auto split = [&](const std::vector<Rat>& c) {
    std::vector<Rat> out(c);
    for (const Rat& x : c) out.push_back(-x);
    return out;
  };
  std::vector<LpRow> lp;
  for (std::size_t j = 0; j < rows.size(); ++j)
    if (j != i) lp.push_back({split(rows[j].coeffs), rows[j].rhs});
  const LpResult r = solve_lp(split(rows[i].coeffs), lp);
  EXPECT_NE(r.status, LpStatus::Infeasible);
  (void)m;
  return r.status == LpStatus::Unbounded || r.value > rows[i].rhs;
}

}  // namespace

TEST(PolytopeDimension, Examples) {
  EXPECT_EQ(polytope_dimension(vrep(generate("path:3"))), 2);
  EXPECT_EQ(polytope_dimension(vrep(generate("complete:3"))), 3);
  EXPECT_EQ(polytope_dimension(vrep(generate("j26"))), 14);
  EXPECT_THROW(polytope_dimension(VRep{2, {}}), PreconditionError);
}

TEST(PolytopeDimension, FullDimensionalOverCorpus) {
  for (const auto& [name, g] : ct::corpus())
    EXPECT_EQ(polytope_dimension(vrep(g)), static_cast<int>(g.num_edges())) << name;
}

TEST(Hrep, Triangle) {
  const HRep h = hrep(vrep(generate("complete:3")));
  ASSERT_EQ(h.facets.size(), 4u);
  const std::vector<Inequality> want{row({-1, 0, 0}, 0), row({0, -1, 0}, 0), row({0, 0, -1}, 0), row({1, 1, 1}, 1)};
  for (const auto& q : want)
    EXPECT_TRUE(std::any_of(h.facets.begin(), h.facets.end(), [&](const Inequality& f) { return same_row(f, q); }))
        << pretty_inequality(q);
}

TEST(Hrep, HypercubeHasTwoRowsPerCoordinate) {
  for (std::size_t d = 1; d <= 4; ++d) EXPECT_EQ(hrep(hypercube(d)).facets.size(), 2 * d) << d;
  EXPECT_EQ(hrep(hypercube(3)).facets.size(), 6u);
}

TEST(Hrep, RejectsDegenerateInput) {
  EXPECT_THROW(hrep(VRep{2, {}}), PreconditionError);
  EXPECT_THROW(hrep(VRep{2, {{0, 0}, {1, 1}}}), PreconditionError);
  EXPECT_THROW(hrep(VRep{2, {{0, 0, 1}}}), PreconditionError);
  EXPECT_TRUE(hrep(vrep(Graph(3, {}))).facets.empty());
}

TEST(Hrep, EqualsBruteForceHull) {
  std::size_t checked = 0;
  for (const auto& [name, g] : ct::corpus()) {
    const VRep v = vrep(g);
    if (binomial(v.points.size(), g.num_edges()) > 3e5) continue;
    const auto want = ct::brute_force_facets(v.points, g.num_edges());
    const auto got = hrep(v).facets;
    ASSERT_EQ(got.size(), want.size()) << name;
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_TRUE(same_row(got[i], want[i])) << name << " row " << i;
    ++checked;
  }
  EXPECT_GE(checked, 20u);
}

TEST(Hrep, RoundTripOverCorpus) {
  for (const auto& [name, g] : ct::corpus()) {
    const VRep v = vrep(g);
    const HRep h = hrep(v);
    for (const auto& q : h.facets) {
      ASSERT_TRUE(verify_valid(q, v).empty()) << name << " " << pretty_inequality(q);
      ASSERT_EQ(affinely_independent_tight_set(q, v).size(), g.num_edges()) << name << " " << pretty_inequality(q);
    }
  }
}

TEST(Hrep, EveryRowIsIrredundant) {
  for (const auto& [name, g] : ct::corpus()) {
    if (g.num_edges() > 10) continue;
    const auto rows = hrep(vrep(g)).facets;
    for (std::size_t i = 0; i < rows.size(); ++i) ASSERT_TRUE(irredundant(rows, i)) << name << " " << pretty_inequality(rows[i]);
  }
}

TEST(Hrep, OutputIsSortedAndDeterministic) {
  const auto a = hrep(vrep(generate("cube:3")));
  const auto b = hrep(vrep(generate("cube:3")));
  EXPECT_TRUE(std::is_sorted(a.facets.begin(), a.facets.end(), row_less));
  EXPECT_EQ(format_hrep(a), format_hrep(b));
}

TEST(Faces, VerifyValid) {
  const VRep c6 = vrep(generate("cycle:6"));
  EXPECT_TRUE(verify_valid(row({-1, 0, 0, 0, 0, 0}, 0), c6).empty());
  EXPECT_TRUE(verify_valid(row({1, 0, 0, 1, 0, 0}, 1), c6).empty());
  EXPECT_EQ(verify_valid(row({-1, 0, 0, -1, 0, 0}, -2), c6).size(), c6.points.size());
}

TEST(Faces, Dimensions) {
  const VRep k3 = vrep(generate("complete:3"));
  EXPECT_EQ(face_dimension(row({1, 1, 1}, 1), k3), 2);
  EXPECT_EQ(face_dimension(row({1, 0, 0}, 1), vrep(generate("path:4"))), 1);
  EXPECT_EQ(face_dimension(row({0, 0, 0}, 0), k3), 3);
  EXPECT_EQ(face_dimension(row({1, 0, 0}, 2), k3), -1);
  EXPECT_THROW(face_dimension(row({1, 1, 1}, 0), k3), PreconditionError);
}

TEST(Faces, IsFacet) {
  const Graph j = generate("j26");
  const VRep vj = vrep(j);
  for (std::size_t i = 0; i < 14; ++i) {
    Inequality q{std::vector<Rat>(14, Rat(0)), Rat(0), "", ""};
    q.coeffs[i] = -1;
    EXPECT_TRUE(is_facet(q, vj)) << i;
  }
  EXPECT_FALSE(is_facet(row({1, 0, -1, 0, 1}, 1), vrep(generate("path:6"))));
  EXPECT_TRUE(is_facet(row({1, 0, 0, 1, 0, 0}, 1), vrep(generate("cycle:6"))));
}

TEST(Classify, Examples) {
  const Graph k3 = generate("complete:3");
  EXPECT_EQ(describe(classify(row({0, 0, -1}, 0), k3)), "NonNegativity(e3)");
  const auto blossom = classify(row({1, 1, 1}, 1), k3);
  ASSERT_TRUE(std::holds_alternative<Blossom>(blossom));
  EXPECT_EQ(std::get<Blossom>(blossom).handle, (VertexSet{1, 2, 3}));
  EXPECT_EQ(class_name(classify(row({1, 1}, 1), generate("path:3"))), "Degree");
  EXPECT_EQ(class_name(classify(row({1, 0, -1, 0, 1}, 1), generate("path:6"))), "Family");
  EXPECT_EQ(class_name(classify(row({1, 0, 0, 1, 0, 0}, 1), generate("cycle:6"))), "Family");
  EXPECT_EQ(class_name(classify(row({2, 1, 0}, 1), k3)), "Other");
}

TEST(Classify, J26Census) {
  const Graph j = generate("j26");
  const auto h = hrep(vrep(j));
  std::vector<FacetClass> classes;
  std::size_t big_blossoms = 0;
  for (const auto& q : h.facets) {
    classes.push_back(classify(q, j));
    if (auto* b = std::get_if<Blossom>(&classes.back()); b && b->handle.size() == 7) {
      EXPECT_EQ(q.rhs, 3);
      ++big_blossoms;
    }
  }
  const auto hist = class_histogram(classes);
  EXPECT_EQ(hist.at("NonNegativity"), 14u);
  EXPECT_EQ(hist.at("Family"), 5u);
  EXPECT_EQ(big_blossoms, 8u);
}

TEST(Classify, PartitionIsIsomorphismInvariant) {
  std::mt19937 rng(41);
  std::vector<ct::NamedGraph> graphs{{"cube:3", generate("cube:3")}, {"j26", generate("j26")}, {"cycle:7", generate("cycle:7")}};
  for (auto& g : ct::random_suite(20, 7, 0.3, 55)) graphs.push_back(std::move(g));
  for (const auto& [name, g] : graphs) {
    auto census = [](const Graph& h) {
      std::vector<FacetClass> cls;
      for (const auto& q : hrep(vrep(h)).facets) cls.push_back(classify(q, h));
      return class_histogram(cls);
    };
    const auto base = census(g);
    std::size_t total = 0;
    for (const auto& [k, c] : base) total += c;
    EXPECT_EQ(total, hrep(vrep(g)).facets.size()) << name;
    EXPECT_EQ(census(relabel(g, rng)), base) << name;
  }
}

TEST(Export, InteropAndHrepText) {
  EXPECT_EQ(export_vrep_interop(vrep(generate("path:3"))), "POINTS\n1 0 0\n1 1 0\n1 0 1\n");
  EXPECT_EQ(export_vrep_interop(vrep(Graph(2, {}))), "POINTS\n1\n");
  const VRep vj = vrep(generate("j26"));
  const std::string text = export_vrep_interop(vj);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), vj.points.size() + 1);

  const HRep h = hrep(vrep(generate("complete:3")));
  const std::string hs = format_hrep(h);
  EXPECT_EQ(hs.substr(0, 6), "h 3 4\n");
  const auto parsed = parse_inequality_file(hs, 3);
  ASSERT_EQ(parsed.size(), h.facets.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) EXPECT_TRUE(same_row(parsed[i], h.facets[i]));
}

TEST(InequalityText, FormatParseAndCanonicalize) {
  Inequality q = row({2, -4, 0}, 6);
  q = canonicalize(q);
  EXPECT_EQ(q.coeffs, (std::vector<Rat>{1, -2, 0}));
  EXPECT_EQ(q.rhs, 3);
  Inequality frac{{Rat(1, 2), Rat(1, 3)}, Rat(1), "", ""};
  EXPECT_EQ(canonicalize(frac).coeffs, (std::vector<Rat>{3, 2}));
  EXPECT_EQ(canonicalize(frac).rhs, 6);

  q.tag = "family";
  q.provenance = "pair=(1,3)";
  const std::string line = format_inequality(q);
  EXPECT_EQ(line, "1 -2 0 <= 3 # tag=family pair=(1,3)");
  const Inequality back = parse_inequality(line, 3);
  EXPECT_TRUE(same_row(back, q));
  EXPECT_EQ(back.tag, "family");
  EXPECT_EQ(back.provenance, "pair=(1,3)");
  EXPECT_THROW(parse_inequality("1 2 <= 3", 3), ParseError);
  EXPECT_THROW(parse_inequality_file("h 3 2\n1 0 0 <= 1\n", 3), ParseError);
}
