#pragma once

// V- and H-descriptions of 0/1 polytopes: dimension, exact facet enumeration
// by the double description method, validity and facet checks, facet
// classification for connected matching polytopes, and text export.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/facet_family.hpp"
#include "cmpoly/graph.hpp"
#include "cmpoly/inequality.hpp"
#include "cmpoly/matchings.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly {

using Point = std::vector<int>;

struct VRep {
  std::size_t dim = 0;
  std::vector<Point> points;
};

struct HRep {
  std::size_t dim = 0;
  std::vector<Inequality> facets;
};

/// The connected matching polytope of g as a vertex list.
inline VRep vrep(const Graph& g, std::size_t limit = kDefaultEnumerationLimit) {
  return {g.num_edges(), enumerate_connected_matchings(g, limit)};
}

/// All 0/1 vectors of dimension d (the hypercube), in binary counting order.
inline VRep hypercube(std::size_t d) {
  if (d > 20) throw LimitExceeded("hypercube dimension above 20");
  VRep v{d, {}};
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point p(d);
    for (std::size_t j = 0; j < d; ++j) p[j] = static_cast<int>((mask >> j) & 1U);
    v.points.push_back(std::move(p));
  }
  return v;
}

inline int polytope_dimension(const VRep& v) {
  if (v.points.empty()) throw PreconditionError("polytope of an empty point set");
  return affine_dimension(v.points);
}

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        f(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  std::vector<Int> coords;  // (b, a) encoding a . x <= b
  Bitset zero;              // processed constraints tight at this ray
};

inline void normalize(std::vector<Int>& v) {
  Int g = 0;
  for (const Int& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (Int& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

/// Double description on the cone { (b, a) : b - a . p >= 0 for every p }.
/// Each extreme ray is a facet a . x <= b of a full-dimensional polytope.
class DoubleDescription {
 public:
  explicit DoubleDescription(const std::vector<Point>& points) : points_(points), d_(points.front().size() + 1) {
    rows_.reserve(points_.size());
    for (const auto& p : points_) {
      std::vector<long long> r(d_);
      r[0] = 1;
      for (std::size_t j = 0; j < p.size(); ++j) r[j + 1] = -p[j];
      rows_.push_back(std::move(r));
    }
  }

  std::vector<std::vector<Int>> run() {
    const auto basis = initial_basis();
    init_rays(basis);
    std::vector<char> done(points_.size(), 0);
    for (auto i : basis) done[i] = 1;

    // insert constraints violated by the most initial rays first
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t k = 0; k < points_.size(); ++k) {
      if (done[k]) continue;
      std::size_t violated = 0;
      for (const auto& r : rays_)
        if (evaluate(k, r) < 0) ++violated;
      order.emplace_back(violated, k);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [unused, k] : order) add_constraint(k);

    std::vector<std::vector<Int>> out;
    out.reserve(rays_.size());
    for (auto& r : rays_) out.push_back(std::move(r.coords));
    return out;
  }

 private:
  Int evaluate(std::size_t k, const Ray& r) const {
    Int s = 0;
    for (std::size_t j = 0; j < d_; ++j)
      if (rows_[k][j] != 0) s += r.coords[j] * static_cast<long>(rows_[k][j]);
    return s;
  }

  std::vector<std::size_t> initial_basis() const {
    std::vector<std::size_t> basis;
    std::vector<std::vector<long long>> chosen;
    for (std::size_t k = 0; k < rows_.size() && basis.size() < d_; ++k) {
      chosen.push_back(rows_[k]);
      if (integer_rank(chosen) == chosen.size())
        basis.push_back(k);
      else
        chosen.pop_back();
    }
    if (basis.size() != d_) throw PreconditionError("point set is not full-dimensional");
    return basis;
  }

  // Rays of { r : A0 r >= 0 } for invertible A0 are the columns of A0^-1.
  void init_rays(const std::vector<std::size_t>& basis) {
    Mat aug(d_, 2 * d_);
    for (std::size_t i = 0; i < d_; ++i) {
      for (std::size_t j = 0; j < d_; ++j) aug(i, j) = static_cast<long>(rows_[basis[i]][j]);
      aug(i, d_ + i) = 1;
    }
    const Mat inv = rref(std::move(aug)).form;
    for (std::size_t col = 0; col < d_; ++col) {
      Int lcm = 1;
      for (std::size_t i = 0; i < d_; ++i)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), inv(i, d_ + col).get_den_mpz_t());
      Ray r{std::vector<Int>(d_), Bitset(points_.size())};
      for (std::size_t i = 0; i < d_; ++i) r.coords[i] = inv(i, d_ + col).get_num() * (lcm / inv(i, d_ + col).get_den());
      normalize(r.coords);
      for (std::size_t i = 0; i < d_; ++i)
        if (i != col) r.zero.set(basis[i]);
      rays_.push_back(std::move(r));
    }
  }

  bool adjacent(const Bitset& common) const {
    if (common.count() + 2 < d_) return false;
    std::vector<std::vector<long long>> tight;
    common.for_each([&](std::size_t k) { tight.push_back(rows_[k]); });
    return integer_rank(std::move(tight)) == d_ - 2;
  }

  void add_constraint(std::size_t k) {
    std::vector<Int> value(rays_.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      value[i] = evaluate(k, rays_[i]);
      if (value[i] > 0)
        pos.push_back(i);
      else if (value[i] < 0)
        neg.push_back(i);
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays_.size(); ++i)
        if (value[i] == 0) rays_[i].zero.set(k);
      return;
    }

    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        Bitset common = rays_[p].zero & rays_[n].zero;
        if (!adjacent(common)) continue;
        Ray r{std::vector<Int>(d_), std::move(common)};
        const Int vp = value[p];
        const Int vn = -value[n];
        for (std::size_t j = 0; j < d_; ++j) r.coords[j] = vp * rays_[n].coords[j] + vn * rays_[p].coords[j];
        normalize(r.coords);
        r.zero.set(k);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t i = 0; i < rays_.size(); ++i) {
      if (value[i] < 0) continue;
      if (value[i] == 0) rays_[i].zero.set(k);
      next.push_back(std::move(rays_[i]));
    }
    rays_ = std::move(next);
  }

  const std::vector<Point>& points_;
  std::size_t d_;
  std::vector<std::vector<long long>> rows_;
  std::vector<Ray> rays_;
};

}  // namespace detail

/// Minimal inequality description of conv(V) for a full-dimensional V, in
/// canonical form and lexicographic row order.
inline HRep hrep(const VRep& v) {
  if (v.points.empty()) throw PreconditionError("hrep of an empty point set");
  for (const auto& p : v.points)
    if (p.size() != v.dim) throw PreconditionError("point dimension differs from the ambient dimension");
  std::vector<Point> points = v.points;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (affine_dimension(points) != static_cast<int>(v.dim))
    throw PreconditionError("hrep needs a full-dimensional point set");
  HRep h{v.dim, {}};
  if (v.dim == 0) return h;

  for (auto& ray : detail::DoubleDescription(points).run()) {
    Inequality q;
    q.rhs = Rat(ray[0]);
    for (std::size_t j = 1; j < ray.size(); ++j) q.coeffs.emplace_back(ray[j]);
    h.facets.push_back(canonicalize(std::move(q)));
  }
  std::sort(h.facets.begin(), h.facets.end(), row_less);
  return h;
}

/// Points of V violating q (exact comparison).
inline std::vector<Point> verify_valid(const Inequality& q, const VRep& v) {
  if (q.dim() != v.dim) throw PreconditionError("inequality and polytope dimensions differ");
  std::vector<Point> bad;
  for (const auto& p : v.points)
    if (!q.satisfied_by(p)) bad.push_back(p);
  return bad;
}

inline std::vector<Point> tight_points(const Inequality& q, const VRep& v) {
  std::vector<Point> tight;
  for (const auto& p : v.points)
    if (q.tight_at(p)) tight.push_back(p);
  return tight;
}

/// Dimension of the face {x in conv(V) : q.x = rhs}; -1 when empty.
inline int face_dimension(const Inequality& q, const VRep& v) {
  if (!verify_valid(q, v).empty()) throw PreconditionError("inequality is not valid for the polytope");
  const auto tight = tight_points(q, v);
  return tight.empty() ? -1 : affine_dimension(tight);
}

inline bool is_facet(const Inequality& q, const VRep& v) {
  return face_dimension(q, v) == polytope_dimension(v) - 1;
}

/// A maximal affinely independent subset of the points tight at q, chosen
/// greedily in V order.  For a facet of a full-dimensional polytope in Q^m it
/// has exactly m elements.
inline std::vector<Point> affinely_independent_tight_set(const Inequality& q, const VRep& v) {
  std::vector<Point> chosen;
  for (const auto& p : tight_points(q, v)) {
    chosen.push_back(p);
    if (affine_dimension(chosen) + 1 != static_cast<int>(chosen.size())) chosen.pop_back();
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// Classification

struct NonNegativity {
  EdgeId edge;
};
struct DegreeRow {
  Vertex vertex = 0;
};
struct Blossom {
  VertexSet handle;
};
struct FamilyRow {
  std::pair<EdgeId, EdgeId> pair;
  EdgeSet lambda;
};
struct OtherRow {};

using FacetClass = std::variant<NonNegativity, DegreeRow, Blossom, FamilyRow, OtherRow>;

inline std::string class_name(const FacetClass& c) {
  static constexpr const char* names[] = {"NonNegativity", "Degree", "Blossom", "Family", "Other"};
  return names[c.index()];
}

inline std::string describe(const FacetClass& c) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, NonNegativity>) return "NonNegativity(e" + std::to_string(k.edge.index) + ")";
        if constexpr (std::is_same_v<K, DegreeRow>) return "Degree(v" + std::to_string(k.vertex) + ")";
        if constexpr (std::is_same_v<K, Blossom>) return "Blossom(H=" + format_set(k.handle) + ")";
        if constexpr (std::is_same_v<K, FamilyRow>)
          return "Family(pair=(" + std::to_string(k.pair.first.index) + "," + std::to_string(k.pair.second.index) +
                 "),lambda=" + format_set(k.lambda) + ")";
        return "Other";
      },
      c);
}

/// Classifies a canonical row; the first matching class wins in the order
/// NonNegativity, Degree, Blossom, Family, Other.
inline FacetClass classify(const Inequality& q, const Graph& g) {
  if (q.dim() != g.num_edges()) throw PreconditionError("inequality and graph dimensions differ");
  EdgeSet plus, minus, other;
  for (std::size_t i = 0; i < q.dim(); ++i) {
    if (q.coeffs[i] == 1)
      plus.emplace_back(i + 1);
    else if (q.coeffs[i] == -1)
      minus.emplace_back(i + 1);
    else if (q.coeffs[i] != 0)
      other.emplace_back(i + 1);
  }

  if (q.rhs == 0 && plus.empty() && other.empty() && minus.size() == 1) return NonNegativity{minus.front()};

  if (q.rhs == 1 && minus.empty() && other.empty() && !plus.empty()) {
    for (Vertex v = 1; v <= g.num_vertices(); ++v)
      if (g.incident(v) == plus) return DegreeRow{v};
  }

  if (minus.empty() && other.empty() && !plus.empty()) {
    const VertexSet h = covered_vertices(g, plus);
    if (h.size() >= 3 && h.size() % 2 == 1 && q.rhs == Rat(static_cast<long>((h.size() - 1) / 2))) {
      EdgeSet induced;
      for (std::size_t i = 1; i <= g.num_edges(); ++i) {
        const Edge& e = g.edge(EdgeId(i));
        if (std::binary_search(h.begin(), h.end(), e.u) && std::binary_search(h.begin(), h.end(), e.v))
          induced.emplace_back(i);
      }
      if (induced == plus) return Blossom{h};
    }
  }

  if (q.rhs == 1 && other.empty() && plus.size() == 2 && is_disconnected_pair(g, plus[0], plus[1]) &&
      lambda_set(g, plus[0], plus[1]) == minus)
    return FamilyRow{{plus[0], plus[1]}, minus};

  return OtherRow{};
}

// ---------------------------------------------------------------------------
// Text formats

/// Homogenized POINTS section for external polyhedral software.
inline std::string export_vrep_interop(const VRep& v) {
  std::ostringstream out;
  out << "POINTS\n";
  for (const auto& p : v.points) {
    out << '1';
    for (int x : p) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

/// `h <m> <count>` followed by one row per facet.
inline std::string format_hrep(const HRep& h) {
  std::ostringstream out;
  out << "h " << h.dim << ' ' << h.facets.size() << '\n';
  for (const auto& q : h.facets) out << format_inequality(q) << '\n';
  return out.str();
}

/// Class counts by name; every class appears, possibly with count 0.
inline std::map<std::string, std::size_t> class_histogram(const std::vector<FacetClass>& classes) {
  std::map<std::string, std::size_t> h{{"NonNegativity", 0}, {"Degree", 0}, {"Blossom", 0}, {"Family", 0}, {"Other", 0}};
  for (const auto& c : classes) ++h[class_name(c)];
  return h;
}

}  // namespace cmpoly
