#pragma once

// Exact-rational inequality rows `coeffs . x <= rhs`, their canonical integer
// form, and the one-row-per-line text format shared by every producer.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly {

struct Inequality {
  std::vector<Rat> coeffs;
  Rat rhs;
  std::string tag;         // producer/classification label, e.g. "family", "msi"
  std::string provenance;  // free-form origin record

  std::size_t dim() const noexcept { return coeffs.size(); }

  template <class T>
  Rat lhs(const std::vector<T>& x) const {
    if (x.size() != coeffs.size()) throw PreconditionError("point dimension differs from inequality dimension");
    Rat s(0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) s += coeffs[i] * x[i];
    return s;
  }

  template <class T>
  bool satisfied_by(const std::vector<T>& x) const { return lhs(x) <= rhs; }

  template <class T>
  bool tight_at(const std::vector<T>& x) const { return lhs(x) == rhs; }

  /// rhs - lhs(x); negative when violated.
  template <class T>
  Rat slack(const std::vector<T>& x) const { return rhs - lhs(x); }
};

/// Same row (coefficients and rhs), ignoring tag and provenance.
inline bool same_row(const Inequality& a, const Inequality& b) { return a.coeffs == b.coeffs && a.rhs == b.rhs; }

/// Lexicographic order on (coeffs, rhs).
inline bool row_less(const Inequality& a, const Inequality& b) {
  if (a.coeffs != b.coeffs)
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
  return a.rhs < b.rhs;
}

/// Scales the row by the least common denominator and divides by the gcd of
/// all entries (rhs included), so that coefficients are coprime integers.
/// The sense stays <=.  The zero row is left untouched.
inline Inequality canonicalize(Inequality q) {
  Int lcm = 1;
  for (const Rat& c : q.coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.rhs.get_den_mpz_t());
  Int g = 0;
  auto scaled = [&](const Rat& r) { return Int(r.get_num() * (lcm / r.get_den())); };
  for (const Rat& c : q.coeffs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled(c).get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), scaled(q.rhs).get_mpz_t());
  if (g == 0) return q;
  for (Rat& c : q.coeffs) c = Rat(scaled(c) / g);
  q.rhs = Rat(scaled(q.rhs) / g);
  return q;
}

/// `c1 c2 ... cm <= rhs`, with ` # comment` appended when tag or provenance
/// are present.
inline std::string format_inequality(const Inequality& q) {
  std::ostringstream out;
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) out << (i ? " " : "") << to_string(q.coeffs[i]);
  out << (q.coeffs.empty() ? "" : " ") << "<= " << to_string(q.rhs);
  if (!q.tag.empty() || !q.provenance.empty()) {
    out << " #";
    if (!q.tag.empty()) out << " tag=" << q.tag;
    if (!q.provenance.empty()) out << ' ' << q.provenance;
  }
  return out.str();
}

/// Human-readable form, e.g. "x1 - x3 + x4 <= 1".
inline std::string pretty_inequality(const Inequality& q) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
    const Rat& c = q.coeffs[i];
    if (c == 0) continue;
    const Rat mag = abs(c);
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    if (mag != 1) out << to_string(mag);
    out << 'x' << (i + 1);
    first = false;
  }
  if (first) out << '0';
  out << " <= " << to_string(q.rhs);
  return out.str();
}

/// Parses one row of the text format; `m` fixes the expected dimension.
/// The trailing comment, if any, is kept as provenance (tag= extracted).
inline Inequality parse_inequality(std::string_view line, std::size_t m) {
  std::string body(line);
  std::string comment;
  if (auto hash = body.find('#'); hash != std::string::npos) {
    comment = body.substr(hash + 1);
    body.erase(hash);
  }
  std::istringstream in(body);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);
  if (tokens.size() != m + 2 || tokens[m] != "<=")
    throw ParseError("expected " + std::to_string(m) + " coefficients, '<=' and a right-hand side");
  Inequality q;
  for (std::size_t i = 0; i < m; ++i) q.coeffs.push_back(parse_rational(tokens[i]));
  q.rhs = parse_rational(tokens[m + 1]);

  std::istringstream cs(comment);
  std::string rest;
  for (std::string t; cs >> t;) {
    if (t.rfind("tag=", 0) == 0 && q.tag.empty())
      q.tag = t.substr(4);
    else
      rest += (rest.empty() ? "" : " ") + t;
  }
  q.provenance = rest;
  return q;
}

/// Reads a file of rows, skipping blank and comment-only lines.  An optional
/// `h <m> <count>` header is checked against `m` and the row count.
inline std::vector<Inequality> parse_inequality_file(std::string_view text, std::size_t m) {
  std::istringstream in{std::string(text)};
  std::vector<Inequality> rows;
  std::string line;
  std::size_t lineno = 0;
  long long announced = -1;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line[first] == 'h') {
      std::istringstream hs(line.substr(first + 1));
      long long hm = -1, count = -1;
      if (!(hs >> hm >> count) || hm < 0 || count < 0) throw ParseError(lineno, "malformed h header");
      if (static_cast<std::size_t>(hm) != m)
        throw ParseError(lineno, "header dimension " + std::to_string(hm) + " differs from " + std::to_string(m));
      announced = count;
      continue;
    }
    try {
      rows.push_back(parse_inequality(line, m));
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (announced >= 0 && static_cast<std::size_t>(announced) != rows.size())
    throw ParseError(lineno, "header announces " + std::to_string(announced) + " rows, found " +
                                 std::to_string(rows.size()));
  return rows;
}

}  // namespace cmpoly
