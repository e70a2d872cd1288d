#pragma once

// Exact rational arithmetic and dense linear algebra over Q.
//
// Rationals are GMP mpq_class values, which are kept canonical (gcd 1,
// positive denominator) by every arithmetic operation.  Rank is computed by
// fraction-free (Bareiss) elimination on integer rows; rref works in Q.

#include <gmpxx.h>

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cmpoly/errors.hpp"

namespace cmpoly {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "a", "-a" or "a/b" (b != 0) into a canonical rational.
inline Rat parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational");
  std::string s(text);
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    if (!part.empty() && (part.front() == '-' || part.front() == '+')) part.remove_prefix(1);
    return !part.empty() &&
           std::all_of(part.begin(), part.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (slash == std::string::npos) {
    if (!valid_int(s)) throw ParseError("not a rational: '" + s + "'");
    if (s.front() == '+') s.erase(0, 1);
    return Rat(Int(s));
  }
  std::string num = s.substr(0, slash);
  std::string den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("not a rational: '" + s + "'");
  if (num.front() == '+') num.erase(0, 1);
  Int d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rat r(Int(num), d);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Dense rectangular matrix of rationals, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  template <class T>
  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw PreconditionError("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rat(rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Rat> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

/// Rank of integer rows by Bareiss elimination.  Takes the rows by value and
/// destroys them.  All rows must have equal length.
inline std::size_t integer_rank(std::vector<std::vector<Int>> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Int v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Bareiss rank on machine integers, used for the small 0/1-derived rows of
/// the hull computation.  Falls back to the GMP path when an intermediate
/// would leave the 64-bit range.
inline std::size_t integer_rank(std::vector<std::vector<long long>> a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size();
  const std::size_t cols = a.front().size();
  const auto fallback = [&]() {
    std::vector<std::vector<Int>> big(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) big[i][j] = static_cast<long>(a[i][j]);
    return integer_rank(std::move(big));
  };
  // operate on a copy so that the fallback sees the original rows
  std::vector<std::vector<long long>> w = a;
  long long prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && w[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(w[p], w[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (w[i][c] == 0 && prev == w[r][c]) continue;  // row unchanged: (piv*x - 0)/prev
      for (std::size_t j = c + 1; j < cols; ++j) {
        const __int128 v = static_cast<__int128>(w[r][c]) * w[i][j] - static_cast<__int128>(w[i][c]) * w[r][j];
        const __int128 q = v / prev;
        if (q > INT64_MAX || q < INT64_MIN) return fallback();
        w[i][j] = static_cast<long long>(q);
      }
      w[i][c] = 0;
    }
    prev = w[r][c];
    ++r;
  }
  return r;
}

/// Exact rank over Q.  Each row is scaled to integers first (row scaling
/// preserves rank), then eliminated fraction-free.
inline std::size_t rank(const Mat& m) {
  std::vector<std::vector<Int>> rows(m.rows(), std::vector<Int>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int lcm = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j).get_num() * (lcm / m(i, j).get_den());
  }
  return integer_rank(std::move(rows));
}

struct RrefResult {
  Mat form;
  std::vector<std::size_t> pivots;  // 0-based pivot columns, increasing
};

/// Reduced row-echelon form over Q.
inline RrefResult rref(Mat m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Dimension of the affine hull of a nonempty point set: the rank of the
/// differences p - p0 for the first point p0.
template <class T>
  requires std::integral<T> || std::same_as<T, Int>
int affine_dimension(const std::vector<std::vector<T>>& points) {
  if (points.empty()) throw PreconditionError("affine_dimension of an empty point set");
  const auto& base = points.front();
  std::vector<std::vector<Int>> diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].size() != base.size()) throw PreconditionError("points of different dimension");
    std::vector<Int> d(base.size());
    bool zero = true;
    for (std::size_t j = 0; j < base.size(); ++j) {
      d[j] = Int(points[k][j]) - Int(base[j]);
      if (d[j] != 0) zero = false;
    }
    if (!zero) diffs.push_back(std::move(d));
  }
  return static_cast<int>(integer_rank(std::move(diffs)));
}

inline int affine_dimension(const std::vector<std::vector<Rat>>& points) {
  if (points.empty()) throw PreconditionError("affine_dimension of an empty point set");
  Mat diffs(points.size() - 1, points.front().size());
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].size() != points.front().size()) throw PreconditionError("points of different dimension");
    for (std::size_t j = 0; j < diffs.cols(); ++j) diffs(k - 1, j) = points[k][j] - points.front()[j];
  }
  return static_cast<int>(rank(diffs));
}

}  // namespace cmpoly
