#pragma once

// Exact rational simplex for  max c.x  s.t.  A x <= b,  x >= 0.
// Dense tableau, two phases (artificials only for rows with b_i < 0), and
// Bland's rule for both the entering and the leaving variable, so every
// solve terminates and is deterministic.

#include <cstddef>
#include <vector>

#include "cmpoly/errors.hpp"
#include "cmpoly/rational.hpp"

namespace cmpoly {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpRow {
  std::vector<Rat> coeffs;
  Rat rhs;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
  std::vector<std::size_t> basis;  // basic column per row; columns n.. are slacks
  std::size_t pivots = 0;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), t_(rows * (cols + 1)), d_(cols + 1), basis_(rows) {}

  Rat& at(std::size_t i, std::size_t j) { return t_[i * (cols_ + 1) + j]; }
  Rat& rhs(std::size_t i) { return at(i, cols_); }
  Rat& cost(std::size_t j) { return d_[j]; }
  Rat& value() { return d_[cols_]; }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rat inv = 1 / at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j)
      if (at(r, j) != 0) at(r, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const Rat f = at(i, c);
      for (std::size_t j = 0; j <= cols_; ++j)
        if (at(r, j) != 0) at(i, j) -= f * at(r, j);
    }
    if (d_[c] != 0) {
      const Rat f = d_[c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (at(r, j) != 0) d_[j] -= f * at(r, j);
      d_[cols_] += f * at(r, cols_);
    }
    basis_[r] = c;
    ++pivots_;
  }

  /// Maximizes over columns with allowed[j]; false when unbounded.
  bool optimize(const std::vector<char>& allowed) {
    for (;;) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (allowed[j] && d_[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      Rat best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (at(i, enter) <= 0) continue;
        Rat ratio = rhs(i) / at(i, enter);
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  std::size_t pivots() const { return pivots_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rat> t_;
  std::vector<Rat> d_;  // reduced costs, objective value in the last slot
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

inline LpResult solve_lp(const std::vector<Rat>& c, const std::vector<LpRow>& rows) {
  const std::size_t n = c.size();
  const std::size_t r = rows.size();
  std::vector<std::size_t> art_row;
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].coeffs.size() != n) throw PreconditionError("LP row dimension differs from objective");
    if (rows[i].rhs < 0) art_row.push_back(i);
  }
  const std::size_t slack0 = n;
  const std::size_t art0 = n + r;
  const std::size_t cols = n + r + art_row.size();
  detail::Tableau t(r, cols);

  std::size_t next_art = art0;
  for (std::size_t i = 0; i < r; ++i) {
    const bool flip = rows[i].rhs < 0;
    for (std::size_t j = 0; j < n; ++j)
      if (rows[i].coeffs[j] != 0) t.at(i, j) = flip ? Rat(-rows[i].coeffs[j]) : rows[i].coeffs[j];
    t.at(i, slack0 + i) = flip ? -1 : 1;
    t.rhs(i) = flip ? Rat(-rows[i].rhs) : rows[i].rhs;
    if (flip) {
      t.at(i, next_art) = 1;
      t.basis()[i] = next_art++;
    } else {
      t.basis()[i] = slack0 + i;
    }
  }

  LpResult result;
  if (!art_row.empty()) {
    // phase 1: maximize -sum(artificials)
    for (std::size_t i : art_row) {
      for (std::size_t j = 0; j < art0; ++j) t.cost(j) += t.at(i, j);
      t.value() -= t.rhs(i);
    }
    t.optimize(std::vector<char>(cols, 1));
    if (t.value() < 0) {
      result.status = LpStatus::Infeasible;
      result.pivots = t.pivots();
      return result;
    }
    // drive remaining (zero-level) artificials out of the basis
    for (std::size_t i = 0; i < t.rows();) {
      if (t.basis()[i] < art0) {
        ++i;
        continue;
      }
      std::size_t col = art0;
      for (std::size_t j = 0; j < art0; ++j)
        if (t.at(i, j) != 0) {
          col = j;
          break;
        }
      if (col == art0) {
        t.drop_row(i);
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
  }

  // phase 2 reduced costs
  for (std::size_t j = 0; j <= cols; ++j) (j == cols ? t.value() : t.cost(j)) = 0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = c[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const std::size_t b = t.basis()[i];
    if (b >= n || c[b] == 0) continue;
    for (std::size_t j = 0; j < cols; ++j)
      if (t.at(i, j) != 0) t.cost(j) -= c[b] * t.at(i, j);
    t.value() += c[b] * t.rhs(i);
  }
  std::vector<char> allowed(cols, 1);
  for (std::size_t j = art0; j < cols; ++j) allowed[j] = 0;
  const bool bounded = t.optimize(allowed);

  result.pivots = t.pivots();
  if (!bounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.value = t.value();
  result.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (t.basis()[i] < n) result.x[t.basis()[i]] = t.rhs(i);
  result.basis = t.basis();
  return result;
}

}  // namespace cmpoly
