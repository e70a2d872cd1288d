#include <gtest/gtest.h>

#include <random>

#include "cmpoly/rational.hpp"

using namespace cmpoly;

namespace {

Mat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = Rat(num(rng), den(rng));
      m(i, j).canonicalize();
    }
  return m;
}

Mat as_mat(const std::vector<std::vector<long long>>& a) {
  std::vector<std::vector<long>> b;
  for (const auto& row : a) b.emplace_back(row.begin(), row.end());
  return Mat::from_rows(b);
}

}  // namespace

TEST(ParseRational, AcceptsIntegersAndFractions) {
  EXPECT_EQ(parse_rational("7"), Rat(7));
  EXPECT_EQ(parse_rational("-3/6"), Rat(-1, 2));
  EXPECT_EQ(parse_rational("+4/8").get_den(), 2);
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
}

TEST(ParseRational, RejectsMalformedInput) {
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
}

TEST(Rank, SmallExamples) {
  EXPECT_EQ(rank(Mat::identity(3)), 3u);
  EXPECT_EQ(rank(Mat::from_rows<int>({{1, 1}, {1, 1}})), 1u);
  EXPECT_EQ(rank(Mat(2, 3)), 0u);
  for (std::size_t m = 1; m <= 6; ++m) EXPECT_EQ(rank(Mat::identity(m)), m);
}

TEST(Rank, IntegerOverloadsAgreeWithRational) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long long> val(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + trial % 5, c = 1 + (trial / 5) % 5;
    std::vector<std::vector<long long>> a(r, std::vector<long long>(c));
    std::vector<std::vector<Int>> b(r, std::vector<Int>(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        a[i][j] = val(rng);
        b[i][j] = Int(static_cast<long>(a[i][j]));
      }
    const auto expected = rank(as_mat(a));
    EXPECT_EQ(integer_rank(a), expected);
    EXPECT_EQ(integer_rank(b), expected);
  }
}

TEST(Rank, LargeEntriesFallBackExactly) {
  const long long big = 3037000499LL;  // about sqrt(2^63)
  std::vector<std::vector<long long>> a{{big, big - 1, 1}, {big - 1, big - 2, 1}, {1, 1, 0}};
  EXPECT_EQ(integer_rank(a), rank(as_mat(a)));
}

TEST(Rank, EqualsRankOfTranspose) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat m = random_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 5);
    EXPECT_EQ(rank(m), rank(m.transpose()));
  }
}

TEST(Rref, Examples) {
  auto id = rref(Mat::identity(3));
  EXPECT_EQ(id.form, Mat::identity(3));
  EXPECT_EQ(id.pivots, (std::vector<std::size_t>{0, 1, 2}));

  auto zero = rref(Mat(2, 2));
  EXPECT_EQ(zero.form, Mat(2, 2));
  EXPECT_TRUE(zero.pivots.empty());

  auto r = rref(Mat::from_rows<int>({{1, 2}, {2, 4}}));
  EXPECT_EQ(r.form, Mat::from_rows<int>({{1, 2}, {0, 0}}));
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0}));
}

TEST(Rref, PivotCountIsRank) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Mat m = random_matrix(rng, 1 + trial % 5, 1 + (trial / 5) % 4);
    EXPECT_EQ(rref(m).pivots.size(), rank(m));
  }
}

TEST(AffineDimension, Examples) {
  EXPECT_EQ(affine_dimension(std::vector<std::vector<int>>{{0, 0, 0}}), 0);
  for (std::size_t m = 1; m <= 8; ++m) {
    std::vector<std::vector<int>> pts{std::vector<int>(m, 0)};
    for (std::size_t i = 0; i < m; ++i) {
      pts.emplace_back(m, 0);
      pts.back()[i] = 1;
    }
    EXPECT_EQ(affine_dimension(pts), static_cast<int>(m));
  }
  EXPECT_EQ(affine_dimension(std::vector<std::vector<int>>{{0, 0}, {1, 1}, {3, 3}}), 1);
  EXPECT_THROW(affine_dimension(std::vector<std::vector<int>>{}), PreconditionError);
}

TEST(AffineDimension, TranslationAndBasePointInvariant) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> val(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + trial % 6, m = 1 + (trial / 6) % 5;
    std::vector<std::vector<Rat>> pts(k, std::vector<Rat>(m));
    for (auto& p : pts)
      for (auto& x : p) x = val(rng);
    const int d = affine_dimension(pts);
    std::vector<Rat> shift(m);
    for (auto& s : shift) s = Rat(val(rng), 3);
    auto moved = pts;
    for (auto& p : moved)
      for (std::size_t j = 0; j < m; ++j) p[j] += shift[j];
    EXPECT_EQ(affine_dimension(moved), d);
    auto rotated = pts;
    std::rotate(rotated.begin(), rotated.begin() + static_cast<std::ptrdiff_t>(trial % k), rotated.end());
    EXPECT_EQ(affine_dimension(rotated), d);
  }
}

TEST(Arithmetic, SumsAreExactBothWays) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> num(-50, 50);
  std::uniform_int_distribution<int> den(1, 50);
  for (int trial = 0; trial < 500; ++trial) {
    const int a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rat x(a, b), y(c, d);
    x.canonicalize();
    y.canonicalize();
    Rat cross(a * d + c * b, b * d);
    cross.canonicalize();
    EXPECT_EQ(x + y, cross);
    EXPECT_EQ(Rat(x + y).get_str(), cross.get_str());
  }
}
