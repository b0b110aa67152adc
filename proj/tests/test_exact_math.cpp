#include <gtest/gtest.h>

#include <random>

#include "recip/exact_math.hpp"

using namespace recip;

namespace {

// Determinant by cofactor expansion; small matrices only.
Integer det(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    Integer term = m[0][j] * det(minor);
    total += (j % 2) ? Integer(-term) : term;
  }
  return total;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// Determinantal divisors: D_k = gcd of all k x k minors, and d_k = D_k / D_{k-1}.
std::vector<Integer> snf_by_minors(const IntMatrix& a) {
  std::vector<Integer> out;
  Integer prev = 1;
  const std::size_t r = std::min(a.rows, a.cols);
  for (std::size_t k = 1; k <= r; ++k) {
    Integer g = 0;
    for (const auto& rs : subsets(a.rows, k))
      for (const auto& cs : subsets(a.cols, k)) {
        std::vector<std::vector<Integer>> m;
        for (auto i : rs) {
          std::vector<Integer> row;
          for (auto j : cs) row.push_back(a.at(i, j));
          m.push_back(row);
        }
        Integer dk = abs(det(m));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), dk.get_mpz_t());
      }
    if (g == 0) {
      out.push_back(0);
      prev = 0;
      continue;
    }
    out.push_back(prev == 0 ? Integer(0) : Integer(g / prev));
    prev = g;
  }
  return out;
}

}  // namespace

TEST(SmithNormalForm, Diag23) {
  auto r = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
  ASSERT_EQ(r.diagonal.size(), 2u);
  // d1 = gcd of entries, d1 * d2 = |det|
  EXPECT_EQ(r.diagonal[0], 1);
  EXPECT_EQ(r.diagonal[0] * r.diagonal[1], 6);
  EXPECT_EQ(r.rank, 2u);
}

TEST(SmithNormalForm, IdentityAndZero) {
  auto id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.diagonal, (std::vector<Integer>{1, 1, 1}));
  EXPECT_EQ(id.rank, 3u);
  auto z = smith_normal_form(IntMatrix(2, 2));
  EXPECT_EQ(z.diagonal, (std::vector<Integer>{0, 0}));
  EXPECT_EQ(z.rank, 0u);
}

TEST(SmithNormalForm, MatchesDeterminantalDivisors) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> e(-6, 6), dim(1, 4);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a(dim(rng), dim(rng));
    for (auto& x : a.entries) x = (t % 3 == 0) ? 2 * e(rng) : e(rng);
    auto r = smith_normal_form(a);
    EXPECT_EQ(r.diagonal, snf_by_minors(a)) << "trial " << t;
    for (std::size_t i = 0; i + 1 < r.diagonal.size(); ++i)
      if (r.diagonal[i + 1] != 0) { EXPECT_EQ(r.diagonal[i + 1] % r.diagonal[i], 0); }
  }
}

TEST(SmithNormalForm, SparseAgreesWithDense) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> e(-1, 1), dim(1, 6);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    IntMatrix a(r, c);
    SparseIntMatrix s(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        long v = e(rng);
        a.at(i, j) = v;
        s.add(i, j, v);
      }
    auto dense = smith_normal_form(a);
    auto sparse = s.smith();
    EXPECT_EQ(dense.rank, sparse.rank);
    std::vector<Integer> dn, sn;
    for (auto& x : dense.diagonal)
      if (x > 1) dn.push_back(x);
    for (auto& x : sparse.diagonal)
      if (x > 1) sn.push_back(x);
    EXPECT_EQ(dn, sn);
  }
}

TEST(Interpolation, SquareCubeCount) {
  std::vector<std::pair<Rational, Rational>> pts = {{1, 4}, {2, 9}, {3, 16}};
  EXPECT_EQ(interpolate_polynomial(pts), (Coefficients{1, 2, 1}));
}

TEST(Interpolation, SolidTorusPolynomial) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (long n = 1; n <= 5; ++n) pts.emplace_back(n, n * n * n * n - 2 * n * n + 1);
  EXPECT_EQ(interpolate_polynomial(pts), (Coefficients{1, 0, -2, 0, 1}));
}

TEST(Interpolation, SinglePoint) {
  std::vector<std::pair<Rational, Rational>> pts = {{0, make_rational(7, 3)}};
  EXPECT_EQ(interpolate_polynomial(pts), (Coefficients{make_rational(7, 3)}));
}

TEST(Interpolation, DuplicateAbscissaIsInputError) {
  std::vector<std::pair<Rational, Rational>> pts = {{1, 1}, {1, 2}};
  EXPECT_THROW(interpolate_polynomial(pts), InputError);
}

TEST(Interpolation, RandomPolynomialsRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> c(-20, 20);
  for (int t = 0; t < 50; ++t) {
    Coefficients p(static_cast<std::size_t>(t % 6 + 1));
    for (auto& x : p) x = make_rational(c(rng), std::abs(c(rng)) + 1);
    trim(p);
    std::vector<std::pair<Rational, Rational>> pts;
    for (std::size_t i = 0; i < p.size() + 2; ++i) {
      Rational x(static_cast<long>(i) - 3, 2);
      pts.emplace_back(x, evaluate(p, x));
    }
    EXPECT_EQ(interpolate_polynomial(pts), p);
  }
}

TEST(LinearAlgebra, SolveLinearConsistentAndNot) {
  RatMatrix a = {{1, 2}, {2, 4}};
  EXPECT_FALSE(solve_linear(a, {1, 3}));
  auto x = solve_linear(a, {1, 2});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0] + 2 * (*x)[1], 1);
}

TEST(LinearAlgebra, RandomSolveChecksResidual) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> c(-5, 5);
  for (int t = 0; t < 100; ++t) {
    RatMatrix a(3, RatVector(4));
    for (auto& row : a)
      for (auto& x : row) x = c(rng);
    RatVector truth(4);
    for (auto& x : truth) x = make_rational(c(rng), 3);
    RatVector b(3);
    for (std::size_t i = 0; i < 3; ++i) b[i] = dot(a[i], truth);
    auto x = solve_linear(a, b);
    ASSERT_TRUE(x);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(dot(a[i], *x), b[i]);
    auto ns = nullspace(a, 4);
    EXPECT_EQ(ns.size(), 4 - rank(a));
    for (const auto& v : ns)
      for (const auto& row : a) EXPECT_EQ(dot(row, v), 0);
  }
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(to_string(make_rational(-3, 6)), "-1/2");
  EXPECT_THROW(parse_rational("1.5"), InputError);
  EXPECT_THROW(parse_rational("1/0"), InputError);
  EXPECT_EQ(pow(make_rational(-1, 2), 3), make_rational(-1, 8));
  EXPECT_EQ(pow(Rational(2), -2), make_rational(1, 4));
}
