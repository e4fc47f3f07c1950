#include "doctest.h"

#include "aqs/error.hpp"
#include "aqs/linalg.hpp"
#include "aqs/polynomial.hpp"
#include "support.hpp"

using namespace aqs;

TEST_CASE("scalar parsing and arithmetic") {
  CHECK(Scalar::parse("3/6") == Scalar(1, 2));
  CHECK(Scalar::parse("-7") == Scalar(-7));
  CHECK(Scalar::parse("0.25") == Scalar(1, 4));
  CHECK(Scalar::parse("010") == Scalar(10));
  CHECK((Scalar(1, 3) + Scalar(1, 6)).str() == "1/2");
  CHECK_THROWS_AS(Scalar::parse("1/"), Error);
  CHECK_THROWS_AS(Scalar::parse(""), Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), Error);
  try {
    Scalar::parse("x");
  } catch (const Error& e) {
    CHECK(e.family() == ErrorFamily::Parse);
    CHECK(e.code() == "ScalarParse");
  }
}

TEST_CASE("square roots stay exact") {
  const Scalar r2 = Scalar::sqrt(2), r3 = Scalar::sqrt(3);
  CHECK(r2 * r2 == Scalar(2));
  CHECK((r2 * r3).str() == "sqrt(6)");
  CHECK((Scalar(1) / (r2 + r3)).str() == "-sqrt(2) + sqrt(3)");
  CHECK(Scalar::sqrt(Scalar(9, 4)) == Scalar(3, 2));
  CHECK(r2.sign() > 0);
  CHECK((r2 - Scalar(3, 2)).sign() < 0);
  CHECK(Scalar::parse((r2 + Scalar(1, 3) * r3).str()) == r2 + Scalar(1, 3) * r3);
  CHECK_FALSE(r2.is_rational());
}

TEST_CASE("float mode compares within tolerance") {
  const Scalar a = Scalar::from_double(0.1 + 0.2), b = Scalar::parse("0.3", true);
  CHECK(a == b);
  CHECK(a.is_float());
  CHECK((a + Scalar(1)).is_float());
  CHECK(Scalar::from_double(1e-12).is_zero());
}

TEST_CASE("determinant, inverse and rank agree") {
  std::mt19937_64 rng(test::seed());
  for (int t = 0; t < 30; ++t) {
    const Matrix a = test::random_matrix(rng, 4, 4), b = test::random_matrix(rng, 4, 4);
    CHECK(determinant(a * b) == determinant(a) * determinant(b));
    CHECK((rank(a) == 4) == !determinant(a).is_zero());
    if (!determinant(a).is_zero()) CHECK(a * inverse(a) == Matrix::identity(4));
  }
}

TEST_CASE("nullspace is a kernel of the right dimension") {
  std::mt19937_64 rng(test::seed() + 1);
  for (int t = 0; t < 30; ++t) {
    const Matrix a = test::random_matrix(rng, 3, 6);
    const Matrix ns = nullspace(a);
    CHECK(ns.cols() + rank(a) == 6);
    CHECK((a * ns).is_zero());
    CHECK(rank(ns) == ns.cols());
  }
}

TEST_CASE("solve reports inconsistency") {
  const Matrix a = Matrix::from_rows({{1, 2}, {2, 4}}, 2);
  CHECK_FALSE(solve(a, {1, 0}).has_value());
  const auto x = solve(a, {1, 2});
  REQUIRE(x.has_value());
  CHECK(a * *x == Vector{1, 2});
}

TEST_CASE("characteristic polynomial satisfies Cayley-Hamilton") {
  std::mt19937_64 rng(test::seed() + 2);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = test::random_matrix(rng, 4, 4);
    const auto cp = characteristic_polynomial(a);
    REQUIRE(cp.size() == 5);
    CHECK(cp.back() == Scalar(1));
    Matrix acc(4, 4), power = Matrix::identity(4);
    for (const auto& c : cp) {
      acc = acc + c * power;
      power = power * a;
    }
    CHECK(acc.is_zero());
    CHECK(cp.front() == determinant(Scalar(-1) * a));
  }
}

TEST_CASE("definiteness by leading minors") {
  CHECK(definiteness(Matrix::identity(3)) == Definiteness::PositiveDefinite);
  CHECK(definiteness(Scalar(-1) * Matrix::identity(3)) == Definiteness::NegativeDefinite);
  CHECK(definiteness(Matrix::from_rows({{1, 0}, {0, -1}}, 2)) == Definiteness::Indefinite);
  CHECK(definiteness(Matrix::from_rows({{1, 0}, {0, 0}}, 2)) == Definiteness::Degenerate);
  // leading minor zero but indefinite
  CHECK(definiteness(Matrix::from_rows({{0, 1}, {1, 0}}, 2)) == Definiteness::Indefinite);
}

TEST_CASE("sparse rank matches dense rank") {
  std::mt19937_64 rng(test::seed() + 3);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = test::random_matrix(rng, 5, 7, 1);
    std::vector<SparseRow> rows;
    for (std::size_t i = 0; i < 5; ++i) {
      SparseRow r;
      for (std::size_t j = 0; j < 7; ++j) {
        if (!a(i, j).is_zero()) r[j] = a(i, j);
      }
      rows.push_back(r);
    }
    CHECK(sparse_rank(rows) == rank(a));
  }
}

TEST_CASE("exact root analysis") {
  using poly::Poly;
  // (x - 1/2)(x + 3)^2 (x^2 - 2)
  Poly p{mpq_class(9), mpq_class(-3, 2), mpq_class(-31, 2), mpq_class(-3, 2), mpq_class(11, 2), mpq_class(1)};
  // expand check: evaluate at the rational roots
  const Poly q = {mpq_class(-1, 2), mpq_class(1)};
  Poly lin3 = {mpq_class(3), mpq_class(1)};
  Poly x2m2 = {mpq_class(-2), mpq_class(0), mpq_class(1)};
  const auto mul = [](const Poly& a, const Poly& b) {
    Poly c(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  p = mul(mul(mul(q, lin3), lin3), x2m2);
  const auto rep = poly::analyze_roots(p);
  REQUIRE(rep.rational_roots.size() == 2);
  CHECK(rep.rational_roots[0] == mpq_class(-3));
  CHECK(rep.rational_roots[1] == mpq_class(1, 2));
  CHECK(rep.distinct_real_roots == 4);
  CHECK_FALSE(rep.splits_over_q());
  CHECK(poly::count_real_roots(x2m2) == 2);
  CHECK(poly::simplest_rational(mpq_class(1, 3), mpq_class(1, 2)) == mpq_class(1, 2));
}

TEST_CASE("random unimodular matrices") {
  std::mt19937_64 rng(test::seed() + 70);
  for (std::size_t n : {1u, 4u, 9u}) {
    const Matrix q = random_unimodular(n, rng);
    CHECK(determinant(q).abs() == Scalar(1));
    const Matrix qi = inverse(q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(qi(i, j).is_rational());
  }
}

TEST_CASE("definiteness by pivots agrees with leading minors") {
  std::mt19937_64 rng(test::seed() + 71);
  const auto by_minors = [](const Matrix& s) {
    bool pos = true, neg = true;
    for (std::size_t k = 1; k <= s.rows(); ++k) {
      Matrix lead(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) lead(i, j) = s(i, j);
      const int sg = determinant(lead).sign();
      if (sg <= 0) pos = false;
      if (sg * ((k % 2) ? -1 : 1) <= 0) neg = false;
    }
    return pos ? Definiteness::PositiveDefinite : (neg ? Definiteness::NegativeDefinite : Definiteness::Indefinite);
  };
  for (int t = 0; t < 40; ++t) {
    const Matrix a = test::random_matrix(rng, 5, 5);
    Matrix s = a.transpose() * a;
    if (t % 3 == 1) s = Scalar(-1) * s;
    if (t % 3 == 2) s = s - Scalar(6) * Matrix::identity(5);
    if (determinant(s).is_zero()) continue;
    CHECK(definiteness(s) == by_minors(s));
  }
  Matrix zero_corner = Matrix::identity(2);
  zero_corner(0, 0) = 0;
  CHECK(definiteness(zero_corner) == Definiteness::Degenerate);
  Matrix hyperbolic(2, 2);
  hyperbolic(0, 1) = hyperbolic(1, 0) = 1;
  CHECK(definiteness(hyperbolic) == Definiteness::Indefinite);
}

TEST_CASE("rational fast paths agree with mixed arithmetic") {
  std::mt19937_64 rng(test::seed() + 72);
  const Matrix a = test::random_matrix(rng, 4, 5), b = test::random_matrix(rng, 5, 3);
  Matrix bs = b;
  bs(0, 0) = bs(0, 0) + Scalar::sqrt(Scalar(2)) - Scalar::sqrt(Scalar(2));  // still rational
  Matrix b2 = b;
  b2(1, 1) = b2(1, 1) + Scalar::sqrt(Scalar(3));
  const Matrix diff = a * b2 - a * b;
  for (std::size_t i = 0; i < 4; ++i) CHECK(diff(i, 1) == a(i, 1) * Scalar::sqrt(Scalar(3)));
  CHECK(a * bs == a * b);
  const Vector v{1, Scalar(1, 2), 0, -3, 2};
  CHECK(a * v == (a * Matrix::from_columns({v}, 5)).col(0));
}
