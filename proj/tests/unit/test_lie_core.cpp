#include "doctest.h"

#include "aqs/constructors.hpp"
#include "aqs/error.hpp"
#include "aqs/lie_algebra.hpp"
#include "support.hpp"

using namespace aqs;

namespace {

LieAlgebra violator() {
  LieAlgebra::BracketTable t;
  t.emplace(std::make_pair(0, 1), unit_vector(3, 1));
  t.emplace(std::make_pair(0, 2), unit_vector(3, 0));
  return LieAlgebra(3, t);
}

}  // namespace

TEST_CASE("brackets are antisymmetric and bilinear") {
  const LieAlgebra l = su3();
  std::mt19937_64 rng(test::seed() + 20);
  for (int t = 0; t < 10; ++t) {
    Vector x, y;
    for (int i = 0; i < 8; ++i) {
      x.push_back(test::random_rational(rng));
      y.push_back(test::random_rational(rng));
    }
    CHECK(l.bracket(x, y) == Scalar(-1) * l.bracket(y, x));
    CHECK(l.ad(x) * y == l.bracket(x, y));
  }
}

TEST_CASE("reversed pairs are stored negated; duplicates rejected") {
  LieAlgebra::BracketTable t;
  t.emplace(std::make_pair(1, 0), unit_vector(3, 2));
  const LieAlgebra l(3, t);
  CHECK(l.basis_bracket(0, 1) == Vector{0, 0, -1});
  LieAlgebra::BracketTable d;
  d.emplace(std::make_pair(0, 1), unit_vector(3, 2));
  d.emplace(std::make_pair(1, 0), unit_vector(3, 2));
  CHECK_THROWS(LieAlgebra(3, d));
}

TEST_CASE("Jacobi identity") {
  CHECK(jacobi_check(su2()).empty());
  CHECK(jacobi_check(su3()).empty());
  CHECK(jacobi_check(weighted_heisenberg_4n1(2, {1, 2}).algebra).empty());
  const auto v = jacobi_check(violator());
  REQUIRE(v.size() == 1);
  CHECK(v[0].i == 0);
  CHECK(v[0].j == 1);
  CHECK(v[0].k == 2);
  try {
    require_jacobi(violator());
    FAIL("expected a Jacobi violation");
  } catch (const Error& e) {
    CHECK(e.family() == ErrorFamily::Parse);
    CHECK(e.code() == "JacobiViolation");
  }
}

TEST_CASE("center and central series") {
  const LieAlgebra h = weighted_heisenberg_4n1(1, {1}).algebra;
  const Subspace z = center(h);
  CHECK(z.rank() == 1);
  CHECK(z.contains(unit_vector(5, 0)));
  const CentralSeries cs = lower_central_series(h);
  CHECK(cs.nilpotent);
  CHECK(cs.step == 2);
  CHECK(center(su3()).rank() == 0);
  CHECK_FALSE(lower_central_series(su2()).nilpotent);
  CHECK(lower_central_series(abelian(3)).step == 1);
}

TEST_CASE("Killing form") {
  const Matrix k2 = killing_form(su2());
  CHECK(k2 == Scalar(-2) * Matrix::identity(3));
  const Matrix k3 = killing_form(su3());
  for (std::size_t i = 0; i < 6; ++i) CHECK(k3(i, i) == Scalar(-12));
  CHECK(k3(6, 6) == Scalar(-12));
  CHECK(k3(6, 7) == Scalar(6));
  CHECK(definiteness(k3) == Definiteness::NegativeDefinite);
  CHECK(killing_form(weighted_heisenberg_4n1(1, {1}).algebra).is_zero());
}

TEST_CASE("Killing form is ad-invariant") {
  const LieAlgebra l = su3();
  const Matrix b = killing_form(l);
  for (std::size_t i = 0; i < 8; ++i) {
    const Matrix ad = l.ad_basis(i);
    CHECK((ad.transpose() * b + b * ad).is_zero());
  }
}

TEST_CASE("derivation algebras") {
  CHECK(derivations(su2()).size() == 3);
  CHECK(derivations(weighted_heisenberg_2n1(1, {1}).structure.algebra).size() == 6);
  CHECK(derivations(abelian(3)).size() == 9);
  for (const auto& d : derivations(su3())) CHECK(is_derivation(su3(), d));
  CHECK(derivations(su3()).size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(is_derivation(su3(), su3().ad_basis(i)));
}

TEST_CASE("change of basis preserves the algebra") {
  std::mt19937_64 rng(test::seed() + 21);
  const LieAlgebra l = weighted_heisenberg_4n1(2, {1, 2}).algebra;
  for (int t = 0; t < 5; ++t) {
    const Matrix q = test::random_invertible(rng, 9);
    const LieAlgebra m = change_basis(l, q);
    CHECK(jacobi_check(m).empty());
    CHECK(change_basis(m, inverse(q)) == l);
    // q maps new coordinates to old, and is a homomorphism m -> l
    for (std::size_t i = 0; i < 9; i += 2) {
      for (std::size_t j = i + 1; j < 9; j += 3) CHECK(q * m.basis_bracket(i, j) == l.bracket(q.col(i), q.col(j)));
    }
  }
}

TEST_CASE("central quotient and extension are inverse") {
  const LieAlgebra h = weighted_heisenberg_4n1(1, {Scalar(3, 2)}).algebra;
  const Subspace d = Subspace::span({unit_vector(5, 1), unit_vector(5, 2), unit_vector(5, 3), unit_vector(5, 4)}, 5);
  const CentralQuotient q = quotient_by_center_line(h, unit_vector(5, 0), d);
  CHECK(q.quotient.is_abelian());
  CHECK(q.deta.get({0, 3}) == Scalar(-3));
  const LieAlgebra back = central_extension_algebra(q.quotient, q.deta);
  // xi moves from first to last
  Matrix perm(5, 5);
  for (std::size_t i = 0; i < 4; ++i) perm(i + 1, i) = 1;
  perm(0, 4) = 1;
  CHECK(change_basis(h, perm) == back);
}

TEST_CASE("extension rejects non-cocycles and non-central lines") {
  // every 2-form on su(2) is closed; e1 ^ e4 on su(2) + R is not
  KForm w2(3, 2);
  w2.set({0, 1}, 1);
  CHECK_NOTHROW(central_extension_algebra(su2(), w2));
  KForm w(4, 2);
  w.set({0, 3}, 1);
  try {
    central_extension_algebra(direct_sum(su2(), abelian(1)), w);
    FAIL("expected NotCocycle");
  } catch (const Error& e) {
    CHECK(e.code() == "NotCocycle");
  }
  try {
    quotient_by_center_line(su2(), unit_vector(3, 0), Subspace::span({unit_vector(3, 1), unit_vector(3, 2)}, 3));
    FAIL("expected NotCentral");
  } catch (const Error& e) {
    CHECK(e.code() == "NotCentral");
  }
}
