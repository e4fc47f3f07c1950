#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "aqs/adapted.hpp"
#include "aqs/classifier.hpp"
#include "aqs/constructors.hpp"
#include "aqs/error.hpp"
#include "support.hpp"

using namespace aqs;

namespace {

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::vector<Scalar> sorted(std::vector<Scalar> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("psi^2 spectrum on D") {
  const auto spec = psi_squared_spectrum(weighted_heisenberg_4n1(2, {1, 2}).structures[0]);
  REQUIRE(spec.size() == 2);
  CHECK(spec[0].value == Scalar(-4));
  CHECK(spec[0].multiplicity == 4);
  CHECK(spec[1].value == Scalar(-1));
  CHECK(spec[1].multiplicity == 4);
}

TEST_CASE("adapted frame is orthonormal and satisfies the companion relations") {
  for (const auto& w : {std::vector<Scalar>{1}, std::vector<Scalar>{1, 2}, std::vector<Scalar>{1, 2, 3},
                        std::vector<Scalar>{2, 2}}) {
    const AcmStructure s = weighted_heisenberg_4n1(w.size(), w).structures[0];
    const AdaptedFrame f = adapted_frame(s);
    CHECK(f.n == w.size());
    CHECK(frame_checks(s, f).ok());
    CHECK(coframe_expansion_check(s, f).ok());
    CHECK(std::is_sorted(f.weights.rbegin(), f.weights.rend()));
  }
}

TEST_CASE("adapted frame on a conjugated structure involves square roots") {
  std::mt19937_64 rng(test::seed() + 40);
  const AcmStructure s = change_basis(weighted_heisenberg_4n1(1, {3}).structures[1], test::random_invertible(rng, 5));
  const AdaptedFrame f = adapted_frame(s);
  CHECK(frame_checks(s, f).ok());
  CHECK(coframe_expansion_check(s, f).ok());
  CHECK(f.weights[0] == Scalar(3));
}

TEST_CASE("aqS classifier recovers weights with identity on normal forms") {
  const HeisenbergIso i5 = classify_nilpotent_aqs(weighted_heisenberg_4n1(1, {1}).structures[0]);
  CHECK(i5.f == Matrix::identity(5));
  CHECK(i5.verification.ok());
  const HeisenbergIso i9 = classify_nilpotent_aqs(weighted_heisenberg_4n1(2, {1, 2}).structures[0]);
  CHECK(i9.weights == std::vector<Scalar>{2, 1});
  CHECK(i9.family == HeisenbergFamily::H4n1);
}

TEST_CASE("phi_2 also classifies onto (h, phi_1)") {
  const HeisenbergIso iso = classify_nilpotent_aqs(weighted_heisenberg_4n1(2, {Scalar(1, 2), 3}).structures[1]);
  CHECK(sorted(iso.weights) == std::vector<Scalar>{Scalar(1, 2), 3});
  CHECK(iso.verification.ok());
}

TEST_CASE("aqS classifier round trip on random conjugates") {
  std::mt19937_64 rng(test::seed() + 41);
  for (const auto& w : {std::vector<Scalar>{1, 2}, std::vector<Scalar>{1, 2, 3}}) {
    const AcmStructure s = weighted_heisenberg_4n1(w.size(), w).structures[0];
    for (int t = 0; t < 10; ++t) {
      const Matrix q = test::random_invertible(rng, s.dim());
      const HeisenbergIso iso = classify_nilpotent_aqs(change_basis(s, q));
      CHECK(sorted(iso.weights) == sorted(w));
      CHECK(iso.verification.ok());
    }
  }
}

TEST_CASE("weights are square roots of |psi^2| eigenvalues") {
  std::mt19937_64 rng(test::seed() + 42);
  const std::vector<Scalar> w{Scalar(1, 3), Scalar(5, 2)};
  const AcmStructure s = change_basis(weighted_heisenberg_4n1(2, w).structures[0], test::random_invertible(rng, 9));
  const auto spec = psi_squared_spectrum(s);
  const HeisenbergIso iso = classify_nilpotent_aqs(s);
  REQUIRE(spec.size() == iso.weights.size());
  for (std::size_t i = 0; i < spec.size(); ++i) CHECK(iso.weights[i] * iso.weights[i] == -spec[i].value);
}

TEST_CASE("qS classifier") {
  const HeisenbergIso i3 = classify_nilpotent_qs(weighted_heisenberg_2n1(1, {1}).structure);
  CHECK(i3.f == Matrix::identity(3));
  const HeisenbergIso i5 = classify_nilpotent_qs(weighted_heisenberg_2n1(2, {1, 3}).structure);
  CHECK(i5.weights == std::vector<Scalar>{3, 1});
  std::mt19937_64 rng(test::seed() + 43);
  const AcmStructure s = weighted_heisenberg_2n1(2, {Scalar(2), Scalar(1, 2)}, {1, -1}).structure;
  for (int t = 0; t < 5; ++t) {
    const HeisenbergIso iso = classify_nilpotent_qs(change_basis(s, test::random_invertible(rng, 5)));
    CHECK(sorted(iso.weights) == std::vector<Scalar>{Scalar(1, 2), 2});
    CHECK(iso.verification.ok());
  }
}

TEST_CASE("classifier preconditions") {
  CHECK(code_of([] { classify_nilpotent_aqs(weighted_heisenberg_4n1(1, {0}).structures[0]); }) == "NotMaximalRank");
  CHECK(code_of([] { classify_nilpotent_aqs(weighted_heisenberg_4n1(2, {1, 0}).structures[0]); }) == "NotMaximalRank");
  CHECK(code_of([] { classify_nilpotent_aqs(weighted_heisenberg_4n1(1, {1}).structures[2]); }) == "NotAqs");
  CHECK(code_of([] { classify_nilpotent_qs(weighted_heisenberg_4n1(1, {1}).structures[0]); }) == "NotQs");
  AcmStructure s;
  s.algebra = direct_sum(su2(), abelian(2));
  s.phi = Matrix(5, 5);
  s.phi(1, 0) = 1;
  s.phi(0, 1) = -1;
  s.phi(4, 2) = 1;
  s.phi(2, 4) = -1;
  s.xi = unit_vector(5, 3);
  s.eta = unit_vector(5, 3);
  s.metric = Matrix::identity(5);
  REQUIRE(validate_acm(s).ok());
  CHECK(code_of([&] { classify_nilpotent_aqs(s); }) == "NotNilpotent");
}

TEST_CASE("surd weights stay exact") {
  const AcmStructure s = weighted_heisenberg_4n1(1, {Scalar::sqrt(2)}).structures[0];
  const auto spec = psi_squared_spectrum(s);
  CHECK(spec[0].value == Scalar(-2));
  CHECK(classify_nilpotent_aqs(s).weights[0] == Scalar::sqrt(2));
}

TEST_CASE("irrational spectrum is rejected in exact mode and handled in float mode") {
  // invariant cocycle k(., J S .) with S Hermitian of eigenvalues (3 +- sqrt 5)/2;
  // the bracket is -omega xi, so the weights are half of those
  const KahlerLieAlgebra h = standard_kahler(2);
  Matrix sm(4, 4);
  sm(0, 0) = 1, sm(2, 0) = 1, sm(0, 2) = 1, sm(2, 2) = 2;
  sm(1, 1) = 1, sm(3, 1) = 1, sm(1, 3) = 1, sm(3, 3) = 2;
  REQUIRE(sm * h.j == h.j * sm);
  const Cocycle c = make_cocycle(h, KForm::from_matrix(h.k * h.j * sm));
  CHECK(c.type == Invariance::Invariant);
  const AcmStructure s = central_extension(h, c);
  CHECK(code_of([&] { classify_nilpotent_qs(s); }) == "IrrationalSpectrum");

  AcmStructure f = s;
  f.phi = s.phi.to_float();
  f.metric = s.metric.to_float();
  const HeisenbergIso iso = classify_nilpotent_qs(f);
  REQUIRE(iso.weights.size() == 2);
  CHECK(std::abs(iso.weights[0].to_double() - (3 + std::sqrt(5.0)) / 4) < 1e-9);
  CHECK(std::abs(iso.weights[1].to_double() - (3 - std::sqrt(5.0)) / 4) < 1e-9);
}

TEST_CASE("float mode classification within tolerance") {
  AcmStructure s = weighted_heisenberg_4n1(2, {1, 2}).structures[0];
  std::mt19937_64 rng(test::seed() + 44);
  s = change_basis(s, test::random_invertible(rng, 9));
  AcmStructure f = s;
  f.phi = s.phi.to_float();
  f.metric = s.metric.to_float();
  const HeisenbergIso iso = classify_nilpotent_aqs(f);
  REQUIRE(iso.weights.size() == 2);
  CHECK(std::abs(iso.weights[0].to_double() - 2.0) < 1e-9);
  CHECK(std::abs(iso.weights[1].to_double() - 1.0) < 1e-9);
  CHECK(iso.verification.ok());
}

TEST_CASE("Reeb field is determined by eta and d eta at maximal rank") {
  CHECK(reeb_uniqueness_check(weighted_heisenberg_4n1(2, {1, 2}).structures[0]));
  CHECK_FALSE(reeb_uniqueness_check(weighted_heisenberg_4n1(2, {1, 0}).structures[0]));
}
