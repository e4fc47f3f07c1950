#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "aqs/acm.hpp"
#include "aqs/kform.hpp"
#include "aqs/lie_algebra.hpp"

namespace aqs {

/// h^{4n+1}_lambda with basis (xi, tau_1..tau_4n), xi at index 0, and the three
/// structures phi_1, phi_2, phi_3 sharing xi, eta and the orthonormal metric.
struct Heisenberg4 {
  std::size_t n = 0;
  std::vector<Scalar> weights;
  LieAlgebra algebra;
  std::array<AcmStructure, 3> structures;
};
Heisenberg4 weighted_heisenberg_4n1(std::size_t n, const std::vector<Scalar>& weights);

/// phi_i on h^{4n+1} in the basis above; (i,j,k) an even permutation of (1,2,3).
Matrix heisenberg_phi(std::size_t n, int i);

/// h^{2n+1}_lambda with basis (xi, tau_1..tau_2n); `signs` (default all +1)
/// orients phi = sum_r s_r (theta_r (x) tau_{n+r} - theta_{n+r} (x) tau_r).
struct Heisenberg2 {
  std::size_t n = 0;
  std::vector<Scalar> weights;
  AcmStructure structure;
};
Heisenberg2 weighted_heisenberg_2n1(std::size_t n, const std::vector<Scalar>& weights,
                                    const std::vector<int>& signs = {});

LieAlgebra abelian(std::size_t n);
/// su(2): [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e2.
LieAlgebra su2();
/// su(3) on the anti-Hermitian basis E_jk - E_kj, i(E_jk + E_kj) (j<k), i diag(1,-1,0),
/// i diag(0,1,-1); the last two vectors span the diagonal torus.
LieAlgebra su3();
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Kahler Lie algebra (h, J, k).
struct KahlerLieAlgebra {
  LieAlgebra algebra;
  Matrix j;
  Matrix k;
  KForm kahler_form() const;  // Omega = k(., J .)
};
/// Flat R^{2m} with J e_{2r-1} = e_{2r} and k the identity.
KahlerLieAlgebra standard_kahler(std::size_t m);
CheckReport validate_kahler(const KahlerLieAlgebra& h);

enum class Invariance { Invariant, AntiInvariant, Neither };
const char* to_string(Invariance t);

struct InvarianceReport {
  Invariance type = Invariance::Neither;
  KForm invariant_part;  // (omega + J^*omega) / 2
  KForm anti_part;       // (omega - J^*omega) / 2
};
InvarianceReport invariance_type(const KahlerLieAlgebra& h, const KForm& omega);

struct Cocycle {
  KForm omega;
  Invariance type = Invariance::Neither;
};
/// Throws Precondition/NotCocycle when d omega != 0.
Cocycle make_cocycle(const KahlerLieAlgebra& h, const KForm& omega);

/// g = h + R xi with xi last, eta dual to xi, phi = J + 0 and g = k + 1.
AcmStructure central_extension(const KahlerLieAlgebra& h, const Cocycle& omega);

}  // namespace aqs
