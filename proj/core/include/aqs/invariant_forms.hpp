#pragma once

#include <cstddef>
#include <vector>

#include "aqs/acm.hpp"
#include "aqs/lie_algebra.hpp"

namespace aqs {

/// g = k + m with m the Killing-orthogonal complement of k.
struct ReductiveSplit {
  LieAlgebra g;
  Subspace k;
  Subspace m;
  Matrix killing;

  std::size_t m_dim() const { return m.rank(); }
  /// Coordinates of v in the basis (k | m).
  Vector k_coords(const Vector& v) const;
  Vector m_coords(const Vector& v) const;
  /// [x, y] projected to m, in m coordinates (x, y given in m coordinates).
  Vector m_bracket(const Vector& x, const Vector& y) const;
  /// ad_u restricted to m, in m coordinates.
  Matrix ad_on_m(const Vector& u) const;

  Matrix coords;  // inverse of (k | m)
};

/// Centralizer of the abelian subalgebra S.
Subspace centralizer_of_torus(const LieAlgebra& g, const Subspace& s);
/// Center of the subalgebra k.
Subspace subalgebra_center(const LieAlgebra& g, const Subspace& k);
/// k equals the centralizer of its own center.
bool is_torus_centralizer(const LieAlgebra& g, const Subspace& k);

ReductiveSplit reductive_split(const LieAlgebra& g, const Subspace& k);

/// Closed ad(k)-invariant 2-forms on m, as forms in m coordinates; a basis.
std::vector<KForm> invariant_closed_2forms(const ReductiveSplit& r);

struct MomentElement {
  Vector z;  // ambient coordinates, lies in the center of k
  CheckReport checks;
};
/// Z in z(k) with omega(X, Y) = B([X, Y], Z) = B([Z, X], Y) on m.
MomentElement moment_element(const ReductiveSplit& r, const KForm& omega);
/// omega(X, Y) = B([X, Y], Z) on m.
KForm form_from_moment(const ReductiveSplit& r, const Vector& z);

struct Type11Report {
  CheckReport j_checks;        // J^2 = -I, equivariance, integrability
  CheckReport omega_checks;    // omega(JX, JY) - omega(X, Y)
  std::size_t anti_invariant_rank = 0;  // of the projected solution space
  bool j_ok() const { return j_checks.ok(); }
  bool ok() const { return j_checks.ok() && omega_checks.ok() && anti_invariant_rank == 0; }
};
/// `j` acts on m coordinates; `solutions` is projected to its J-anti-invariant part.
Type11Report type_11_check(const ReductiveSplit& r, const KForm& omega, const Matrix& j,
                           const std::vector<KForm>& solutions = {});
CheckReport complex_structure_checks(const ReductiveSplit& r, const Matrix& j);

/// For dim m = 2: the two candidates +-R/sqrt(c) with R = ad_U on m, R^2 = -c I.
std::vector<Matrix> planar_complex_structures(const ReductiveSplit& r);

/// Extension of omega by zero on k, as an endomorphism D with B(DX, Y) = omega(X, Y).
Matrix extension_endomorphism(const ReductiveSplit& r, const KForm& omega);

}  // namespace aqs
