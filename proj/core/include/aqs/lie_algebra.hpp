#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "aqs/kform.hpp"
#include "aqs/linalg.hpp"

namespace aqs {

/// Linear subspace of coordinate space, given by independent basis columns.
struct Subspace {
  Matrix basis;  // ambient_dim x rank

  static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim);
  static Subspace from_matrix(const Matrix& columns);
  static Subspace full(std::size_t n) { return {Matrix::identity(n)}; }

  std::size_t rank() const { return basis.cols(); }
  std::size_t ambient_dim() const { return basis.rows(); }
  std::vector<Vector> vectors() const { return basis.columns(); }
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
};

/// Finite-dimensional real Lie algebra given by structure constants.
///
/// Only brackets [b_i, b_j] with i < j are stored; [b_j, b_i] is implied.  The
/// value is immutable once constructed; Jacobi is checked separately.
class LieAlgebra {
 public:
  using BracketTable = std::map<std::pair<std::size_t, std::size_t>, Vector>;

  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t dim, std::vector<std::string> names = {});
  /// Pairs with i > j are stored negated; zero entries are dropped.
  LieAlgebra(std::size_t dim, BracketTable brackets, std::vector<std::string> names = {});

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const BracketTable& brackets() const { return brackets_; }

  /// c[i][j][k]: coefficient of b_k in [b_i, b_j].
  Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const;
  Vector basis_bracket(std::size_t i, std::size_t j) const;
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad_x = [x, .].
  Matrix ad(const Vector& x) const;
  Matrix ad_basis(std::size_t i) const;

  bool is_abelian() const { return brackets_.empty(); }
  bool uses_float() const;

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b);

 private:
  bool rational_table() const;

  std::size_t dim_ = 0;
  BracketTable brackets_;
  std::vector<std::string> names_;
};

/// New structure constants after the change of basis b'_j = sum_i q_ij b_i.
LieAlgebra change_basis(const LieAlgebra& l, const Matrix& q);
/// Same with q^{-1} supplied by the caller.
LieAlgebra change_basis(const LieAlgebra& l, const Matrix& q, const Matrix& qinv);

struct JacobiViolation {
  std::size_t i, j, k;  // i < j < k
  Vector residual;      // [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]
};
std::vector<JacobiViolation> jacobi_check(const LieAlgebra& l);
/// Throws Parse/JacobiViolation listing the first violating triple.
void require_jacobi(const LieAlgebra& l);

Subspace center(const LieAlgebra& l);

struct CentralSeries {
  std::vector<Subspace> terms;  // g, [g,g], [g,[g,g]], ... until stable
  bool nilpotent = false;
  std::size_t step = 0;  // number of nonzero terms when nilpotent (abelian: 1)
};
CentralSeries lower_central_series(const LieAlgebra& l);

/// Subspace spanned by [u, v] for u in a, v in b.
Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b);

Matrix killing_form(const LieAlgebra& l);

/// Basis of Der(l) as N x N matrices.
std::vector<Matrix> derivations(const LieAlgebra& l);
bool is_derivation(const LieAlgebra& l, const Matrix& d);

/// Splitting of l along a central line R xi and a complement D.
struct CentralQuotient {
  LieAlgebra quotient;  // bracket [X,Y]_D in the basis of D
  KForm deta;           // d eta restricted to D, with eta(xi) = 1, eta(D) = 0
};
/// [X,Y] = [X,Y]_D - d eta(X,Y) xi for X, Y in D.
CentralQuotient quotient_by_center_line(const LieAlgebra& l, const Vector& xi, const Subspace& d);

/// h + R xi with [X,Y] = [X,Y]_h - omega(X,Y) xi and xi central; xi is the last
/// basis vector.  omega must be a 2-cocycle on h.
LieAlgebra central_extension_algebra(const LieAlgebra& h, const KForm& omega,
                                     const std::string& xi_name = "xi");

}  // namespace aqs
