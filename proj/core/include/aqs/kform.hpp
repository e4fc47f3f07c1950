#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "aqs/linalg.hpp"
#include "aqs/scalar.hpp"

namespace aqs {

using Tuple = std::vector<std::size_t>;

std::uint64_t binomial(std::size_t n, std::size_t k);

/// Colex rank of a strictly increasing tuple among the k-subsets of {0..n-1}.
std::size_t tuple_rank(const Tuple& t);
Tuple tuple_unrank(std::size_t rank, std::size_t k);

/// Sorts `t` in place; returns the permutation sign, or 0 if an index repeats.
int canonicalize(Tuple& t);

/// Alternating k-form on an n-dimensional space, stored on increasing tuples.
///
/// The coefficient of the tuple (i_1 < ... < i_k) equals the value of the form
/// on (b_{i_1}, ..., b_{i_k}); in particular (theta^1 ^ theta^2)(b_1, b_2) = 1.
class KForm {
 public:
  KForm() = default;
  KForm(std::size_t dim, std::size_t degree);

  /// theta^{i_1} ^ ... ^ theta^{i_k} (any order; repeated indices give zero).
  static KForm basis(std::size_t dim, Tuple indices);
  /// 1-form with the given coefficients.
  static KForm covector(const Vector& coeffs);
  /// 2-form with matrix M_ij = omega(b_i, b_j); M must be antisymmetric.
  static KForm from_matrix(const Matrix& m);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  std::size_t size() const { return coeffs_.size(); }

  const Scalar& coeff_at(std::size_t rank) const { return coeffs_[rank]; }
  Scalar& coeff_at(std::size_t rank) { return coeffs_[rank]; }

  /// Value on basis vectors in the given order (sign-aware).
  Scalar get(Tuple indices) const;
  void set(Tuple indices, const Scalar& value);
  void add(Tuple indices, const Scalar& value);

  Scalar evaluate(const std::vector<Vector>& args) const;
  Scalar operator()(const Vector& x, const Vector& y) const { return evaluate({x, y}); }

  /// Matrix of a 2-form; coefficient vector of a 1-form as a 1 x n matrix.
  Matrix to_matrix() const;
  Vector to_vector() const;

  /// Nonzero terms in lexicographic tuple order.
  std::vector<std::pair<Tuple, Scalar>> terms() const;

  bool is_zero() const;
  bool uses_float() const;

  KForm operator-() const;
  friend KForm operator+(const KForm& a, const KForm& b);
  friend KForm operator-(const KForm& a, const KForm& b);
  friend KForm operator*(const Scalar& s, const KForm& f);
  friend bool operator==(const KForm& a, const KForm& b);

 private:
  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  std::vector<Scalar> coeffs_;
};

KForm wedge(const KForm& a, const KForm& b);

/// (P^* omega)(v_1, ..., v_k) = omega(P v_1, ..., P v_k).
KForm pullback(const KForm& omega, const Matrix& p);

}  // namespace aqs
