#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "aqs/scalar.hpp"

namespace aqs {

using Vector = std::vector<Scalar>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(const Scalar& s, const Vector& v);
Scalar dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);
bool uses_float(const Vector& v);

/// Dense row-major matrix over Scalar.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;
  std::vector<Vector> columns() const;
  void set_col(std::size_t c, const Vector& v);

  Matrix transpose() const;
  bool is_zero() const;
  bool uses_float() const;
  Matrix to_float() const;

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& m);
  friend Vector operator*(const Matrix& m, const Vector& v);
  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Row-reduced echelon form; `pivots` lists the pivot column of each nonzero row.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

Echelon rref(const Matrix& m);

/// Rank by fraction-free (Bareiss) elimination in exact mode; tolerance-pivoted
/// elimination in float mode.
std::size_t rank(const Matrix& m);
Scalar determinant(const Matrix& m);

/// Columns form a basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m);
/// Some x with m x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
/// Throws std::domain_error when singular.
Matrix inverse(const Matrix& m);

/// Maximal linearly independent subset of the columns, in order.
Matrix independent_columns(const Matrix& m);

/// Definiteness of a symmetric matrix; exact mode uses leading principal minors.
enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite, Degenerate };
Definiteness definiteness(const Matrix& sym);
const char* to_string(Definiteness d);

bool is_symmetric(const Matrix& m);

/// Characteristic polynomial det(t I - m), coefficients from constant term up;
/// the leading coefficient is 1.
std::vector<Scalar> characteristic_polynomial(const Matrix& m);

/// Rank of a sparse matrix given as rows of (column -> value), exact elimination.
using SparseRow = std::map<std::size_t, Scalar>;
std::size_t sparse_rank(std::vector<SparseRow> rows);

/// Largest |entry| and its position; used for residual reports.
struct MaxEntry {
  Scalar magnitude;
  std::size_t row = 0;
  std::size_t col = 0;
};
MaxEntry max_abs_entry(const Matrix& m);

std::string to_string(const Matrix& m);

/// Dense random integer matrix of determinant +-1: L U P with unit triangular
/// L, U (entries in [-span, span]) and a signed permutation P.
Matrix random_unimodular(std::size_t n, std::mt19937_64& rng, int span = 1);

}  // namespace aqs
