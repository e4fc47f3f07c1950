#include "aqs/lie_algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "aqs/error.hpp"

namespace aqs {

Subspace Subspace::span(const std::vector<Vector>& vectors, std::size_t ambient_dim) {
  if (vectors.empty()) return {Matrix(ambient_dim, 0)};
  return {independent_columns(Matrix::from_columns(vectors, ambient_dim))};
}

Subspace Subspace::from_matrix(const Matrix& columns) { return {independent_columns(columns)}; }

bool Subspace::contains(const Vector& v) const {
  if (is_zero(v)) return true;
  if (rank() == 0) return false;
  return solve(basis, v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.vectors()) {
    if (!contains(v)) return false;
  }
  return true;
}

LieAlgebra::LieAlgebra(std::size_t dim, std::vector<std::string> names)
    : dim_(dim), names_(std::move(names)) {
  if (names_.empty()) {
    for (std::size_t i = 0; i < dim_; ++i) names_.push_back("e" + std::to_string(i + 1));
  }
  if (names_.size() != dim_) throw std::invalid_argument("LieAlgebra: basis name count mismatch");
}

LieAlgebra::LieAlgebra(std::size_t dim, BracketTable brackets, std::vector<std::string> names)
    : LieAlgebra(dim, std::move(names)) {
  for (auto& [key, v] : brackets) {
    auto [i, j] = key;
    if (i >= dim_ || j >= dim_ || v.size() != dim_) {
      throw std::invalid_argument("LieAlgebra: bracket index or length out of range");
    }
    if (is_zero(v)) continue;
    if (i == j) throw std::invalid_argument("LieAlgebra: nonzero [b_i, b_i]");
    if (i > j) {
      std::swap(i, j);
      v = Scalar(-1) * v;
    }
    auto [it, inserted] = brackets_.emplace(std::make_pair(i, j), v);
    if (!inserted) throw std::invalid_argument("LieAlgebra: bracket given twice");
  }
}

Scalar LieAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  if (i == j) return Scalar(0);
  const bool flip = i > j;
  const auto it = brackets_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == brackets_.end()) return Scalar(0);
  return flip ? -it->second[k] : it->second[k];
}

Vector LieAlgebra::basis_bracket(std::size_t i, std::size_t j) const {
  if (i == j) return zero_vector(dim_);
  const bool flip = i > j;
  const auto it = brackets_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == brackets_.end()) return zero_vector(dim_);
  return flip ? Scalar(-1) * it->second : it->second;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw std::invalid_argument("bracket: dimension mismatch");
  }
  if (rational_table()) {
    const auto rat = [](const Scalar& v) { return v.is_rational(); };
    if (std::all_of(x.begin(), x.end(), rat) && std::all_of(y.begin(), y.end(), rat)) return ad(x) * y;
  }
  Vector out = zero_vector(dim_);
  for (const auto& [key, v] : brackets_) {
    const auto [i, j] = key;
    const Scalar c = x[i] * y[j] - x[j] * y[i];
    if (c.is_zero()) continue;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (!v[k].is_zero()) out[k] += c * v[k];
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("ad: dimension mismatch");
  Matrix m(dim_, dim_);
  if (std::all_of(x.begin(), x.end(), [](const Scalar& v) { return v.is_rational(); }) && !uses_float() &&
      rational_table()) {
    std::vector<mpq_class> acc(dim_ * dim_);
    mpq_class t;
    for (const auto& [key, v] : brackets_) {
      const auto [i, j] = key;
      const mpq_class& xi = x[i].rational();
      const mpq_class& xj = x[j].rational();
      const bool ni = sgn(xi) != 0, nj = sgn(xj) != 0;
      if (!ni && !nj) continue;
      for (std::size_t k = 0; k < dim_; ++k) {
        const mpq_class& c = v[k].rational();
        if (sgn(c) == 0) continue;
        if (ni) {
          mpq_mul(t.get_mpq_t(), xi.get_mpq_t(), c.get_mpq_t());
          mpq_add(acc[k * dim_ + j].get_mpq_t(), acc[k * dim_ + j].get_mpq_t(), t.get_mpq_t());
        }
        if (nj) {
          mpq_mul(t.get_mpq_t(), xj.get_mpq_t(), c.get_mpq_t());
          mpq_sub(acc[k * dim_ + i].get_mpq_t(), acc[k * dim_ + i].get_mpq_t(), t.get_mpq_t());
        }
      }
    }
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c)
        if (sgn(acc[r * dim_ + c]) != 0) m(r, c) = Scalar(std::move(acc[r * dim_ + c]));
    return m;
  }
  for (const auto& [key, v] : brackets_) {
    const auto [i, j] = key;
    const bool xi = !x[i].is_zero(), xj = !x[j].is_zero();
    if (!xi && !xj) continue;
    for (std::size_t k = 0; k < dim_; ++k) {
      if (v[k].is_zero()) continue;
      if (xi) m(k, j) += x[i] * v[k];
      if (xj) m(k, i) -= x[j] * v[k];
    }
  }
  return m;
}

bool LieAlgebra::rational_table() const {
  for (const auto& [key, v] : brackets_) {
    for (const auto& c : v) {
      if (!c.is_rational()) return false;
    }
  }
  return true;
}

Matrix LieAlgebra::ad_basis(std::size_t i) const { return ad(unit_vector(dim_, i)); }

bool LieAlgebra::uses_float() const {
  return std::any_of(brackets_.begin(), brackets_.end(),
                     [](const auto& kv) { return aqs::uses_float(kv.second); });
}

bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    for (std::size_t j = i + 1; j < a.dim_; ++j) {
      const Vector d = a.basis_bracket(i, j) - b.basis_bracket(i, j);
      if (!is_zero(d)) return false;
    }
  }
  return true;
}

LieAlgebra change_basis(const LieAlgebra& l, const Matrix& q) { return change_basis(l, q, inverse(q)); }

LieAlgebra change_basis(const LieAlgebra& l, const Matrix& q, const Matrix& qinv) {
  const std::size_t n = l.dim();
  const auto cols = q.columns();
  LieAlgebra::BracketTable table;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    // column b of qinv ad(q e_a) q is [e_a, e_b] in the new basis
    const Matrix m = qinv * l.ad(cols[a]) * q;
    for (std::size_t b = a + 1; b < n; ++b) {
      Vector v = m.col(b);
      if (!is_zero(v)) table.emplace(std::make_pair(a, b), std::move(v));
    }
  }
  return LieAlgebra(n, std::move(table), l.basis_names());
}

std::vector<JacobiViolation> jacobi_check(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<JacobiViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vector ei = unit_vector(n, i), ej = unit_vector(n, j), ek = unit_vector(n, k);
        const Vector r = l.bracket(l.basis_bracket(i, j), ek) + l.bracket(l.basis_bracket(j, k), ei) +
                         l.bracket(l.basis_bracket(k, i), ej);
        if (!is_zero(r)) out.push_back({i, j, k, r});
      }
    }
  }
  return out;
}

void require_jacobi(const LieAlgebra& l) {
  const auto v = jacobi_check(l);
  if (v.empty()) return;
  std::ostringstream os;
  os << "Jacobi identity fails on (" << l.basis_names()[v[0].i] << ", " << l.basis_names()[v[0].j]
     << ", " << l.basis_names()[v[0].k] << "); " << v.size() << " violating triple(s)";
  throw parse_error("JacobiViolation", os.str());
}

Subspace center(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  // stack ad_{b_i} acting on the unknown z: rows [b_i, z] = 0
  Matrix stacked(n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix adi = l.ad_basis(i);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) stacked(i * n + r, c) = adi(r, c);
    }
  }
  return {nullspace(stacked)};
}

Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<Vector> out;
  for (const auto& u : a.vectors()) {
    for (const auto& v : b.vectors()) {
      Vector w = l.bracket(u, v);
      if (!is_zero(w)) out.push_back(std::move(w));
    }
  }
  return Subspace::span(out, l.dim());
}

CentralSeries lower_central_series(const LieAlgebra& l) {
  CentralSeries cs;
  const Subspace g = Subspace::full(l.dim());
  cs.terms.push_back(g);
  while (true) {
    Subspace next = bracket_span(l, g, cs.terms.back());
    const bool stable = next.rank() == cs.terms.back().rank();
    const bool zero = next.rank() == 0;
    if (!stable || zero) cs.terms.push_back(next);
    if (zero) {
      cs.nilpotent = true;
      cs.step = cs.terms.size() - 1;
      if (l.dim() == 0) cs.step = 0;
      break;
    }
    if (stable) break;
  }
  return cs;
}

Matrix killing_form(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(l.ad_basis(i));
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Scalar tr(0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) tr += ads[i](r, s) * ads[j](s, r);
      }
      b(i, j) = tr;
      b(j, i) = tr;
    }
  }
  return b;
}

std::vector<Matrix> derivations(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  // unknown D_{mk} sits at column m * n + k
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        Vector row = zero_vector(n * n);
        // D[b_i, b_j] component m
        for (std::size_t k = 0; k < n; ++k) row[m * n + k] += l.structure_constant(i, j, k);
        // -[D b_i, b_j] - [b_i, D b_j], component m
        for (std::size_t p = 0; p < n; ++p) {
          const Scalar a = l.structure_constant(p, j, m);
          if (!a.is_zero()) row[p * n + i] -= a;
          const Scalar b = l.structure_constant(i, p, m);
          if (!b.is_zero()) row[p * n + j] -= b;
        }
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
    }
  }
  Matrix system = rows.empty() ? Matrix(1, n * n) : Matrix::from_rows(rows, n * n);
  const Matrix ns = nullspace(system);
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < ns.cols(); ++c) {
    Matrix d(n, n);
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < n; ++k) d(m, k) = ns(m * n + k, c);
    }
    out.push_back(std::move(d));
  }
  return out;
}

bool is_derivation(const LieAlgebra& l, const Matrix& d) {
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vector ei = unit_vector(n, i), ej = unit_vector(n, j);
      const Vector r = d * l.basis_bracket(i, j) - l.bracket(d * ei, ej) - l.bracket(ei, d * ej);
      if (!is_zero(r)) return false;
    }
  }
  return true;
}

CentralQuotient quotient_by_center_line(const LieAlgebra& l, const Vector& xi, const Subspace& d) {
  const std::size_t n = l.dim();
  if (xi.size() != n || d.ambient_dim() != n) throw std::invalid_argument("quotient: size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_zero(l.bracket(xi, unit_vector(n, i)))) {
      throw precondition_error("NotCentral", "xi is not central");
    }
  }
  const std::size_t m = d.rank();
  if (m + 1 != n) throw precondition_error("NotComplementary", "D must have codimension 1");
  auto cols = d.vectors();
  cols.push_back(xi);
  const Matrix frame = Matrix::from_columns(cols, n);
  if (rank(frame) != n) throw precondition_error("NotComplementary", "xi lies in D");
  const Matrix finv = inverse(frame);

  LieAlgebra::BracketTable table;
  KForm deta(m, 2);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Vector w = finv * l.bracket(cols[a], cols[b]);
      Vector head(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m));
      if (!is_zero(head)) table.emplace(std::make_pair(a, b), std::move(head));
      deta.set({a, b}, -w[m]);
    }
  }
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) names.push_back("d" + std::to_string(a + 1));
  return {LieAlgebra(m, std::move(table), std::move(names)), std::move(deta)};
}

LieAlgebra central_extension_algebra(const LieAlgebra& h, const KForm& omega, const std::string& xi_name) {
  const std::size_t m = h.dim();
  if (omega.dim() != m || omega.degree() != 2) {
    throw std::invalid_argument("central_extension_algebra: omega must be a 2-form on h");
  }
  LieAlgebra::BracketTable table;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      Vector v = h.basis_bracket(a, b);
      v.push_back(-omega.get({a, b}));
      if (!is_zero(v)) table.emplace(std::make_pair(a, b), std::move(v));
    }
  }
  auto names = h.basis_names();
  names.push_back(xi_name);
  LieAlgebra g(m + 1, std::move(table), std::move(names));
  if (!jacobi_check(g).empty()) {
    throw precondition_error("NotCocycle", "omega is not a 2-cocycle on h");
  }
  return g;
}

}  // namespace aqs
