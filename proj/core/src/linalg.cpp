#include "aqs/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace aqs {

Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n, Scalar(0));
  v.at(i) = Scalar(1);
  return v;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(const Scalar& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool uses_float(const Vector& v) {
  return std::any_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_float(); });
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_col(c, cols[c]);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(col(c));
  return out;
}

void Matrix::set_col(std::size_t c, const Vector& v) {
  if (v.size() != rows_) throw std::invalid_argument("column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Matrix::uses_float() const {
  return std::any_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_float(); });
}

Matrix Matrix::to_float() const {
  Matrix out = *this;
  for (auto& s : out.data_) s = s.to_float();
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out(a.rows_, b.cols_);
  const auto rational = [](const Matrix& m) {
    return std::all_of(m.data_.begin(), m.data_.end(), [](const Scalar& x) { return x.is_rational(); });
  };
  if (rational(a) && rational(b)) {
    // raw mpq accumulation; the Scalar wrapper dominates otherwise
    std::vector<mpq_class> acc(a.rows_ * b.cols_);
    mpq_class t;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const mpq_class& aik = a(i, k).rational();
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const mpq_class& bkj = b(k, j).rational();
          if (sgn(bkj) == 0) continue;
          mpq_mul(t.get_mpq_t(), aik.get_mpq_t(), bkj.get_mpq_t());
          mpq_class& dst = acc[i * b.cols_ + j];
          mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), t.get_mpq_t());
        }
      }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (sgn(acc[i]) != 0) out.data_[i] = Scalar(std::move(acc[i]));
    }
    return out;
  }
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b(k, j);
        if (!bkj.is_zero()) out(i, j) += aik * bkj;
      }
    }
  }
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& m) {
  Matrix out = m;
  for (auto& x : out.data_) x = s * x;
  return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  Vector out(m.rows_, Scalar(0));
  const auto is_rational = [](const Scalar& x) { return x.is_rational(); };
  if (std::all_of(v.begin(), v.end(), is_rational) && std::all_of(m.data_.begin(), m.data_.end(), is_rational)) {
    mpq_class acc, t;
    for (std::size_t i = 0; i < m.rows_; ++i) {
      acc = 0;
      for (std::size_t j = 0; j < m.cols_; ++j) {
        const mpq_class& x = v[j].rational();
        const mpq_class& y = m(i, j).rational();
        if (sgn(x) == 0 || sgn(y) == 0) continue;
        mpq_mul(t.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
        mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), t.get_mpq_t());
      }
      if (sgn(acc) != 0) out[i] = Scalar(acc);
    }
    return out;
  }
  for (std::size_t i = 0; i < m.rows_; ++i) {
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!v[j].is_zero() && !m(i, j).is_zero()) out[i] += m(i, j) * v[j];
    }
  }
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    if (!(a.data_[i] == b.data_[i])) return false;
  }
  return true;
}

namespace {

// Pivot search in column c from row r: first nonzero in exact mode, largest
// magnitude in float mode.
std::optional<std::size_t> find_pivot(const Matrix& m, std::size_t r, std::size_t c, bool float_mode) {
  std::optional<std::size_t> best;
  double best_mag = 0.0;
  for (std::size_t i = r; i < m.rows(); ++i) {
    if (m(i, c).is_zero()) continue;
    if (!float_mode) return i;
    const double mag = std::abs(m(i, c).to_double());
    if (!best || mag > best_mag) {
      best = i;
      best_mag = mag;
    }
  }
  return best;
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace

Echelon rref(const Matrix& input) {
  Matrix m = input;
  const bool fl = m.uses_float();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const auto p = find_pivot(m, r, c, fl);
    if (!p) {
      for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = Scalar(0);
      continue;
    }
    swap_rows(m, r, *p);
    const Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    m(r, c) = Scalar(1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) {
        if (i != r) m(i, c) = Scalar(0);
        continue;
      }
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
      m(i, c) = Scalar(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& input) {
  if (input.rows() == 0 || input.cols() == 0) return 0;
  if (input.uses_float()) return rref(input).pivots.size();
  // Bareiss: every entry after step k is a (k+1)-minor, so the division is exact.
  Matrix m = input;
  Scalar prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    const auto p = find_pivot(m, r, c, false);
    if (!p) continue;
    swap_rows(m, r, *p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = Scalar(0);
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

Scalar determinant(const Matrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return Scalar(1);
  Matrix m = input;
  const bool fl = m.uses_float();
  Scalar prev(1);
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const auto p = find_pivot(m, k, k, fl);
    if (!p) return fl ? Scalar::from_double(0.0) : Scalar(0);
    if (*p != k) {
      swap_rows(m, k, *p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

Matrix nullspace(const Matrix& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v = zero_vector(m.cols());
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(basis, m.cols());
}

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: shape mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector x = zero_vector(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  const auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

Matrix independent_columns(const Matrix& m) {
  const auto e = rref(m);
  std::vector<Vector> cols;
  for (auto p : e.pivots) cols.push_back(m.col(p));
  return Matrix::from_columns(cols, m.rows());
}

bool is_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!(m(i, j) == m(j, i))) return false;
  return true;
}

Definiteness definiteness(const Matrix& sym) {
  const std::size_t n = sym.rows();
  if (n == 0) return Definiteness::Degenerate;
  if (sym.uses_float()) {
    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = sym(i, j).to_double();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    const double tau = tolerance();
    const auto& ev = es.eigenvalues();
    if ((ev.array().abs() <= tau).any()) return Definiteness::Degenerate;
    if ((ev.array() > tau).all()) return Definiteness::PositiveDefinite;
    if ((ev.array() < -tau).all()) return Definiteness::NegativeDefinite;
    return Definiteness::Indefinite;
  }
  {
    // pivots of symmetric elimination are ratios of consecutive leading minors
    Matrix a = sym;
    bool pos = true, neg = true, zero_pivot = false;
    for (std::size_t k = 0; k < n && !zero_pivot; ++k) {
      const Scalar piv = a(k, k);
      const int sg = piv.sign();
      if (sg == 0) {
        zero_pivot = true;
        break;
      }
      if (sg < 0) pos = false;
      if (sg > 0) neg = false;
      const Scalar inv = Scalar(1) / piv;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (a(i, k).is_zero()) continue;
        const Scalar f = a(i, k) * inv;
        for (std::size_t j = k + 1; j < n; ++j) {
          if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
        }
      }
    }
    if (!zero_pivot) {
      if (pos) return Definiteness::PositiveDefinite;
      if (neg) return Definiteness::NegativeDefinite;
      return Definiteness::Indefinite;
    }
  }
  bool pos = true;
  bool neg = true;
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = sym(i, j);
    const int s = determinant(lead).sign();
    if (s <= 0) pos = false;
    if (s * ((k % 2) ? -1 : 1) <= 0) neg = false;
  }
  if (pos) return Definiteness::PositiveDefinite;
  if (neg) return Definiteness::NegativeDefinite;
  return determinant(sym).is_zero() ? Definiteness::Degenerate : Definiteness::Indefinite;
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveDefinite: return "positive-definite";
    case Definiteness::NegativeDefinite: return "negative-definite";
    case Definiteness::Indefinite: return "indefinite";
    case Definiteness::Degenerate: return "degenerate";
  }
  return "unknown";
}

std::vector<Scalar> characteristic_polynomial(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = a.rows();
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k)/k
  std::vector<Scalar> c(n + 1, Scalar(0));
  c[n] = Scalar(1);
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const Matrix am = a * mk;
    Scalar tr(0);
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Scalar(static_cast<long>(k));
  }
  return c;
}

std::size_t sparse_rank(std::vector<SparseRow> rows) {
  std::map<std::size_t, SparseRow> pivots;  // leading column -> row with leading entry 1
  for (auto& row : rows) {
    std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
    while (!row.empty()) {
      const auto [lead, value] = *row.begin();
      const auto it = pivots.find(lead);
      if (it == pivots.end()) {
        const Scalar inv = Scalar(1) / value;
        for (auto& kv : row) kv.second = kv.second * inv;
        pivots.emplace(lead, std::move(row));
        break;
      }
      const Scalar f = value;
      for (const auto& [c, v] : it->second) {
        auto& slot = row[c];
        slot -= f * v;
        if (slot.is_zero()) row.erase(c);
      }
    }
  }
  return pivots.size();
}

MaxEntry max_abs_entry(const Matrix& m) {
  MaxEntry best{Scalar(0), 0, 0};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar a = m(i, j).abs();
      if (a > best.magnitude) best = {a, i, j};
    }
  }
  return best;
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i == 0 ? "[[" : " [");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << (i + 1 == m.rows() ? "]]" : "]\n");
  }
  return os.str();
}

Matrix random_unimodular(std::size_t n, std::mt19937_64& rng, int span) {
  std::uniform_int_distribution<int> entry(-span, span);
  std::uniform_int_distribution<int> coin(0, 1);
  Matrix l = Matrix::identity(n), u = Matrix::identity(n), p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = entry(rng);
      u(j, i) = entry(rng);
    }
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (std::size_t i = 0; i < n; ++i) p(perm[i], i) = coin(rng) ? 1 : -1;
  return l * u * p;
}

}  // namespace aqs
