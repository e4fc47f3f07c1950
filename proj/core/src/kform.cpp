#include "aqs/kform.hpp"

#include <algorithm>
#include <stdexcept>

namespace aqs {

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t tuple_rank(const Tuple& t) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < t.size(); ++i) r += binomial(t[i], i + 1);
  return r;
}

Tuple tuple_unrank(std::size_t rank, std::size_t k) {
  Tuple t(k);
  for (std::size_t i = k; i-- > 0;) {
    std::size_t c = i;
    while (binomial(c + 1, i + 1) <= rank) ++c;
    t[i] = c;
    rank -= binomial(c, i + 1);
  }
  return t;
}

int canonicalize(Tuple& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i) {
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  }
  return sign;
}

KForm::KForm(std::size_t dim, std::size_t degree)
    : dim_(dim), degree_(degree), coeffs_(binomial(dim, degree)) {}

KForm KForm::basis(std::size_t dim, Tuple indices) {
  KForm f(dim, indices.size());
  f.set(std::move(indices), Scalar(1));
  return f;
}

KForm KForm::covector(const Vector& coeffs) {
  KForm f(coeffs.size(), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.coeffs_[i] = coeffs[i];
  return f;
}

KForm KForm::from_matrix(const Matrix& m) {
  KForm f(m.rows(), 2);
  for (std::size_t j = 1; j < m.rows(); ++j) {
    for (std::size_t i = 0; i < j; ++i) f.coeffs_[tuple_rank({i, j})] = m(i, j);
  }
  return f;
}

Scalar KForm::get(Tuple indices) const {
  if (indices.size() != degree_) throw std::invalid_argument("KForm::get: wrong arity");
  const int s = canonicalize(indices);
  if (s == 0) return Scalar(0);
  const Scalar& c = coeffs_[tuple_rank(indices)];
  return s > 0 ? c : -c;
}

void KForm::set(Tuple indices, const Scalar& value) {
  if (indices.size() != degree_) throw std::invalid_argument("KForm::set: wrong arity");
  for (auto i : indices) {
    if (i >= dim_) throw std::out_of_range("KForm::set: index out of range");
  }
  const int s = canonicalize(indices);
  if (s == 0) {
    if (!value.is_zero()) throw std::invalid_argument("KForm::set: repeated index");
    return;
  }
  coeffs_[tuple_rank(indices)] = s > 0 ? value : -value;
}

void KForm::add(Tuple indices, const Scalar& value) {
  const int s = canonicalize(indices);
  if (s == 0) return;
  auto& c = coeffs_[tuple_rank(indices)];
  c = s > 0 ? c + value : c - value;
}

Scalar KForm::evaluate(const std::vector<Vector>& args) const {
  if (args.size() != degree_) throw std::invalid_argument("KForm::evaluate: wrong arity");
  if (degree_ == 0) return coeffs_.empty() ? Scalar(0) : coeffs_[0];
  Scalar total(0);
  Matrix minor(degree_, degree_);
  for (std::size_t r = 0; r < coeffs_.size(); ++r) {
    if (coeffs_[r].is_zero()) continue;
    const Tuple t = tuple_unrank(r, degree_);
    for (std::size_t a = 0; a < degree_; ++a) {
      for (std::size_t b = 0; b < degree_; ++b) minor(a, b) = args[b][t[a]];
    }
    total += coeffs_[r] * (degree_ == 1 ? minor(0, 0) : determinant(minor));
  }
  return total;
}

Matrix KForm::to_matrix() const {
  if (degree_ != 2) throw std::invalid_argument("KForm::to_matrix: degree must be 2");
  Matrix m(dim_, dim_);
  for (std::size_t r = 0; r < coeffs_.size(); ++r) {
    if (coeffs_[r].is_zero()) continue;
    const Tuple t = tuple_unrank(r, 2);
    m(t[0], t[1]) = coeffs_[r];
    m(t[1], t[0]) = -coeffs_[r];
  }
  return m;
}

Vector KForm::to_vector() const {
  if (degree_ != 1) throw std::invalid_argument("KForm::to_vector: degree must be 1");
  return coeffs_;
}

std::vector<std::pair<Tuple, Scalar>> KForm::terms() const {
  std::vector<std::pair<Tuple, Scalar>> out;
  for (std::size_t r = 0; r < coeffs_.size(); ++r) {
    if (!coeffs_[r].is_zero()) out.emplace_back(tuple_unrank(r, degree_), coeffs_[r]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool KForm::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool KForm::uses_float() const {
  return std::any_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_float(); });
}

KForm KForm::operator-() const {
  KForm f = *this;
  for (auto& c : f.coeffs_) c = -c;
  return f;
}

namespace {
void check_compatible(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim() || a.degree() != b.degree()) {
    throw std::invalid_argument("KForm: incompatible operands");
  }
}
}  // namespace

KForm operator+(const KForm& a, const KForm& b) {
  check_compatible(a, b);
  KForm f = a;
  for (std::size_t r = 0; r < f.coeffs_.size(); ++r) f.coeffs_[r] += b.coeffs_[r];
  return f;
}

KForm operator-(const KForm& a, const KForm& b) {
  check_compatible(a, b);
  KForm f = a;
  for (std::size_t r = 0; r < f.coeffs_.size(); ++r) f.coeffs_[r] -= b.coeffs_[r];
  return f;
}

KForm operator*(const Scalar& s, const KForm& f) {
  KForm out = f;
  for (auto& c : out.coeffs_) c = s * c;
  return out;
}

bool operator==(const KForm& a, const KForm& b) {
  if (a.dim_ != b.dim_ || a.degree_ != b.degree_) return false;
  for (std::size_t r = 0; r < a.coeffs_.size(); ++r) {
    if (!(a.coeffs_[r] == b.coeffs_[r])) return false;
  }
  return true;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: ambient dimensions differ");
  const std::size_t n = a.dim();
  const std::size_t k = a.degree() + b.degree();
  if (k > n) return KForm(n, k);  // no tuples: the zero form
  KForm out(n, k);
  for (std::size_t ra = 0; ra < a.size(); ++ra) {
    if (a.coeff_at(ra).is_zero()) continue;
    const Tuple ta = tuple_unrank(ra, a.degree());
    for (std::size_t rb = 0; rb < b.size(); ++rb) {
      if (b.coeff_at(rb).is_zero()) continue;
      Tuple t = ta;
      const Tuple tb = tuple_unrank(rb, b.degree());
      t.insert(t.end(), tb.begin(), tb.end());
      out.add(std::move(t), a.coeff_at(ra) * b.coeff_at(rb));
    }
  }
  return out;
}

KForm pullback(const KForm& omega, const Matrix& p) {
  const std::size_t n = omega.dim();
  if (p.rows() != n || p.cols() != n) throw std::invalid_argument("pullback: size mismatch");
  KForm out(n, omega.degree());
  const auto cols = p.columns();
  for (std::size_t r = 0; r < out.size(); ++r) {
    const Tuple t = tuple_unrank(r, omega.degree());
    std::vector<Vector> args;
    args.reserve(t.size());
    for (auto i : t) args.push_back(cols[i]);
    out.coeff_at(r) = omega.evaluate(args);
  }
  return out;
}

}  // namespace aqs
