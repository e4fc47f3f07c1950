#include "aqs/exterior.hpp"

#include <stdexcept>

namespace aqs {

namespace {

// d of the basis form theta^{t_0} ^ ... ^ theta^{t_{k-1}}, accumulated into `out`
// with weight w.  d theta^m = -sum_{i<j} c_ij^m theta^i ^ theta^j.
template <class Sink>
void d_basis(const LieAlgebra& l, const Tuple& t, const Scalar& w, Sink&& sink) {
  const std::size_t k = t.size();
  for (std::size_t a = 0; a < k; ++a) {
    const std::size_t m = t[a];
    const Scalar sa = (a % 2 == 0) ? -w : w;
    for (const auto& [key, v] : l.brackets()) {
      if (v[m].is_zero()) continue;
      Tuple u;
      u.reserve(k + 1);
      u.insert(u.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(a));
      u.push_back(key.first);
      u.push_back(key.second);
      u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(a) + 1, t.end());
      const int s = canonicalize(u);
      if (s == 0) continue;
      sink(u, s > 0 ? sa * v[m] : -(sa * v[m]));
    }
  }
}

}  // namespace

KForm ce_d(const LieAlgebra& l, const KForm& omega) {
  if (omega.dim() != l.dim()) throw std::invalid_argument("ce_d: ambient dimension mismatch");
  KForm out(l.dim(), omega.degree() + 1);
  if (omega.degree() + 1 > l.dim()) return out;
  for (std::size_t r = 0; r < omega.size(); ++r) {
    if (omega.coeff_at(r).is_zero()) continue;
    d_basis(l, tuple_unrank(r, omega.degree()), omega.coeff_at(r),
            [&](const Tuple& u, const Scalar& c) { out.coeff_at(tuple_rank(u)) += c; });
  }
  return out;
}

Scalar ce_d_evaluate(const LieAlgebra& l, const KForm& omega, const std::vector<Vector>& args) {
  const std::size_t k1 = args.size();
  if (k1 != omega.degree() + 1) throw std::invalid_argument("ce_d_evaluate: wrong arity");
  Scalar total(0);
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = i + 1; j < k1; ++j) {
      std::vector<Vector> rest{l.bracket(args[i], args[j])};
      for (std::size_t r = 0; r < k1; ++r) {
        if (r != i && r != j) rest.push_back(args[r]);
      }
      const Scalar v = omega.evaluate(rest);
      total += ((i + j) % 2 == 0) ? v : -v;
    }
  }
  return total;
}

std::vector<SparseRow> ce_d_columns(const LieAlgebra& l, std::size_t k) {
  const std::size_t n = l.dim();
  std::vector<SparseRow> cols;
  if (k + 1 > n) return cols;
  const std::size_t count = binomial(n, k);
  cols.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    SparseRow col;
    d_basis(l, tuple_unrank(r, k), Scalar(1), [&](const Tuple& u, const Scalar& c) {
      auto& e = col[tuple_rank(u)];
      e += c;
    });
    for (auto it = col.begin(); it != col.end();) {
      it = it->second.is_zero() ? col.erase(it) : std::next(it);
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

namespace {
std::size_t d_rank(const LieAlgebra& l, std::size_t k) {
  if (k + 1 > l.dim()) return 0;
  return sparse_rank(ce_d_columns(l, k));
}
}  // namespace

std::size_t ce_betti(const LieAlgebra& l, std::size_t k) {
  const std::size_t n = l.dim();
  if (k > n) throw std::invalid_argument("ce_betti: degree exceeds dimension");
  const std::size_t rk = d_rank(l, k);
  const std::size_t rk_prev = k == 0 ? 0 : d_rank(l, k - 1);
  return binomial(n, k) - rk - rk_prev;
}

std::vector<std::size_t> ce_betti_all(const LieAlgebra& l) {
  const std::size_t n = l.dim();
  std::vector<std::size_t> ranks(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) ranks[k] = d_rank(l, k);
  std::vector<std::size_t> b(n + 1);
  for (std::size_t k = 0; k <= n; ++k) b[k] = binomial(n, k) - ranks[k] - (k == 0 ? 0 : ranks[k - 1]);
  return b;
}

KForm wedge_power(const KForm& two_form, std::size_t p) {
  KForm acc(two_form.dim(), 0);
  acc.coeff_at(0) = Scalar(1);
  for (std::size_t i = 0; i < p; ++i) acc = wedge(acc, two_form);
  return acc;
}

EtaRank rank_of_eta(const LieAlgebra& l, const KForm& eta) {
  if (eta.degree() != 1 || eta.dim() != l.dim()) throw std::invalid_argument("rank_of_eta: eta must be a 1-form");
  if (eta.is_zero()) throw std::invalid_argument("rank_of_eta: eta is zero");
  // (d eta)^s != 0 exactly up to half the matrix rank, and eta ^ (d eta)^s != 0
  // exactly when eta is outside the row space of d eta
  const Matrix m = ce_d(l, eta).to_matrix();
  const std::size_t rk = rank(m);
  EtaRank r;
  r.power = rk / 2;
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  rows.push_back(eta.to_vector());
  r.odd = rank(Matrix::from_rows(rows, l.dim())) > rk;
  r.rank = 2 * r.power + (r.odd ? 1 : 0);
  r.maximal = r.rank == l.dim();
  return r;
}

}  // namespace aqs
