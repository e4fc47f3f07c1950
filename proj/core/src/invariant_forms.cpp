#include "aqs/invariant_forms.hpp"

#include <sstream>

#include "aqs/error.hpp"

namespace aqs {

namespace {

Matrix hstack(const Matrix& a, const Matrix& b, std::size_t rows) {
  std::vector<Vector> cols = a.columns();
  for (auto& c : b.columns()) cols.push_back(std::move(c));
  return Matrix::from_columns(cols, rows);
}

// Index of the unknown omega_{ab}, a < b, among r(r-1)/2 unknowns.
std::size_t pair_index(std::size_t a, std::size_t b) { return tuple_rank({a, b}); }

// Row of the linear functional omega |-> omega(x, y) in the pair unknowns.
Vector pair_functional(const Vector& x, const Vector& y) {
  const std::size_t r = x.size();
  Vector row = zero_vector(r * (r - 1) / 2);
  for (std::size_t a = 0; a < r; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < r; ++b) {
      if (a == b || y[b].is_zero()) continue;
      const Scalar v = x[a] * y[b];
      if (a < b) {
        row[pair_index(a, b)] += v;
      } else {
        row[pair_index(b, a)] -= v;
      }
    }
  }
  return row;
}

KForm form_from_unknowns(std::size_t r, const Vector& w) {
  KForm f(r, 2);
  for (std::size_t i = 0; i < w.size(); ++i) f.coeff_at(i) = w[i];
  return f;
}

void require_m_form(const ReductiveSplit& r, const KForm& omega) {
  if (omega.degree() != 2 || omega.dim() != r.m_dim()) {
    throw std::invalid_argument("expected a 2-form in m coordinates");
  }
}

}  // namespace

Vector ReductiveSplit::k_coords(const Vector& v) const {
  const Vector c = coords * v;
  return Vector(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k.rank()));
}

Vector ReductiveSplit::m_coords(const Vector& v) const {
  const Vector c = coords * v;
  return Vector(c.begin() + static_cast<std::ptrdiff_t>(k.rank()), c.end());
}

Vector ReductiveSplit::m_bracket(const Vector& x, const Vector& y) const {
  return m_coords(g.bracket(m.basis * x, m.basis * y));
}

Matrix ReductiveSplit::ad_on_m(const Vector& u) const {
  const std::size_t r = m_dim();
  Matrix out(r, r);
  for (std::size_t a = 0; a < r; ++a) out.set_col(a, m_coords(g.bracket(u, m.basis.col(a))));
  return out;
}

Subspace centralizer_of_torus(const LieAlgebra& g, const Subspace& s) {
  const auto sv = s.vectors();
  for (std::size_t a = 0; a < sv.size(); ++a) {
    for (std::size_t b = a + 1; b < sv.size(); ++b) {
      if (!is_zero(g.bracket(sv[a], sv[b]))) throw precondition_error("NotAbelian", "torus is not abelian");
    }
  }
  const std::size_t n = g.dim();
  std::vector<Vector> rows;
  for (const auto& v : sv) {
    for (const auto& row : g.ad(v).transpose().columns()) rows.push_back(row);  // [s, x] = 0
  }
  if (rows.empty()) return Subspace::full(n);
  return Subspace::from_matrix(nullspace(Matrix::from_rows(rows, n)));
}

Subspace subalgebra_center(const LieAlgebra& g, const Subspace& k) {
  const std::size_t q = k.rank();
  const auto kv = k.vectors();
  if (q == 0) return k;
  // sum_i c_i [k_i, k_j] = 0 for all j
  std::vector<Vector> rows;
  for (std::size_t j = 0; j < q; ++j) {
    Matrix block(g.dim(), q);
    for (std::size_t i = 0; i < q; ++i) block.set_col(i, g.bracket(kv[i], kv[j]));
    for (std::size_t t = 0; t < g.dim(); ++t) rows.push_back(block.row(t));
  }
  const Matrix ns = nullspace(Matrix::from_rows(rows, q));
  if (ns.cols() == 0) return Subspace{Matrix(g.dim(), 0)};
  return Subspace::from_matrix(k.basis * ns);
}

bool is_torus_centralizer(const LieAlgebra& g, const Subspace& k) {
  const Subspace z = subalgebra_center(g, k);
  const Subspace c = centralizer_of_torus(g, z);
  return c.rank() == k.rank() && k.contains(c);
}

ReductiveSplit reductive_split(const LieAlgebra& g, const Subspace& k) {
  const std::size_t n = g.dim();
  ReductiveSplit r;
  r.g = g;
  r.k = k;
  r.killing = killing_form(g);
  if (definiteness(r.killing) != Definiteness::NegativeDefinite) {
    throw precondition_error("NotCompactSemisimple", "Killing form is not negative definite");
  }
  if (k.rank() == 0) {
    r.m = Subspace::full(n);
  } else {
    const Matrix ns = nullspace(k.basis.transpose() * r.killing);
    r.m = ns.cols() == 0 ? Subspace{Matrix(n, 0)} : Subspace::from_matrix(ns);
  }
  r.coords = inverse(hstack(k.basis, r.m.basis, n));

  const auto kv = k.vectors();
  const auto mv = r.m.vectors();
  for (std::size_t a = 0; a < kv.size(); ++a) {
    for (std::size_t b = a + 1; b < kv.size(); ++b) {
      if (!k.contains(g.bracket(kv[a], kv[b]))) throw precondition_error("NotReductive", "[k, k] is not in k");
    }
    for (const auto& x : mv) {
      if (!r.m.contains(g.bracket(kv[a], x))) throw precondition_error("NotReductive", "[k, m] is not in m");
    }
  }
  return r;
}

std::vector<KForm> invariant_closed_2forms(const ReductiveSplit& r) {
  const std::size_t dm = r.m_dim();
  if (dm < 2) return {};
  const std::size_t unknowns = dm * (dm - 1) / 2;
  std::vector<Vector> rows;
  // omega(ad_U X, Y) + omega(X, ad_U Y) = 0
  for (const auto& u : r.k.vectors()) {
    const Matrix ad = r.ad_on_m(u);
    for (std::size_t a = 0; a < dm; ++a) {
      for (std::size_t b = a + 1; b < dm; ++b) {
        rows.push_back(pair_functional(ad.col(a), unit_vector(dm, b)) +
                       pair_functional(unit_vector(dm, a), ad.col(b)));
      }
    }
  }
  // cyclic sum of omega([X, Y]_m, Z) = 0
  for (std::size_t a = 0; a < dm; ++a) {
    for (std::size_t b = a + 1; b < dm; ++b) {
      for (std::size_t c = b + 1; c < dm; ++c) {
        const Vector ea = unit_vector(dm, a), eb = unit_vector(dm, b), ec = unit_vector(dm, c);
        rows.push_back(pair_functional(r.m_bracket(ea, eb), ec) + pair_functional(r.m_bracket(eb, ec), ea) +
                       pair_functional(r.m_bracket(ec, ea), eb));
      }
    }
  }
  const Matrix ns = rows.empty() ? Matrix::identity(unknowns) : nullspace(Matrix::from_rows(rows, unknowns));
  std::vector<KForm> out;
  for (const auto& w : ns.columns()) out.push_back(form_from_unknowns(dm, w));
  return out;
}

KForm form_from_moment(const ReductiveSplit& r, const Vector& z) {
  const std::size_t dm = r.m_dim();
  KForm f(dm, 2);
  const auto mv = r.m.vectors();
  for (std::size_t a = 0; a < dm; ++a) {
    for (std::size_t b = a + 1; b < dm; ++b) f.set({a, b}, dot(r.g.bracket(mv[a], mv[b]), r.killing * z));
  }
  return f;
}

MomentElement moment_element(const ReductiveSplit& r, const KForm& omega) {
  require_m_form(r, omega);
  const std::size_t dm = r.m_dim();
  const Subspace zk = subalgebra_center(r.g, r.k);
  const auto mv = r.m.vectors();
  const auto zv = zk.vectors();
  std::vector<Vector> rows;
  Vector rhs;
  for (std::size_t a = 0; a < dm; ++a) {
    for (std::size_t b = a + 1; b < dm; ++b) {
      const Vector bk = r.killing * r.g.bracket(mv[a], mv[b]);
      Vector row;
      for (const auto& z : zv) row.push_back(dot(bk, z));
      rows.push_back(row);
      rhs.push_back(omega.get({a, b}));
    }
  }
  MomentElement out;
  out.z = zero_vector(r.g.dim());
  if (!zv.empty() && !rows.empty()) {
    const auto c = solve(Matrix::from_rows(rows, zv.size()), rhs);
    if (!c) throw precondition_error("NoSolution", "omega has no moment element in the center of k");
    out.z = zk.basis * *c;
  } else if (!omega.is_zero()) {
    throw precondition_error("NoSolution", "omega has no moment element in the center of k");
  }
  Matrix lhs(dm, dm), rhs2(dm, dm);
  for (std::size_t a = 0; a < dm; ++a) {
    for (std::size_t b = 0; b < dm; ++b) {
      const Scalar w = omega.get({a, b});
      lhs(a, b) = dot(r.g.bracket(mv[a], mv[b]), r.killing * out.z) - w;
      rhs2(a, b) = dot(r.g.bracket(out.z, mv[a]), r.killing * mv[b]) - w;
    }
  }
  out.checks.add("omega - B([X,Y],Z)", lhs);
  out.checks.add("omega - B([Z,X],Y)", rhs2);
  if (!out.checks.ok()) throw precondition_error("NoSolution", "moment element does not reproduce omega");
  return out;
}

CheckReport complex_structure_checks(const ReductiveSplit& r, const Matrix& j) {
  const std::size_t dm = r.m_dim();
  if (j.rows() != dm || j.cols() != dm) throw std::invalid_argument("J must act on m");
  CheckReport rep;
  rep.add("J^2 + I", j * j + Matrix::identity(dm));
  Matrix eq(dm, dm * std::max<std::size_t>(r.k.rank(), 1));
  std::size_t col = 0;
  for (const auto& u : r.k.vectors()) {
    const Matrix ad = r.ad_on_m(u);
    const Matrix diff = j * ad - ad * j;
    for (std::size_t a = 0; a < dm; ++a) eq.set_col(col++, diff.col(a));
  }
  rep.add("J equivariance", eq);
  Matrix integ(dm, dm * dm);
  const auto jc = j.columns();
  for (std::size_t a = 0; a < dm; ++a) {
    for (std::size_t b = a + 1; b < dm; ++b) {
      const Vector ea = unit_vector(dm, a), eb = unit_vector(dm, b);
      integ.set_col(a * dm + b, r.m_bracket(jc[a], jc[b]) - r.m_bracket(ea, eb) - j * r.m_bracket(ea, jc[b]) -
                                    j * r.m_bracket(jc[a], eb));
    }
  }
  rep.add("J integrability", integ);
  return rep;
}

Type11Report type_11_check(const ReductiveSplit& r, const KForm& omega, const Matrix& j,
                           const std::vector<KForm>& solutions) {
  require_m_form(r, omega);
  Type11Report rep;
  rep.j_checks = complex_structure_checks(r, j);
  rep.omega_checks.add("omega(JX,JY) - omega(X,Y)", pullback(omega, j) - omega);
  std::vector<Vector> anti;
  for (const auto& s : solutions) {
    const KForm a = Scalar(1, 2) * (s - pullback(s, j));
    Vector v;
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(a.coeff_at(i));
    anti.push_back(v);
  }
  if (!anti.empty()) rep.anti_invariant_rank = rank(Matrix::from_columns(anti, anti.front().size()));
  return rep;
}

std::vector<Matrix> planar_complex_structures(const ReductiveSplit& r) {
  if (r.m_dim() != 2) throw precondition_error("NotPlanar", "enumeration needs dim m = 2");
  for (const auto& u : r.k.vectors()) {
    const Matrix rot = r.ad_on_m(u);
    if (rot.is_zero()) continue;
    const Matrix sq = rot * rot;
    const Scalar c = -sq(0, 0);
    if (!(sq + c * Matrix::identity(2)).is_zero() || c.sign() <= 0) continue;
    const Matrix j = (Scalar(1) / Scalar::sqrt(c)) * rot;
    return {j, Scalar(-1) * j};
  }
  throw precondition_error("NotPlanar", "no element of k acts on m by a rotation");
}

Matrix extension_endomorphism(const ReductiveSplit& r, const KForm& omega) {
  require_m_form(r, omega);
  // rows of coords below k give the m-coordinate functionals
  const std::size_t n = r.g.dim(), q = r.k.rank();
  Matrix pm(r.m_dim(), n);
  for (std::size_t a = 0; a < r.m_dim(); ++a) {
    for (std::size_t c = 0; c < n; ++c) pm(a, c) = r.coords(q + a, c);
  }
  const Matrix ext = pm.transpose() * omega.to_matrix() * pm;
  return inverse(r.killing) * ext.transpose();
}

}  // namespace aqs
