#include "aqs/constructors.hpp"

#include <stdexcept>

#include "aqs/error.hpp"
#include "aqs/exterior.hpp"

namespace aqs {

namespace {

std::vector<std::string> heisenberg_names(std::size_t m) {
  std::vector<std::string> names{"xi"};
  for (std::size_t l = 1; l <= m; ++l) names.push_back("tau" + std::to_string(l));
  return names;
}

AcmStructure standard_structure(const LieAlgebra& l, Matrix phi) {
  const std::size_t d = l.dim();
  AcmStructure s;
  s.algebra = l;
  s.phi = std::move(phi);
  s.xi = unit_vector(d, 0);
  s.eta = unit_vector(d, 0);
  s.metric = Matrix::identity(d);
  return s;
}

}  // namespace

Matrix heisenberg_phi(std::size_t n, int i) {
  static const int perms[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
  if (i < 1 || i > 3) throw std::invalid_argument("heisenberg_phi: i must be 1, 2 or 3");
  const auto& p = perms[i - 1];
  const std::size_t d = 4 * n + 1;
  Matrix phi(d, d);
  for (std::size_t r = 1; r <= n; ++r) {
    const std::size_t a = r, b = p[0] * n + r, c = p[1] * n + r, e = p[2] * n + r;
    // theta_a (x) tau_b maps tau_a to tau_b
    phi(b, a) = 1;
    phi(a, b) = -1;
    phi(e, c) = 1;
    phi(c, e) = -1;
  }
  return phi;
}

Heisenberg4 weighted_heisenberg_4n1(std::size_t n, const std::vector<Scalar>& weights) {
  if (n == 0 || weights.size() != n) throw std::invalid_argument("weighted_heisenberg_4n1: need n weights");
  const std::size_t d = 4 * n + 1;
  LieAlgebra::BracketTable table;
  for (std::size_t r = 1; r <= n; ++r) {
    if (weights[r - 1].is_zero()) continue;
    const Vector v = Scalar(2) * weights[r - 1] * unit_vector(d, 0);
    table.emplace(std::make_pair(r, 3 * n + r), v);
    table.emplace(std::make_pair(n + r, 2 * n + r), v);
  }
  Heisenberg4 h;
  h.n = n;
  h.weights = weights;
  h.algebra = LieAlgebra(d, std::move(table), heisenberg_names(4 * n));
  for (int i = 1; i <= 3; ++i) h.structures[i - 1] = standard_structure(h.algebra, heisenberg_phi(n, i));
  return h;
}

Heisenberg2 weighted_heisenberg_2n1(std::size_t n, const std::vector<Scalar>& weights,
                                    const std::vector<int>& signs) {
  if (n == 0 || weights.size() != n) throw std::invalid_argument("weighted_heisenberg_2n1: need n weights");
  if (!signs.empty() && signs.size() != n) throw std::invalid_argument("weighted_heisenberg_2n1: need n signs");
  const std::size_t d = 2 * n + 1;
  LieAlgebra::BracketTable table;
  Matrix phi(d, d);
  for (std::size_t r = 1; r <= n; ++r) {
    if (!weights[r - 1].is_zero()) {
      table.emplace(std::make_pair(r, n + r), Scalar(2) * weights[r - 1] * unit_vector(d, 0));
    }
    const int s = signs.empty() ? 1 : signs[r - 1];
    phi(n + r, r) = s;
    phi(r, n + r) = -s;
  }
  Heisenberg2 h;
  h.n = n;
  h.weights = weights;
  h.structure = standard_structure(LieAlgebra(d, std::move(table), heisenberg_names(2 * n)), std::move(phi));
  return h;
}

LieAlgebra abelian(std::size_t n) { return LieAlgebra(n); }

LieAlgebra su2() {
  LieAlgebra::BracketTable t;
  t.emplace(std::make_pair(0, 1), unit_vector(3, 2));
  t.emplace(std::make_pair(1, 2), unit_vector(3, 0));
  t.emplace(std::make_pair(2, 0), unit_vector(3, 1));
  return LieAlgebra(3, std::move(t), {"e1", "e2", "e3"});
}

LieAlgebra su3() {
  // complex 3x3 matrices as (re, im) pairs of rational matrices
  struct C {
    Matrix re{3, 3}, im{3, 3};
  };
  std::vector<C> basis;
  std::vector<std::string> names;
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& p : pairs) {
    C a, s;
    a.re(p[0], p[1]) = 1;
    a.re(p[1], p[0]) = -1;
    s.im(p[0], p[1]) = 1;
    s.im(p[1], p[0]) = 1;
    basis.push_back(a);
    basis.push_back(s);
    const std::string tag = std::to_string(p[0] + 1) + std::to_string(p[1] + 1);
    names.push_back("A" + tag);
    names.push_back("S" + tag);
  }
  C h1, h2;
  h1.im(0, 0) = 1;
  h1.im(1, 1) = -1;
  h2.im(1, 1) = 1;
  h2.im(2, 2) = -1;
  basis.push_back(h1);
  basis.push_back(h2);
  names.push_back("H1");
  names.push_back("H2");

  const auto flatten = [](const C& c) {
    Vector v;
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t q = 0; q < 3; ++q) {
        v.push_back(c.re(r, q));
        v.push_back(c.im(r, q));
      }
    }
    return v;
  };
  std::vector<Vector> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  const Matrix embed = Matrix::from_columns(cols, 18);

  const auto mul = [](const C& x, const C& y) {
    C z;
    z.re = x.re * y.re - x.im * y.im;
    z.im = x.re * y.im + x.im * y.re;
    return z;
  };
  LieAlgebra::BracketTable t;
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = a + 1; b < 8; ++b) {
      const C xy = mul(basis[a], basis[b]), yx = mul(basis[b], basis[a]);
      C comm;
      comm.re = xy.re - yx.re;
      comm.im = xy.im - yx.im;
      const auto coeffs = solve(embed, flatten(comm));
      if (!coeffs) throw internal_error("Su3Model", "commutator left the span of the basis");
      if (!is_zero(*coeffs)) t.emplace(std::make_pair(a, b), *coeffs);
    }
  }
  return LieAlgebra(8, std::move(t), std::move(names));
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const std::size_t n = a.dim() + b.dim();
  LieAlgebra::BracketTable t;
  for (const auto& [key, v] : a.brackets()) {
    Vector w = v;
    w.resize(n);
    t.emplace(key, std::move(w));
  }
  for (const auto& [key, v] : b.brackets()) {
    Vector w = zero_vector(a.dim());
    w.insert(w.end(), v.begin(), v.end());
    t.emplace(std::make_pair(key.first + a.dim(), key.second + a.dim()), std::move(w));
  }
  auto names = a.basis_names();
  for (const auto& s : b.basis_names()) names.push_back(s);
  return LieAlgebra(n, std::move(t), std::move(names));
}

KForm KahlerLieAlgebra::kahler_form() const { return KForm::from_matrix(k * j); }

KahlerLieAlgebra standard_kahler(std::size_t m) {
  KahlerLieAlgebra h;
  h.algebra = abelian(2 * m);
  h.j = Matrix(2 * m, 2 * m);
  for (std::size_t r = 0; r < m; ++r) {
    h.j(2 * r + 1, 2 * r) = 1;
    h.j(2 * r, 2 * r + 1) = -1;
  }
  h.k = Matrix::identity(2 * m);
  return h;
}

CheckReport validate_kahler(const KahlerLieAlgebra& h) {
  const std::size_t n = h.algebra.dim();
  if (h.j.rows() != n || h.j.cols() != n || h.k.rows() != n || h.k.cols() != n) {
    throw std::invalid_argument("validate_kahler: dimension mismatch");
  }
  CheckReport r;
  r.add("J^2 + I", h.j * h.j + Matrix::identity(n));
  r.add("k symmetric", h.k - h.k.transpose());
  r.add("k Hermitian", h.j.transpose() * h.k * h.j - h.k);
  Check pd;
  pd.name = "k positive definite";
  pd.ok = is_symmetric(h.k) && definiteness(h.k) == Definiteness::PositiveDefinite;
  pd.residual = pd.ok ? Scalar(0) : Scalar(1);
  r.checks.push_back(pd);
  const auto& l = h.algebra;
  const auto jc = h.j.columns();
  Matrix nj(n, n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vector ea = unit_vector(n, a), eb = unit_vector(n, b);
      const Vector v = l.bracket(jc[a], jc[b]) - l.basis_bracket(a, b) - h.j * l.bracket(ea, jc[b]) -
                       h.j * l.bracket(jc[a], eb);
      nj.set_col(a * n + b, v);
    }
  }
  r.add("N_J", nj);
  const Matrix om = h.k * h.j;
  if ((om + om.transpose()).is_zero()) r.add("dOmega", ce_d(l, KForm::from_matrix(om)));
  return r;
}

const char* to_string(Invariance t) {
  switch (t) {
    case Invariance::Invariant: return "invariant";
    case Invariance::AntiInvariant: return "anti-invariant";
    case Invariance::Neither: return "neither";
  }
  return "?";
}

InvarianceReport invariance_type(const KahlerLieAlgebra& h, const KForm& omega) {
  if (omega.degree() != 2 || omega.dim() != h.algebra.dim()) {
    throw std::invalid_argument("invariance_type: omega must be a 2-form on h");
  }
  const KForm pulled = pullback(omega, h.j);
  const Scalar half(1, 2);
  InvarianceReport r;
  r.invariant_part = half * (omega + pulled);
  r.anti_part = half * (omega - pulled);
  if (r.anti_part.is_zero()) {
    r.type = Invariance::Invariant;
  } else if (r.invariant_part.is_zero()) {
    r.type = Invariance::AntiInvariant;
  } else {
    r.type = Invariance::Neither;
  }
  return r;
}

Cocycle make_cocycle(const KahlerLieAlgebra& h, const KForm& omega) {
  if (omega.degree() != 2 || omega.dim() != h.algebra.dim()) {
    throw precondition_error("NotCocycle", "cocycle must be a 2-form on h");
  }
  if (!ce_d(h.algebra, omega).is_zero()) throw precondition_error("NotCocycle", "d omega != 0");
  return {omega, invariance_type(h, omega).type};
}

AcmStructure central_extension(const KahlerLieAlgebra& h, const Cocycle& omega) {
  const CheckReport kr = validate_kahler(h);
  for (const auto& c : kr.checks) {
    if (!c.ok) throw precondition_error("NotKahler", "Kahler data fails: " + c.name);
  }
  if (!ce_d(h.algebra, omega.omega).is_zero()) throw precondition_error("NotCocycle", "d omega != 0");
  const std::size_t m = h.algebra.dim();
  AcmStructure s;
  s.algebra = central_extension_algebra(h.algebra, omega.omega);
  s.phi = Matrix(m + 1, m + 1);
  s.metric = Matrix(m + 1, m + 1);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      s.phi(a, b) = h.j(a, b);
      s.metric(a, b) = h.k(a, b);
    }
  }
  s.metric(m, m) = 1;
  s.xi = unit_vector(m + 1, m);
  s.eta = unit_vector(m + 1, m);
  return s;
}

}  // namespace aqs
