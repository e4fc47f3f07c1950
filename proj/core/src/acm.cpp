#include "aqs/acm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "aqs/error.hpp"
#include "aqs/exterior.hpp"

namespace aqs {

namespace {

Matrix outer(const Vector& col, const Vector& row) {
  Matrix m(col.size(), row.size());
  for (std::size_t i = 0; i < col.size(); ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = col[i] * row[j];
  }
  return m;
}

Matrix row_matrix(const Vector& v) { return Matrix::from_rows({v}, v.size()); }

Check make_check(const std::string& name, const Matrix& residual) {
  Check c;
  c.name = name;
  if (residual.rows() == 0 || residual.cols() == 0) return c;
  const MaxEntry e = max_abs_entry(residual);
  c.residual = e.magnitude;
  c.row = e.row;
  c.col = e.col;
  c.ok = e.magnitude.is_zero();
  return c;
}

}  // namespace

bool AcmStructure::uses_float() const {
  return algebra.uses_float() || phi.uses_float() || aqs::uses_float(xi) || aqs::uses_float(eta) ||
         metric.uses_float();
}

bool CheckReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

const Check* CheckReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void CheckReport::add(const std::string& name, const Matrix& residual) {
  checks.push_back(make_check(name, residual));
}

void CheckReport::add(const std::string& name, const Vector& residual) {
  checks.push_back(make_check(name, Matrix::from_columns({residual}, residual.size())));
}

void CheckReport::add(const std::string& name, const KForm& residual) {
  Check c;
  c.name = name;
  for (std::size_t r = 0; r < residual.size(); ++r) {
    const Scalar a = residual.coeff_at(r).abs();
    if (c.residual < a) {
      c.residual = a;
      c.row = r;
    }
  }
  c.ok = c.residual.is_zero();
  checks.push_back(std::move(c));
}

CheckReport validate_acm(const AcmStructure& s) {
  const std::size_t n = s.dim();
  if (s.phi.rows() != n || s.phi.cols() != n || s.xi.size() != n || s.eta.size() != n ||
      s.metric.rows() != n || s.metric.cols() != n) {
    throw std::invalid_argument("validate_acm: dimension mismatch");
  }
  CheckReport r;
  const Matrix id = Matrix::identity(n);
  r.add("phi_squared", s.phi * s.phi - (outer(s.xi, s.eta) - id));
  r.add("eta_xi", Vector{dot(s.eta, s.xi) - Scalar(1)});
  r.add("metric_symmetric", s.metric - s.metric.transpose());
  r.add("metric_compatible",
        s.phi.transpose() * s.metric * s.phi - (s.metric - outer(s.eta, s.eta)));
  Check pd;
  pd.name = "metric_positive_definite";
  pd.ok = is_symmetric(s.metric) && definiteness(s.metric) == Definiteness::PositiveDefinite;
  pd.residual = pd.ok ? Scalar(0) : Scalar(1);
  r.checks.push_back(pd);
  r.add("phi_xi", s.phi * s.xi);
  r.add("eta_phi", row_matrix(s.eta) * s.phi);
  return r;
}

void require_valid(const AcmStructure& s) {
  const CheckReport r = validate_acm(s);
  for (const auto& c : r.checks) {
    if (!c.ok) {
      std::ostringstream os;
      os << "not an almost contact metric structure: " << c.name << " fails (residual " << c.residual
         << " at " << c.row + 1 << "," << c.col + 1 << ")";
      throw precondition_error("InvalidStructure", os.str());
    }
  }
}

namespace {

AcmStructure transport(const AcmStructure& s, const Matrix& q, const Matrix& qinv) {
  AcmStructure t;
  t.algebra = change_basis(s.algebra, q, qinv);
  t.phi = qinv * s.phi * q;
  t.xi = qinv * s.xi;
  t.eta = (row_matrix(s.eta) * q).row(0);
  t.metric = q.transpose() * s.metric * q;
  return t;
}

}  // namespace

AcmStructure change_basis(const AcmStructure& s, const Matrix& q) { return transport(s, q, inverse(q)); }

AcmStructure push_forward(const AcmStructure& s, const Matrix& f) { return transport(s, inverse(f), f); }

KForm fundamental_form(const AcmStructure& s) {
  const Matrix m = s.metric * s.phi;
  const Matrix asym = m + m.transpose();
  if (!asym.is_zero()) throw precondition_error("InvalidStructure", "g(., phi .) is not alternating");
  return KForm::from_matrix(m);
}

bool VectorTwoForm::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Vector& v) { return aqs::is_zero(v); });
}

Check VectorTwoForm::residual(const std::string& name) const {
  Check c;
  c.name = name;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (const auto& x : at(i, j)) {
        const Scalar a = x.abs();
        if (c.residual < a) {
          c.residual = a;
          c.row = i;
          c.col = j;
        }
      }
    }
  }
  c.ok = c.residual.is_zero();
  return c;
}

VectorTwoForm nijenhuis_bracket(const AcmStructure& s) {
  const std::size_t n = s.dim();
  const auto& l = s.algebra;
  const Matrix phi2 = s.phi * s.phi;
  const auto cols = s.phi.columns();
  VectorTwoForm t{n, std::vector<Vector>(n * n, zero_vector(n))};
  for (std::size_t i = 0; i < n; ++i) {
    // column j is [phi e_i, phi e_j] + phi^2 [e_i, e_j] - phi [e_i, phi e_j] - phi [phi e_i, e_j]
    const Matrix m = l.ad(cols[i]);
    const Matrix a = l.ad_basis(i);
    const Matrix row = (m - s.phi * a) * s.phi + (phi2 * a - s.phi * m);
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector v = row.col(j);
      t.values[j * n + i] = Scalar(-1) * v;
      t.values[i * n + j] = std::move(v);
    }
  }
  return t;
}

VectorTwoForm nijenhuis_phi(const AcmStructure& s) {
  VectorTwoForm t = nijenhuis_bracket(s);
  const KForm deta = ce_d(s.algebra, s.eta_form());
  for (std::size_t i = 0; i < t.dim; ++i) {
    for (std::size_t j = 0; j < t.dim; ++j) {
      if (i == j) continue;
      t.values[i * t.dim + j] = t.values[i * t.dim + j] + deta.get({i, j}) * s.xi;
    }
  }
  return t;
}

const char* to_string(StructureTag t) {
  switch (t) {
    case StructureTag::ContactMetric: return "ContactMetric";
    case StructureTag::Sasakian: return "Sasakian";
    case StructureTag::Cokahler: return "Cokahler";
    case StructureTag::QuasiSasakian: return "QuasiSasakian";
    case StructureTag::AntiQuasiSasakian: return "AntiQuasiSasakian";
    case StructureTag::DoubleAqsSasakian: return "DoubleAqsSasakian";
    case StructureTag::Unclassified: return "Unclassified";
  }
  return "?";
}

StructureClass classify_structure(const AcmStructure& s) {
  require_valid(s);
  const std::size_t n = s.dim();
  StructureClass c;
  c.deta = ce_d(s.algebra, s.eta_form());
  c.fundamental = fundamental_form(s);
  c.dphi = ce_d(s.algebra, c.fundamental);
  c.nphi = nijenhuis_phi(s);

  VectorTwoForm anti = c.nphi;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) anti.values[i * n + j] = anti.values[i * n + j] - Scalar(2) * c.deta.get({i, j}) * s.xi;
    }
  }
  const KForm contact = c.deta - Scalar(2) * c.fundamental;

  c.residuals.add("dPhi", c.dphi);
  c.residuals.checks.push_back(c.nphi.residual("N_phi"));
  c.residuals.checks.push_back(anti.residual("N_phi - 2 deta*xi"));
  c.residuals.add("deta - 2Phi", contact);
  c.residuals.add("deta", c.deta);

  c.closed_phi = c.dphi.is_zero();
  c.normal = c.nphi.is_zero();
  c.anti_normal = anti.is_zero();
  c.contact_metric = contact.is_zero();
  c.deta_zero = c.deta.is_zero();

  if (c.contact_metric) c.tags.insert(StructureTag::ContactMetric);
  if (c.contact_metric && c.normal) c.tags.insert(StructureTag::Sasakian);
  if (c.deta_zero && c.closed_phi && c.normal) c.tags.insert(StructureTag::Cokahler);
  if (c.closed_phi && c.normal) c.tags.insert(StructureTag::QuasiSasakian);
  if (c.closed_phi && c.anti_normal) c.tags.insert(StructureTag::AntiQuasiSasakian);
  if (c.tags.empty()) c.tags.insert(StructureTag::Unclassified);
  return c;
}

CheckReport double_aqs_check(const AcmStructure& s1, const AcmStructure& s2, const AcmStructure& s3) {
  for (const AcmStructure* s : {&s2, &s3}) {
    if (!(s->algebra == s1.algebra) || !is_zero(s->xi - s1.xi) || !is_zero(s->eta - s1.eta) ||
        !(s->metric == s1.metric)) {
      throw precondition_error("StructureMismatch", "the three structures must share algebra, xi, eta and g");
    }
  }
  for (const AcmStructure* s : {&s1, &s2, &s3}) require_valid(*s);
  CheckReport r;
  r.add("phi1 phi2 - phi3", s1.phi * s2.phi - s3.phi);
  r.add("phi2 phi1 + phi3", s2.phi * s1.phi + s3.phi);
  r.add("dPhi1", ce_d(s1.algebra, fundamental_form(s1)));
  r.add("dPhi2", ce_d(s2.algebra, fundamental_form(s2)));
  r.add("deta - 2Phi3", ce_d(s3.algebra, s3.eta_form()) - Scalar(2) * fundamental_form(s3));
  return r;
}

KillingReport xi_killing_check(const AcmStructure& s) {
  const Matrix adx = s.algebra.ad(s.xi);
  KillingReport k;
  k.residual = make_check("g([xi,X],Y) + g(X,[xi,Y])", adx.transpose() * s.metric + s.metric * adx);
  k.killing = k.residual.ok;
  const KForm deta = ce_d(s.algebra, s.eta_form());
  const Matrix dm = deta.to_matrix();
  k.deta_xi_zero = is_zero(dm.transpose() * s.xi);
  return k;
}

Matrix ConnectionTable::along(const Vector& x) const {
  if (nabla.empty()) return Matrix();
  const std::size_t n = nabla.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!x[i].is_zero()) m = m + x[i] * nabla[i];
  }
  return m;
}

ConnectionTable levi_civita(const AcmStructure& s) {
  const std::size_t n = s.dim();
  if (definiteness(s.metric) != Definiteness::PositiveDefinite) {
    throw precondition_error("NotPositiveDefinite", "metric is not positive definite");
  }
  const Matrix& g = s.metric;
  const Matrix ginv = inverse(g);
  const auto& l = s.algebra;
  // gb(i,j,k) = g([b_i,b_j], b_k)
  std::vector<Scalar> gb(n * n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vector w = g.transpose() * l.basis_bracket(i, j);
      for (std::size_t k = 0; k < n; ++k) gb[(i * n + j) * n + k] = w[k];
    }
  }
  const auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> const Scalar& {
    return gb[(i * n + j) * n + k];
  };
  ConnectionTable c;
  c.nabla.assign(n, Matrix(n, n));
  const Scalar half(1, 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector lower(n);
      for (std::size_t k = 0; k < n; ++k) lower[k] = half * (at(i, j, k) - at(j, k, i) + at(k, i, j));
      c.nabla[i].set_col(j, ginv * lower);
    }
  }
  return c;
}

CheckReport connection_checks(const AcmStructure& s, const ConnectionTable& c) {
  const std::size_t n = s.dim();
  CheckReport r;
  Matrix torsion(n, n * n), metric(n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    // metric: g(nabla_i Y, Z) + g(Y, nabla_i Z) = 0
    const Matrix mc = c.nabla[i].transpose() * s.metric + s.metric * c.nabla[i];
    for (std::size_t j = 0; j < n; ++j) {
      const Vector t = c.nabla[i].col(j) - c.nabla[j].col(i) - s.algebra.basis_bracket(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        torsion(k, i * n + j) = t[k];
        metric(k, i * n + j) = mc(j, k);
      }
    }
  }
  r.add("torsion", torsion);
  r.add("metric", metric);
  return r;
}

namespace {

AOperators finish_operators(const AcmStructure& s, Matrix psi);

}  // namespace

AOperators operators_a_psi(const AcmStructure& s) {
  if (definiteness(s.metric) != Definiteness::PositiveDefinite) {
    throw precondition_error("NotPositiveDefinite", "metric is not positive definite");
  }
  // Koszul with Y = xi only: 2 g(nabla_{e_i} xi, e_k) = g([e_i,xi],e_k) - g([xi,e_k],e_i) + g([e_k,e_i],xi)
  const std::size_t n = s.dim();
  const Matrix& g = s.metric;
  const Matrix mg = s.algebra.ad(s.xi).transpose() * g;
  const Vector w = g * s.xi;
  Matrix lower(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      lower(i, k) = Scalar(1, 2) * (dot(w, s.algebra.basis_bracket(k, i)) - mg(i, k) - mg(k, i));
    }
  }
  return finish_operators(s, Scalar(-1) * (inverse(g) * lower.transpose()));
}

AOperators operators_a_psi(const AcmStructure& s, const ConnectionTable& c) {
  const std::size_t n = s.dim();
  Matrix psi(n, n);
  for (std::size_t j = 0; j < n; ++j) psi.set_col(j, Scalar(-1) * (c.nabla[j] * s.xi));
  return finish_operators(s, std::move(psi));
}

namespace {

AOperators finish_operators(const AcmStructure& s, Matrix psi) {
  AOperators o;
  o.psi = std::move(psi);
  o.a = s.phi * o.psi;
  const Matrix ga = s.metric * o.a;
  const Matrix gp = s.metric * o.psi;
  auto& r = o.identities;
  r.add("A phi - psi", o.a * s.phi - o.psi);
  r.add("psi + phi A", o.psi + s.phi * o.a);
  r.add("phi psi - A", s.phi * o.psi - o.a);
  r.add("A + psi phi", o.a + o.psi * s.phi);
  r.add("psi A + phi A^2", o.psi * o.a + s.phi * o.a * o.a);
  r.add("psi A + A psi", o.psi * o.a + o.a * o.psi);
  r.add("A xi", o.a * s.xi);
  r.add("psi xi", o.psi * s.xi);
  r.add("A skew", ga + ga.transpose());
  r.add("psi skew", gp + gp.transpose());
  // the forms are built from the antisymmetric part so a failed skew check stays visible above
  o.a_form = KForm::from_matrix(ga);
  o.psi_form = KForm::from_matrix(gp);
  return o;
}

}  // namespace

ClosednessReport closedness_suite(const AcmStructure& s) {
  const AOperators o = operators_a_psi(s);
  const KForm deta = ce_d(s.algebra, s.eta_form());
  const KForm pulled = pullback(deta, s.phi);
  ClosednessReport rep;
  rep.checks.add("dA", ce_d(s.algebra, o.a_form));
  rep.checks.add("dPhi", ce_d(s.algebra, fundamental_form(s)));
  rep.checks.add("deta - 2Psi", deta - Scalar(2) * o.psi_form);
  rep.checks.add("deta(phi.,phi.) + deta", pulled + deta);
  rep.deta_invariant = (pulled - deta).is_zero();
  rep.deta_anti_invariant = (pulled + deta).is_zero();
  return rep;
}

Curvature::Curvature(const AcmStructure& s, ConnectionTable c) : s_(s), c_(std::move(c)) {}

Matrix Curvature::riemann(const Vector& x, const Vector& y) const {
  const Matrix nx = c_.along(x), ny = c_.along(y);
  return nx * ny - ny * nx - c_.along(s_.algebra.bracket(x, y));
}

Scalar Curvature::sectional(const Vector& x, const Vector& y) const {
  const Matrix& g = s_.metric;
  const Scalar gxx = dot(x, g * x), gyy = dot(y, g * y), gxy = dot(x, g * y);
  const Scalar area = gxx * gyy - gxy * gxy;
  if (area.is_zero()) throw precondition_error("DegeneratePlane", "sectional curvature of a degenerate plane");
  return dot(x, g * (riemann(x, y) * y)) / area;
}

Matrix Curvature::ricci() const {
  const std::size_t n = s_.dim();
  Matrix ric(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Matrix rij = riemann(unit_vector(n, i), unit_vector(n, j));
      for (std::size_t k = 0; k < n; ++k) ric(j, k) += rij(i, k);
    }
  }
  return ric;
}

Scalar Curvature::scalar() const {
  const Matrix ginv = inverse(s_.metric);
  const Matrix ric = ricci();
  Scalar total(0);
  for (std::size_t j = 0; j < ric.rows(); ++j) {
    for (std::size_t k = 0; k < ric.cols(); ++k) total += ginv(j, k) * ric(j, k);
  }
  return total;
}

}  // namespace aqs
