#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "aqs/kform.hpp"
#include "aqs/lie_algebra.hpp"
#include "aqs/linalg.hpp"

namespace aqs {

/// Almost contact metric structure (phi, xi, eta, g) on a Lie algebra.
/// Column j of `phi` is phi(b_j); `eta` holds eta(b_j).
struct AcmStructure {
  LieAlgebra algebra;
  Matrix phi;
  Vector xi;
  Vector eta;
  Matrix metric;

  std::size_t dim() const { return algebra.dim(); }
  KForm eta_form() const { return KForm::covector(eta); }
  bool uses_float() const;
};

/// One named identity check with its largest residual entry.
struct Check {
  std::string name;
  bool ok = true;
  Scalar residual;
  std::size_t row = 0;
  std::size_t col = 0;
};

struct CheckReport {
  std::vector<Check> checks;
  bool ok() const;
  const Check* find(const std::string& name) const;
  void add(const std::string& name, const Matrix& residual);
  void add(const std::string& name, const Vector& residual);
  void add(const std::string& name, const KForm& residual);
};

CheckReport validate_acm(const AcmStructure& s);
/// Throws Precondition/InvalidStructure when validate_acm fails.
void require_valid(const AcmStructure& s);

/// Structure in the basis b'_j = sum_i q_ij b_i.
AcmStructure change_basis(const AcmStructure& s, const Matrix& q);
/// Image of s under the linear isomorphism f (new coordinates x' = f x).
AcmStructure push_forward(const AcmStructure& s, const Matrix& f);

/// Phi(X,Y) = g(X, phi Y).
KForm fundamental_form(const AcmStructure& s);

/// Vector-valued 2-form stored as values on basis pairs.
struct VectorTwoForm {
  std::size_t dim = 0;
  std::vector<Vector> values;  // dim * dim, entry (i, j) at i * dim + j
  const Vector& at(std::size_t i, std::size_t j) const { return values[i * dim + j]; }
  bool is_zero() const;
  Check residual(const std::string& name) const;
};

/// [phi,phi](X,Y) = [phiX,phiY] + phi^2[X,Y] - phi[X,phiY] - phi[phiX,Y].
VectorTwoForm nijenhuis_bracket(const AcmStructure& s);
/// N_phi = [phi,phi] + d eta (x) xi.
VectorTwoForm nijenhuis_phi(const AcmStructure& s);

enum class StructureTag {
  ContactMetric,
  Sasakian,
  Cokahler,
  QuasiSasakian,
  AntiQuasiSasakian,
  DoubleAqsSasakian,
  Unclassified,
};
const char* to_string(StructureTag t);

struct StructureClass {
  std::set<StructureTag> tags;
  KForm deta;
  KForm fundamental;
  KForm dphi;  // d Phi
  VectorTwoForm nphi;
  bool closed_phi = false;   // d Phi = 0
  bool normal = false;       // N_phi = 0
  bool anti_normal = false;  // N_phi = 2 d eta (x) xi
  bool contact_metric = false;
  bool deta_zero = false;
  CheckReport residuals;
  bool has(StructureTag t) const { return tags.count(t) != 0; }
};

StructureClass classify_structure(const AcmStructure& s);

/// phi_1 phi_2 = phi_3 = -phi_2 phi_1, d Phi_1 = d Phi_2 = 0, d eta = 2 Phi_3.
/// The three structures must share algebra, xi, eta and g.
CheckReport double_aqs_check(const AcmStructure& s1, const AcmStructure& s2, const AcmStructure& s3);

struct KillingReport {
  bool killing = false;
  bool deta_xi_zero = false;  // d eta(xi, .) = 0
  Check residual;
};
KillingReport xi_killing_check(const AcmStructure& s);

/// Levi-Civita connection on left-invariant fields: nabla[i] is the matrix of
/// nabla_{b_i}, i.e. column j holds nabla_{b_i} b_j.
struct ConnectionTable {
  std::vector<Matrix> nabla;
  Matrix along(const Vector& x) const;
  Vector apply(const Vector& x, const Vector& y) const { return along(x) * y; }
};
ConnectionTable levi_civita(const AcmStructure& s);
CheckReport connection_checks(const AcmStructure& s, const ConnectionTable& c);

struct AOperators {
  Matrix a;
  Matrix psi;
  KForm a_form;    // g(., A .)
  KForm psi_form;  // g(., psi .)
  CheckReport identities;
};
/// psi = -nabla xi and A = phi psi; the remaining identities are verified.
AOperators operators_a_psi(const AcmStructure& s);
AOperators operators_a_psi(const AcmStructure& s, const ConnectionTable& c);

struct ClosednessReport {
  CheckReport checks;  // dA, dPhi, deta - 2 Psi, anti-invariance
  bool deta_invariant = false;
  bool deta_anti_invariant = false;
  bool ok() const { return checks.ok(); }
};
ClosednessReport closedness_suite(const AcmStructure& s);

class Curvature {
 public:
  Curvature(const AcmStructure& s, ConnectionTable c);

  /// Matrix of R(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y].
  Matrix riemann(const Vector& x, const Vector& y) const;
  /// K(X,Y) = g(R(X,Y)Y, X) / (|X|^2 |Y|^2 - g(X,Y)^2); throws on degenerate planes.
  Scalar sectional(const Vector& x, const Vector& y) const;
  Matrix ricci() const;
  Scalar scalar() const;

 private:
  AcmStructure s_;
  ConnectionTable c_;
};

}  // namespace aqs
