#include "aqs/classifier.hpp"

#include <algorithm>
#include <sstream>

#include "aqs/constructors.hpp"
#include "aqs/error.hpp"
#include "aqs/exterior.hpp"

namespace aqs {

const char* to_string(HeisenbergFamily f) {
  return f == HeisenbergFamily::H4n1 ? "4n+1" : "2n+1";
}

namespace {

// Hypotheses shared by both pipelines, checked in the order of the error taxonomy.
std::set<StructureTag> common_hypotheses(const AcmStructure& s, StructureTag wanted, const char* code) {
  if (!lower_central_series(s.algebra).nilpotent) {
    throw precondition_error("NotNilpotent", "Lie algebra is not nilpotent");
  }
  const StructureClass c = classify_structure(s);
  if (!c.has(wanted)) {
    throw precondition_error(code, std::string("structure is not ") + to_string(wanted));
  }
  if (!xi_killing_check(s).killing) throw precondition_error("NotKilling", "xi is not a Killing vector");
  if (!rank_of_eta(s.algebra, s.eta_form()).maximal) {
    throw precondition_error("NotMaximalRank", "eta does not have maximal rank");
  }
  return c.tags;
}

// Center = R xi and the quotient by it is abelian.
void central_quotient_is_abelian(const AcmStructure& s) {
  const Subspace z = center(s.algebra);
  if (z.rank() != 1 || !z.contains(s.xi)) {
    std::ostringstream os;
    os << "center has rank " << z.rank() << " (expected the line through xi)";
    throw internal_error("CenterTooBig", os.str());
  }
  const Subspace d = Subspace::from_matrix(nullspace(Matrix::from_rows({s.eta}, s.dim())));
  const CentralQuotient q = quotient_by_center_line(s.algebra, s.xi, d);
  if (!q.quotient.is_abelian()) {
    throw internal_error("NonAbelianQuotient", "Ker eta with the projected bracket is not abelian");
  }
}

// f = target_frame * source_frame^{-1}; orthonormal frames invert by P^T G.
Matrix frame_map(const AcmStructure& s, const Matrix& source, const Matrix& target) {
  return target * (source.transpose() * s.metric);
}

std::set<StructureTag> class_tags(const AcmStructure& s) { return classify_structure(s).tags; }

CheckReport verify_with_tags(const AcmStructure& s, const std::set<StructureTag>& source_tags, const Matrix& f,
                             const AcmStructure& target);

}  // namespace

CheckReport verify_isomorphism(const AcmStructure& s, const Matrix& f, const AcmStructure& target) {
  return verify_with_tags(s, class_tags(s), f, target);
}

namespace {

// Rows of an orthonormal-frame map are rational vectors times one scalar each;
// splitting f = diag(c) r keeps the dense transport in rational arithmetic.
bool split_rows(const Matrix& f, Matrix& diag, Matrix& r) {
  const std::size_t n = f.rows();
  diag = Matrix(n, n);
  r = Matrix(n, f.cols());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = 0;
    while (k < f.cols() && f(i, k).is_zero()) ++k;
    if (k == f.cols()) return false;
    const Scalar c = f(i, k);
    const Scalar inv = Scalar(1) / c;
    for (std::size_t j = 0; j < f.cols(); ++j) {
      r(i, j) = f(i, j) * inv;
      if (!r(i, j).is_rational()) return false;
    }
    diag(i, i) = c;
  }
  return true;
}

AcmStructure push_forward_split(const AcmStructure& s, const Matrix& f) {
  Matrix diag, r;
  if (s.uses_float() || !split_rows(f, diag, r)) return push_forward(s, f);
  return push_forward(push_forward(s, r), diag);
}

CheckReport verify_with_tags(const AcmStructure& s, const std::set<StructureTag>& source_tags, const Matrix& f,
                             const AcmStructure& target) {
  const AcmStructure p = push_forward_split(s, f);
  const std::size_t n = s.dim();
  CheckReport r;
  Matrix brackets(n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      brackets.set_col(i * n + j, p.algebra.basis_bracket(i, j) - target.algebra.basis_bracket(i, j));
    }
  }
  r.add("brackets", brackets);
  r.add("phi", p.phi - target.phi);
  r.add("xi", p.xi - target.xi);
  r.add("eta", p.eta - target.eta);
  r.add("metric", p.metric - target.metric);
  Check tags;
  tags.name = "class tags";
  tags.ok = source_tags == class_tags(target);
  tags.residual = tags.ok ? Scalar(0) : Scalar(1);
  r.checks.push_back(tags);
  return r;
}

}  // namespace

HeisenbergIso classify_nilpotent_aqs(const AcmStructure& s) {
  const auto tags = common_hypotheses(s, StructureTag::AntiQuasiSasakian, "NotAqs");
  central_quotient_is_abelian(s);
  const AdaptedFrame af = adapted_frame_prechecked(s);
  const std::size_t n = af.n;
  const std::size_t dim = s.dim();

  HeisenbergIso iso;
  iso.family = HeisenbergFamily::H4n1;
  iso.n = n;
  iso.weights = af.weights;
  iso.frame = af.frame;
  iso.target = weighted_heisenberg_4n1(n, af.weights).structures[0];

  // images of the frame in the target basis: e_i, e_{n+i}, e_{2n+i}, e_{3n+i}
  // go to tau_i, -tau_{2n+i}, tau_{n+i}, tau_{3n+i}
  Matrix t(dim, dim);
  t(0, 0) = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    t(i, i) = 1;
    t(2 * n + i, n + i) = -1;
    t(n + i, 2 * n + i) = 1;
    t(3 * n + i, 3 * n + i) = 1;
  }
  iso.f = frame_map(s, af.frame, t);
  iso.verification = verify_with_tags(s, tags, iso.f, iso.target);
  for (const auto& c : iso.verification.checks) {
    if (!c.ok) throw internal_error("IsomorphismCheckFailed", "pushed-forward structure differs in " + c.name);
  }
  return iso;
}

HeisenbergIso classify_nilpotent_qs(const AcmStructure& s) {
  const auto tags = common_hypotheses(s, StructureTag::QuasiSasakian, "NotQs");
  central_quotient_is_abelian(s);
  const std::size_t dim = s.dim();
  const bool flt = s.uses_float();
  const Matrix phi = flt ? s.phi.to_float() : s.phi;
  const Matrix& g = s.metric;
  const AOperators ops = operators_a_psi(s);
  const Matrix ga = g * ops.a;
  if (!(ga == ga.transpose())) throw internal_error("ANotSymmetric", "A = phi psi is not g-symmetric");

  auto spec = spectrum_on_kernel(s, ops.a);
  // largest |mu| first; for equal magnitude the positively oriented block first
  std::stable_sort(spec.begin(), spec.end(), [](const Eigenspace& x, const Eigenspace& y) {
    const Scalar ax = x.value.abs(), ay = y.value.abs();
    if (!(ax == ay)) return ay < ax;
    return x.value < y.value;
  });

  std::vector<Scalar> weights;
  std::vector<int> orientation;
  std::vector<Vector> firsts, seconds;
  for (const auto& e : spec) {
    if (e.value.is_zero()) throw precondition_error("NotMaximalRank", "A is not invertible on Ker eta");
    const int sign = e.value.sign() < 0 ? 1 : -1;  // weight = -mu
    Matrix remaining = e.basis;
    while (remaining.cols() > 0) {
      const Vector x = rref(remaining.transpose()).reduced.row(0);
      const Vector px = phi * x;
      const Matrix constraints =
          Matrix::from_rows({remaining.transpose() * (g * x), remaining.transpose() * (g * px)}, remaining.cols());
      const Matrix ns = nullspace(constraints);
      remaining = ns.cols() == 0 ? Matrix(dim, 0) : remaining * ns;
      if (remaining.cols() % 2 != 0) throw internal_error("OddEigenspace", "eigenspace of A is not phi-invariant");
      const Vector ei = (Scalar(1) / Scalar::sqrt(dot(x, g * x))) * x;
      firsts.push_back(ei);
      seconds.push_back(Scalar(sign) * (phi * ei));
      weights.push_back(e.value.abs());
      orientation.push_back(sign);
    }
  }
  const std::size_t n = weights.size();
  if (2 * n + 1 != dim) throw internal_error("FrameIncomplete", "phi-basis does not span Ker eta");

  std::vector<Vector> cols{s.xi};
  cols.insert(cols.end(), firsts.begin(), firsts.end());
  cols.insert(cols.end(), seconds.begin(), seconds.end());

  HeisenbergIso iso;
  iso.family = HeisenbergFamily::H2n1;
  iso.n = n;
  iso.weights = weights;
  iso.orientation = orientation;
  iso.frame = Matrix::from_columns(cols, dim);
  iso.target = weighted_heisenberg_2n1(n, weights, orientation).structure;
  iso.f = frame_map(s, iso.frame, Matrix::identity(dim));
  iso.verification = verify_with_tags(s, tags, iso.f, iso.target);
  for (const auto& c : iso.verification.checks) {
    if (!c.ok) throw internal_error("IsomorphismCheckFailed", "pushed-forward structure differs in " + c.name);
  }
  return iso;
}

bool reeb_uniqueness_check(const AcmStructure& s) {
  const std::size_t n = s.dim();
  const Matrix dm = ce_d(s.algebra, s.eta_form()).to_matrix();
  std::vector<Vector> rows{s.eta};
  for (std::size_t k = 0; k < n; ++k) rows.push_back(dm.col(k));  // d eta(x, b_k) = sum_i x_i dm(i, k)
  const Matrix sys = Matrix::from_rows(rows, n);
  Vector rhs = zero_vector(n + 1);
  rhs[0] = 1;
  if (!is_zero(sys * s.xi - rhs)) return false;
  return rank(sys) == n;
}

}  // namespace aqs
