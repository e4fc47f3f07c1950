#include "aqs/adapted.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "aqs/error.hpp"
#include "aqs/exterior.hpp"
#include "aqs/polynomial.hpp"

namespace aqs {

namespace {

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j).to_double();
  }
  return e;
}

struct Restriction {
  Matrix basis;  // D basis, ambient coordinates
  Matrix op;     // psi^2 on D in that basis
};

Restriction restrict_to_kernel(const AcmStructure& s, const Matrix& op) {
  const std::size_t n = s.dim();
  Restriction r;
  if (s.uses_float() || op.uses_float()) {
    // orthonormal complement of eta from a Householder QR keeps the entries of order one
    Eigen::MatrixXd col(n, 1);
    for (std::size_t i = 0; i < n; ++i) col(static_cast<Eigen::Index>(i), 0) = s.eta[i].to_double();
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(col);
    const Eigen::MatrixXd q = qr.householderQ();
    r.basis = Matrix(n, n - 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j + 1 < n; ++j)
        r.basis(i, j) = Scalar::from_double(q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j + 1)));
    r.op = r.basis.transpose() * (op * r.basis);
  } else {
    r.basis = nullspace(Matrix::from_rows({s.eta}, n));
    r.op = inverse(r.basis.transpose() * r.basis) * (r.basis.transpose() * (op * r.basis));
  }
  const Matrix image = op * r.basis;
  if (!(r.basis * r.op == image)) {
    throw internal_error("KernelNotInvariant", "operator does not preserve Ker eta");
  }
  return r;
}

std::vector<Eigenspace> exact_spectrum(const Restriction& r) {
  const auto cp = characteristic_polynomial(r.op);
  poly::Poly p;
  for (const auto& c : cp) {
    if (!c.is_rational()) {
      throw precondition_error("IrrationalSpectrum",
                               "characteristic polynomial of psi^2 has coefficients outside Q; retry in float mode");
    }
    p.push_back(c.rational());
  }
  const auto roots = poly::analyze_roots(p);
  if (!roots.splits_over_q()) {
    throw precondition_error("IrrationalSpectrum", "spectrum of psi^2 is not rational; retry in float mode");
  }
  std::vector<Eigenspace> out;
  const std::size_t m = r.op.rows();
  for (const auto& mu : roots.rational_roots) {
    const Matrix shifted = r.op - Scalar(mu) * Matrix::identity(m);
    const Matrix ns = nullspace(shifted);
    out.push_back({Scalar(mu), ns.cols(), r.basis * ns});
  }
  return out;
}

std::vector<Eigenspace> float_spectrum(const AcmStructure& s, const Restriction& r, const Matrix& op) {
  const Matrix g = s.metric.to_float();
  const Matrix bt = r.basis.transpose();
  const Eigen::MatrixXd a = to_eigen(bt * g * op * r.basis);
  const Eigen::MatrixXd b = to_eigen(bt * g * r.basis);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (a + a.transpose()),
                                                                    0.5 * (b + b.transpose()));
  if (solver.info() != Eigen::Success) throw internal_error("EigenFailure", "generalized eigensolver failed");
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end());
  // eigenvectors come g-orthonormal from the solver; clustering is the only
  // tolerance decision, so no rank test runs on ill-conditioned data
  const double tau = tolerance();
  const Eigen::MatrixXd& vecs = solver.eigenvectors();
  std::vector<Eigen::Index> order(ev.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return solver.eigenvalues()(a) < solver.eigenvalues()(b); });
  std::vector<Eigenspace> out;
  const Matrix basis = r.basis.to_float();
  for (std::size_t i = 0; i < ev.size();) {
    std::size_t j = i + 1;
    double sum = ev[i];
    while (j < ev.size() && std::abs(ev[j] - ev[i]) <= tau * std::max(1.0, std::abs(ev[i]))) sum += ev[j++];
    Matrix cols(basis.cols(), j - i);
    for (std::size_t c = i; c < j; ++c) {
      for (std::size_t row = 0; row < basis.cols(); ++row)
        cols(row, c - i) = Scalar::from_double(vecs(static_cast<Eigen::Index>(row), order[c]));
    }
    out.push_back({Scalar::from_double(sum / static_cast<double>(j - i)), j - i, basis * cols});
    i = j;
  }
  (void)op;
  return out;
}

double g_dot(const Matrix& g, const Vector& x, const Vector& y) { return dot(x, g * y).to_double(); }

// Float counterpart of the exact block extraction below: each block is
// projected out and the four smallest residuals are dropped by count.
void float_blocks(const Eigenspace& e, const Matrix& g, const AOperators& ops, const Matrix& phi,
                  std::vector<Scalar>& weights, std::vector<std::array<Vector, 4>>& blocks) {
  const Scalar lambda = Scalar::sqrt(-e.value);
  std::vector<Vector> rem = e.basis.columns();
  while (!rem.empty()) {
    const Vector x = Scalar::from_double(1.0 / std::sqrt(g_dot(g, rem[0], rem[0]))) * rem[0];
    const std::array<Vector, 4> block{x, (Scalar(1) / lambda) * (ops.a * x), phi * x,
                                      (Scalar(1) / lambda) * (ops.psi * x)};
    blocks.push_back(block);
    weights.push_back(lambda);
    for (auto& v : rem) {
      for (const auto& b : block) v = v - Scalar::from_double(g_dot(g, v, b)) * b;
    }
    std::stable_sort(rem.begin(), rem.end(),
                     [&](const Vector& a, const Vector& b) { return g_dot(g, a, a) > g_dot(g, b, b); });
    rem.resize(rem.size() - 4);
    for (std::size_t k = 0; k < rem.size(); ++k) {
      for (std::size_t l = 0; l < k; ++l) rem[k] = rem[k] - Scalar::from_double(g_dot(g, rem[k], rem[l])) * rem[l];
      rem[k] = Scalar::from_double(1.0 / std::sqrt(g_dot(g, rem[k], rem[k]))) * rem[k];
    }
  }
}

}  // namespace

void require_aqs_maximal_rank(const AcmStructure& s) {
  const StructureClass c = classify_structure(s);
  if (!c.has(StructureTag::AntiQuasiSasakian)) {
    throw precondition_error("NotAqs", "structure is not anti-quasi-Sasakian");
  }
  if (!rank_of_eta(s.algebra, s.eta_form()).maximal) {
    throw precondition_error("NotMaximalRank", "eta does not have maximal rank");
  }
}

std::vector<Eigenspace> psi_squared_spectrum(const AcmStructure& s) {
  return psi_squared_spectrum(s, operators_a_psi(s));
}

std::vector<Eigenspace> spectrum_on_kernel(const AcmStructure& s, const Matrix& op) {
  const Restriction r = restrict_to_kernel(s, op);
  return (s.uses_float() || op.uses_float()) ? float_spectrum(s, r, op) : exact_spectrum(r);
}

std::vector<Eigenspace> psi_squared_spectrum(const AcmStructure& s, const AOperators& ops) {
  auto spec = spectrum_on_kernel(s, ops.psi * ops.psi);
  for (const auto& e : spec) {
    if (e.value.is_zero()) throw precondition_error("NotMaximalRank", "psi is not invertible on Ker eta");
    if (e.value.sign() > 0) throw internal_error("PositiveEigenvalue", "psi^2 has a positive eigenvalue");
  }
  return spec;
}

AdaptedFrame adapted_frame(const AcmStructure& s) {
  require_aqs_maximal_rank(s);
  return adapted_frame_prechecked(s);
}

AdaptedFrame adapted_frame_prechecked(const AcmStructure& s) {
  const std::size_t dim = s.dim();
  const AOperators ops = operators_a_psi(s);
  const auto spec = psi_squared_spectrum(s, ops);
  const Matrix& g = s.metric;
  const Matrix phi = s.uses_float() ? s.phi.to_float() : s.phi;

  std::vector<Scalar> weights;
  std::vector<std::array<Vector, 4>> blocks;
  for (const auto& e : spec) {
    if (e.multiplicity % 4 != 0) {
      throw internal_error("SpectrumNotQuaternionic", "eigenspace dimension of psi^2 is not a multiple of 4");
    }
    if (s.uses_float()) {
      float_blocks(e, g, ops, phi, weights, blocks);
      continue;
    }
    const Scalar lambda = Scalar::sqrt(-e.value);
    Matrix remaining = e.basis;
    while (remaining.cols() > 0) {
      // first row of the reduced echelon basis: lexicographically least support
      const Echelon ech = rref(remaining.transpose());
      const Vector x = ech.reduced.row(0);
      const std::vector<Vector> block{x, ops.a * x, phi * x, ops.psi * x};
      const Matrix constraints = Matrix::from_rows(
          [&] {
            std::vector<Vector> rows;
            for (const auto& w : block) rows.push_back((remaining.transpose() * (g * w)));
            return rows;
          }(),
          remaining.cols());
      const Matrix ns = nullspace(constraints);
      remaining = ns.cols() == 0 ? Matrix(dim, 0) : remaining * ns;

      const Scalar inv_norm = Scalar(1) / Scalar::sqrt(dot(x, g * x));
      const Vector ei = inv_norm * x;
      blocks.push_back({ei, (Scalar(1) / lambda) * (ops.a * ei), phi * ei, (Scalar(1) / lambda) * (ops.psi * ei)});
      weights.push_back(lambda);
    }
  }

  AdaptedFrame f;
  f.n = weights.size();
  f.weights = weights;
  std::vector<Vector> cols{s.xi};
  for (std::size_t part = 0; part < 4; ++part) {
    for (const auto& b : blocks) cols.push_back(b[part]);
  }
  f.frame = Matrix::from_columns(cols, dim);
  if (f.frame.cols() != dim) throw internal_error("FrameIncomplete", "adapted frame does not span the algebra");
  return f;
}

CheckReport frame_checks(const AcmStructure& s, const AdaptedFrame& f) {
  const AOperators ops = operators_a_psi(s);
  const std::size_t n = f.n;
  CheckReport r;
  r.add("orthonormal", f.frame.transpose() * s.metric * f.frame - Matrix::identity(s.dim()));
  r.add("xi", f.vector(0) - s.xi);
  for (std::size_t i = 1; i <= n; ++i) {
    const Scalar lam = f.weights[i - 1];
    const Vector e = f.vector(i);
    const std::string tag = " (" + std::to_string(i) + ")";
    r.add("e_{n+i} - Ae_i/lambda" + tag, f.vector(n + i) - (Scalar(1) / lam) * (ops.a * e));
    r.add("e_{2n+i} - phi e_i" + tag, f.vector(2 * n + i) - s.phi * e);
    r.add("e_{3n+i} - psi e_i/lambda" + tag, f.vector(3 * n + i) - (Scalar(1) / lam) * (ops.psi * e));
    r.add("psi^2 e_i + lambda^2 e_i" + tag, ops.psi * (ops.psi * e) + (lam * lam) * e);
  }
  return r;
}

CoframeReport coframe_expansion_check(const AcmStructure& s, const AdaptedFrame& f) {
  require_aqs_maximal_rank(s);
  const std::size_t n = f.n;
  const std::size_t dim = s.dim();
  if (4 * n + 1 != dim) throw precondition_error("FrameMismatch", "frame does not match the algebra dimension");
  const AOperators ops = operators_a_psi(s);

  KForm ea(dim, 2), ephi(dim, 2), epsi(dim, 2);
  for (std::size_t i = 1; i <= n; ++i) {
    const Scalar lam = f.weights[i - 1];
    ea.add({i, n + i}, -lam);
    ea.add({2 * n + i, 3 * n + i}, -lam);
    ephi.add({i, 2 * n + i}, Scalar(-1));
    ephi.add({3 * n + i, n + i}, Scalar(-1));
    epsi.add({i, 3 * n + i}, -lam);
    epsi.add({n + i, 2 * n + i}, -lam);
  }
  const struct {
    const char* name;
    KForm actual;
    KForm expected;
  } cases[] = {
      {"A", pullback(ops.a_form, f.frame), ea},
      {"Phi", pullback(fundamental_form(s), f.frame), ephi},
      {"Psi", pullback(ops.psi_form, f.frame), epsi},
  };
  CoframeReport rep;
  for (const auto& c : cases) {
    for (std::size_t r = 0; r < c.actual.size(); ++r) {
      if (c.actual.coeff_at(r) == c.expected.coeff_at(r)) continue;
      const Tuple t = tuple_unrank(r, 2);
      rep.mismatches.push_back({c.name, t[0], t[1], c.expected.coeff_at(r), c.actual.coeff_at(r)});
    }
  }
  return rep;
}

}  // namespace aqs
