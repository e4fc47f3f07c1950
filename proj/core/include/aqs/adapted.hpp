#pragma once

#include <cstddef>
#include <vector>

#include "aqs/acm.hpp"

namespace aqs {

/// Eigenvalue of psi^2 restricted to D = Ker eta, with its multiplicity and an
/// eigenspace basis in ambient coordinates.
struct Eigenspace {
  Scalar value;  // -lambda^2
  std::size_t multiplicity = 0;
  Matrix basis;  // ambient_dim x multiplicity
};

/// Spectrum of a g-self-adjoint operator preserving Ker eta, restricted there.
std::vector<Eigenspace> spectrum_on_kernel(const AcmStructure& s, const Matrix& op);

/// Distinct eigenvalues in ascending order (largest weight first).
/// Exact mode decides rationality of the spectrum exactly and throws
/// Precondition/IrrationalSpectrum when it does not split over Q.
std::vector<Eigenspace> psi_squared_spectrum(const AcmStructure& s);
std::vector<Eigenspace> psi_squared_spectrum(const AcmStructure& s, const AOperators& ops);

/// Frame {xi, e_1..e_n, e_{n+1}..e_{2n}, e_{2n+1}..e_{3n}, e_{3n+1}..e_{4n}}.
struct AdaptedFrame {
  std::size_t n = 0;
  std::vector<Scalar> weights;  // descending, positive
  Matrix frame;                 // columns in the order above, ambient coordinates
  Vector vector(std::size_t l) const { return frame.col(l); }  // 0 = xi
};

/// Requires an anti-quasi-Sasakian structure of maximal rank.
AdaptedFrame adapted_frame(const AcmStructure& s);
/// As above without re-checking the aqS and maximal rank hypotheses.
AdaptedFrame adapted_frame_prechecked(const AcmStructure& s);

struct CoframeMismatch {
  std::string form;  // "A", "Phi" or "Psi"
  std::size_t a = 0, b = 0;  // frame indices (0 = xi)
  Scalar expected, actual;
};
struct CoframeReport {
  std::vector<CoframeMismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
};
/// Re-expresses the forms of (A, Phi, Psi) in the coframe dual to `f`.
CoframeReport coframe_expansion_check(const AcmStructure& s, const AdaptedFrame& f);

/// Orthonormality and the companion relations of the frame.
CheckReport frame_checks(const AcmStructure& s, const AdaptedFrame& f);

/// Shared preconditions of the maximal-rank pipelines.
void require_aqs_maximal_rank(const AcmStructure& s);

}  // namespace aqs
