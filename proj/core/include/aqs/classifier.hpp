#pragma once

#include <cstddef>
#include <vector>

#include "aqs/acm.hpp"
#include "aqs/adapted.hpp"

namespace aqs {

enum class HeisenbergFamily { H4n1, H2n1 };
const char* to_string(HeisenbergFamily f);

/// Certified isomorphism F onto a weighted Heisenberg normal form.
struct HeisenbergIso {
  HeisenbergFamily family = HeisenbergFamily::H4n1;
  std::size_t n = 0;
  std::vector<Scalar> weights;  // positive, descending
  std::vector<int> orientation;  // qS only: sign of each eigenvalue block of A
  Matrix f;                      // target coordinates = f * source coordinates
  AcmStructure target;
  Matrix frame;                  // source frame mapped onto the target basis
  CheckReport verification;
};

/// Nilpotent anti-quasi-Sasakian structure of maximal rank onto (h^{4n+1}_lambda, phi_1).
HeisenbergIso classify_nilpotent_aqs(const AcmStructure& s);
/// Nilpotent quasi-Sasakian structure of maximal rank onto h^{2n+1}_lambda.
HeisenbergIso classify_nilpotent_qs(const AcmStructure& s);

/// Entry-wise comparison of push_forward(s, f) with `target`.
CheckReport verify_isomorphism(const AcmStructure& s, const Matrix& f, const AcmStructure& target);

/// True iff xi is the only vector with eta(xi) = 1 and d eta(xi, .) = 0.
bool reeb_uniqueness_check(const AcmStructure& s);

}  // namespace aqs
