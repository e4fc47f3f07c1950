#pragma once

#include <cstddef>
#include <vector>

#include "aqs/kform.hpp"
#include "aqs/lie_algebra.hpp"

namespace aqs {

/// Chevalley-Eilenberg differential with d eta(X,Y) = -eta([X,Y]).
KForm ce_d(const LieAlgebra& l, const KForm& omega);

/// (d omega)(X_0..X_k) = sum_{i<j} (-1)^{i+j} omega([X_i,X_j], X_0..^i..^j..X_k),
/// evaluated directly; slow, used to cross-check ce_d.
Scalar ce_d_evaluate(const LieAlgebra& l, const KForm& omega, const std::vector<Vector>& args);

/// Columns: d of each basis k-form, as sparse coefficient maps over (k+1)-tuple ranks.
std::vector<SparseRow> ce_d_columns(const LieAlgebra& l, std::size_t k);

std::size_t ce_betti(const LieAlgebra& l, std::size_t k);
std::vector<std::size_t> ce_betti_all(const LieAlgebra& l);

struct EtaRank {
  std::size_t rank = 0;   // 2s+1 if eta ^ (d eta)^s != 0, else 2s
  std::size_t power = 0;  // s: largest power with (d eta)^s != 0
  bool odd = false;
  bool maximal = false;   // rank == dim
};
EtaRank rank_of_eta(const LieAlgebra& l, const KForm& eta);

/// (d eta)^p as a 2p-form.
KForm wedge_power(const KForm& two_form, std::size_t p);

}  // namespace aqs
