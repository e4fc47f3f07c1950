#pragma once

#include <string>
#include <vector>

#include "aqs/acm.hpp"
#include "aqs/adapted.hpp"
#include "aqs/constructors.hpp"
#include "aqs/lie_algebra.hpp"
#include "json.hpp"

namespace aqs::io {

using Json = nlohmann::ordered_json;

/// Scalars are strings: "p/q" (or surd expressions) in exact mode, decimals in float mode.
enum class Mode { Exact, Float };
const char* to_string(Mode m);
Mode mode_of(const Json& doc);

struct ReadOptions {
  bool check_jacobi = true;
};

/// Parse family errors on malformed text, unknown fields types or bad scalars.
Json parse(const std::string& text);
std::string dump(const Json& doc);  // two-space indent, trailing newline
Json load_file(const std::string& path);
void save_file(const std::string& path, const Json& doc);

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, Mode mode);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, Mode mode, std::size_t n);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, Mode mode, std::size_t rows, std::size_t cols);
/// Square matrix of any size.
Matrix matrix_from_json(const Json& j, Mode mode);

/// {"mode", "dim", "basis_names", "brackets": [{"i", "j", "coeffs": {"k": s}}]}, 1-indexed.
Json algebra_to_json(const LieAlgebra& l, Mode mode = Mode::Exact);
LieAlgebra algebra_from_json(const Json& doc, const ReadOptions& opt = {});

/// {"degree", "dim", "terms": [{"indices": [...], "coeff": s}]}, 1-indexed.
Json form_to_json(const KForm& f);
KForm form_from_json(const Json& doc, Mode mode, std::size_t dim);

struct NamedStructure {
  std::string name;
  AcmStructure structure;
};
/// Algebra fields plus "phi", "xi", "eta", "metric"; or a "structures" list of
/// named records sharing the algebra, each with its own "phi" and optionally
/// its own "xi", "eta", "metric" overriding the top level.
Json structure_to_json(const AcmStructure& s, Mode mode = Mode::Exact);
Json structures_to_json(const std::vector<NamedStructure>& list, Mode mode = Mode::Exact);
std::vector<NamedStructure> structures_from_json(const Json& doc, const ReadOptions& opt = {});
AcmStructure structure_from_json(const Json& doc, const ReadOptions& opt = {});

/// Algebra fields plus "J" and "k".
Json kahler_to_json(const KahlerLieAlgebra& h, Mode mode = Mode::Exact);
KahlerLieAlgebra kahler_from_json(const Json& doc);

Json frame_to_json(const AdaptedFrame& f);

}  // namespace aqs::io
