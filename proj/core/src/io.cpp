#include "aqs/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "aqs/error.hpp"

namespace aqs::io {

namespace {

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw parse_error("MissingField", std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw parse_error("MalformedFile", std::string(what) + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::size_t as_index(const Json& j, std::size_t dim, const char* what) {
  const std::size_t i = as_size(j, what);
  if (i < 1 || i > dim) {
    std::ostringstream os;
    os << what << " " << i << " out of range 1.." << dim;
    throw parse_error("IndexOutOfRange", os.str());
  }
  return i - 1;
}

std::size_t index_from_key(const std::string& key, std::size_t dim) {
  std::size_t pos = 0;
  long long v = -1;
  try {
    v = std::stoll(key, &pos, 10);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != key.size() || v < 1 || static_cast<std::size_t>(v) > dim) {
    throw parse_error("IndexOutOfRange", "bracket coefficient key '" + key + "' is not an index in 1.." + std::to_string(dim));
  }
  return static_cast<std::size_t>(v - 1);
}

void put_algebra_fields(Json& doc, const LieAlgebra& l, Mode mode) {
  doc["mode"] = to_string(mode);
  doc["dim"] = l.dim();
  doc["basis_names"] = l.basis_names();
  Json brackets = Json::array();
  for (const auto& [key, v] : l.brackets()) {
    Json coeffs = Json::object();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_zero()) coeffs[std::to_string(k + 1)] = scalar_to_json(v[k]);
    }
    brackets.push_back(Json{{"i", key.first + 1}, {"j", key.second + 1}, {"coeffs", coeffs}});
  }
  doc["brackets"] = brackets;
}

}  // namespace

const char* to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

Mode mode_of(const Json& doc) {
  if (!doc.is_object() || !doc.contains("mode")) return Mode::Exact;
  const Json& m = doc.at("mode");
  if (m == "exact") return Mode::Exact;
  if (m == "float") return Mode::Float;
  throw parse_error("MalformedFile", "mode must be \"exact\" or \"float\"");
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw parse_error("MalformedFile", e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("FileNotFound", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void save_file(const std::string& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parse_error("FileNotWritable", "cannot write '" + path + "'");
  out << dump(doc);
}

Json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const Json& j, Mode mode) {
  if (!j.is_string()) throw parse_error("ScalarParse", "scalars must be strings, got " + j.dump());
  return Scalar::parse(j.get<std::string>(), mode == Mode::Float);
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Vector vector_from_json(const Json& j, Mode mode, std::size_t n) {
  if (!j.is_array() || j.size() != n) {
    throw parse_error("MalformedFile", "expected a vector of length " + std::to_string(n));
  }
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x, mode));
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r)));
  return out;
}

Matrix matrix_from_json(const Json& j, Mode mode, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) {
    throw parse_error("MalformedFile", "expected a matrix with " + std::to_string(rows) + " rows");
  }
  std::vector<Vector> rs;
  for (const auto& r : j) rs.push_back(vector_from_json(r, mode, cols));
  return Matrix::from_rows(rs, cols);
}

Matrix matrix_from_json(const Json& j, Mode mode) {
  if (!j.is_array()) throw parse_error("MalformedFile", "expected a matrix");
  return matrix_from_json(j, mode, j.size(), j.size());
}

Json algebra_to_json(const LieAlgebra& l, Mode mode) {
  Json doc = Json::object();
  put_algebra_fields(doc, l, mode);
  return doc;
}

LieAlgebra algebra_from_json(const Json& doc, const ReadOptions& opt) {
  const Mode mode = mode_of(doc);
  const std::size_t dim = as_size(field(doc, "dim"), "dim");
  std::vector<std::string> names;
  if (doc.contains("basis_names")) {
    const Json& bn = doc.at("basis_names");
    if (!bn.is_array() || bn.size() != dim) throw parse_error("MalformedFile", "basis_names must list dim names");
    for (const auto& n : bn) {
      if (!n.is_string()) throw parse_error("MalformedFile", "basis names must be strings");
      names.push_back(n.get<std::string>());
    }
  }
  LieAlgebra::BracketTable table;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  const Json& brackets = field(doc, "brackets");
  if (!brackets.is_array()) throw parse_error("MalformedFile", "brackets must be a list");
  for (const auto& rec : brackets) {
    const std::size_t i = as_index(field(rec, "i"), dim, "i");
    const std::size_t j = as_index(field(rec, "j"), dim, "j");
    if (i == j) throw parse_error("MalformedFile", "bracket of a basis vector with itself");
    const auto key = std::minmax(i, j);
    if (!seen.insert(key).second) {
      std::ostringstream os;
      os << "duplicate bracket (" << key.first + 1 << ", " << key.second + 1 << ")";
      throw parse_error("DuplicateBracket", os.str());
    }
    const Json& coeffs = field(rec, "coeffs");
    if (!coeffs.is_object()) throw parse_error("MalformedFile", "coeffs must be an object");
    Vector v = zero_vector(dim);
    for (const auto& [k, c] : coeffs.items()) v[index_from_key(k, dim)] = scalar_from_json(c, mode);
    table.emplace(std::make_pair(i, j), std::move(v));
  }
  LieAlgebra l(dim, std::move(table), std::move(names));
  if (opt.check_jacobi) require_jacobi(l);
  return l;
}

Json form_to_json(const KForm& f) {
  Json terms = Json::array();
  for (const auto& [t, c] : f.terms()) {
    Json idx = Json::array();
    for (auto i : t) idx.push_back(i + 1);
    terms.push_back(Json{{"indices", idx}, {"coeff", scalar_to_json(c)}});
  }
  return Json{{"degree", f.degree()}, {"dim", f.dim()}, {"terms", terms}};
}

KForm form_from_json(const Json& doc, Mode mode, std::size_t dim) {
  const std::size_t degree = as_size(field(doc, "degree"), "degree");
  if (doc.contains("dim") && as_size(doc.at("dim"), "dim") != dim) {
    throw parse_error("DimensionMismatch", "form dimension does not match the algebra");
  }
  KForm f(dim, degree);
  const Json& terms = field(doc, "terms");
  if (!terms.is_array()) throw parse_error("MalformedFile", "terms must be a list");
  for (const auto& t : terms) {
    const Json& idx = field(t, "indices");
    if (!idx.is_array() || idx.size() != degree) throw parse_error("MalformedFile", "term has the wrong number of indices");
    Tuple tuple;
    for (const auto& i : idx) tuple.push_back(as_index(i, dim, "index"));
    f.add(tuple, scalar_from_json(field(t, "coeff"), mode));
  }
  return f;
}

Json structure_to_json(const AcmStructure& s, Mode mode) {
  Json doc = algebra_to_json(s.algebra, mode);
  doc["phi"] = matrix_to_json(s.phi);
  doc["xi"] = vector_to_json(s.xi);
  doc["eta"] = vector_to_json(s.eta);
  doc["metric"] = matrix_to_json(s.metric);
  return doc;
}

Json structures_to_json(const std::vector<NamedStructure>& list, Mode mode) {
  if (list.empty()) throw std::invalid_argument("structures_to_json: empty list");
  Json doc = algebra_to_json(list.front().structure.algebra, mode);
  const AcmStructure& first = list.front().structure;
  doc["xi"] = vector_to_json(first.xi);
  doc["eta"] = vector_to_json(first.eta);
  doc["metric"] = matrix_to_json(first.metric);
  Json arr = Json::array();
  for (const auto& ns : list) {
    Json rec = Json::object();
    rec["name"] = ns.name;
    rec["phi"] = matrix_to_json(ns.structure.phi);
    if (!(ns.structure.xi == first.xi)) rec["xi"] = vector_to_json(ns.structure.xi);
    if (!(ns.structure.eta == first.eta)) rec["eta"] = vector_to_json(ns.structure.eta);
    if (!(ns.structure.metric == first.metric)) rec["metric"] = matrix_to_json(ns.structure.metric);
    arr.push_back(rec);
  }
  doc["structures"] = arr;
  return doc;
}

std::vector<NamedStructure> structures_from_json(const Json& doc, const ReadOptions& opt) {
  const Mode mode = mode_of(doc);
  const LieAlgebra l = algebra_from_json(doc, opt);
  const std::size_t n = l.dim();
  const auto read_one = [&](const Json& rec, const Json& fallback) {
    const auto pick = [&](const char* name) -> const Json& {
      if (rec.contains(name)) return rec.at(name);
      return field(fallback, name);
    };
    AcmStructure s;
    s.algebra = l;
    s.phi = matrix_from_json(field(rec, "phi"), mode, n, n);
    s.xi = vector_from_json(pick("xi"), mode, n);
    s.eta = vector_from_json(pick("eta"), mode, n);
    s.metric = matrix_from_json(pick("metric"), mode, n, n);
    return s;
  };
  std::vector<NamedStructure> out;
  if (doc.contains("structures")) {
    const Json& arr = doc.at("structures");
    if (!arr.is_array() || arr.empty()) throw parse_error("MalformedFile", "structures must be a nonempty list");
    std::size_t idx = 0;
    for (const auto& rec : arr) {
      ++idx;
      const std::string name = rec.contains("name") && rec.at("name").is_string() ? rec.at("name").get<std::string>()
                                                                                  : "phi" + std::to_string(idx);
      out.push_back({name, read_one(rec, doc)});
    }
  } else {
    out.push_back({"phi", read_one(doc, doc)});
  }
  return out;
}

AcmStructure structure_from_json(const Json& doc, const ReadOptions& opt) {
  auto list = structures_from_json(doc, opt);
  return list.front().structure;
}

Json kahler_to_json(const KahlerLieAlgebra& h, Mode mode) {
  Json doc = algebra_to_json(h.algebra, mode);
  doc["J"] = matrix_to_json(h.j);
  doc["k"] = matrix_to_json(h.k);
  return doc;
}

KahlerLieAlgebra kahler_from_json(const Json& doc) {
  const Mode mode = mode_of(doc);
  KahlerLieAlgebra h;
  h.algebra = algebra_from_json(doc);
  const std::size_t n = h.algebra.dim();
  h.j = matrix_from_json(field(doc, "J"), mode, n, n);
  h.k = matrix_from_json(field(doc, "k"), mode, n, n);
  return h;
}

Json frame_to_json(const AdaptedFrame& f) {
  Json w = Json::array();
  for (const auto& x : f.weights) w.push_back(scalar_to_json(x));
  return Json{{"n", f.n}, {"weights", w}, {"frame", matrix_to_json(f.frame)}};
}

}  // namespace aqs::io
