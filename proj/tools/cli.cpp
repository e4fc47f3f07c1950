#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "aqs/acm.hpp"
#include "aqs/classifier.hpp"
#include "aqs/constructors.hpp"
#include "aqs/error.hpp"
#include "aqs/exterior.hpp"
#include "aqs/invariant_forms.hpp"
#include "aqs/io.hpp"

namespace aqs::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

struct Options {
  std::string command;
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 1;
  std::string batch;
  std::string out_dir;
  std::string output;
  double tolerance = -1;

  std::string input;
  // construct
  std::string what = "heisenberg";
  std::string family = "4n1";
  std::string weights = "1";
  std::string signs;
  std::string mode = "exact";
  std::size_t model_dim = 4;
  // extend
  std::string kahler, cocycle;
  // classify
  std::size_t conjugations = 0;
  // invariant-forms
  std::string algebra, torus, j_file, k_list;
  bool strict = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

std::vector<Scalar> parse_scalars(const std::string& list, bool float_mode) {
  std::vector<Scalar> out;
  for (const auto& t : split(list, ',')) out.push_back(Scalar::parse(t, float_mode));
  return out;
}

std::vector<std::size_t> parse_indices(const std::string& list, std::size_t dim) {
  std::vector<std::size_t> out;
  for (const auto& t : split(list, ',')) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != t.size() || v < 1 || static_cast<std::size_t>(v) > dim) {
      throw parse_error("IndexOutOfRange", "index '" + t + "' is not in 1.." + std::to_string(dim));
    }
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  return out;
}

Json tags_json(const StructureClass& c) {
  Json t = Json::array();
  for (auto tag : c.tags) t.push_back(to_string(tag));
  return t;
}

Json checks_json(const CheckReport& r) {
  Json a = Json::array();
  for (const auto& c : r.checks) a.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"residual", c.residual.str()}});
  return a;
}

Json scalars_json(const std::vector<Scalar>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::string join(const Json& arr) {
  std::string s;
  for (const auto& x : arr) {
    if (!s.empty()) s += ", ";
    s += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return s;
}

// ---------------------------------------------------------------- commands

Json cmd_check(const Options& o, std::ostream& out) {
  const Json doc = io::load_file(o.input);
  io::ReadOptions ro;
  ro.check_jacobi = false;
  const LieAlgebra l = io::algebra_from_json(doc, ro);
  Json result = Json::object();
  result["dim"] = l.dim();
  const auto violations = jacobi_check(l);
  Json vj = Json::array();
  for (const auto& v : violations) {
    vj.push_back(Json{{"triple", {v.i + 1, v.j + 1, v.k + 1}},
                      {"names", {l.basis_names()[v.i], l.basis_names()[v.j], l.basis_names()[v.k]}},
                      {"residual", io::vector_to_json(v.residual)}});
  }
  result["jacobi"] = Json{{"ok", violations.empty()}, {"violations", vj}};
  if (!o.json) {
    out << "dim " << l.dim() << "\n";
    for (const auto& v : vj) out << "Jacobi violated on (" << join(v["names"]) << ")\n";
  }
  if (!violations.empty()) {
    Error e = parse_error("JacobiViolation", std::to_string(violations.size()) + " violating triple(s)");
    throw std::make_pair(e, result);
  }
  const CentralSeries cs = lower_central_series(l);
  result["nilpotent"] = cs.nilpotent;
  result["nilpotency_step"] = cs.nilpotent ? Json(cs.step) : Json(nullptr);
  result["center_dim"] = center(l).rank();
  result["killing"] = to_string(definiteness(killing_form(l)));
  if (!o.json) {
    out << "nilpotent " << (cs.nilpotent ? "yes (step " + std::to_string(cs.step) + ")" : "no") << "\n";
    out << "center dim " << result["center_dim"].get<std::size_t>() << "\n";
    out << "Killing form " << result["killing"].get<std::string>() << "\n";
  }
  Json structs = Json::array();
  bool all_valid = true;
  if (doc.contains("phi") || doc.contains("structures")) {
    for (const auto& ns : io::structures_from_json(doc)) {
      const CheckReport r = validate_acm(ns.structure);
      all_valid = all_valid && r.ok();
      structs.push_back(Json{{"name", ns.name}, {"valid", r.ok()}, {"checks", checks_json(r)}});
      if (!o.json) {
        out << ns.name << ": " << (r.ok() ? "valid" : "INVALID");
        for (const auto& c : r.checks) {
          if (!c.ok) out << " [" << c.name << " residual " << c.residual << "]";
        }
        out << "\n";
      }
    }
  }
  result["structures"] = structs;
  if (!all_valid) throw std::make_pair(precondition_error("InvalidStructure", "structure fails its axioms"), result);
  return result;
}

Json iso_json(const HeisenbergIso& iso, const std::string& name) {
  Json nf = Json::object();
  nf["family"] = to_string(iso.family);
  nf["structure"] = name;
  nf["n"] = iso.n;
  nf["weights"] = scalars_json(iso.weights);
  if (!iso.orientation.empty()) nf["orientation"] = iso.orientation;
  nf["F"] = io::matrix_to_json(iso.f);
  nf["verified"] = iso.verification.ok();
  return nf;
}

Json cmd_classify(const Options& o, std::ostream& out) {
  const Json doc = io::load_file(o.input);
  const auto list = io::structures_from_json(doc);
  Json result = Json::object();
  Json structs = Json::array();
  std::vector<StructureClass> classes;
  for (const auto& ns : list) {
    require_valid(ns.structure);
    classes.push_back(classify_structure(ns.structure));
    const EtaRank er = rank_of_eta(ns.structure.algebra, ns.structure.eta_form());
    structs.push_back(Json{{"name", ns.name},
                           {"tags", tags_json(classes.back())},
                           {"rank_of_eta", er.rank},
                           {"xi_killing", xi_killing_check(ns.structure).killing}});
    if (!o.json) out << ns.name << ": " << join(structs.back()["tags"]) << "; rank(eta) = " << er.rank << "\n";
  }
  result["structures"] = structs;
  Json all_tags = Json::array();
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (auto tag : classes[i].tags) all_tags.push_back(std::string(to_string(tag)) + "(" + list[i].name + ")");
  }
  if (list.size() == 3) {
    const bool d = double_aqs_check(list[0].structure, list[1].structure, list[2].structure).ok();
    result["double_aqs_sasakian"] = d;
    if (d) all_tags.push_back(to_string(StructureTag::DoubleAqsSasakian));
    if (!o.json) out << "double aqS-Sasakian: " << (d ? "yes" : "no") << "\n";
  } else {
    result["double_aqs_sasakian"] = nullptr;
  }
  result["tags"] = all_tags;

  const AcmStructure& first = list.front().structure;
  if (!lower_central_series(first.algebra).nilpotent) {
    throw std::make_pair(precondition_error("NotNilpotent", "Lie algebra is not nilpotent"), result);
  }
  std::size_t pick = list.size();
  bool aqs = true;
  for (std::size_t i = 0; i < list.size() && pick == list.size(); ++i) {
    if (classes[i].has(StructureTag::AntiQuasiSasakian)) pick = i;
  }
  for (std::size_t i = 0; i < list.size() && pick == list.size(); ++i) {
    if (classes[i].has(StructureTag::QuasiSasakian)) {
      pick = i;
      aqs = false;
    }
  }
  if (pick == list.size()) {
    throw std::make_pair(precondition_error("NotAqs", "no structure is anti-quasi-Sasakian or quasi-Sasakian"), result);
  }
  const AcmStructure& s = list[pick].structure;
  HeisenbergIso iso;
  try {
    iso = aqs ? classify_nilpotent_aqs(s) : classify_nilpotent_qs(s);
  } catch (const Error& e) {
    throw std::make_pair(e, result);
  }
  result["normal_form"] = iso_json(iso, list[pick].name);
  if (!o.json) {
    out << "normal form: h^{" << to_string(iso.family) << "}, n = " << iso.n << ", weights ("
        << join(result["normal_form"]["weights"]) << ") via " << list[pick].name << "\n";
    out << "F =\n" << to_string(iso.f) << "\n";
  }

  if (o.conjugations > 0) {
    std::mt19937_64 rng(o.seed);
    std::size_t recovered = 0;
    auto expected = iso.weights;
    std::sort(expected.begin(), expected.end());
    for (std::size_t t = 0; t < o.conjugations; ++t) {
      const AcmStructure c = change_basis(s, random_unimodular(s.dim(), rng));
      const HeisenbergIso ci = aqs ? classify_nilpotent_aqs(c) : classify_nilpotent_qs(c);
      auto w = ci.weights;
      std::sort(w.begin(), w.end());
      if (w == expected && ci.verification.ok()) ++recovered;
    }
    result["conjugations"] = Json{{"seed", o.seed}, {"count", o.conjugations}, {"recovered", recovered}};
    if (!o.json) out << "random conjugations: " << recovered << "/" << o.conjugations << " recovered\n";
    if (recovered != o.conjugations) {
      throw std::make_pair(internal_error("IsomorphismCheckFailed", "a conjugated structure was misclassified"),
                           result);
    }
  }
  return result;
}

Json cmd_construct(const Options& o, std::ostream& out) {
  const io::Mode mode = o.mode == "float" ? io::Mode::Float : io::Mode::Exact;
  if (o.mode != "float" && o.mode != "exact") throw parse_error("BadOption", "--mode must be exact or float");
  Json file;
  Json result = Json::object();
  if (o.what == "heisenberg") {
    auto w = parse_scalars(o.weights, mode == io::Mode::Float);
    if (w.empty()) throw parse_error("BadOption", "--weights needs at least one value");
    result["family"] = o.family;
    result["n"] = w.size();
    result["weights"] = scalars_json(w);
    if (o.family == "4n1") {
      const Heisenberg4 h = weighted_heisenberg_4n1(w.size(), w);
      std::vector<io::NamedStructure> list;
      for (int i = 0; i < 3; ++i) list.push_back({"phi" + std::to_string(i + 1), h.structures[i]});
      file = io::structures_to_json(list, mode);
    } else if (o.family == "2n1") {
      std::vector<int> signs;
      for (const auto& t : split(o.signs, ',')) signs.push_back(t[0] == '-' ? -1 : 1);
      file = io::structure_to_json(weighted_heisenberg_2n1(w.size(), w, signs).structure, mode);
    } else {
      throw parse_error("BadOption", "--dim-family must be 4n1 or 2n1");
    }
  } else if (o.what == "su2") {
    file = io::algebra_to_json(su2(), mode);
  } else if (o.what == "su3") {
    file = io::algebra_to_json(su3(), mode);
  } else if (o.what == "abelian") {
    file = io::algebra_to_json(abelian(o.model_dim), mode);
  } else if (o.what == "kahler") {
    if (o.model_dim % 2 != 0) throw parse_error("BadOption", "kahler needs an even --dim");
    file = io::kahler_to_json(standard_kahler(o.model_dim / 2), mode);
  } else {
    throw parse_error("BadOption", "unknown model '" + o.what + "'");
  }
  result["file"] = file;
  if (!o.output.empty()) io::save_file(o.output, file);
  if (!o.json && o.output.empty()) out << io::dump(file);
  return result;
}

Json cmd_extend(const Options& o, std::ostream& out) {
  const KahlerLieAlgebra h = io::kahler_from_json(io::load_file(o.kahler));
  const Json cdoc = io::load_file(o.cocycle);
  const KForm omega = io::form_from_json(cdoc, io::mode_of(cdoc), h.algebra.dim());
  const Cocycle c = make_cocycle(h, omega);
  const AcmStructure s = central_extension(h, c);
  const StructureClass cls = classify_structure(s);
  const io::Mode mode = s.uses_float() ? io::Mode::Float : io::Mode::Exact;
  Json file = io::structure_to_json(s, mode);
  Json result = Json::object();
  result["invariance"] = to_string(c.type);
  result["tags"] = tags_json(cls);
  result["file"] = file;
  if (!o.output.empty()) io::save_file(o.output, file);
  if (!o.json) {
    if (o.output.empty()) {
      out << io::dump(file);
    } else {
      out << "cocycle " << to_string(c.type) << "; tags: " << join(result["tags"]) << "\n";
    }
  }
  return result;
}

Json cmd_cohomology(const Options& o, std::ostream& out) {
  const Json doc = io::load_file(o.input);
  const LieAlgebra l = io::algebra_from_json(doc);
  const auto b = ce_betti_all(l);
  bool sym = true;
  long euler = 0;
  for (std::size_t k = 0; k < b.size(); ++k) {
    sym = sym && b[k] == b[b.size() - 1 - k];
    euler += (k % 2 == 0 ? 1 : -1) * static_cast<long>(b[k]);
  }
  Json result = Json{{"dim", l.dim()}, {"betti", b}, {"poincare_symmetric", sym}, {"euler_characteristic", euler}};
  if (!o.json) {
    out << "betti";
    for (auto x : b) out << " " << x;
    out << "\npoincare symmetric " << (sym ? "yes" : "no") << "\n";
  }
  if (doc.contains("eta") || doc.contains("structures")) {
    const AcmStructure s = io::structure_from_json(doc);
    const EtaRank er = rank_of_eta(l, s.eta_form());
    result["eta_rank"] = Json{{"rank", er.rank}, {"power", er.power}, {"maximal", er.maximal}};
    if (!o.json) out << "rank(eta) " << er.rank << (er.maximal ? " (maximal)" : "") << "\n";
  }
  return result;
}

Json cmd_curvature(const Options& o, std::ostream& out) {
  const AcmStructure s = io::structure_from_json(io::load_file(o.input));
  require_valid(s);
  const Curvature curv(s, levi_civita(s));
  const std::size_t n = s.dim();
  // g-orthogonal basis of Ker eta, unnormalized so it stays rational
  const Matrix d = nullspace(Matrix::from_rows({s.eta}, n));
  std::vector<Vector> ortho;
  for (const auto& v : d.columns()) {
    Vector w = v;
    for (const auto& u : ortho) w = w - (dot(u, s.metric * v) / dot(u, s.metric * u)) * u;
    ortho.push_back(w);
  }
  Json kxi = Json::array();
  for (const auto& v : ortho) kxi.push_back(Json{{"vector", io::vector_to_json(v)}, {"K", curv.sectional(s.xi, v).str()}});
  const Scalar sc = curv.scalar();
  Json result = Json{{"scalar", sc.str()}, {"ricci", io::matrix_to_json(curv.ricci())}, {"k_xi", kxi}};
  if (!o.json) {
    out << "scalar curvature " << sc << "\n";
    for (std::size_t i = 0; i < ortho.size(); ++i) out << "K(xi, v" << i + 1 << ") = " << kxi[i]["K"].get<std::string>() << "\n";
  }
  return result;
}

Json cmd_invariant_forms(const Options& o, std::ostream& out) {
  const Json adoc = io::load_file(o.algebra);
  const LieAlgebra g = io::algebra_from_json(adoc);
  Json result = Json::object();
  Json warnings = Json::array();
  Subspace k;
  if (!o.k_list.empty()) {
    std::vector<Vector> kv;
    for (auto i : parse_indices(o.k_list, g.dim())) kv.push_back(unit_vector(g.dim(), i));
    k = Subspace::span(kv, g.dim());
    if (!is_torus_centralizer(g, k)) {
      if (o.strict) throw precondition_error("NotTorusCentralizer", "k is not the centralizer of a torus");
      warnings.push_back("k is not the centralizer of a torus");
    }
  } else {
    std::vector<Vector> sv;
    for (auto i : parse_indices(o.torus, g.dim())) sv.push_back(unit_vector(g.dim(), i));
    k = centralizer_of_torus(g, Subspace::span(sv, g.dim()));
  }
  const ReductiveSplit r = reductive_split(g, k);
  const auto sol = invariant_closed_2forms(r);
  result["k_dim"] = k.rank();
  result["center_k_dim"] = subalgebra_center(g, k).rank();
  result["m_dim"] = r.m_dim();
  result["m_basis"] = io::matrix_to_json(r.m.basis.transpose());
  result["solution_dim"] = sol.size();
  Json sj = Json::array(), mj = Json::array();
  bool round_trip = true, derivation = true;
  std::vector<Vector> moments;
  for (const auto& w : sol) {
    sj.push_back(io::form_to_json(w));
    const MomentElement me = moment_element(r, w);
    moments.push_back(me.z);
    mj.push_back(io::vector_to_json(me.z));
    round_trip = round_trip && form_from_moment(r, me.z) == w;
    derivation = derivation && is_derivation(g, extension_endomorphism(r, w));
  }
  result["solutions"] = sj;
  result["moments"] = mj;
  result["moment_rank"] = moments.empty() ? 0 : rank(Matrix::from_columns(moments, g.dim()));
  result["moment_round_trip"] = round_trip;
  result["extension_is_derivation"] = derivation;

  std::vector<std::pair<std::string, Matrix>> js;
  if (!o.j_file.empty()) {
    const Json jdoc = io::load_file(o.j_file);
    const Json& m = jdoc.is_object() && jdoc.contains("J") ? jdoc.at("J") : jdoc;
    js.emplace_back("file", io::matrix_from_json(m, io::mode_of(jdoc), r.m_dim(), r.m_dim()));
  } else if (r.m_dim() == 2) {
    const auto cands = planar_complex_structures(r);
    js.emplace_back("planar+", cands[0]);
    js.emplace_back("planar-", cands[1]);
  }
  Json cj = Json::array();
  bool certified = !js.empty();
  for (const auto& [src, j] : js) {
    Type11Report worst;
    bool all_ok = true;
    std::size_t anti = 0;
    CheckReport jc = complex_structure_checks(r, j);
    for (const auto& w : sol) {
      const Type11Report t = type_11_check(r, w, j, sol);
      all_ok = all_ok && t.omega_checks.ok();
      anti = t.anti_invariant_rank;
    }
    const bool j_ok = jc.ok();
    certified = certified && j_ok && all_ok && anti == 0;
    cj.push_back(Json{{"source", src},
                      {"J", io::matrix_to_json(j)},
                      {"j_ok", j_ok},
                      {"j_checks", checks_json(jc)},
                      {"type_11", all_ok},
                      {"anti_invariant_rank", anti}});
  }
  result["complex_structures"] = cj;
  result["type_11_certified"] = js.empty() ? Json(nullptr) : Json(certified);
  result["warnings"] = warnings;
  if (!o.json) {
    for (const auto& w : warnings) out << "warning: " << w.get<std::string>() << "\n";
    out << "k dim " << k.rank() << ", m dim " << r.m_dim() << "\n";
    out << "closed invariant 2-forms: dimension " << sol.size() << "\n";
    for (std::size_t i = 0; i < moments.size(); ++i) out << "  Z_" << i + 1 << " = (" << join(mj[i]) << ")\n";
    out << "moment round trip " << (round_trip ? "ok" : "FAILED") << "\n";
    for (const auto& c : cj) {
      out << "J[" << c["source"].get<std::string>() << "]: " << (c["j_ok"].get<bool>() ? "valid" : "fails preconditions")
          << ", (1,1) " << (c["type_11"].get<bool>() ? "yes" : "no") << ", anti-invariant rank "
          << c["anti_invariant_rank"].get<std::size_t>() << "\n";
    }
    if (js.empty()) out << "(1,1) certification needs --J when dim m > 2\n";
  }
  if (!js.empty() && !certified) {
    const bool any_j_bad = std::any_of(cj.begin(), cj.end(), [](const Json& c) { return !c["j_ok"].get<bool>(); });
    throw std::make_pair(any_j_bad ? precondition_error("InvalidComplexStructure", "J fails its preconditions")
                                   : internal_error("NotType11", "an invariant closed form is not of type (1,1)"),
                         result);
  }
  return result;
}

using Handler = Json (*)(const Options&, std::ostream&);

Handler handler_for(const std::string& cmd) {
  if (cmd == "check") return cmd_check;
  if (cmd == "classify") return cmd_classify;
  if (cmd == "construct") return cmd_construct;
  if (cmd == "extend") return cmd_extend;
  if (cmd == "cohomology") return cmd_cohomology;
  if (cmd == "curvature") return cmd_curvature;
  if (cmd == "invariant-forms") return cmd_invariant_forms;
  return nullptr;
}

const char* family_name(ErrorFamily f) {
  switch (f) {
    case ErrorFamily::Parse: return "parse";
    case ErrorFamily::Precondition: return "precondition";
    case ErrorFamily::Internal: return "internal";
  }
  return "internal";
}

std::string input_bytes(const Options& o) {
  std::string bytes;
  for (const auto* p : {&o.input, &o.kahler, &o.cocycle, &o.algebra, &o.j_file}) {
    if (p->empty()) continue;
    std::ifstream in(*p, std::ios::binary);
    if (!in) continue;
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes += ss.str();
  }
  return bytes;
}

// One invocation; human output goes to `out`, the report is returned.
Json execute(const Options& o, std::ostream& out, std::ostream& err, int& status) {
  const auto t0 = std::chrono::steady_clock::now();
  Json report = Json::object();
  report["command"] = o.command;
  report["input"] = o.input.empty() ? Json(nullptr) : Json(fs::path(o.input).filename().string());
  report["input_digest"] = fnv1a_hex(input_bytes(o));
  Json result = nullptr, error = nullptr;
  status = 0;
  const auto fail = [&](const Error& e) {
    status = static_cast<int>(e.family());
    error = Json{{"family", family_name(e.family())}, {"code", e.code()}, {"message", e.what()}};
    if (!o.json) err << "error [" << e.code() << "]: " << e.what() << "\n";
  };
  try {
    result = handler_for(o.command)(o, out);
  } catch (const std::pair<Error, Json>& p) {
    result = p.second;
    fail(p.first);
  } catch (const Error& e) {
    fail(e);
  } catch (const std::invalid_argument& e) {
    fail(parse_error("BadArgument", e.what()));
  } catch (const std::exception& e) {
    fail(internal_error("Unexpected", e.what()));
  }
  report["status"] = status == 0 ? "ok" : "error";
  report["exit_code"] = status;
  report["result"] = result;
  report["error"] = error;
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (o.timing) report["wall_ms"] = ms;
  if (o.timing && !o.json) err << "time " << std::fixed << std::setprecision(1) << ms << " ms\n";
  return report;
}

int run_batch(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(o.batch)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  const fs::path dest = o.out_dir.empty() ? fs::path(o.batch) / "reports" : fs::path(o.out_dir);
  fs::create_directories(dest);
  std::vector<std::future<int>> jobs;
  for (const auto& f : files) {
    jobs.push_back(std::async(std::launch::async, [&o, f, dest] {
      Options one = o;
      one.input = f.string();
      one.json = true;
      std::ostringstream sink, esink;
      int status = 0;
      Json report = execute(one, sink, esink, status);
      io::save_file((dest / (f.stem().string() + "." + o.command + ".json")).string(), report);
      return status;
    }));
  }
  int worst = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const int s = jobs[i].get();
    worst = std::max(worst, s);
    if (!o.json) out << files[i].filename().string() << ": " << (s == 0 ? "ok" : "exit " + std::to_string(s)) << "\n";
  }
  if (o.json) {
    Json summary = Json{{"command", o.command}, {"batch", files.size()}, {"worst_exit_code", worst}};
    out << io::dump(summary);
  }
  (void)err;
  return worst;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"aqs: almost contact metric Lie algebras"};
  app.set_help_all_flag("--help-all");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable report on stdout");
  app.add_flag("--timing", o.timing, "Include wall time in the report");
  app.add_option("--seed", o.seed, "Seed for randomized runs");
  app.add_option("--batch", o.batch, "Process every *.json in a directory")->check(CLI::ExistingDirectory);
  app.add_option("--out-dir", o.out_dir, "Report directory for --batch");
  app.add_option("--tolerance", o.tolerance, "Float-mode tolerance (default AQS_TOLERANCE or 1e-9)");

  const bool batch = std::find(args.begin(), args.end(), "--batch") != args.end();
  auto input_opt = [&](CLI::App* sc) {
    auto* opt = sc->add_option("file", o.input, "Input file");
    if (!batch) opt->required();
  };

  auto* check = app.add_subcommand("check", "Validate an algebra or structure file");
  input_opt(check);
  auto* classify = app.add_subcommand("classify", "Class tags and Heisenberg normal form");
  input_opt(classify);
  classify->add_option("--conjugations", o.conjugations, "Also classify N random conjugates (uses --seed)");
  auto* construct = app.add_subcommand("construct", "Emit a model algebra or structure");
  construct->add_option("model", o.what, "heisenberg | su2 | su3 | abelian | kahler")->required();
  construct->add_option("--dim-family", o.family, "4n1 or 2n1");
  construct->add_option("--weights", o.weights, "Comma-separated weights");
  construct->add_option("--signs", o.signs, "2n1 only: comma-separated +/- orientations");
  construct->add_option("--dim", o.model_dim, "Dimension for abelian / kahler");
  construct->add_option("--mode", o.mode, "exact or float");
  construct->add_option("-o,--output", o.output, "Write the file here instead of stdout");
  auto* extend = app.add_subcommand("extend", "Central extension of a Kahler algebra by a cocycle");
  extend->add_option("--kahler", o.kahler, "Kahler algebra file")->required();
  extend->add_option("--cocycle", o.cocycle, "2-form file")->required();
  extend->add_option("-o,--output", o.output, "Write the structure here instead of stdout");
  auto* coh = app.add_subcommand("cohomology", "Chevalley-Eilenberg Betti numbers");
  input_opt(coh);
  auto* curv = app.add_subcommand("curvature", "Levi-Civita curvature of the metric");
  input_opt(curv);
  auto* inv = app.add_subcommand("invariant-forms", "Closed invariant 2-forms on g/k");
  inv->add_option("--algebra", o.algebra, "Compact semisimple algebra file")->required();
  inv->add_option("--torus", o.torus, "1-based basis indices spanning the torus");
  inv->add_option("--k", o.k_list, "1-based basis indices spanning k directly");
  inv->add_option("--J", o.j_file, "Complex structure on m (matrix file)");
  inv->add_flag("--strict", o.strict, "Reject k that is not a torus centralizer");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (o.command == "invariant-forms" && o.torus.empty() && o.k_list.empty()) {
    err << "invariant-forms: one of --torus or --k is required\n";
    return 1;
  }
  if (o.tolerance > 0) set_tolerance(o.tolerance);
  if (!o.batch.empty()) return run_batch(o, out, err);

  int status = 0;
  Json report = execute(o, out, err, status);
  if (o.json) out << io::dump(report);
  return status;
}

}  // namespace aqs::cli
