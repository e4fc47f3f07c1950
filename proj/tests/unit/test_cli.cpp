#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "aqs/io.hpp"
#include "cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
namespace test = aqs::test;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = aqs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

aqs::io::Json run_json(std::vector<std::string> args, int expected) {
  args.insert(args.begin(), "--json");
  const Outcome o = run(args);
  CHECK(o.code == expected);
  return aqs::io::parse(o.out);
}

}  // namespace

TEST_CASE("fnv1a digest") {
  CHECK(aqs::cli::fnv1a_hex("") == "cbf29ce484222325");
  CHECK(aqs::cli::fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("exit codes by error family") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"check", test::data_path("h5_1.json")}).code == 0);
  CHECK(run({"check", test::data_path("jacobi_violator.json")}).code == 2);
  CHECK(run({"check", "/nonexistent.json"}).code == 2);
  CHECK(run({"classify", test::data_path("h5_0.json")}).code == 3);
  CHECK(run({"classify", test::data_path("su2_r2.json")}).code == 3);
}

TEST_CASE("classify report") {
  const auto r = run_json({"classify", test::data_path("h9_1_2.json")}, 0);
  CHECK(r["status"] == "ok");
  CHECK(r["error"].is_null());
  CHECK(r["result"]["normal_form"]["weights"] == aqs::io::Json::array({"2", "1"}));
  CHECK(r["result"]["double_aqs_sasakian"] == false);
  CHECK(run_json({"classify", test::data_path("h9_1_1.json")}, 0)["result"]["double_aqs_sasakian"] == true);
  CHECK_FALSE(r.contains("wall_ms"));
  const auto e = run_json({"classify", test::data_path("h5_0.json")}, 3);
  CHECK(e["error"]["family"] == "precondition");
  CHECK(e["error"]["code"] == "NotMaximalRank");
}

TEST_CASE("reports are deterministic without --timing") {
  const auto a = run({"--json", "classify", test::data_path("h13_1_2_3.json"), "--conjugations", "2", "--seed", "7"});
  const auto b = run({"--json", "classify", test::data_path("h13_1_2_3.json"), "--conjugations", "2", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto t = run_json({"--timing", "cohomology", test::data_path("h3.json")}, 0);
  CHECK(t.contains("wall_ms"));
}

TEST_CASE("input digest matches the file bytes") {
  const std::string path = test::data_path("su2.json");
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  const auto r = run_json({"cohomology", path}, 0);
  CHECK(r["input_digest"] == aqs::cli::fnv1a_hex(os.str()));
  CHECK(r["result"]["betti"] == aqs::io::Json::array({1, 0, 0, 1}));
}

TEST_CASE("construct then classify") {
  const fs::path tmp = fs::temp_directory_path() / ("aqs_cli_" + std::to_string(test::seed()));
  fs::create_directories(tmp);
  const std::string file = (tmp / "h.json").string();
  CHECK(run({"construct", "heisenberg", "--dim-family", "4n1", "--weights", "1/2,3", "-o", file}).code == 0);
  const auto r = run_json({"classify", file}, 0);
  CHECK(r["result"]["normal_form"]["weights"] == aqs::io::Json::array({"3", "1/2"}));
  fs::remove_all(tmp);
}

TEST_CASE("batch mode writes one report per input") {
  const fs::path tmp = fs::temp_directory_path() / ("aqs_batch_" + std::to_string(test::seed()));
  fs::create_directories(tmp);
  for (const char* f : {"h3.json", "h5_1.json", "su2.json"})
    fs::copy_file(test::data_path(f), tmp / f, fs::copy_options::overwrite_existing);
  const Outcome o = run({"--batch", tmp.string(), "cohomology"});
  CHECK(o.code == 0);
  CHECK(fs::exists(tmp / "reports" / "h5_1.cohomology.json"));
  const auto rep = aqs::io::load_file((tmp / "reports" / "h3.cohomology.json").string());
  CHECK(rep["result"]["betti"] == aqs::io::Json::array({1, 2, 2, 1}));
  fs::remove_all(tmp);
}

TEST_CASE("invariant-forms requires a subalgebra") {
  CHECK(run({"invariant-forms", "--algebra", test::data_path("su3.json")}).code == 1);
  const auto r = run_json({"invariant-forms", "--algebra", test::data_path("su3.json"), "--torus", "7,8", "--J",
                           test::data_path("su3_J.json")},
                          0);
  CHECK(r["result"]["solution_dim"] == 2);
  CHECK(r["result"]["type_11_certified"] == true);
}
