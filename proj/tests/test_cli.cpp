#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "strip_poisson/io.hpp"
#include "strip_poisson/scenario.hpp"

using namespace strip;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("strip_poisson_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

json base_config(const fs::path& out) {
  json j;
  j["grid"] = {{"n1", 16}, {"L", 6.0}, {"n2", 257}};
  j["source"] = {{"preset", "gaussian_mode1"}};
  j["output"] = out.string();
  return j;
}

int run_cli(const std::string& args, std::string* err_out = nullptr) {
  const fs::path errfile = fs::temp_directory_path() / "strip_poisson_cli_err.txt";
  const std::string cmd =
      std::string(STRIP_POISSON_CLI_PATH) + " " + args + " 2>" + errfile.string();
  const int rc = std::system(cmd.c_str());
  if (err_out) {
    std::ifstream is(errfile);
    std::stringstream ss;
    ss << is.rdbuf();
    *err_out = ss.str();
  }
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config validation rejects unknown keys and bad values") {
  json j = base_config(temp_dir("cfg"));
  j["typo_key"] = 1;
  CHECK_THROWS_AS(parse_config(j), config_error);

  json j2 = base_config(temp_dir("cfg2"));
  j2["grid"]["n1"] = 13;
  CHECK_THROWS_AS(parse_config(j2), config_error);

  json j3 = base_config(temp_dir("cfg3"));
  j3["source"] = {{"preset", "does_not_exist"}};
  CHECK_THROWS_AS(parse_config(j3), config_error);

  json j4 = base_config(temp_dir("cfg4"));
  j4["source"] = {{"preset", "zero"}, {"table", "x.csv"}};
  CHECK_THROWS_AS(parse_config(j4), config_error);

  json j5 = base_config(temp_dir("cfg5"));
  j5["moment_policy"] = "mystery";
  CHECK_THROWS_AS(parse_config(j5), config_error);
}

TEST_CASE("zero-source scenario produces zero norms and all artifacts") {
  const fs::path out = temp_dir("zero");
  json j = base_config(out);
  j["source"] = {{"preset", "zero"}};
  j["weight_specs"] = json::array({{{"m", 0}, {"alpha", 1.0}}});
  j["diagnostics"] = json::array({"residual", "parseval"});
  const RunArtifacts art = run_scenario(parse_config(j));
  CHECK(art.report.u.max_abs() == 0.0);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "solution.csv"));
  CHECK(fs::exists(out / "slices.csv"));
  const json rep = json::parse(slurp(out / "report.json"));
  CHECK(rep["norms"][0]["value"].get<double>() == 0.0);
  CHECK(rep["checks"][0]["relative_l2"].get<double>() == 0.0);
}

TEST_CASE("manufactured scenario reports the solution error") {
  const fs::path out = temp_dir("manufactured");
  json j;
  j["grid"] = {{"n1", 32}, {"L", 8.0}, {"n2", 1025}};
  j["source"] = {{"preset", "manufactured_rhs"}};
  j["reference_preset"] = "gaussian_mode1";
  j["weight_specs"] = json::array({{{"m", 2}, {"alpha", 1.0}}, {{"m", 0}, {"alpha", 0.5}, {"p", 1}}});
  j["diagnostics"] = json::array({"residual", "decay_exp"});
  j["output"] = out.string();
  const RunArtifacts art = run_scenario(parse_config(j));
  const json rep = art.report_json;
  CHECK(rep["relative_error"].get<double>() <= 1e-6);
  CHECK(rep["solve"]["norm_ratio"].get<double>() > 0.0);
  CHECK(rep["norms"].size() == 2);
  CHECK(rep["norms"][0]["value"].get<double>() > 0.0);
  CHECK(rep["norms"][1]["value"].get<double>() > 0.0);
}

TEST_CASE("delta sign convention negates the source") {
  const fs::path out = temp_dir("sign");
  json j = base_config(out);
  j["source"] = {{"preset", "manufactured_rhs"}};
  j["grid"] = {{"n1", 32}, {"L", 8.0}, {"n2", 513}};
  j["sign_convention"] = "delta";  // Laplace u = f: solution flips sign
  j["reference_preset"] = "gaussian_mode1";
  const RunArtifacts art = run_scenario(parse_config(j));
  // now u approx -cos(2 pi y1) e^{-y2^2}: the reported distance is ~2 norms
  CHECK(art.report_json["relative_error"].get<double>() > 1.0);
}

TEST_CASE("solution table round trips bit-exactly through sample(table)") {
  const fs::path out = temp_dir("roundtrip");
  json j = base_config(out);
  const RunArtifacts art = run_scenario(parse_config(j));
  const StripGrid g(16, 6.0, 257);
  const StripField back = read_field_csv((out / "solution.csv").string(), g);
  REQUIRE(back.v.size() == art.report.u.v.size());
  for (size_t i = 0; i < back.v.size(); ++i) CHECK(back.v[i] == art.report.u.v[i]);
}

TEST_CASE("determinism: identical config gives identical artifacts") {
  const fs::path out = temp_dir("det");
  json j = base_config(out);
  j["weight_specs"] = json::array({{{"m", 1}, {"alpha", 0.5}}});

  run_scenario(parse_config(j));
  const std::string sol1 = slurp(out / "solution.csv");
  const std::string sli1 = slurp(out / "slices.csv");
  json r1 = json::parse(slurp(out / "report.json"));

  set_max_threads(1);  // worker count must not affect any byte
  run_scenario(parse_config(j));
  set_max_threads(0);
  const std::string sol2 = slurp(out / "solution.csv");
  const std::string sli2 = slurp(out / "slices.csv");
  json r2 = json::parse(slurp(out / "report.json"));

  CHECK(sol1 == sol2);
  CHECK(sli1 == sli2);
  r1.erase("generated_at");
  r2.erase("generated_at");
  CHECK(r1.dump() == r2.dump());
}

TEST_CASE("cli binary: run, exit codes and machine-readable errors") {
  const fs::path dir = temp_dir("cli");

  // valid run
  {
    const fs::path cfg = dir / "ok.json";
    std::ofstream(cfg) << base_config(dir / "ok_out").dump();
    CHECK(run_cli("run " + cfg.string()) == 0);
    CHECK(fs::exists(dir / "ok_out" / "report.json"));
  }
  // config validation failure -> exit 2 with CONFIG_INVALID
  {
    const fs::path cfg = dir / "bad.json";
    json j = base_config(dir / "bad_out");
    j["grid"]["n2"] = 64;  // even
    std::ofstream(cfg) << j.dump();
    std::string err;
    CHECK(run_cli("run " + cfg.string(), &err) == 2);
    CHECK(json::parse(err)["error"]["code"] == "CONFIG_INVALID");
  }
  // moment violation -> exit 3 with the measured moment in the payload
  {
    const fs::path cfg = dir / "moment.json";
    json j = base_config(dir / "moment_out");
    j["source"] = {{"preset", "unit_mass"}};
    std::ofstream(cfg) << j.dump();
    std::string err;
    CHECK(run_cli("run " + cfg.string(), &err) == 3);
    const json e = json::parse(err);
    CHECK(e["error"]["code"] == "MOMENT_VIOLATION");
    CHECK(std::abs(e["error"]["data"]["mass"].get<double>() - 1.0) < 1e-6);
  }
  // missing config file -> exit 2
  CHECK(run_cli("run /nonexistent/nowhere.json") == 2);
  // unknown verify suite -> exit 2
  CHECK(run_cli("verify bogus_suite") == 2);
  // threads flag accepted
  {
    const fs::path cfg = dir / "threads.json";
    std::ofstream(cfg) << base_config(dir / "threads_out").dump();
    CHECK(run_cli("--threads 1 run " + cfg.string()) == 0);
  }
}

TEST_CASE("cli binary: verify table1 suite passes") {
  CHECK(run_cli("verify table1") == 0);
}

TEST_CASE("output directory override via environment variable") {
  const fs::path out = temp_dir("envdir");
  json j = base_config(temp_dir("envdir_ignored"));
  setenv("STRIP_POISSON_OUTPUT", out.string().c_str(), 1);
  const ScenarioConfig cfg = parse_config(j);
  unsetenv("STRIP_POISSON_OUTPUT");
  CHECK(cfg.output_dir == out.string());
}

TEST_CASE("constructive method through the scenario runner") {
  const fs::path out = temp_dir("constructive");
  json j;
  j["grid"] = {{"n1", 16}, {"L", 8.0}, {"n2", 1025}};
  j["source"] = {{"preset", "ring_dipole"}};
  j["method"] = {{"constructive", {{"R", 1.5}}}};
  j["output"] = out.string();
  const RunArtifacts art = run_scenario(parse_config(j));
  CHECK(art.report.method == SolveMethod::constructive);
  CHECK(fs::exists(out / "report.json"));
}

TEST_CASE("table source through the scenario runner") {
  const fs::path out = temp_dir("table_src");
  const StripGrid g(16, 6.0, 257);
  const StripField f = sample("hermite_mean", g);
  const fs::path table = out / "f.csv";
  write_field_csv(f, table.string());

  json j;
  j["grid"] = {{"n1", 16}, {"L", 6.0}, {"n2", 257}};
  j["source"] = {{"table", table.string()}, {"decay", {{"class", "schwartz"}}}};
  j["output"] = (out / "run").string();
  const RunArtifacts art = run_scenario(parse_config(j));
  CHECK(art.report.moment_mass == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(norm_grid(art.report.u) > 0.0);
}
