#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(HARDY_CLI_PATH) + " " + args;
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_temp(const char* name, const std::string& body) {
  const std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kCritical3 = R"({
  "geometry": {"kind": "euclidean", "n": 3},
  "weight_u": {"family": "power", "exponent": -4},
  "weight_v": {"family": "power", "exponent": -1},
  "problem": {"q": 1}
})";

}  // namespace

TEST_CASE("the constant subcommand reports the located supremum") {
  const std::string cfg = write_temp("hardy_sub_e3.json", kCritical3);
  REQUIRE(run_cli("constant --config " + cfg + " --out /tmp/hardy_sub_out1.json") == 0);
  const json rep = json::parse(slurp("/tmp/hardy_sub_out1.json"));
  CHECK(rep["version"] == "1.0.0");
  CHECK(rep.contains("config"));
  CHECK(rep.contains("timing_ms"));
  CHECK(rep["warnings"].is_array());
  CHECK(rep["warnings"].empty());
  CHECK(rep["results"]["constant"]["state"] == "finite");
  const double val = rep["results"]["constant"]["value"].get<double>();
  CHECK(std::fabs(val - 4.0 * M_PI) <= 1e-6 * 4.0 * M_PI);
}

TEST_CASE("overrides from flag and environment reach the computation") {
  const std::string cfg = write_temp("hardy_sub_e3b.json", kCritical3);
  REQUIRE(run_cli("constant --config " + cfg +
                  " --set weight_u.exponent=-3 --out /tmp/hardy_sub_out2.json") == 0);
  CHECK(json::parse(slurp("/tmp/hardy_sub_out2.json"))["results"]["constant"]["state"] ==
        "divergent");

  const std::string env_cmd = "HARDY_SET_weight_u__exponent=-3 " + std::string(HARDY_CLI_PATH) +
                              " constant --config " + cfg + " --out /tmp/hardy_sub_out3.json";
  const int rc = std::system(env_cmd.c_str());
  REQUIRE(WIFEXITED(rc));
  REQUIRE(WEXITSTATUS(rc) == 0);
  CHECK(json::parse(slurp("/tmp/hardy_sub_out3.json"))["results"]["constant"]["state"] ==
        "divergent");
}

TEST_CASE("configuration problems exit with the dedicated code") {
  const std::string empty = write_temp("hardy_sub_empty.json", "{}");
  CHECK(run_cli("constant --config " + empty + " 2> /tmp/hardy_sub_err.txt") == 2);
  CHECK(slurp("/tmp/hardy_sub_err.txt").find("config error") != std::string::npos);
  CHECK(run_cli("constant --config /tmp/hardy_sub_missing.json > /dev/null 2>&1") == 2);
  CHECK(run_cli("constant --bogus-flag > /dev/null 2>&1") == 2);
  CHECK(run_cli("> /dev/null 2>&1") == 2);  // a subcommand is required
}

TEST_CASE("an unresolvable certification request signals indecision") {
  json cfg = json::parse(kCritical3);
  cfg["sharpness"]["schedule"] = json::array({json::array({1.0, 1000000000000000000LL})});
  const std::string path = write_temp("hardy_sub_sharp.json", cfg.dump());
  REQUIRE(run_cli("sharpness --config " + path + " --out /tmp/hardy_sub_sharp_out.json") == 3);
  const json rep = json::parse(slurp("/tmp/hardy_sub_sharp_out.json"));
  CHECK(rep["results"]["aborted"] == true);
  CHECK(rep["results"]["certificates"].empty());

  // a definitely divergent constant makes the study moot, not undecided
  json div = json::parse(kCritical3);
  div["weight_u"]["exponent"] = -3;
  const std::string dpath = write_temp("hardy_sub_sharp_div.json", div.dump());
  CHECK(run_cli("sharpness --config " + dpath + " > /dev/null") == 0);
}

TEST_CASE("verification of the critical problem passes end to end") {
  json cfg = json::parse(kCritical3);
  cfg["verify"]["functions"] = json::array({
      json{{"kind", "indicator"}, {"lo", 1.0}, {"hi", 2.0}},
      json{{"kind", "random_steps"}, {"count", 5}, {"seed", 7}},
      json{{"kind", "zero"}},
  });
  const std::string path = write_temp("hardy_sub_verify.json", cfg.dump());
  REQUIRE(run_cli("verify --config " + path + " --out /tmp/hardy_sub_verify_out.json") == 0);
  const json rep = json::parse(slurp("/tmp/hardy_sub_verify_out.json"));
  CHECK(rep["results"]["functions"] == 7);
  CHECK(rep["results"]["violations"] == 0);
  CHECK(rep["results"]["rows"].size() == 7);
  CHECK(rep["results"]["rows"][6]["vacuous"] == true);
  const double ratio = rep["results"]["rows"][0]["ratio"].get<double>();
  CHECK(std::fabs(ratio - 4.0 * M_PI) <= 1e-6 * 4.0 * M_PI);
}

TEST_CASE("region scans write byte-identical tables for identical runs") {
  const char* region = R"({
    "region": {"geometry": "group", "alpha_lo": -2, "alpha_hi": 0, "alpha_count": 3,
               "beta_lo": 3, "beta_hi": 5, "beta_count": 3, "q": 1, "n_or_Q": 3,
               "boundary_band": 0.05, "threads": 1}
  })";
  const std::string path = write_temp("hardy_sub_region.json", region);
  REQUIRE(run_cli("region --config " + path +
                  " --csv /tmp/hardy_sub_r1.csv --out /tmp/hardy_sub_rr1.json") == 0);
  REQUIRE(run_cli("region --config " + path +
                  " --csv /tmp/hardy_sub_r2.csv --out /tmp/hardy_sub_rr2.json") == 0);
  const std::string csv1 = slurp("/tmp/hardy_sub_r1.csv");
  CHECK(csv1 == slurp("/tmp/hardy_sub_r2.csv"));
  CHECK(csv1.rfind("alpha,beta,q,n_or_Q,geometry,", 0) == 0);
  const json r1 = json::parse(slurp("/tmp/hardy_sub_rr1.json"));
  const json r2 = json::parse(slurp("/tmp/hardy_sub_rr2.json"));
  CHECK(r1["results"] == r2["results"]);
  CHECK(r1["results"]["disagreements"].empty());

  // "-" streams the table to stdout in place of the report
  REQUIRE(run_cli("region --config " + path + " --csv - > /tmp/hardy_sub_stdout.csv") == 0);
  CHECK(slurp("/tmp/hardy_sub_stdout.csv") == csv1);
}

TEST_CASE("sampled sphere measures are seed-reproducible") {
  const char* sphere = R"({
    "sphere_measure": {"kind": "euclidean", "n": 3, "samples": 200000}
  })";
  const std::string path = write_temp("hardy_sub_sphere.json", sphere);
  REQUIRE(run_cli("sphere-measure --config " + path +
                  " --seed 1 --out /tmp/hardy_sub_s1.json") == 0);
  REQUIRE(run_cli("sphere-measure --config " + path +
                  " --seed 1 --out /tmp/hardy_sub_s2.json") == 0);
  REQUIRE(run_cli("sphere-measure --config " + path +
                  " --seed 2 --out /tmp/hardy_sub_s3.json") == 0);
  const json s1 = json::parse(slurp("/tmp/hardy_sub_s1.json"));
  const json s2 = json::parse(slurp("/tmp/hardy_sub_s2.json"));
  const json s3 = json::parse(slurp("/tmp/hardy_sub_s3.json"));
  CHECK(s1["results"]["value"] == s2["results"]["value"]);
  CHECK(s1["results"]["accepted"] == s2["results"]["accepted"]);
  CHECK(s1["results"]["value"] != s3["results"]["value"]);
  CHECK(s1["results"]["seed"] == 1);
  const double v = s1["results"]["value"].get<double>();
  const double se = s1["results"]["std_error"].get<double>();
  CHECK(std::fabs(v - 4.0 * M_PI) <= 5.0 * se);
}

TEST_CASE("the corollary subcommand answers from the closed rules") {
  const char* coro = R"({
    "corollary": {"family": "group", "alpha": -1, "beta": 3, "q": 2, "Q": 4,
                  "sphere_measure": 1.0}
  })";
  const std::string path = write_temp("hardy_sub_coro.json", coro);
  REQUIRE(run_cli("corollary --config " + path + " --out /tmp/hardy_sub_coro_out.json") == 0);
  const json rep = json::parse(slurp("/tmp/hardy_sub_coro_out.json"));
  const json& cl = rep["results"]["classification"];
  CHECK(cl["finite"] == true);
  CHECK(cl["case"] == "group-critical");
  const double bc = cl["best_constant"].get<double>();
  CHECK(std::fabs(bc - std::sqrt(0.5)) <= 1e-12);

  const char* classical = R"({"corollary": {"family": "classical", "p": 2}})";
  const std::string cpath = write_temp("hardy_sub_classical.json", classical);
  REQUIRE(run_cli("corollary --config " + cpath + " --out /tmp/hardy_sub_cl_out.json") == 0);
  CHECK(json::parse(slurp("/tmp/hardy_sub_cl_out.json"))["results"]["constant"] == 4.0);
}

TEST_CASE("the version flag answers without a configuration") {
  CHECK(run_cli("--version > /dev/null") == 0);
}
