#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lib/config.hpp"
#include "lib/report.hpp"
#include "lib/run.hpp"

namespace {

using hardy::cli::ConfigError;
using hardy::cli::RunOutcome;
using hardy::cli::json;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  std::string csv_path;
  long long seed = 0;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_csv) {
  sub->add_option("--config", o.config_path, "JSON configuration file");
  sub->add_option("--set", o.sets,
                  "Override a config entry as dotted.path=value; repeatable, wins over the "
                  "file and HARDY_SET_* environment overrides");
  sub->add_option("--out", o.out_path, "Write the JSON report to this file instead of stdout");
  if (with_csv)
    sub->add_option("--csv", o.csv_path,
                    "Write the grid CSV to this file (\"-\" sends it to stdout in place of "
                    "the report)");
  o.seed_opt = sub->add_option("--seed", o.seed, "Top-level random seed, wins over the config")
                   ->check(CLI::NonNegativeNumber);
}

int finish(RunOutcome& res, const CommonOpts& o, double elapsed_ms) {
  res.report.timing_ms = elapsed_ms;
  const bool csv_to_stdout = res.has_csv && o.csv_path == "-";
  if (res.has_csv && !o.csv_path.empty()) {
    if (csv_to_stdout) {
      std::cout << res.csv;
    } else {
      std::ofstream f(o.csv_path, std::ios::binary);
      if (!f) {
        std::cerr << "config error: cannot open csv path: " << o.csv_path << "\n";
        return 2;
      }
      f << res.csv;
    }
  }
  const std::string doc = res.report.dump();
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      std::cerr << "config error: cannot open report path: " << o.out_path << "\n";
      return 2;
    }
    f << doc;
  } else if (!csv_to_stdout) {
    std::cout << doc;
  }
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-weight averaging inequalities on polar spaces: best constants, "
      "witness certificates and admissibility maps"};
  app.set_version_flag("--version", hardy::cli::kToolVersion);
  app.require_subcommand(1);

  CommonOpts constant_o, verify_o, sharp_o, region_o, coro_o, sphere_o;
  CLI::App* c_constant =
      app.add_subcommand("constant", "Compute the characterizing supremum of a problem");
  add_common(c_constant, constant_o, false);
  CLI::App* c_verify =
      app.add_subcommand("verify", "Check the inequality on a list of test functions");
  add_common(c_verify, verify_o, false);
  CLI::App* c_sharp = app.add_subcommand(
      "sharpness", "Drive witness functions against the constant over a slack schedule");
  add_common(c_sharp, sharp_o, false);
  CLI::App* c_region = app.add_subcommand(
      "region", "Scan a power-weight parameter grid against the closed-form conditions");
  add_common(c_region, region_o, true);
  CLI::App* c_coro = app.add_subcommand(
      "corollary", "Classify power-weight parameters by the closed-form conditions");
  add_common(c_coro, coro_o, false);
  CLI::App* c_sphere = app.add_subcommand(
      "sphere-measure", "Monte Carlo estimate of the sphere measure of a quasi-norm");
  add_common(c_sphere, sphere_o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const CommonOpts* o = nullptr;
    RunOutcome (*run)(const json&) = nullptr;
    if (c_constant->parsed()) {
      o = &constant_o;
      run = hardy::cli::run_constant;
    } else if (c_verify->parsed()) {
      o = &verify_o;
      run = hardy::cli::run_verify;
    } else if (c_sharp->parsed()) {
      o = &sharp_o;
      run = hardy::cli::run_sharpness;
    } else if (c_region->parsed()) {
      o = &region_o;
      run = hardy::cli::run_region;
    } else if (c_coro->parsed()) {
      o = &coro_o;
      run = hardy::cli::run_corollary;
    } else {
      o = &sphere_o;
      run = hardy::cli::run_sphere_measure;
    }

    json cfg = hardy::cli::effective_config(o->config_path, o->sets);
    if (o->seed_opt && o->seed_opt->count() > 0) cfg["seed"] = o->seed;

    const auto t0 = std::chrono::steady_clock::now();
    RunOutcome res = run(cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return finish(res, *o, ms);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
