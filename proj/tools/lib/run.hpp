#pragma once

#include <string>

#include "config.hpp"
#include "report.hpp"

namespace hardy::cli {

// Exit codes: 0 clean, 2 config error (thrown as ConfigError before this
// struct exists), 3 an Inconclusive result is present, 4 a checked property
// failed.  4 wins over 3 when both apply.
struct RunOutcome {
  Report report;
  int exit_code = 0;
  std::string csv;
  bool has_csv = false;
};

RunOutcome run_constant(const json& cfg);
RunOutcome run_verify(const json& cfg);
RunOutcome run_sharpness(const json& cfg);
RunOutcome run_region(const json& cfg);
RunOutcome run_corollary(const json& cfg);
RunOutcome run_sphere_measure(const json& cfg);

}  // namespace hardy::cli
