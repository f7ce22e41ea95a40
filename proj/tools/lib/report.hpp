#pragma once

#include <string>
#include <vector>

#include "hardy/extended_value.hpp"
#include "json.hpp"

namespace hardy::cli {

using nlohmann::json;
using nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// Top-level report document.  `results` is the deterministic part: identical
// config and seed must serialize it byte-identically, so timing lives outside.
struct Report {
  json config;
  ordered_json results = ordered_json::object();
  std::vector<std::string> warnings;
  double timing_ms = 0.0;

  ordered_json to_json() const;
  std::string dump() const;  // 2-space indent, trailing newline
};

ordered_json extended_to_json(const ExtendedValue& v);

// Round-trip-exact, locale-free float formatting for CSV and JSON strings.
std::string format_double(double x);

}  // namespace hardy::cli
