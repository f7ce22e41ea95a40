#include "report.hpp"

#include <charconv>
#include <cmath>

namespace hardy::cli {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

ordered_json extended_to_json(const ExtendedValue& v) {
  ordered_json out;
  out["state"] = v.state_name();
  if (v.state() == ExtendedValue::State::Finite) {
    out["value"] = v.value();
    out["log_value"] = v.log_value();
    out["rel_error"] = v.rel_error();
  } else {
    out["evidence"] = v.evidence();
  }
  return out;
}

ordered_json Report::to_json() const {
  ordered_json out;
  out["version"] = kToolVersion;
  out["config"] = config;
  out["results"] = results;
  out["warnings"] = warnings;
  out["timing_ms"] = timing_ms;
  return out;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

}  // namespace hardy::cli
