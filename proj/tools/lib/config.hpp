#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "hardy/geometry.hpp"
#include "hardy/hardy.hpp"
#include "hardy/test_function.hpp"
#include "hardy/weights.hpp"
#include "json.hpp"

namespace hardy::cli {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Layered configuration: file values, then HARDY_SET_* environment overrides
// (double underscore separates nested keys), then --set flags, later layers
// winning. Override values parse as JSON scalars where possible and fall
// back to strings.
json load_config_file(const std::string& path);
void apply_dotted_override(json& cfg, const std::string& dotted, const std::string& value);
void apply_env_overrides(json& cfg);
json effective_config(const std::string& path, const std::vector<std::string>& set_flags);

// Block builders; each throws ConfigError naming the offending block/key.
PolarGeometry geometry_from(const json& cfg);
RadialWeight weight_from(const json& cfg, const char* block_name);
HardyProblem problem_from(const json& cfg);
QuadConfig quadrature_from(const json& cfg);
SupSearchConfig search_from(const json& cfg);

// Test-function list of the verify block; `random_steps` entries expand
// deterministically from their seed (block seed, else top-level seed, else 0).
std::vector<RadialTestFunction> verify_functions_from(const json& cfg);

// Seed resolution: block["seed"], else top-level cfg["seed"], else fallback.
std::uint64_t seed_from(const json& cfg, const json& block, std::uint64_t fallback);

// Typed JSON access with ConfigError diagnostics; `where` names the block in
// messages. cfg_find returns nullptr for absent or null members.
const json* cfg_find(const json& parent, const char* key);
void cfg_check_keys(const json& block, const char* where,
                    std::initializer_list<const char*> allowed);
double cfg_num(const json& block, const char* where, const char* key);  // required
double cfg_num(const json& block, const char* where, const char* key, double dflt);
long long cfg_int(const json& block, const char* where, const char* key, long long dflt);
std::string cfg_str(const json& block, const char* where, const char* key);  // required

}  // namespace hardy::cli
