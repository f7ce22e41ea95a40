#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>

extern char** environ;

namespace hardy::cli {
namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string ctx(const char* block, const char* key) {
  return std::string("config block '") + block + "', key '" + key + "'";
}

int req_dim(const json& b, const char* blk) {
  const json* v = cfg_find(b, "n");
  if (!v) fail(ctx(blk, "n") + " is required");
  if (!v->is_number_integer()) fail(ctx(blk, "n") + " must be an integer");
  return v->get<int>();
}

}  // namespace

const json* cfg_find(const json& parent, const char* key) {
  if (!parent.is_object()) return nullptr;
  const auto it = parent.find(key);
  if (it == parent.end() || it->is_null()) return nullptr;
  return &*it;
}

void cfg_check_keys(const json& block, const char* where,
                    std::initializer_list<const char*> allowed) {
  if (!block.is_object()) fail(std::string("config block '") + where + "' must be an object");
  for (const auto& item : block.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      fail(std::string("config block '") + where + "' has unknown key '" + item.key() + "'");
  }
}

double cfg_num(const json& b, const char* where, const char* key) {
  const json* v = cfg_find(b, key);
  if (!v) fail(ctx(where, key) + " is required");
  if (!v->is_number()) fail(ctx(where, key) + " must be a number");
  return v->get<double>();
}

double cfg_num(const json& b, const char* where, const char* key, double dflt) {
  const json* v = cfg_find(b, key);
  if (!v) return dflt;
  if (!v->is_number()) fail(ctx(where, key) + " must be a number");
  return v->get<double>();
}

long long cfg_int(const json& b, const char* where, const char* key, long long dflt) {
  const json* v = cfg_find(b, key);
  if (!v) return dflt;
  if (!v->is_number_integer()) fail(ctx(where, key) + " must be an integer");
  return v->get<long long>();
}

std::string cfg_str(const json& b, const char* where, const char* key) {
  const json* v = cfg_find(b, key);
  if (!v) fail(ctx(where, key) + " is required");
  if (!v->is_string()) fail(ctx(where, key) + " must be a string");
  return v->get<std::string>();
}

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) fail("config file not readable: " + path);
  json cfg = json::parse(in, nullptr, false, true);  // allow comments
  if (cfg.is_discarded()) fail("config file is not valid JSON: " + path);
  if (!cfg.is_object()) fail("config root must be a JSON object: " + path);
  return cfg;
}

void apply_dotted_override(json& cfg, const std::string& dotted, const std::string& value) {
  if (dotted.empty()) fail("override key must be nonempty");
  json* cur = &cfg;
  std::size_t pos = 0;
  for (;;) {
    const std::size_t dot = dotted.find('.', pos);
    const std::string part = dotted.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (part.empty()) fail("override key has an empty path segment: " + dotted);
    if (dot == std::string::npos) {
      json parsed = json::parse(value, nullptr, false);
      (*cur)[part] = parsed.is_discarded() ? json(value) : parsed;
      return;
    }
    json& next = (*cur)[part];
    if (!next.is_object()) next = json::object();
    cur = &next;
    pos = dot + 1;
  }
}

void apply_env_overrides(json& cfg) {
  static const std::string prefix = "HARDY_SET_";
  for (char** e = environ; e && *e; ++e) {
    const std::string entry = *e;
    if (entry.compare(0, prefix.size(), prefix) != 0) continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos || eq <= prefix.size()) continue;
    std::string key = entry.substr(prefix.size(), eq - prefix.size());
    for (std::size_t pos = key.find("__"); pos != std::string::npos; pos = key.find("__", pos))
      key.replace(pos, 2, ".");
    apply_dotted_override(cfg, key, entry.substr(eq + 1));
  }
}

json effective_config(const std::string& path, const std::vector<std::string>& set_flags) {
  json cfg = load_config_file(path);
  apply_env_overrides(cfg);
  for (const std::string& s : set_flags) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) fail("--set expects key=value, got: " + s);
    apply_dotted_override(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  return cfg;
}

PolarGeometry geometry_from(const json& cfg) {
  const json* b = cfg_find(cfg, "geometry");
  if (!b) fail("config is missing the geometry block");
  const std::string kind = cfg_str(*b, "geometry", "kind");
  if (kind == "half_line") {
    cfg_check_keys(*b, "geometry", {"kind"});
    return PolarGeometry::half_line();
  }
  if (kind == "euclidean") {
    cfg_check_keys(*b, "geometry", {"kind", "n"});
    return PolarGeometry::euclidean(req_dim(*b, "geometry"));
  }
  if (kind == "group") {
    cfg_check_keys(*b, "geometry", {"kind", "Q", "sphere_measure", "log_sphere_measure",
                                "dilation_weights"});
    const double Q = cfg_num(*b, "geometry", "Q");
    double log_s;
    const json* lin = cfg_find(*b, "sphere_measure");
    const json* lg = cfg_find(*b, "log_sphere_measure");
    if (lin && lg) fail("geometry block: give sphere_measure or log_sphere_measure, not both");
    if (lin) {
      const double s = cfg_num(*b, "geometry", "sphere_measure");
      if (!(s > 0.0)) fail("geometry block: sphere_measure must be positive");
      log_s = std::log(s);
    } else if (lg) {
      log_s = cfg_num(*b, "geometry", "log_sphere_measure");
    } else {
      log_s = std::log(2.0) + 0.5 * Q * std::log(M_PI) - std::lgamma(0.5 * Q);
    }
    std::vector<double> nu;
    if (const json* w = cfg_find(*b, "dilation_weights")) {
      if (!w->is_array()) fail("geometry block: dilation_weights must be an array");
      for (const json& x : *w) {
        if (!x.is_number()) fail("geometry block: dilation_weights must be numbers");
        nu.push_back(x.get<double>());
      }
    }
    return PolarGeometry::homogeneous_group(Q, log_s, std::move(nu));
  }
  if (kind == "hyperbolic") {
    cfg_check_keys(*b, "geometry", {"kind", "n"});
    return PolarGeometry::hyperbolic(req_dim(*b, "geometry"));
  }
  if (kind == "cartan_hadamard") {
    cfg_check_keys(*b, "geometry", {"kind", "n", "b"});
    return PolarGeometry::cartan_hadamard(req_dim(*b, "geometry"), cfg_num(*b, "geometry", "b"));
  }
  fail("geometry block: unknown kind '" + kind +
       "' (half_line, euclidean, group, hyperbolic, cartan_hadamard)");
}

RadialWeight weight_from(const json& cfg, const char* block_name) {
  const json* b = cfg_find(cfg, block_name);
  if (!b) fail(std::string("config is missing the ") + block_name + " block");
  const std::string family = cfg_str(*b, block_name, "family");
  RadialWeight w = RadialWeight::power(0.0);
  if (family == "power") {
    cfg_check_keys(*b, block_name, {"family", "exponent", "monotonicity"});
    w = RadialWeight::power(cfg_num(*b, block_name, "exponent"));
  } else if (family == "sinh_power") {
    cfg_check_keys(*b, block_name, {"family", "exponent", "monotonicity"});
    w = RadialWeight::sinh_power(cfg_num(*b, block_name, "exponent"));
  } else if (family == "sinh_scaled_power") {
    cfg_check_keys(*b, block_name, {"family", "exponent", "scale", "monotonicity"});
    w = RadialWeight::sinh_scaled_power(cfg_num(*b, block_name, "exponent"),
                                        cfg_num(*b, block_name, "scale"));
  } else if (family == "tabulated") {
    cfg_check_keys(*b, block_name, {"family", "csv", "points", "monotonicity"});
    const json* csv = cfg_find(*b, "csv");
    const json* pts = cfg_find(*b, "points");
    if (!!csv == !!pts)
      fail(std::string(block_name) + " block: tabulated needs exactly one of csv or points");
    WeightTable table;
    if (csv) {
      if (!csv->is_string()) fail(ctx(block_name, "csv") + " must be a path string");
      std::ifstream in(csv->get<std::string>());
      if (!in) fail(std::string(block_name) + " block: csv file not readable: " +
                    csv->get<std::string>());
      table = WeightTable::from_csv(in);
    } else {
      if (!pts->is_array()) fail(ctx(block_name, "points") + " must be an array of [r, value]");
      std::vector<std::pair<double, double>> pairs;
      for (const json& row : *pts) {
        if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number())
          fail(ctx(block_name, "points") + " entries must be [r, value] number pairs");
        pairs.emplace_back(row[0].get<double>(), row[1].get<double>());
      }
      table = WeightTable::from_pairs(pairs);
    }
    w = RadialWeight::tabulated(std::move(table));
  } else {
    fail(std::string(block_name) + " block: unknown family '" + family +
         "' (power, sinh_power, sinh_scaled_power, tabulated)");
  }
  if (const json* m = cfg_find(*b, "monotonicity")) {
    if (!m->is_string()) fail(ctx(block_name, "monotonicity") + " must be a string");
    const std::string s = m->get<std::string>();
    if (s == "non_decreasing")
      w = w.with_monotonicity(Monotonicity::NonDecreasing);
    else if (s == "non_increasing")
      w = w.with_monotonicity(Monotonicity::NonIncreasing);
    else if (s == "unknown")
      w = w.with_monotonicity(Monotonicity::Unknown);
    else
      fail(ctx(block_name, "monotonicity") +
           ": expected non_decreasing, non_increasing or unknown");
  }
  return w;
}

HardyProblem problem_from(const json& cfg) {
  const json* b = cfg_find(cfg, "problem");
  if (!b) fail("config is missing the problem block");
  cfg_check_keys(*b, "problem", {"q", "p", "direction"});
  HardyProblem pb;
  pb.geometry = geometry_from(cfg);
  pb.u = weight_from(cfg, "weight_u");
  pb.v = weight_from(cfg, "weight_v");
  pb.q = cfg_num(*b, "problem", "q");
  if (const json* p = cfg_find(*b, "p")) {
    if (!p->is_number()) fail(ctx("problem", "p") + " must be a number or null");
    pb.p = p->get<double>();
  }
  const json* dir = cfg_find(*b, "direction");
  if (dir) {
    if (!dir->is_string()) fail(ctx("problem", "direction") + " must be a string");
    const std::string d = dir->get<std::string>();
    if (d == "direct")
      pb.direction = Direction::Direct;
    else if (d == "conjugate")
      pb.direction = Direction::Conjugate;
    else
      fail(ctx("problem", "direction") + ": expected direct or conjugate");
  }
  try {
    pb.validate();
  } catch (const std::exception& e) {
    fail(std::string("problem block rejected: ") + e.what());
  }
  return pb;
}

QuadConfig quadrature_from(const json& cfg) {
  QuadConfig q;
  const json* b = cfg_find(cfg, "quadrature");
  if (!b) return q;
  cfg_check_keys(*b, "quadrature", {"rel_tol", "abs_tol", "max_depth", "tail_transform"});
  q.rel_tol = cfg_num(*b, "quadrature", "rel_tol", q.rel_tol);
  q.abs_tol = cfg_num(*b, "quadrature", "abs_tol", q.abs_tol);
  q.max_depth = static_cast<int>(cfg_int(*b, "quadrature", "max_depth", q.max_depth));
  if (const json* t = cfg_find(*b, "tail_transform")) {
    if (!t->is_string()) fail(ctx("quadrature", "tail_transform") + " must be a string");
    const std::string s = t->get<std::string>();
    if (s == "reciprocal")
      q.tail_transform = TailTransform::Reciprocal;
    else if (s == "exp_decay_aware")
      q.tail_transform = TailTransform::ExpDecayAware;
    else
      fail(ctx("quadrature", "tail_transform") + ": expected reciprocal or exp_decay_aware");
  }
  try {
    q.validate();
  } catch (const std::exception& e) {
    fail(std::string("quadrature block rejected: ") + e.what());
  }
  return q;
}

SupSearchConfig search_from(const json& cfg) {
  SupSearchConfig s;
  s.quad = quadrature_from(cfg);
  const json* b = cfg_find(cfg, "search");
  if (!b) return s;
  cfg_check_keys(*b, "search",
             {"r_min", "r_max", "grid_points", "ext_r_min", "ext_r_max", "divergence_slope",
              "flatness_tol", "widen_trigger", "tie_tol", "refine_iters"});
  s.r_min = cfg_num(*b, "search", "r_min", s.r_min);
  s.r_max = cfg_num(*b, "search", "r_max", s.r_max);
  s.grid_points = static_cast<int>(cfg_int(*b, "search", "grid_points", s.grid_points));
  s.ext_r_min = cfg_num(*b, "search", "ext_r_min", s.ext_r_min);
  s.ext_r_max = cfg_num(*b, "search", "ext_r_max", s.ext_r_max);
  s.divergence_slope = cfg_num(*b, "search", "divergence_slope", s.divergence_slope);
  s.flatness_tol = cfg_num(*b, "search", "flatness_tol", s.flatness_tol);
  s.widen_trigger = cfg_num(*b, "search", "widen_trigger", s.widen_trigger);
  s.tie_tol = cfg_num(*b, "search", "tie_tol", s.tie_tol);
  s.refine_iters = static_cast<int>(cfg_int(*b, "search", "refine_iters", s.refine_iters));
  try {
    s.validate();
  } catch (const std::exception& e) {
    fail(std::string("search block rejected: ") + e.what());
  }
  return s;
}

std::uint64_t seed_from(const json& cfg, const json& block, std::uint64_t fallback) {
  auto read = [](const json* v, const char* where) -> std::uint64_t {
    if (!v->is_number_integer() || v->get<long long>() < 0)
      throw ConfigError(std::string(where) + ": seed must be a nonnegative integer");
    return static_cast<std::uint64_t>(v->get<long long>());
  };
  if (const json* v = cfg_find(block, "seed")) return read(v, "block seed");
  if (const json* v = cfg_find(cfg, "seed")) return read(v, "top-level seed");
  return fallback;
}

namespace {

RadialTestFunction random_step_function(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nseg(1, 4);
  std::uniform_real_distribution<double> logr(std::log(1e-2), std::log(1e2));
  std::uniform_real_distribution<double> val(0.1, 10.0);
  const int k = nseg(rng);
  std::vector<double> bp(static_cast<std::size_t>(k) + 1);
  for (double& x : bp) x = std::exp(logr(rng));
  std::sort(bp.begin(), bp.end());
  for (std::size_t i = 1; i < bp.size(); ++i)
    if (bp[i] <= bp[i - 1]) bp[i] = bp[i - 1] * (1.0 + 1e-9);
  std::vector<double> vals(static_cast<std::size_t>(k));
  for (double& x : vals) x = val(rng);
  return RadialTestFunction::step(std::move(bp), std::move(vals));
}

}  // namespace

std::vector<RadialTestFunction> verify_functions_from(const json& cfg) {
  const json* b = cfg_find(cfg, "verify");
  if (!b) fail("config is missing the verify block");
  cfg_check_keys(*b, "verify", {"functions", "slack", "seed"});
  const json* list = cfg_find(*b, "functions");
  if (!list || !list->is_array() || list->empty())
    fail("verify block: functions must be a nonempty array");
  std::vector<RadialTestFunction> out;
  for (const json& item : *list) {
    if (!item.is_object()) fail("verify block: each function must be an object");
    const std::string kind = cfg_str(item, "verify.functions", "kind");
    try {
      if (kind == "step") {
        cfg_check_keys(item, "verify.functions", {"kind", "breakpoints", "values"});
        const json* bp = cfg_find(item, "breakpoints");
        const json* vv = cfg_find(item, "values");
        if (!bp || !vv || !bp->is_array() || !vv->is_array())
          fail("verify block: step needs breakpoints and values arrays");
        out.push_back(RadialTestFunction::step(bp->get<std::vector<double>>(),
                                               vv->get<std::vector<double>>()));
      } else if (kind == "indicator") {
        cfg_check_keys(item, "verify.functions", {"kind", "lo", "hi", "value"});
        out.push_back(RadialTestFunction::indicator(cfg_num(item, "verify.functions", "lo"),
                                                    cfg_num(item, "verify.functions", "hi"),
                                                    cfg_num(item, "verify.functions", "value", 1.0)));
      } else if (kind == "closed_form") {
        cfg_check_keys(item, "verify.functions", {"kind", "coefficient", "power", "decay"});
        out.push_back(RadialTestFunction::closed_form(
            cfg_num(item, "verify.functions", "coefficient", 1.0),
            cfg_num(item, "verify.functions", "power", 0.0),
            cfg_num(item, "verify.functions", "decay", 0.0)));
      } else if (kind == "zero") {
        cfg_check_keys(item, "verify.functions", {"kind"});
        out.push_back(RadialTestFunction::step({1.0, 2.0}, {0.0}));
      } else if (kind == "random_steps") {
        cfg_check_keys(item, "verify.functions", {"kind", "count", "seed"});
        const long long count = cfg_int(item, "verify.functions", "count", 10);
        if (count < 1) fail("verify block: random_steps count must be positive");
        std::mt19937_64 rng(seed_from(cfg, item, 0));
        for (long long i = 0; i < count; ++i) out.push_back(random_step_function(rng));
      } else {
        fail("verify block: unknown function kind '" + kind +
             "' (step, indicator, closed_form, zero, random_steps)");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(std::string("verify block: bad function: ") + e.what());
    }
  }
  return out;
}

}  // namespace hardy::cli
