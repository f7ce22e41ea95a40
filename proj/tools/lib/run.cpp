#include "run.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "hardy/corollaries.hpp"
#include "hardy/sharpness.hpp"

namespace hardy::cli {
namespace {

using hardy::ExtendedValue;
using State = ExtendedValue::State;

bool is_inconclusive(const ExtendedValue& v) { return v.state() == State::Inconclusive; }

// 4 beats 3 beats 0; 2 never reaches here (ConfigError is thrown instead).
void raise_exit(int& code, int candidate) {
  if (candidate > code) code = candidate;
}

double euclidean_sphere_measure(double Q) {
  return std::exp(std::log(2.0) + 0.5 * Q * std::log(M_PI) - std::lgamma(0.5 * Q));
}

ordered_json classification_to_json(const Classification& c) {
  ordered_json out;
  out["finite"] = c.finite;
  out["case"] = case_tag_name(c.case_tag);
  out["boundary"] = c.boundary;
  if (c.best_constant)
    out["best_constant"] = *c.best_constant;
  else
    out["best_constant"] = nullptr;
  out["detail"] = c.detail;
  return out;
}

}  // namespace

RunOutcome run_constant(const json& cfg) {
  RunOutcome out;
  out.report.config = cfg;
  const HardyProblem pb = problem_from(cfg);
  const SupSearchConfig sc = search_from(cfg);
  out.report.warnings = hypothesis_warnings(pb, sc);

  const SupResult res = characterization_constant(pb, sc);
  ordered_json r;
  r["constant"] = extended_to_json(res.constant);
  r["attained_at"] = res.attained_at;
  r["note"] = res.note;
  if (pb.p) {
    const double k = equivalence_factor(pb);
    r["equivalence_factor"] = k;
    if (res.constant.state() == State::Finite) {
      ordered_json bracket;
      bracket["lower"] = res.constant.value();
      bracket["upper"] = res.constant.value() * k;
      r["best_constant_bracket"] = bracket;
    }
  }
  out.report.results = std::move(r);
  if (is_inconclusive(res.constant)) raise_exit(out.exit_code, 3);
  return out;
}

RunOutcome run_verify(const json& cfg) {
  RunOutcome out;
  out.report.config = cfg;
  const HardyProblem pb = problem_from(cfg);
  const SupSearchConfig sc = search_from(cfg);
  out.report.warnings = hypothesis_warnings(pb, sc);
  const std::vector<RadialTestFunction> fns = verify_functions_from(cfg);
  const json* vb = cfg_find(cfg, "verify");
  const double slack = cfg_num(*vb, "verify", "slack", 1e-6);

  ordered_json rows = ordered_json::array();
  int violations = 0;
  bool any_inconclusive = false;
  bool have_header = false;
  ordered_json header;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    VerifyResult vr;
    try {
      vr = verify_inequality(pb, fns[i], sc, slack);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("verify function #" + std::to_string(i) + " rejected: " + e.what());
    }
    if (!have_header && !vr.vacuous) {
      header["constant"] = extended_to_json(vr.constant);
      header["bound_factor"] = vr.bound_factor;
      have_header = true;
    }
    ordered_json row;
    row["index"] = i;
    row["lhs"] = extended_to_json(vr.lhs);
    row["rhs"] = extended_to_json(vr.rhs);
    row["ratio"] = vr.ratio;
    row["vacuous"] = vr.vacuous;
    row["satisfied"] = vr.satisfied;
    row["note"] = vr.note;
    rows.push_back(std::move(row));

    const bool undecided = is_inconclusive(vr.constant) || is_inconclusive(vr.lhs) ||
                           is_inconclusive(vr.rhs);
    if (undecided) any_inconclusive = true;
    if (!vr.satisfied && !undecided) ++violations;
  }

  ordered_json r;
  r["constant"] = header.contains("constant") ? header["constant"] : ordered_json(nullptr);
  r["bound_factor"] = header.contains("bound_factor") ? header["bound_factor"] : ordered_json(nullptr);
  r["slack"] = slack;
  r["functions"] = fns.size();
  r["violations"] = violations;
  r["rows"] = std::move(rows);
  out.report.results = std::move(r);

  if (violations > 0) raise_exit(out.exit_code, 4);
  if (any_inconclusive) raise_exit(out.exit_code, 3);
  return out;
}

RunOutcome run_sharpness(const json& cfg) {
  RunOutcome out;
  out.report.config = cfg;
  const HardyProblem pb = problem_from(cfg);
  const SupSearchConfig sc = search_from(cfg);
  out.report.warnings = hypothesis_warnings(pb, sc);

  double tol = 1e-2;
  std::vector<std::pair<double, long long>> schedule;
  bool explicit_schedule = false;
  if (const json* b = cfg_find(cfg, "sharpness")) {
    cfg_check_keys(*b, "sharpness", {"schedule", "tolerance"});
    tol = cfg_num(*b, "sharpness", "tolerance", tol);
    if (!(tol > 0.0 && tol < 1.0))
      throw ConfigError("sharpness block: tolerance must lie in (0, 1)");
    if (const json* s = cfg_find(*b, "schedule")) {
      if (s->is_string()) {
        if (s->get<std::string>() != "default")
          throw ConfigError("sharpness block: schedule must be \"default\" or an array of [R, n]");
      } else if (s->is_array()) {
        for (const json& item : *s) {
          if (!item.is_array() || item.size() != 2 || !item[0].is_number() ||
              !item[1].is_number_integer())
            throw ConfigError("sharpness block: schedule entries must be [R, n] with integer n");
          schedule.emplace_back(item[0].get<double>(), item[1].get<long long>());
        }
        if (schedule.empty())
          throw ConfigError("sharpness block: schedule array must be nonempty");
        explicit_schedule = true;
      } else {
        throw ConfigError("sharpness block: schedule must be \"default\" or an array of [R, n]");
      }
    }
  }
  if (!explicit_schedule) {
    const SupResult located = characterization_constant(pb, sc);
    schedule = default_schedule(located.attained_at);
  }

  const SharpnessResult sr = sharpness_study(pb, schedule, sc, tol);

  ordered_json certs = ordered_json::array();
  for (const Certificate& c : sr.certificates) {
    ordered_json row;
    row["R"] = c.spec.R;
    row["n"] = c.spec.n;
    row["r_lo"] = c.spec.r_lo;
    row["r_hi"] = c.spec.r_hi;
    row["measure_deficit"] = c.spec.measure_deficit;
    row["ratio"] = c.ratio_achieved;
    row["floor"] = c.analytic_floor;
    row["gap"] = c.gap;
    if (!c.spec.note.empty()) row["note"] = c.spec.note;
    certs.push_back(std::move(row));
  }

  ordered_json r;
  r["constant"] = extended_to_json(sr.constant);
  r["aborted"] = sr.aborted;
  if (sr.aborted) r["abort_reason"] = sr.abort_reason;
  ordered_json summary;
  summary["best_ratio"] = sr.summary.best_ratio;
  summary["relative_gap"] = sr.summary.relative_gap;
  summary["achieved"] = sr.summary.achieved;
  summary["monotone_in_slack"] = sr.summary.monotone_in_slack;
  summary["ratio_exceeds_constant"] = sr.summary.ratio_exceeds_constant;
  summary["note"] = sr.summary.note;
  r["summary"] = std::move(summary);
  r["tolerance"] = tol;
  r["certificates"] = std::move(certs);
  out.report.results = std::move(r);

  if (sr.summary.ratio_exceeds_constant) raise_exit(out.exit_code, 4);
  if (sr.aborted) {
    // A divergent constant is a definite answer: sharpness is moot, not failed.
    if (sr.constant.state() != State::Divergent) raise_exit(out.exit_code, 3);
  } else if (!sr.summary.achieved) {
    raise_exit(out.exit_code, 4);
  }
  return out;
}

RunOutcome run_region(const json& cfg) {
  RunOutcome out;
  out.report.config = cfg;
  const json* b = cfg_find(cfg, "region");
  if (!b) throw ConfigError("config is missing the region block");
  cfg_check_keys(*b, "region",
                 {"geometry", "alpha_lo", "alpha_hi", "alpha_count", "beta_lo", "beta_hi",
                  "beta_count", "q", "n_or_Q", "curvature", "sphere_measure", "boundary_band",
                  "threads"});
  const std::string geo = cfg_str(*b, "region", "geometry");
  RegionGeometry geometry;
  if (geo == "group")
    geometry = RegionGeometry::Group;
  else if (geo == "hyperbolic")
    geometry = RegionGeometry::Hyperbolic;
  else if (geo == "cartan_hadamard")
    geometry = RegionGeometry::CartanHadamard;
  else
    throw ConfigError("region block: unknown geometry '" + geo +
                      "' (group, hyperbolic, cartan_hadamard)");

  RegionScanConfig rc;
  rc.alpha_lo = cfg_num(*b, "region", "alpha_lo", rc.alpha_lo);
  rc.alpha_hi = cfg_num(*b, "region", "alpha_hi", rc.alpha_hi);
  rc.alpha_count = static_cast<int>(cfg_int(*b, "region", "alpha_count", rc.alpha_count));
  rc.beta_lo = cfg_num(*b, "region", "beta_lo", rc.beta_lo);
  rc.beta_hi = cfg_num(*b, "region", "beta_hi", rc.beta_hi);
  rc.beta_count = static_cast<int>(cfg_int(*b, "region", "beta_count", rc.beta_count));
  rc.q = cfg_num(*b, "region", "q", rc.q);
  rc.n_or_Q = cfg_num(*b, "region", "n_or_Q", rc.n_or_Q);
  rc.curvature = cfg_num(*b, "region", "curvature", rc.curvature);
  rc.sphere_measure = cfg_num(*b, "region", "sphere_measure", rc.sphere_measure);
  rc.boundary_band = cfg_num(*b, "region", "boundary_band", rc.boundary_band);
  rc.threads = static_cast<unsigned>(cfg_int(*b, "region", "threads", 0));
  rc.search = search_from(cfg);
  try {
    rc.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("region block rejected: ") + e.what());
  }

  std::vector<RegionRow> rows;
  try {
    rows = region_scan(geometry, rc);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("region scan rejected the configuration: ") + e.what());
  }
  out.csv = region_csv(rows);
  out.has_csv = true;

  int finite_closed = 0, finite_numeric = 0, boundary = 0, inconclusive_rows = 0;
  ordered_json disagreements = ordered_json::array();
  int checked = 0;
  for (const RegionRow& row : rows) {
    finite_closed += row.closed_form_finite;
    finite_numeric += row.numeric_finite;
    boundary += row.boundary;
    const bool undecided = std::isnan(row.A_value) && !row.numeric_finite;
    if (row.boundary) continue;
    ++checked;
    if (undecided) {
      ++inconclusive_rows;
      continue;
    }
    if (row.closed_form_finite != row.numeric_finite) {
      ordered_json d;
      d["alpha"] = row.alpha;
      d["beta"] = row.beta;
      d["closed_form_finite"] = row.closed_form_finite;
      d["numeric_finite"] = row.numeric_finite;
      d["A_value"] = std::isfinite(row.A_value) ? ordered_json(row.A_value)
                                                : ordered_json(format_double(row.A_value));
      disagreements.push_back(std::move(d));
    }
  }

  const bool any_disagreement = !disagreements.empty();
  ordered_json r;
  r["geometry"] = geo;
  r["rows"] = rows.size();
  r["closed_form_finite"] = finite_closed;
  r["numeric_finite"] = finite_numeric;
  r["boundary_rows"] = boundary;
  r["non_boundary_rows"] = checked;
  r["inconclusive_rows"] = inconclusive_rows;
  r["disagreements"] = std::move(disagreements);
  out.report.results = std::move(r);

  if (any_disagreement) raise_exit(out.exit_code, 4);
  if (inconclusive_rows > 0) raise_exit(out.exit_code, 3);
  return out;
}

RunOutcome run_corollary(const json& cfg) {
  RunOutcome out;
  out.report.config = cfg;
  const json* b = cfg_find(cfg, "corollary");
  if (!b) throw ConfigError("config is missing the corollary block");
  const std::string family = cfg_str(*b, "corollary", "family");
  ordered_json r;
  r["family"] = family;

  if (family == "classical") {
    cfg_check_keys(*b, "corollary", {"family", "p"});
    const double p = cfg_num(*b, "corollary", "p");
    double c;
    try {
      c = classical_halfline_constant(p);
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("corollary block: ") + e.what());
    }
    r["p"] = p;
    r["constant"] = c;
    out.report.results = std::move(r);
    return out;
  }

  PowerWeightParams params;
  params.alpha = cfg_num(*b, "corollary", "alpha");
  params.beta = cfg_num(*b, "corollary", "beta");
  params.q = cfg_num(*b, "corollary", "q", 1.0);
  const double band = cfg_num(*b, "corollary", "band", 1e-9);

  Classification c;
  if (family == "group") {
    cfg_check_keys(*b, "corollary", {"family", "alpha", "beta", "q", "Q", "sphere_measure", "band"});
    params.dimension_param = cfg_num(*b, "corollary", "Q");
    const double sphere =
        cfg_num(*b, "corollary", "sphere_measure", euclidean_sphere_measure(params.dimension_param));
    if (!(sphere > 0.0)) throw ConfigError("corollary block: sphere_measure must be positive");
    c = classify_group(params, sphere, band);
  } else if (family == "hyperbolic") {
    cfg_check_keys(*b, "corollary", {"family", "alpha", "beta", "q", "n", "band"});
    params.dimension_param = cfg_num(*b, "corollary", "n");
    c = classify_hyperbolic(params, band);
  } else if (family == "cartan_hadamard") {
    cfg_check_keys(*b, "corollary", {"family", "alpha", "beta", "q", "n", "b", "band"});
    params.dimension_param = cfg_num(*b, "corollary", "n");
    params.curvature = cfg_num(*b, "corollary", "b");
    c = classify_cartan_hadamard(params, band);
  } else {
    throw ConfigError("corollary block: unknown family '" + family +
                      "' (group, hyperbolic, cartan_hadamard, classical)");
  }
  r["classification"] = classification_to_json(c);
  out.report.results = std::move(r);
  return out;
}

RunOutcome run_sphere_measure(const json& cfg) {
  RunOutcome out;
  out.report.config = cfg;
  const json* b = cfg_find(cfg, "sphere_measure");
  if (!b) throw ConfigError("config is missing the sphere_measure block");
  cfg_check_keys(*b, "sphere_measure", {"kind", "n", "nu", "Q", "box", "samples", "seed"});
  const std::string kind = cfg_str(*b, "sphere_measure", "kind");

  QuasiNorm qn;
  if (kind == "euclidean") {
    const json* n = cfg_find(*b, "n");
    if (!n || !n->is_number_integer())
      throw ConfigError("sphere_measure block: euclidean needs integer n");
    qn = QuasiNorm::euclidean(n->get<int>());
  } else if (kind == "max_type") {
    const json* nu = cfg_find(*b, "nu");
    if (!nu || !nu->is_array() || nu->empty())
      throw ConfigError("sphere_measure block: max_type needs a nonempty nu array");
    std::vector<double> weights;
    for (const json& x : *nu) {
      if (!x.is_number()) throw ConfigError("sphere_measure block: nu entries must be numbers");
      weights.push_back(x.get<double>());
    }
    qn = QuasiNorm::max_type(std::move(weights));
  } else if (kind == "koranyi") {
    qn = QuasiNorm::koranyi();
  } else {
    throw ConfigError("sphere_measure block: unknown kind '" + kind +
                      "' (euclidean, max_type, koranyi)");
  }

  double q_sum = 0.0;
  for (double w : qn.weights) q_sum += w;
  const double Q = cfg_num(*b, "sphere_measure", "Q", q_sum);

  std::vector<double> box(qn.dim(), 1.25);
  if (const json* bx = cfg_find(*b, "box")) {
    if (bx->is_number()) {
      box.assign(qn.dim(), bx->get<double>());
    } else if (bx->is_array() && bx->size() == qn.dim()) {
      box.clear();
      for (const json& x : *bx) {
        if (!x.is_number())
          throw ConfigError("sphere_measure block: box entries must be numbers");
        box.push_back(x.get<double>());
      }
    } else {
      throw ConfigError(
          "sphere_measure block: box must be a number or an array matching the dimension");
    }
  }

  const long long samples = cfg_int(*b, "sphere_measure", "samples", 1000000);
  const std::uint64_t seed = seed_from(cfg, *b, 12345);

  SphereMeasureEstimate est;
  try {
    est = estimate_sphere_measure(qn, Q, box, samples, seed);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sphere_measure block rejected: ") + e.what());
  }

  ordered_json r;
  r["kind"] = kind;
  r["Q"] = Q;
  r["samples"] = est.samples;
  r["accepted"] = est.accepted;
  r["seed"] = seed;
  r["value"] = est.value;
  r["std_error"] = est.std_error;
  if (kind == "euclidean") {
    const double ref = euclidean_sphere_measure(static_cast<double>(qn.dim()));
    r["closed_form"] = ref;
    const double z = est.std_error > 0.0 ? (est.value - ref) / est.std_error : 0.0;
    r["z_score"] = z;
    if (std::abs(z) > 5.0)
      out.report.warnings.push_back(
          "Monte Carlo estimate sits more than 5 standard errors from the closed form");
  }
  out.report.results = std::move(r);
  return out;
}

}  // namespace hardy::cli
