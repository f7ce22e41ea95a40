#include "hardy/corollaries.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "hardy/geometry.hpp"
#include "hardy/parallel.hpp"
#include "hardy/weights.hpp"

namespace hardy {
namespace {

constexpr double kEqualityTol = 1e-12;

double real_sphere_area_log(double n) {
  return std::log(2.0) + 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n);
}

void check_common(const PowerWeightParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta))
    throw std::invalid_argument("power-weight parameters must be finite");
  if (!(p.q >= 1.0) || !std::isfinite(p.q))
    throw std::invalid_argument("power-weight parameters need q >= 1");
}

std::string describe(const char* f, double a, double b, double c) {
  char buf[192];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

}  // namespace

const char* case_tag_name(CaseTag t) {
  switch (t) {
    case CaseTag::GroupCritical: return "group-critical";
    case CaseTag::HypCaseA: return "hyperbolic-subcritical";
    case CaseTag::HypCaseB: return "hyperbolic-supercritical";
    case CaseTag::CH_Flat: return "cartan-hadamard-flat";
    case CaseTag::CH_Curved: return "cartan-hadamard-curved";
    case CaseTag::Invalid: return "inadmissible";
  }
  return "inadmissible";
}

Classification classify_group(const PowerWeightParams& p, double sphere_measure, double band) {
  check_common(p);
  const double Q = p.dimension_param;
  if (!(Q > 0.0) || !std::isfinite(Q))
    throw std::invalid_argument("group classification needs a positive homogeneous dimension");
  if (!(sphere_measure > 0.0) || !std::isfinite(sphere_measure))
    throw std::invalid_argument("group classification needs a positive sphere measure");
  if (!(band >= 0.0)) throw std::invalid_argument("boundary band must be nonnegative");

  Classification out;
  const double excess = p.beta * p.q - Q;          // must be > 0
  const double crit = p.alpha + p.beta - Q / p.q;  // must vanish
  out.finite = excess > 0.0 && p.alpha < 0.0 && std::fabs(crit) <= kEqualityTol;
  out.case_tag = out.finite ? CaseTag::GroupCritical : CaseTag::Invalid;
  out.boundary = std::fabs(excess) <= band || std::fabs(p.alpha) <= band ||
                 (!out.finite && std::fabs(crit) <= band);
  if (out.finite)
    out.best_constant = std::exp((std::log(sphere_measure) - std::log(excess)) / p.q);
  out.detail = describe("beta q - Q = %.6g, alpha = %.6g, alpha + beta - Q/q = %.6g", excess,
                        p.alpha, crit);
  return out;
}

Classification classify_hyperbolic(const PowerWeightParams& p, double band) {
  check_common(p);
  const double n = p.dimension_param;
  if (!(n >= 2.0) || !std::isfinite(n))
    throw std::invalid_argument("hyperbolic classification needs dimension n >= 2");
  if (!(band >= 0.0)) throw std::invalid_argument("boundary band must be nonnegative");

  Classification out;
  const double d = n - p.beta * p.q;  // case split: (a) d >= 0, (b) d < 0
  const double s = p.alpha + p.beta;
  const double lo = (n - 1.0) / p.q;
  const double hi = n / p.q;
  const bool case_a = d >= 0.0;
  const bool alpha_ok = p.alpha <= kEqualityTol;
  const bool above_lo = s >= lo - kEqualityTol;
  const bool below_hi = s <= hi + kEqualityTol;
  out.finite = case_a ? (alpha_ok && above_lo) : (alpha_ok && above_lo && below_hi);
  out.case_tag = out.finite ? (case_a ? CaseTag::HypCaseA : CaseTag::HypCaseB) : CaseTag::Invalid;
  out.boundary = std::fabs(p.alpha) <= band || std::fabs(s - lo) <= band ||
                 std::fabs(d) <= band || (!case_a && std::fabs(s - hi) <= band);
  out.detail = describe("n - beta q = %.6g, alpha = %.6g, alpha + beta = %.6g", d, p.alpha, s);
  return out;
}

Classification classify_cartan_hadamard(const PowerWeightParams& p, double band) {
  check_common(p);
  const double b = p.curvature;
  if (!(b >= 0.0) || !std::isfinite(b))
    throw std::invalid_argument("Cartan-Hadamard classification needs curvature b >= 0");
  const double n = p.dimension_param;
  if (!(n >= 1.0) || !std::isfinite(n))
    throw std::invalid_argument("Cartan-Hadamard classification needs dimension n >= 1");

  Classification out;
  if (b == 0.0) {
    PowerWeightParams flat = p;
    flat.dimension_param = n;  // homogeneous dimension equals the topological one
    out = classify_group(flat, std::exp(real_sphere_area_log(n)), band);
    if (out.finite) out.case_tag = CaseTag::CH_Flat;
    out.detail = "flat case, group rule with Q = n: " + out.detail;
  } else {
    out = classify_hyperbolic(p, band);
    if (out.finite) out.case_tag = CaseTag::CH_Curved;
    out.detail = "curved case, hyperbolic rule: " + out.detail;
  }
  return out;
}

double classical_halfline_constant(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("the classical constant (p/(p-1))^p requires p > 1");
  return std::pow(p / (p - 1.0), p);
}

const char* region_geometry_name(RegionGeometry g) {
  switch (g) {
    case RegionGeometry::Group: return "group";
    case RegionGeometry::Hyperbolic: return "hyperbolic";
    case RegionGeometry::CartanHadamard: return "cartan_hadamard";
  }
  return "group";
}

void RegionScanConfig::validate() const {
  if (alpha_count < 1 || beta_count < 1)
    throw std::invalid_argument("region scan needs at least one grid point per axis");
  if (!(alpha_lo <= alpha_hi) || !(beta_lo <= beta_hi))
    throw std::invalid_argument("region scan ranges must be ordered");
  if (!std::isfinite(alpha_lo) || !std::isfinite(alpha_hi) || !std::isfinite(beta_lo) ||
      !std::isfinite(beta_hi))
    throw std::invalid_argument("region scan ranges must be finite");
  if (!(q >= 1.0)) throw std::invalid_argument("region scan needs q >= 1");
  if (!(boundary_band >= 0.0)) throw std::invalid_argument("boundary band must be nonnegative");
  if (!(curvature >= 0.0)) throw std::invalid_argument("curvature must be nonnegative");
  if (sphere_measure != 0.0 && !(sphere_measure > 0.0))
    throw std::invalid_argument("sphere measure must be positive (or 0 for the Euclidean default)");
  search.validate();
}

std::vector<RegionRow> region_scan(RegionGeometry geom, const RegionScanConfig& cfg) {
  cfg.validate();

  int ni = 0;
  PolarGeometry space = PolarGeometry::half_line();
  double sphere_linear = 0.0;
  switch (geom) {
    case RegionGeometry::Group: {
      if (!(cfg.n_or_Q > 0.0))
        throw std::invalid_argument("group region scan needs a positive homogeneous dimension");
      const double log_s = cfg.sphere_measure > 0.0 ? std::log(cfg.sphere_measure)
                                                    : real_sphere_area_log(cfg.n_or_Q);
      space = PolarGeometry::homogeneous_group(cfg.n_or_Q, log_s);
      sphere_linear = std::exp(log_s);
      break;
    }
    case RegionGeometry::Hyperbolic:
    case RegionGeometry::CartanHadamard: {
      ni = static_cast<int>(std::lround(cfg.n_or_Q));
      if (std::fabs(cfg.n_or_Q - ni) > 1e-9 || ni < 2)
        throw std::invalid_argument("manifold region scans need an integer dimension n >= 2");
      space = geom == RegionGeometry::Hyperbolic
                  ? PolarGeometry::hyperbolic(ni)
                  : PolarGeometry::cartan_hadamard(ni, cfg.curvature);
      break;
    }
  }

  auto grid_at = [](double lo, double hi, int count, int i) {
    return count == 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
  };
  const std::size_t total = std::size_t(cfg.alpha_count) * std::size_t(cfg.beta_count);
  std::vector<RegionRow> rows(total);

  parallel_for(
      total,
      [&](std::size_t idx) {
        const int bi = int(idx) / cfg.alpha_count;
        const int ai = int(idx) % cfg.alpha_count;
        RegionRow& row = rows[idx];
        row.alpha = grid_at(cfg.alpha_lo, cfg.alpha_hi, cfg.alpha_count, ai);
        row.beta = grid_at(cfg.beta_lo, cfg.beta_hi, cfg.beta_count, bi);
        row.q = cfg.q;
        row.n_or_Q = cfg.n_or_Q;
        row.geometry = geom;

        PowerWeightParams params{row.alpha, row.beta, cfg.q, cfg.n_or_Q, cfg.curvature};
        Classification cl;
        switch (geom) {
          case RegionGeometry::Group:
            cl = classify_group(params, sphere_linear, cfg.boundary_band);
            break;
          case RegionGeometry::Hyperbolic:
            cl = classify_hyperbolic(params, cfg.boundary_band);
            break;
          case RegionGeometry::CartanHadamard:
            cl = classify_cartan_hadamard(params, cfg.boundary_band);
            break;
        }
        row.closed_form_finite = cl.finite;
        row.boundary = cl.boundary;

        const bool sinh_weights =
            geom == RegionGeometry::Hyperbolic ||
            (geom == RegionGeometry::CartanHadamard && cfg.curvature > 0.0);
        const double ue = -row.beta * cfg.q;
        HardyProblem pb;
        pb.geometry = space;
        if (!sinh_weights) {
          pb.u = RadialWeight::power(ue);
          pb.v = RadialWeight::power(row.alpha);
        } else if (geom == RegionGeometry::Hyperbolic) {
          pb.u = RadialWeight::sinh_power(ue);
          pb.v = RadialWeight::sinh_power(row.alpha);
        } else {
          const double scale = std::sqrt(cfg.curvature);
          pb.u = RadialWeight::sinh_scaled_power(ue, scale);
          pb.v = RadialWeight::sinh_scaled_power(row.alpha, scale);
        }
        pb.q = cfg.q;

        const SupResult res = characterization_constant(pb, cfg.search);
        row.numeric_finite = res.constant.state() == ExtendedValue::State::Finite;
        if (row.numeric_finite)
          row.A_value = res.constant.value();
        else if (res.constant.state() == ExtendedValue::State::Divergent)
          row.A_value = std::numeric_limits<double>::infinity();
        else
          row.A_value = std::numeric_limits<double>::quiet_NaN();
      },
      cfg.threads);
  return rows;
}

namespace {

void append_number(std::string& s, double x) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  s.append(buf, r.ptr);
}

}  // namespace

std::string region_csv(const std::vector<RegionRow>& rows) {
  std::string out =
      "alpha,beta,q,n_or_Q,geometry,closed_form_finite,numeric_finite,boundary,A_value\n";
  for (const RegionRow& r : rows) {
    append_number(out, r.alpha);
    out += ',';
    append_number(out, r.beta);
    out += ',';
    append_number(out, r.q);
    out += ',';
    append_number(out, r.n_or_Q);
    out += ',';
    out += region_geometry_name(r.geometry);
    out += ',';
    out += r.closed_form_finite ? '1' : '0';
    out += ',';
    out += r.numeric_finite ? '1' : '0';
    out += ',';
    out += r.boundary ? '1' : '0';
    out += ',';
    append_number(out, r.A_value);
    out += '\n';
  }
  return out;
}

}  // namespace hardy
