#include "hardy/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "hardy/logspace.hpp"

namespace hardy {
namespace {

void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("radius must be positive and finite");
}

// log(sinh x - x), stable across scales (series for small x, exp form for large).
double log_sinh_minus_x(double x) {
  if (x <= 0.0) return kNegInf;
  if (x < 0.05) {
    const double x2 = x * x;
    return 3.0 * std::log(x) - std::log(6.0) + std::log1p(x2 / 20.0 + x2 * x2 / 840.0 + x2 * x2 * x2 / 60480.0);
  }
  if (x < 30.0) return std::log(std::sinh(x) - x);
  return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x) - 2.0 * x * std::exp(-x));
}

// log integral_0^x sinh^m, closed for m = 1, 2.
std::optional<double> log_sinh_power_primitive(int m, double x) {
  if (m == 1) return std::log(2.0) + 2.0 * log_sinh(0.5 * x);        // cosh x - 1
  if (m == 2) return log_sinh_minus_x(2.0 * x) - std::log(4.0);      // (sinh 2x - 2x)/4
  return std::nullopt;
}

}  // namespace

double PolarGeometry::sphere_measure() const { return std::exp(log_sphere_); }

double PolarGeometry::log_radial_density(double r) const {
  check_radius(r);
  switch (kind_) {
    case GeometryKind::HalfLine:
      return 0.0;
    case GeometryKind::Euclidean:
    case GeometryKind::HomogeneousGroup:
      return log_sphere_ + (Q_ - 1.0) * std::log(r);
    case GeometryKind::Hyperbolic:
      return log_sphere_ + (n_ - 1.0) * log_sinh(r);
    case GeometryKind::CartanHadamard:
      if (b_ == 0.0) return log_sphere_ + (n_ - 1.0) * std::log(r);
      return log_sphere_ + (n_ - 1.0) * (log_sinh(std::sqrt(b_) * r) - 0.5 * std::log(b_));
    case GeometryKind::CustomRadial:
      return custom_log_density_(r);
  }
  throw std::logic_error("unreachable geometry kind");
}

std::optional<double> PolarGeometry::log_ball_volume_closed(double R) const {
  if (!(R >= 0.0) || !std::isfinite(R)) throw std::invalid_argument("ball radius must be nonnegative and finite");
  if (R == 0.0) return kNegInf;
  switch (kind_) {
    case GeometryKind::HalfLine:
      return std::log(R);
    case GeometryKind::Euclidean:
    case GeometryKind::HomogeneousGroup:
      return log_sphere_ + Q_ * std::log(R) - std::log(Q_);
    case GeometryKind::Hyperbolic: {
      const auto p = log_sinh_power_primitive(n_ - 1, R);
      if (!p) return std::nullopt;
      return log_sphere_ + *p;
    }
    case GeometryKind::CartanHadamard: {
      if (b_ == 0.0) return log_sphere_ + Q_ * std::log(R) - std::log(Q_);
      const auto p = log_sinh_power_primitive(n_ - 1, std::sqrt(b_) * R);
      if (!p) return std::nullopt;
      return log_sphere_ + *p - 0.5 * n_ * std::log(b_);
    }
    case GeometryKind::CustomRadial:
      return std::nullopt;
  }
  throw std::logic_error("unreachable geometry kind");
}

PolarGeometry PolarGeometry::half_line() {
  PolarGeometry g;
  g.kind_ = GeometryKind::HalfLine;
  g.n_ = 1;
  g.Q_ = 1.0;
  g.log_sphere_ = 0.0;  // absorbed into Lambda = 1
  return g;
}

PolarGeometry PolarGeometry::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("euclidean: dimension must be >= 1");
  PolarGeometry g;
  g.kind_ = GeometryKind::Euclidean;
  g.n_ = n;
  g.Q_ = n;
  g.log_sphere_ = log_sphere_area(n);
  return g;
}

PolarGeometry PolarGeometry::homogeneous_group(double Q, double log_sphere, std::vector<double> nu) {
  if (!(Q > 0.0) || !std::isfinite(Q)) throw std::invalid_argument("homogeneous_group: Q must be positive");
  for (double w : nu)
    if (!(w > 0.0)) throw std::invalid_argument("homogeneous_group: dilation weights must be positive");
  PolarGeometry g;
  g.kind_ = GeometryKind::HomogeneousGroup;
  g.n_ = nu.empty() ? int(std::lround(Q)) : int(nu.size());
  g.Q_ = Q;
  g.nu_ = std::move(nu);
  g.log_sphere_ = log_sphere;
  return g;
}

PolarGeometry PolarGeometry::hyperbolic(int n) {
  if (n < 2) throw std::invalid_argument("hyperbolic: dimension must be >= 2");
  PolarGeometry g;
  g.kind_ = GeometryKind::Hyperbolic;
  g.n_ = n;
  g.Q_ = n;
  g.log_sphere_ = log_sphere_area(n);
  return g;
}

PolarGeometry PolarGeometry::cartan_hadamard(int n, double b) {
  if (n < 2) throw std::invalid_argument("cartan_hadamard: dimension must be >= 2");
  if (!(b >= 0.0) || !std::isfinite(b)) throw std::invalid_argument("cartan_hadamard: curvature parameter must be >= 0");
  PolarGeometry g;
  g.kind_ = GeometryKind::CartanHadamard;
  g.n_ = n;
  g.Q_ = n;
  g.b_ = b;
  g.log_sphere_ = log_sphere_area(n);
  return g;
}

PolarGeometry PolarGeometry::custom_radial(std::function<double(double)> log_density) {
  if (!log_density) throw std::invalid_argument("custom_radial: density function required");
  PolarGeometry g;
  g.kind_ = GeometryKind::CustomRadial;
  g.n_ = 1;
  g.Q_ = 1.0;
  g.log_sphere_ = 0.0;  // absorbed
  g.custom_log_density_ = std::move(log_density);
  return g;
}

double radial_density(const PolarGeometry& geom, double r) {
  const double lv = geom.log_radial_density(r);
  if (lv > 709.0) throw std::overflow_error("radial_density exceeds double range; use log_radial_density");
  return std::exp(lv);
}

ExtendedValue ball_volume(const PolarGeometry& geom, double R, const QuadConfig& cfg) {
  if (const auto closed = geom.log_ball_volume_closed(R))
    return ExtendedValue::finite_from_log(*closed, 1e-15);
  LogIntegrand lam;
  lam.log_eval = [&geom](double r) { return geom.log_radial_density(r); };
  return integrate_interval(lam, 0.0, R, cfg);
}

// ----- quasi-norms -----

double QuasiNorm::operator()(std::span<const double> x) const {
  if (x.size() != weights.size()) throw std::invalid_argument("quasi-norm: dimension mismatch");
  switch (kind) {
    case QuasiNormKind::Euclidean: {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    case QuasiNormKind::MaxType: {
      double m = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::pow(std::fabs(x[i]), 1.0 / weights[i]));
      return m;
    }
    case QuasiNormKind::Koranyi: {
      const double rho2 = x[0] * x[0] + x[1] * x[1];
      return std::pow(rho2 * rho2 + x[2] * x[2], 0.25);
    }
  }
  throw std::logic_error("unreachable quasi-norm kind");
}

QuasiNorm QuasiNorm::max_type(std::vector<double> nu) {
  if (nu.empty()) throw std::invalid_argument("max_type: needs at least one dilation weight");
  for (double w : nu)
    if (!(w > 0.0)) throw std::invalid_argument("max_type: dilation weights must be positive");
  return QuasiNorm{QuasiNormKind::MaxType, std::move(nu)};
}

QuasiNorm QuasiNorm::koranyi() { return QuasiNorm{QuasiNormKind::Koranyi, {1.0, 1.0, 2.0}}; }

QuasiNorm QuasiNorm::euclidean(int n) {
  if (n < 1) throw std::invalid_argument("euclidean norm: dimension must be >= 1");
  return QuasiNorm{QuasiNormKind::Euclidean, std::vector<double>(std::size_t(n), 1.0)};
}

SphereMeasureEstimate estimate_sphere_measure(const QuasiNorm& qn, double Q,
                                              std::span<const double> box, std::int64_t samples,
                                              std::uint64_t seed) {
  if (samples < 10000) throw std::invalid_argument("estimate_sphere_measure: need at least 10^4 samples");
  if (!(Q > 0.0)) throw std::invalid_argument("estimate_sphere_measure: Q must be positive");
  if (box.size() != qn.dim()) throw std::invalid_argument("estimate_sphere_measure: box/norm dimension mismatch");
  double box_vol = 1.0;
  for (double h : box) {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("estimate_sphere_measure: box half-widths must be positive");
    box_vol *= 2.0 * h;
  }

  std::mt19937_64 rng(seed);
  // Fixed 53-bit mapping rather than std::uniform_real_distribution: the
  // distribution's output is implementation-defined and the estimate must be
  // bit-reproducible from (seed, samples) alone.
  auto unit = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };

  const std::size_t d = qn.dim();
  std::vector<double> x(d);
  std::int64_t accepted = 0, boundary_hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < d; ++i) x[i] = box[i] * (2.0 * unit() - 1.0);
    if (qn(x) <= 1.0) {
      ++accepted;
      for (std::size_t i = 0; i < d; ++i)
        if (std::fabs(x[i]) > 0.999 * box[i]) {
          ++boundary_hits;
          break;
        }
    }
  }
  if (boundary_hits > 0)
    throw std::invalid_argument(
        "estimate_sphere_measure: accepted samples on the box boundary (" + std::to_string(boundary_hits) +
        " of " + std::to_string(accepted) + "); the box does not safely contain the unit ball - enlarge it");

  const double p = double(accepted) / double(samples);
  SphereMeasureEstimate est;
  est.value = Q * box_vol * p;
  est.std_error = Q * box_vol * std::sqrt(p * (1.0 - p) / double(samples));
  est.accepted = accepted;
  est.samples = samples;
  return est;
}

}  // namespace hardy
