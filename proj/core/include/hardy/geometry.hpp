#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hardy/quadrature.hpp"

namespace hardy {

// A metric measure space with polar decomposition collapses to a single
// radial density Lambda(r): integrals over the space become
// integral of g(|x|) Lambda(|x|) d|x|. Everything downstream only ever sees
// Lambda, in log space.
enum class GeometryKind { HalfLine, Euclidean, HomogeneousGroup, Hyperbolic, CartanHadamard, CustomRadial };

class PolarGeometry {
 public:
  GeometryKind kind() const { return kind_; }
  int topological_dimension() const { return n_; }
  double homogeneous_dimension() const { return Q_; }
  const std::vector<double>& dilation_weights() const { return nu_; }
  double curvature() const { return b_; }  // sectional-curvature scale; 0 means flat
  double log_sphere_measure() const { return log_sphere_; }
  double sphere_measure() const;

  // log Lambda(r), r > 0. Total measure of the sphere at radius r divided by dr.
  double log_radial_density(double r) const;

  // Closed-form log of the ball volume integral_0^R Lambda, when one exists
  // (all power-type densities; sinh-type in dimensions 2 and 3).
  std::optional<double> log_ball_volume_closed(double R) const;

  static PolarGeometry half_line();
  static PolarGeometry euclidean(int n);
  // Q need not be an integer; |S| is supplied as log (estimate it with
  // estimate_sphere_measure when only the quasi-norm is known).
  static PolarGeometry homogeneous_group(double Q, double log_sphere_measure,
                                         std::vector<double> dilation_weights = {});
  static PolarGeometry hyperbolic(int n);
  static PolarGeometry cartan_hadamard(int n, double b);
  static PolarGeometry custom_radial(std::function<double(double)> log_density);

 private:
  PolarGeometry() = default;
  GeometryKind kind_ = GeometryKind::HalfLine;
  int n_ = 1;
  double Q_ = 1.0;
  std::vector<double> nu_;
  double b_ = 0.0;
  double log_sphere_ = 0.0;
  std::function<double(double)> custom_log_density_;
};

// Linear-space density; refuses to round overflow to inf silently.
double radial_density(const PolarGeometry& geom, double r);

// Ball volume integral_0^R Lambda(r) dr; closed form when available, else quadrature.
ExtendedValue ball_volume(const PolarGeometry& geom, double R, const QuadConfig& cfg = {});

// ----- quasi-norms on homogeneous groups -----

// |x| satisfying |x| = |-x|, |D_lambda x| = lambda |x| for the anisotropic
// dilations D_lambda(x) = (lambda^{nu_1} x_1, ..., lambda^{nu_N} x_N).
enum class QuasiNormKind {
  MaxType,    // max_i |x_i|^{1/nu_i}
  Koranyi,    // ((x1^2+x2^2)^2 + x3^2)^{1/4}, dilation weights (1,1,2)
  Euclidean,  // (sum x_i^2)^{1/2}, all weights 1
};

struct QuasiNorm {
  QuasiNormKind kind = QuasiNormKind::Euclidean;
  std::vector<double> weights;  // nu_i; fixed to (1,1,2) for Koranyi

  std::size_t dim() const { return weights.size(); }
  double operator()(std::span<const double> x) const;

  static QuasiNorm max_type(std::vector<double> nu);
  static QuasiNorm koranyi();
  static QuasiNorm euclidean(int n);
};

struct SphereMeasureEstimate {
  double value = 0.0;      // |S| = Q * vol{|x| <= 1}
  double std_error = 0.0;  // one standard error on value
  std::int64_t accepted = 0;
  std::int64_t samples = 0;
};

// Monte Carlo rejection estimate of |S| = Q * vol(unit quasi-ball) from
// samples uniform in the box prod [-h_i, h_i]. Throws std::invalid_argument
// if accepted points hug the box boundary (box too small to contain the
// ball) or samples < 10^4.
SphereMeasureEstimate estimate_sphere_measure(const QuasiNorm& qn, double Q,
                                              std::span<const double> box_half_widths,
                                              std::int64_t samples, std::uint64_t seed);

}  // namespace hardy
