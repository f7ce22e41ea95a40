#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hardy/hardy.hpp"

namespace hardy {

// Power-weight parameters u = w^{-beta q}, v = w^{alpha}, where w is the
// radial scale of the space: r on groups and flat manifolds, sinh r on
// hyperbolic space, sinh(sqrt(b) r) on curved Cartan-Hadamard manifolds.
struct PowerWeightParams {
  double alpha = 0.0;
  double beta = 0.0;
  double q = 1.0;
  double dimension_param = 0.0;  // homogeneous dimension Q, or manifold dimension n
  double curvature = 0.0;        // b >= 0; Cartan-Hadamard only
};

enum class CaseTag { GroupCritical, HypCaseA, HypCaseB, CH_Flat, CH_Curved, Invalid };

const char* case_tag_name(CaseTag);

struct Classification {
  bool finite = false;
  CaseTag case_tag = CaseTag::Invalid;  // admissible case when finite, Invalid otherwise
  bool boundary = false;                // within `band` of a constraint wall
  std::optional<double> best_constant;  // closed form, where the theory gives one
  std::string detail;
};

// Group form: finite iff beta q > Q, alpha < 0 and alpha + beta = Q/q (the
// equality tested to 1e-12 absolute); the best constant is then
// (sphere_measure / (beta q - Q))^{1/q}.
Classification classify_group(const PowerWeightParams&, double sphere_measure,
                              double band = 1e-9);

// Hyperbolic form, split on the sign of n - beta q:
//   (a) n - beta q >= 0: finite iff alpha <= 0 and alpha + beta >= (n-1)/q;
//   (b) n - beta q <  0: finite iff alpha <= 0 and
//       (n-1)/q <= alpha + beta <= n/q.
// Equality endpoints count as finite with the boundary flag set. No closed
// best constant exists for this family.
Classification classify_hyperbolic(const PowerWeightParams&, double band = 1e-9);

// Cartan-Hadamard manifold of constant curvature -b: b = 0 reduces to the
// group rule with Q = n and the Euclidean sphere measure; b > 0 to the
// hyperbolic rule. The case tag records the delegation.
Classification classify_cartan_hadamard(const PowerWeightParams&, double band = 1e-9);

// (p/(p-1))^p, the constant of the classical one-dimensional inequality;
// domain error for p <= 1.
double classical_halfline_constant(double p);

// ---- region scan: closed-form admissibility vs. the numeric constant ----

enum class RegionGeometry { Group, Hyperbolic, CartanHadamard };

const char* region_geometry_name(RegionGeometry);

struct RegionRow {
  double alpha = 0.0;
  double beta = 0.0;
  double q = 1.0;
  double n_or_Q = 0.0;
  RegionGeometry geometry = RegionGeometry::Group;
  bool closed_form_finite = false;
  bool numeric_finite = false;
  bool boundary = false;
  double A_value = 0.0;  // +inf when divergent, NaN when inconclusive
};

struct RegionScanConfig {
  double alpha_lo = -2.0, alpha_hi = 2.0;
  int alpha_count = 21;
  double beta_lo = 0.0, beta_hi = 3.0;
  int beta_count = 21;
  double q = 1.0;
  double n_or_Q = 3.0;
  double curvature = 0.0;        // Cartan-Hadamard scans only
  double sphere_measure = 0.0;   // group scans; 0 means the Euclidean value for Q
  double boundary_band = 0.05;   // wall distance below which rows are flagged
  SupSearchConfig search{};
  unsigned threads = 0;          // 0 = hardware count

  void validate() const;
};

// Classifies and numerically evaluates every grid point, row order
// beta-major then alpha, independent of the thread count.
std::vector<RegionRow> region_scan(RegionGeometry, const RegionScanConfig&);

// CSV with header alpha,beta,q,n_or_Q,geometry,closed_form_finite,
// numeric_finite,boundary,A_value; shortest round-trip number formatting,
// byte-deterministic across runs.
std::string region_csv(const std::vector<RegionRow>&);

}  // namespace hardy
