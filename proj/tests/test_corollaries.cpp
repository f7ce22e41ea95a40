#include <cmath>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "hardy/corollaries.hpp"

using namespace hardy;

TEST_CASE("group weights are admissible exactly on the critical line") {
  // beta q > Q, alpha < 0, alpha + beta = Q/q
  const Classification ok = classify_group({-1.0, 3.0, 2.0, 4.0}, 1.0);
  CHECK(ok.finite);
  CHECK(ok.case_tag == CaseTag::GroupCritical);
  CHECK_FALSE(ok.boundary);
  REQUIRE(ok.best_constant.has_value());
  CHECK(*ok.best_constant == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(ok.detail.find("beta q - Q") != std::string::npos);
  CHECK(std::string(case_tag_name(ok.case_tag)) == "group-critical");

  const Classification e3 = classify_group({-1.0, 4.0, 1.0, 3.0}, 4.0 * M_PI);
  CHECK(e3.finite);
  REQUIRE(e3.best_constant.has_value());
  CHECK(*e3.best_constant == doctest::Approx(4.0 * M_PI).epsilon(1e-12));

  // off the critical line: inadmissible, flagged near the wall
  const Classification near = classify_group({-0.97, 4.0, 1.0, 3.0}, 4.0 * M_PI, 0.05);
  CHECK_FALSE(near.finite);
  CHECK(near.case_tag == CaseTag::Invalid);
  CHECK(near.boundary);
  CHECK_FALSE(near.best_constant.has_value());

  // insufficient target decay
  CHECK_FALSE(classify_group({2.5, 0.5, 1.0, 3.0}, 1.0).finite);
  // alpha = 0 fails strictly and sits on the wall
  const Classification a0 = classify_group({0.0, 3.0, 1.0, 3.0}, 1.0);
  CHECK_FALSE(a0.finite);
  CHECK(a0.boundary);

  CHECK_THROWS_AS(classify_group({0.0, 1.0, 1.0, 0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(classify_group({0.0, 1.0, 1.0, 3.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(classify_group({0.0, 1.0, 0.5, 3.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(classify_group({0.0, 1.0, 1.0, 3.0}, 1.0, -1.0), std::invalid_argument);
  PowerWeightParams bad;
  bad.alpha = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(classify_group(bad, 1.0), std::invalid_argument);
}

TEST_CASE("hyperbolic weights split into two admissible regimes") {
  // light target decay: only a lower bound on alpha + beta
  const Classification a = classify_hyperbolic({-0.5, 2.8, 1.0, 3.0});
  CHECK(a.finite);
  CHECK(a.case_tag == CaseTag::HypCaseA);
  CHECK_FALSE(a.boundary);
  CHECK_FALSE(a.best_constant.has_value());
  CHECK(std::string(case_tag_name(a.case_tag)) == "hyperbolic-subcritical");
  CHECK(a.detail.find("n - beta q") != std::string::npos);

  // heavy target decay: alpha + beta capped above as well
  const Classification b = classify_hyperbolic({-0.5, 3.3, 1.0, 3.0});
  CHECK(b.finite);
  CHECK(b.case_tag == CaseTag::HypCaseB);
  CHECK(std::string(case_tag_name(b.case_tag)) == "hyperbolic-supercritical");
  CHECK_FALSE(classify_hyperbolic({-0.1, 3.6, 1.0, 3.0}).finite);

  // endpoints count as admissible but sit on the boundary
  const Classification lo_edge = classify_hyperbolic({-1.0, 3.0, 1.0, 3.0}, 0.05);
  CHECK(lo_edge.finite);
  CHECK(lo_edge.boundary);  // alpha + beta = (n-1)/q exactly
  const Classification hi_edge = classify_hyperbolic({-0.3, 3.3, 1.0, 3.0}, 0.05);
  CHECK(hi_edge.finite);
  CHECK(hi_edge.boundary);  // alpha + beta = n/q exactly

  // positive alpha is never admissible
  CHECK_FALSE(classify_hyperbolic({0.5, 3.0, 1.0, 3.0}).finite);
  // alpha = 0 is admissible in the light regime when the sum clears the floor
  const Classification a0 = classify_hyperbolic({0.0, 2.5, 1.0, 3.0}, 0.05);
  CHECK(a0.finite);
  CHECK(a0.boundary);

  CHECK_THROWS_AS(classify_hyperbolic({0.0, 1.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(classify_hyperbolic({0.0, 1.0, 1.0, 3.0}, -0.1), std::invalid_argument);
}

TEST_CASE("flat manifolds delegate to the group rule, curved to hyperbolic") {
  PowerWeightParams p{-1.0, 4.0, 1.0, 3.0, 0.0};
  const Classification flat = classify_cartan_hadamard(p);
  CHECK(flat.finite);
  CHECK(flat.case_tag == CaseTag::CH_Flat);
  CHECK(std::string(case_tag_name(flat.case_tag)) == "cartan-hadamard-flat");
  CHECK(flat.detail.rfind("flat case, group rule with Q = n:", 0) == 0);
  const Classification group_ref = classify_group(p, 4.0 * M_PI);
  REQUIRE(flat.best_constant.has_value());
  CHECK(*flat.best_constant == doctest::Approx(*group_ref.best_constant).epsilon(1e-12));

  p.curvature = 2.25;
  p.alpha = -0.5;
  p.beta = 2.8;
  const Classification curved = classify_cartan_hadamard(p);
  CHECK(curved.finite);
  CHECK(curved.case_tag == CaseTag::CH_Curved);
  CHECK(std::string(case_tag_name(curved.case_tag)) == "cartan-hadamard-curved");
  CHECK(curved.detail.rfind("curved case, hyperbolic rule:", 0) == 0);
  CHECK(curved.finite == classify_hyperbolic(p).finite);

  // inadmissible parameters keep the invalid tag through the delegation
  PowerWeightParams badp{1.0, 0.5, 1.0, 3.0, 0.0};
  CHECK(classify_cartan_hadamard(badp).case_tag == CaseTag::Invalid);

  PowerWeightParams negb = p;
  negb.curvature = -1.0;
  CHECK_THROWS_AS(classify_cartan_hadamard(negb), std::invalid_argument);
  PowerWeightParams lown = p;
  lown.curvature = 1.0;
  lown.dimension_param = 0.5;
  CHECK_THROWS_AS(classify_cartan_hadamard(lown), std::invalid_argument);
}

TEST_CASE("the classical one-dimensional constant") {
  CHECK(classical_halfline_constant(2.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(classical_halfline_constant(1.5) == doctest::Approx(std::pow(3.0, 1.5)).epsilon(1e-15));
  // decreases toward e as p grows
  CHECK(classical_halfline_constant(2.0) > classical_halfline_constant(3.0));
  CHECK(classical_halfline_constant(3.0) > classical_halfline_constant(10.0));
  CHECK(classical_halfline_constant(10.0) > std::exp(1.0));
  CHECK_THROWS_AS(classical_halfline_constant(1.0), std::domain_error);
  CHECK_THROWS_AS(classical_halfline_constant(0.5), std::domain_error);
  CHECK_THROWS_AS(classical_halfline_constant(std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("a region scan agrees with the closed-form rule off the walls") {
  RegionScanConfig cfg;
  cfg.alpha_lo = -2.0;
  cfg.alpha_hi = 0.0;
  cfg.alpha_count = 3;
  cfg.beta_lo = 3.0;
  cfg.beta_hi = 5.0;
  cfg.beta_count = 3;
  cfg.q = 1.0;
  cfg.n_or_Q = 3.0;
  cfg.boundary_band = 0.05;
  cfg.threads = 1;

  const auto rows = region_scan(RegionGeometry::Group, cfg);
  REQUIRE(rows.size() == 9);
  // beta-major order, alpha fastest
  CHECK(rows[0].alpha == doctest::Approx(-2.0));
  CHECK(rows[0].beta == doctest::Approx(3.0));
  CHECK(rows[1].alpha == doctest::Approx(-1.0));
  CHECK(rows[3].beta == doctest::Approx(4.0));

  int checked = 0;
  for (const RegionRow& r : rows) {
    if (r.boundary) continue;
    CHECK(r.closed_form_finite == r.numeric_finite);
    ++checked;
    if (r.closed_form_finite) {
      const double want = 4.0 * M_PI / (r.beta * r.q - 3.0);
      CHECK(r.A_value == doctest::Approx(want).epsilon(1e-6));
    } else {
      CHECK(std::isinf(r.A_value));
    }
  }
  CHECK(checked >= 4);
  CHECK(rows[4].closed_form_finite);  // alpha = -1, beta = 4: critical
  CHECK(rows[6].closed_form_finite);  // alpha = -2, beta = 5: critical
  CHECK_FALSE(rows[3].closed_form_finite);

  // identical rows regardless of the thread count
  RegionScanConfig cfg2 = cfg;
  cfg2.threads = 2;
  const auto rows2 = region_scan(RegionGeometry::Group, cfg2);
  REQUIRE(rows2.size() == rows.size());
  CHECK(region_csv(rows2) == region_csv(rows));
}

TEST_CASE("region scans validate their configuration") {
  RegionScanConfig cfg;
  cfg.alpha_count = 0;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Group, cfg), std::invalid_argument);
  cfg = {};
  cfg.alpha_lo = 1.0;
  cfg.alpha_hi = -1.0;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Group, cfg), std::invalid_argument);
  cfg = {};
  cfg.q = 0.5;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Group, cfg), std::invalid_argument);
  cfg = {};
  cfg.boundary_band = -1.0;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Group, cfg), std::invalid_argument);
  cfg = {};
  cfg.curvature = -1.0;
  CHECK_THROWS_AS(region_scan(RegionGeometry::CartanHadamard, cfg), std::invalid_argument);
  cfg = {};
  cfg.sphere_measure = -1.0;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Group, cfg), std::invalid_argument);
  cfg = {};
  cfg.n_or_Q = 2.5;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Hyperbolic, cfg), std::invalid_argument);
  cfg = {};
  cfg.n_or_Q = -3.0;
  CHECK_THROWS_AS(region_scan(RegionGeometry::Group, cfg), std::invalid_argument);
}

TEST_CASE("the scan table serializes deterministically") {
  RegionRow r;
  r.alpha = 0.5;
  r.beta = 1.5;
  r.q = 1.0;
  r.n_or_Q = 3.0;
  r.geometry = RegionGeometry::Group;
  r.closed_form_finite = true;
  r.numeric_finite = true;
  r.boundary = false;
  r.A_value = 0.125;
  RegionRow s;
  s.alpha = -2.0;
  s.beta = 3.0;
  s.q = 2.0;
  s.n_or_Q = 4.0;
  s.geometry = RegionGeometry::Hyperbolic;
  s.A_value = std::numeric_limits<double>::infinity();

  const std::string csv = region_csv({r, s});
  CHECK(csv ==
        "alpha,beta,q,n_or_Q,geometry,closed_form_finite,numeric_finite,boundary,A_value\n"
        "0.5,1.5,1,3,group,1,1,0,0.125\n"
        "-2,3,2,4,hyperbolic,0,0,0,inf\n");
  CHECK(std::string(region_geometry_name(RegionGeometry::CartanHadamard)) == "cartan_hadamard");
}
