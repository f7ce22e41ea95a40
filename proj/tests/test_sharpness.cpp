#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "hardy/sharpness.hpp"

using namespace hardy;

namespace {

HardyProblem euclid3_critical() {
  HardyProblem pb;
  pb.geometry = PolarGeometry::euclidean(3);
  pb.u = RadialWeight::power(-4.0);
  pb.v = RadialWeight::power(-1.0);
  pb.q = 1.0;
  return pb;
}

}  // namespace

TEST_CASE("the near-supremum set hugs the witness radius for closed weights") {
  const HardyProblem pb = euclid3_critical();
  const WitnessSpec s = witness_spec(pb, 1.0, 1000);
  CHECK(s.R == 1.0);
  CHECK(s.n == 1000);
  CHECK(s.log_sup == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(s.log_threshold == doctest::Approx(std::log(0.999)).epsilon(1e-12));
  CHECK(s.r_lo == doctest::Approx(0.999).epsilon(1e-12));
  CHECK(s.r_hi == 1.0);
  CHECK(s.measure_deficit == 0.0);

  const RadialTestFunction f = witness_function(pb, 1.0, 1000);
  CHECK(f.value(1.0) == 1.0);
  CHECK(f.value(0.9995) == 1.0);
  CHECK(f.value(0.999) == 0.0);
  CHECK(f.value(1.0000001) == 0.0);
}

TEST_CASE("a slack at least the supremum admits the whole ball") {
  const HardyProblem pb = euclid3_critical();
  // sup of 1/v on (0, 1/2] is 1/2, so slack 1/1 covers it entirely
  const WitnessSpec s = witness_spec(pb, 0.5, 1);
  CHECK(s.log_threshold == -std::numeric_limits<double>::infinity());
  CHECK(s.r_lo == 0.0);
  CHECK(s.r_hi == 0.5);
  CHECK(s.note.find("full ball") != std::string::npos);

  const Certificate c = lower_bound_certificate(pb, 0.5, 1);
  CHECK(c.analytic_floor == 0.0);
  CHECK(c.ratio_achieved == doctest::Approx(4.0 * M_PI).epsilon(1e-7));
}

TEST_CASE("a constant source weight makes every radius near-optimal") {
  HardyProblem pb;
  pb.geometry = PolarGeometry::half_line();
  pb.u = RadialWeight::sinh_power(-0.5);
  pb.v = RadialWeight::power(0.0);
  pb.q = 1.0;

  const WitnessSpec s = witness_spec(pb, 0.3, 50);
  CHECK(s.r_lo == 0.0);
  CHECK(s.r_hi == 0.3);
  CHECK(s.log_threshold == doctest::Approx(std::log(0.98)).epsilon(1e-12));

  const Certificate c = lower_bound_certificate(pb, 0.3, 50);
  CHECK(c.analytic_floor == doctest::Approx(2.61434127618238 * 0.98).epsilon(1e-9));
  CHECK(c.ratio_achieved >= c.analytic_floor - c.tolerance_used);
}

TEST_CASE("certificates on a critical problem sit at the constant") {
  const HardyProblem pb = euclid3_critical();
  const Certificate c = lower_bound_certificate(pb, 1.0, 1000);
  const double A = 4.0 * M_PI;
  CHECK(c.analytic_floor == doctest::Approx(A * 0.999).epsilon(1e-8));
  CHECK(c.ratio_achieved == doctest::Approx(A).epsilon(1e-7));
  CHECK(c.constant.is_finite());
  CHECK(std::fabs(c.gap) <= 1e-5 * A);
}

TEST_CASE("a sampled source weight can split the near-supremum set") {
  HardyProblem pb;
  pb.geometry = PolarGeometry::half_line();
  pb.u = RadialWeight::power(-2.0);
  pb.v = RadialWeight::tabulated(
      WeightTable::from_pairs({{1.0, 0.5}, {2.0, 5.0}, {4.0, 0.5}, {8.0, 5.0}}));
  pb.q = 1.0;

  const WitnessSpec s = witness_spec(pb, 8.0, 10);
  // two dips reach the reciprocal supremum 2; the one around r = 4 is wider
  CHECK(s.r_lo == doctest::Approx(3.93889).epsilon(1e-4));
  CHECK(s.r_hi == doctest::Approx(4.06225).epsilon(1e-4));
  CHECK(s.measure_deficit == doctest::Approx(0.112).epsilon(0.02));
  CHECK(s.note.find("splits into 2") != std::string::npos);

  const Certificate c = lower_bound_certificate(pb, 8.0, 10);
  CHECK(c.ratio_achieved >= c.analytic_floor - c.tolerance_used);
}

TEST_CASE("witness construction refuses ill-posed requests") {
  const HardyProblem pb = euclid3_critical();

  HardyProblem conj = pb;
  conj.direction = Direction::Conjugate;
  conj.u = RadialWeight::power(0.0);
  conj.v = RadialWeight::power(1.0);
  CHECK_THROWS_AS(witness_spec(conj, 1.0, 10), std::invalid_argument);

  HardyProblem withp;
  withp.geometry = PolarGeometry::half_line();
  withp.u = RadialWeight::power(-2.0);
  withp.v = RadialWeight::power(0.0);
  withp.q = 2.0;
  withp.p = 2.0;
  CHECK_THROWS_AS(witness_spec(withp, 1.0, 10), std::invalid_argument);

  // reciprocal supremum infinite near the origin
  HardyProblem unbounded = pb;
  unbounded.v = RadialWeight::power(1.0);
  CHECK_THROWS_AS(witness_spec(unbounded, 1.0, 10), std::domain_error);

  CHECK_THROWS_AS(witness_spec(pb, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(witness_spec(pb, 1.0, 0), std::invalid_argument);

  // slack below double resolution of the threshold
  CHECK_THROWS_AS(witness_spec(pb, 1.0, 1000000000000000000LL), std::invalid_argument);

  // divergent exterior mass: no finite floor exists
  HardyProblem heavy;
  heavy.geometry = PolarGeometry::half_line();
  heavy.u = RadialWeight::power(-1.0);
  heavy.v = RadialWeight::power(-1.0);
  heavy.q = 1.0;
  CHECK_THROWS_AS(lower_bound_certificate(heavy, 1.0, 10), std::domain_error);
}

TEST_CASE("the default schedule spans three radii and four slacks") {
  const auto sched = default_schedule(2.0);
  REQUIRE(sched.size() == 12);
  CHECK(sched.front().first == doctest::Approx(0.2));
  CHECK(sched.front().second == 10);
  CHECK(sched.back().first == doctest::Approx(20.0));
  CHECK(sched.back().second == 10000);
  // a degenerate argmax falls back to radius 1
  CHECK(default_schedule(0.0).front().first == doctest::Approx(0.1));
  CHECK(default_schedule(std::numeric_limits<double>::infinity())[4].first ==
        doctest::Approx(1.0));
}

TEST_CASE("a full study on a critical problem certifies the constant") {
  const HardyProblem pb = euclid3_critical();
  const SharpnessResult res = sharpness_study(pb, default_schedule(1.0));
  REQUIRE_FALSE(res.aborted);
  REQUIRE(res.certificates.size() == 12);
  CHECK(res.constant.is_finite());
  const double A = 4.0 * M_PI;
  CHECK(res.summary.best_ratio == doctest::Approx(A).epsilon(1e-6));
  CHECK(res.summary.relative_gap < 1e-4);
  CHECK(res.summary.achieved);
  CHECK(res.summary.monotone_in_slack);
  CHECK_FALSE(res.summary.ratio_exceeds_constant);
  CHECK(res.summary.note.find("best ratio") != std::string::npos);
  for (const Certificate& c : res.certificates) {
    CHECK(c.ratio_achieved >= c.analytic_floor - c.tolerance_used);
    CHECK(c.ratio_achieved <= A * (1.0 + 1e-4));
  }
}

TEST_CASE("a divergent constant aborts the study before any certificate") {
  HardyProblem pb = euclid3_critical();
  pb.u = RadialWeight::power(-3.0);
  const SharpnessResult res = sharpness_study(pb, default_schedule(1.0));
  CHECK(res.aborted);
  CHECK(res.certificates.empty());
  CHECK(res.abort_reason.find("divergent") != std::string::npos);
  CHECK(res.summary.note == "no certificates completed");
}

TEST_CASE("a failing schedule entry keeps the completed prefix") {
  const HardyProblem pb = euclid3_critical();
  const std::vector<std::pair<double, long long>> sched = {
      {1.0, 10}, {1.0, 1000000000000000000LL}, {1.0, 100}};
  const SharpnessResult res = sharpness_study(pb, sched);
  CHECK(res.aborted);
  REQUIRE(res.certificates.size() == 1);
  CHECK(res.abort_reason.find("use a smaller n") != std::string::npos);

  CHECK_THROWS_AS(sharpness_study(pb, {}), std::invalid_argument);
  CHECK_THROWS_AS(sharpness_study(pb, sched, {}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sharpness_study(pb, sched, {}, 1.0), std::invalid_argument);
}
