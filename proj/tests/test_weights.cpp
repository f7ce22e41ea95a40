#include <stdexcept>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hardy/weights.hpp"

using namespace hardy;

TEST_CASE("closed weight families evaluate in log space") {
  CHECK(RadialWeight::power(-1.5).log_value(2.0) == doctest::Approx(-1.5 * std::log(2.0)));
  CHECK(RadialWeight::sinh_power(2.0).log_value(3.0) == doctest::Approx(2.0 * log_sinh(3.0)));
  CHECK(RadialWeight::sinh_scaled_power(-2.0, 0.5).log_value(4.0) ==
        doctest::Approx(-2.0 * log_sinh(2.0)));
  // far beyond linear range: (sinh 900)^3
  CHECK(RadialWeight::sinh_power(3.0).log_value(900.0) ==
        doctest::Approx(3.0 * (900.0 - std::log(2.0))).epsilon(1e-12));
  CHECK(RadialWeight::power(2.0).domain_lo() == 0.0);
  CHECK(RadialWeight::power(2.0).domain_hi() == kInf);
}

TEST_CASE("monotonicity is derived from the exponent sign and can be overridden") {
  CHECK(RadialWeight::power(2.0).monotonicity() == Monotonicity::NonDecreasing);
  CHECK(RadialWeight::power(-2.0).monotonicity() == Monotonicity::NonIncreasing);
  CHECK(RadialWeight::sinh_power(-1.0).monotonicity() == Monotonicity::NonIncreasing);
  const RadialWeight w = RadialWeight::power(2.0).with_monotonicity(Monotonicity::Unknown);
  CHECK(w.monotonicity() == Monotonicity::Unknown);
  CHECK(w.exponent() == 2.0);
}

TEST_CASE("tables interpolate as exact power laws between samples") {
  const WeightTable t = WeightTable::from_pairs({{1.0, 2.0}, {10.0, 5.0}});
  // log-log linear: halfway in log r gives the geometric mean of the values
  CHECK(std::exp(t.log_interp(std::sqrt(10.0))) == doctest::Approx(std::sqrt(10.0)));
  CHECK(t.log_interp(1.0) == doctest::Approx(std::log(2.0)));
  CHECK(t.log_interp(10.0) == doctest::Approx(std::log(5.0)));
  CHECK_THROWS_AS(t.log_interp(0.5), std::domain_error);
  CHECK_THROWS_AS(t.log_interp(11.0), std::domain_error);

  const RadialWeight w = RadialWeight::tabulated(t);
  CHECK(w.domain_lo() == 1.0);
  CHECK(w.domain_hi() == 10.0);
  CHECK(w.log_value_or_zero(0.5) == kNegInf);
  CHECK(w.log_value_or_zero(2.0) == doctest::Approx(t.log_interp(2.0)));
  CHECK_THROWS_AS(w.log_value(0.5), std::domain_error);
}

TEST_CASE("table constructors reject malformed input") {
  CHECK_THROWS_AS(WeightTable::from_pairs({{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightTable::from_pairs({{1.0, 2.0}, {1.0, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightTable::from_pairs({{2.0, 1.0}, {1.0, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightTable::from_pairs({{1.0, 0.0}, {2.0, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightTable::from_pairs({{-1.0, 1.0}, {2.0, 3.0}}), std::invalid_argument);

  std::istringstream good("# comment\n0.5,4\n\n2,1\n");
  const WeightTable t = WeightTable::from_csv(good);
  REQUIRE(t.r.size() == 2);
  CHECK(t.r[0] == 0.5);
  CHECK(std::exp(t.log_v[0]) == doctest::Approx(4.0));

  std::istringstream bad("0.5,abc\n");
  CHECK_THROWS_AS(WeightTable::from_csv(bad), std::invalid_argument);
}

TEST_CASE("table monotonicity derivation reads the sampled trend") {
  CHECK(WeightTable::from_pairs({{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}).derive_monotonicity() ==
        Monotonicity::NonDecreasing);
  CHECK(WeightTable::from_pairs({{1.0, 3.0}, {2.0, 2.0}, {3.0, 1.0}}).derive_monotonicity() ==
        Monotonicity::NonIncreasing);
  CHECK(WeightTable::from_pairs({{1.0, 1.0}, {2.0, 3.0}, {3.0, 2.0}}).derive_monotonicity() ==
        Monotonicity::Unknown);
}

TEST_CASE("ball suprema of reciprocals follow the monotone closed forms") {
  // decreasing weight: 1/w increasing on (0, R], sup attained at R
  const WeightSup dec = sup_reciprocal_on_ball(RadialWeight::power(-2.0), 3.0);
  REQUIRE(dec.value.is_finite());
  CHECK(std::exp(dec.value.log_value()) == doctest::Approx(9.0));
  CHECK(dec.attained_at == 3.0);

  // increasing weight: 1/w blows up toward the origin
  CHECK(sup_reciprocal_on_ball(RadialWeight::power(2.0), 3.0).value.is_divergent());

  // constant weight
  const WeightSup c = sup_reciprocal_on_ball(RadialWeight::power(0.0), 3.0);
  CHECK(std::exp(c.value.log_value()) == doctest::Approx(1.0));

  const WeightSup s = sup_reciprocal_on_ball(RadialWeight::sinh_power(-1.0), 2.0);
  CHECK(std::exp(s.value.log_value()) == doctest::Approx(std::sinh(2.0)));
}

TEST_CASE("exterior suprema mirror the ball logic") {
  const WeightSup inc = sup_reciprocal_on_exterior(RadialWeight::power(2.0), 3.0);
  REQUIRE(inc.value.is_finite());
  CHECK(std::exp(inc.value.log_value()) == doctest::Approx(1.0 / 9.0));
  CHECK(inc.attained_at == 3.0);

  CHECK(sup_reciprocal_on_exterior(RadialWeight::power(-2.0), 3.0).value.is_divergent());

  // decaying sinh weight: 1/w grows without bound at infinity
  CHECK(sup_reciprocal_on_exterior(RadialWeight::sinh_power(-1.0), 1.0).value.is_divergent());
}

TEST_CASE("grid search with unknown monotonicity matches the closed forms") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> exponent(-3.0, 3.0);
  std::uniform_real_distribution<double> radius(0.01, 50.0);
  int finite_cases = 0;
  for (int i = 0; i < 100; ++i) {
    const double e = exponent(rng);
    const double R = radius(rng);
    const bool use_sinh = (i % 2) == 1;
    const RadialWeight w = use_sinh ? RadialWeight::sinh_power(e) : RadialWeight::power(e);
    const RadialWeight blind = w.with_monotonicity(Monotonicity::Unknown);

    const WeightSup closed = sup_reciprocal_on_ball(w, R);
    const WeightSup searched = sup_reciprocal_on_ball(blind, R);
    REQUIRE(closed.value.state() == searched.value.state());
    if (closed.value.is_finite()) {
      ++finite_cases;
      CHECK(searched.value.log_value() ==
            doctest::Approx(closed.value.log_value()).epsilon(1e-8));
    }

    const WeightSup closed_ext = sup_reciprocal_on_exterior(w, R);
    const WeightSup searched_ext = sup_reciprocal_on_exterior(blind, R);
    REQUIRE(closed_ext.value.state() == searched_ext.value.state());
    if (closed_ext.value.is_finite()) {
      CHECK(searched_ext.value.log_value() ==
            doctest::Approx(closed_ext.value.log_value()).epsilon(1e-8));
    }
  }
  CHECK(finite_cases > 20);  // the draw must exercise the finite branch too
}

TEST_CASE("table suprema respect the dip and the domain restriction") {
  // weight dips at r = 2: reciprocal peaks there
  const WeightTable t =
      WeightTable::from_pairs({{1.0, 4.0}, {2.0, 0.5}, {4.0, 3.0}, {8.0, 6.0}});
  const RadialWeight w = RadialWeight::tabulated(t);
  const WeightSup on_ball = sup_reciprocal_on_ball(w, 8.0);
  REQUIRE(on_ball.value.is_finite());
  CHECK(std::exp(on_ball.value.log_value()) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(on_ball.attained_at == doctest::Approx(2.0).epsilon(1e-6));

  // ball smaller than the dip location: sup sits at the right edge of overlap
  const WeightSup small = sup_reciprocal_on_ball(w, 1.5);
  REQUIRE(small.value.is_finite());
  CHECK(std::exp(small.value.log_value()) ==
        doctest::Approx(std::exp(-t.log_interp(1.5))).epsilon(1e-9));

  const WeightSup ext = sup_reciprocal_on_exterior(w, 3.0);
  REQUIRE(ext.value.is_finite());
  CHECK(std::exp(ext.value.log_value()) ==
        doctest::Approx(std::exp(-t.log_interp(3.0))).epsilon(1e-9));
}
