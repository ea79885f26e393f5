#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "hardycheck/errors.hpp"
#include "hardycheck/weights.hpp"

using namespace hardycheck;

TEST_CASE("closed-form integrals of the basic families") {
  const WeightSpec e = WeightSpec::exp_power(1.0, 0.0, 1.0);
  CHECK(e.lower_integral(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  CHECK(e.upper_integral(2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
  CHECK(e.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.tail_finite());

  const WeightSpec sq = WeightSpec::power(-0.5);
  CHECK(sq.lower_integral(4.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_FALSE(sq.tail_finite());
  CHECK(sq.upper_integral(1.0) == kInf);

  // c t^a e^{-bt} against the gamma function.
  const WeightSpec g = WeightSpec::exp_power(1.0, 0.5, 2.0);
  CHECK(g.total_mass() ==
        doctest::Approx(boost::math::tgamma(1.5) / std::pow(2.0, 1.5)).epsilon(1e-12));
}

TEST_CASE("weight-class violations are rejected") {
  CHECK_THROWS_AS(WeightSpec::power(-1.5), WeightClassError);
  CHECK_THROWS_AS(WeightSpec::piecewise({{1.0, 0.0, -2.0}, {kInf, 0.0, 1.0}}),
                  WeightClassError);
  CHECK_THROWS_AS(WeightSpec::piecewise({{1.0, 0.0, 1.0}}), WeightClassError);
}

TEST_CASE("piecewise power specs integrate piece by piece") {
  // 1 on (0,1], t^{-2} on (1,inf).
  const WeightSpec w = WeightSpec::piecewise({{1.0, 0.0, 1.0}, {kInf, -2.0, 1.0}});
  CHECK(w.eval(0.5) == doctest::Approx(1.0));
  CHECK(w.eval(2.0) == doctest::Approx(0.25));
  CHECK(w.total_mass() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(w.upper_integral(0.25) == doctest::Approx(1.75).epsilon(1e-14));
  CHECK(w.upper_integral(4.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(w.continuous());
  CHECK(w.interior_breakpoints() == std::vector<double>{1.0});
}

TEST_CASE("parse round-trips through the canonical text") {
  for (const char* s : {"const:2", "pow:-0.5", "exp:3,0.5,2",
                        "pieces:[(1,0,1),(inf,-2,1)]"}) {
    const WeightSpec w = WeightSpec::parse(s);
    const WeightSpec again = WeightSpec::parse(w.text());
    CHECK(again.text() == w.text());
    for (double t : {0.3, 1.7, 9.0})
      CHECK(again.eval(t) == doctest::Approx(w.eval(t)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(WeightSpec::parse("nope:1"), ParseError);
  CHECK_THROWS_AS(WeightSpec::parse("exp:1,2"), ParseError);
}

TEST_CASE("tabulated specs interpolate log-linearly and extrapolate") {
  const WeightSpec w = WeightSpec::tabulated({{1.0, 1.0}, {4.0, 0.5}, {16.0, 0.25}});
  // Log-log slope -1/2 on both segments: w(t) = t^{-1/2}.
  CHECK(w.eval(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.eval(2.0) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
  CHECK(w.eval(0.25) == doctest::Approx(2.0).epsilon(1e-12));  // extrapolated to 0
  CHECK(w.eval(64.0) == doctest::Approx(0.125).epsilon(1e-12));  // and to inf
}

TEST_CASE("sigma_p closed forms and scaling") {
  const WeightSpec one = WeightSpec::constant(1.0);
  CHECK(sigma_p(one, 2.0, 0.0, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sigma_p(one, 2.0, 0.0, 0.0) == 0.0);

  // p = 1: esssup of 1/v on (0,x).
  const WeightSpec e = WeightSpec::exp_power(1.0, 0.0, 1.0);
  CHECK(sigma_p(e, 1.0, 0.0, 3.0) == doctest::Approx(std::exp(3.0)).epsilon(1e-10));

  // v -> lambda v scales sigma_p by lambda^{-1/p}, exactly. The family must
  // keep v^{1-p'} integrable at 0 for every tested p, so no power factor.
  const WeightSpec v = WeightSpec::exp_power(2.0, 0.0, 1.0);
  for (double p : {1.0, 1.5, 3.0}) {
    const double base = sigma_p(v, p, 0.0, 2.0);
    const double scaled = sigma_p(v.scaled(64.0), p, 0.0, 2.0);
    CHECK(scaled == doctest::Approx(base * std::pow(64.0, -1.0 / p)).epsilon(1e-12));
  }
}

TEST_CASE("dual exponent and rho") {
  CHECK(dual_and_rho(2.0, 2.0).first == doctest::Approx(2.0));
  CHECK(dual_and_rho(1.0, 1.0).first == kInf);
  CHECK(dual_and_rho(2.0, 1.0).second == doctest::Approx(2.0));
  CHECK(dual_and_rho(2.0, 4.0).second == kInf);  // r >= p: l^inf
}

TEST_CASE("exponent regime classification") {
  CHECK(Exponents(1, 1, 1).regime() == 'a');
  CHECK(Exponents(2, 3, 1).regime() == 'b');
  CHECK(Exponents(2, 1, 4).regime() == 'c');
  CHECK(Exponents(3, 1, 0.5).regime() == 'd');
  CHECK_THROWS(Exponents(0.5, 1, 1));
}
