#include <doctest.h>

#include <cmath>

#include "hardycheck/covering.hpp"
#include "hardycheck/errors.hpp"

using namespace hardycheck;

TEST_CASE("dyadic points of u = 3 e^{-t} match the closed-form inversion") {
  const WeightSpec u = WeightSpec::exp_power(3.0, 0.0, 1.0);
  const CoveringSequence cs = build_covering(u, -8, 8);
  CHECK(cs.finite_mass);
  CHECK(cs.total_mass == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(cs.M == 1);
  CHECK(cs.k_max == 1);
  for (int k = -8; k <= 1; ++k) {
    const double expect = -std::log(1.0 - std::ldexp(1.0, k) / 3.0);
    CHECK(cs.x(k) == doctest::Approx(expect).epsilon(1e-11));
  }
  CHECK(cs.block_end(1) == kInf);
  CHECK(cs.last_block_index() == 1);
}

TEST_CASE("infinite-mass weights give x_k = inverse of the cumulative") {
  const CoveringSequence cs = build_covering(WeightSpec::constant(1.0), -4, 4);
  CHECK_FALSE(cs.finite_mass);
  CHECK(cs.k_max == 4);
  for (int k = -4; k <= 4; ++k)
    CHECK(cs.x(k) == doctest::Approx(std::ldexp(1.0, k)).epsilon(1e-12));
  // The last stored point only closes block k_max - 1.
  CHECK(cs.last_block_index() == 3);
}

TEST_CASE("total mass exactly a power of two is degenerate") {
  const WeightSpec u = WeightSpec::exp_power(1.0, 0.0, 1.0);  // mass 1 = 2^0
  CHECK_THROWS_AS(build_covering(u, -4, 4), DegenerateMassError);
  const CoveringSequence cs = build_covering(u, -4, 4, {}, true);
  CHECK(cs.degenerate_dropped);
  CHECK(cs.M == -1);
  CHECK(cs.x(-1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("validate_covering checks telescoping and the dyadic window") {
  const WeightSpec u = WeightSpec::exp_power(3.0, 0.0, 1.0);
  const CoveringSequence cs = build_covering(u, -6, 6);
  const auto checks = validate_covering(cs, u, 2.0, 1.0);
  REQUIRE(!checks.empty());
  for (const BlockCheck& bc : checks) {
    CHECK(bc.pass);
    CHECK(bc.ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bc.remark_value >= bc.remark_lo * (1.0 - 1e-9));
    CHECK(bc.remark_value <= bc.remark_hi * (1.0 + 1e-9));
  }
  // With p=2, r=1 the weighted block integral telescopes exactly:
  // \int (\int_0^t u) u dt = (1/2)(2^{2k} - 2^{2(k-1)}), so k=1 gives 3/2.
  const BlockCheck& top = checks.back();
  CHECK(top.k == 1);
  CHECK(top.remark_value == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("bad index ranges are rejected") {
  CHECK_THROWS_AS(build_covering(WeightSpec::constant(1.0), 1, 4),
                  std::invalid_argument);
}
