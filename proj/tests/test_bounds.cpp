#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

#include "bnobs/bounds.hpp"
#include "bnobs/families.hpp"
#include "bnobs/state_space.hpp"

using namespace bnobs;

TEST_CASE("binary entropy basics") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0).margin(1e-15));
  for (double p : {0.01, 0.1, 0.25, 0.37}) {
    CHECK(binary_entropy(p) ==
          Catch::Approx(binary_entropy(1.0 - p)).margin(1e-12));
    CHECK(binary_entropy(p) > 0.0);
    CHECK(binary_entropy(p) < 1.0);
  }
}

TEST_CASE("conjunction output entropy") {
  // h2(1/4) for fan-in 2, frozen to ten decimals
  CHECK(andor_entropy(2) == Catch::Approx(0.8112781245).margin(1e-9));
  // the stable form must agree with the direct formula while 2^-k is exact
  for (int k = 1; k <= 20; ++k)
    CHECK(andor_entropy(k) ==
          Catch::Approx(binary_entropy(std::exp2(-k))).margin(1e-12));
  // decreasing in k past the k=1 maximum
  for (int k = 2; k <= 40; ++k)
    CHECK(andor_entropy(k) < andor_entropy(k - 1));
}

TEST_CASE("lower-bound coefficients") {
  CHECK(andor_lower_coeff(2) == Catch::Approx(0.18872).margin(1e-4));
  CHECK(andor_lower_coeff(2) ==
        Catch::Approx(1.0 - andor_entropy(2)).margin(1e-15));
  // nested-canalyzing output bias is 2^-k away from 1/2
  for (int k = 2; k <= 20; ++k)
    CHECK(nc_lower_coeff(k) ==
          Catch::Approx(1.0 - binary_entropy(0.5 - std::exp2(-double(k))))
              .margin(1e-10));
  CHECK(nc_lower_coeff(1) == 1.0);  // deterministic output at k = 1
  // both families keep a strictly positive coefficient far out
  for (int k = 2; k <= 60; ++k) {
    CHECK(nc_lower_coeff(k) > 0.0);
    CHECK(andor_lower_coeff(k) > 0.0);
  }
  // entropy of the nc output distribution grows toward 1, so beta does too
  for (int k = 2; k <= 30; ++k)
    CHECK(nc_lower_coeff(k) < nc_lower_coeff(k - 1));
}

TEST_CASE("best-construction coefficients") {
  CHECK(andor_best_coeff(2) == Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(andor_best_coeff(3) == Catch::Approx(4.0 / 7.0).margin(1e-15));
  CHECK(nc_best_coeff(3) == Catch::Approx(1.0 / 3.0).margin(1e-15));
  CHECK(nc_best_coeff(4) == 0.25);
}

TEST_CASE("scaled bounds for concrete sizes") {
  CHECK(andor_lower(12, 2) ==
        Catch::Approx(12 * andor_lower_coeff(2)).margin(1e-12));
  CHECK(nc_lower(12, 3) == Catch::Approx(0.5467919649).margin(1e-4));
}

TEST_CASE("coefficient rows carry the advantage flags") {
  const CoefficientRow r3 = coefficient_row(3);
  CHECK(r3.k == 3);
  CHECK(r3.andor_lower_coeff == Catch::Approx(0.4564).margin(1e-4));
  CHECK(r3.andor_best_coeff == Catch::Approx(0.5714).margin(1e-4));
  CHECK(r3.nc_lower_coeff == Catch::Approx(0.0456).margin(1e-4));
  CHECK(r3.nc_best_coeff == Catch::Approx(0.3333).margin(1e-4));
  CHECK(r3.block_information == Catch::Approx(3.8049511024).margin(1e-9));
  CHECK(r3.andor_best_exceeds_lower);
  CHECK(r3.nc_best_exceeds_lower);
  CHECK(r3.block_exceeds_k);

  const CoefficientRow r2 = coefficient_row(2);
  CHECK(r2.block_information == Catch::Approx(2.43383437338).margin(1e-9));
  // at k = 2 the two lower-bound coefficients coincide: both are 1 - h2(1/4)
  CHECK(r2.nc_lower_coeff == Catch::Approx(r2.andor_lower_coeff).margin(1e-12));

  for (int k = 2; k <= 30; ++k) {
    const CoefficientRow r = coefficient_row(k);
    CHECK(r.block_information - k > 1e-6);
    // the and-or gap scaled per block equals the information surplus exactly,
    // so the margin is measured there; the raw per-node gap decays like 2^-k
    CHECK((r.andor_best_coeff - r.andor_lower_coeff) *
              (std::exp2(double(k)) - 1) >
          1e-6);
    CHECK(r.andor_best_coeff > r.andor_lower_coeff);
    CHECK(r.nc_best_coeff - r.nc_lower_coeff > 1e-6);
    CHECK(r.andor_best_exceeds_lower);
    CHECK(r.nc_best_exceeds_lower);
    CHECK(r.block_exceeds_k);
  }
}

TEST_CASE("coefficient table and csv") {
  const std::vector<CoefficientRow> rows = coefficient_table(2, 5);
  REQUIRE(rows.size() == 4);
  CHECK(rows.front().k == 2);
  CHECK(rows.back().k == 5);

  std::ostringstream out;
  write_coefficient_csv(out, coefficient_table(2, 3));
  const std::string expected =
      "K,andor_lower_coeff,andor_best_coeff,nc_lower_coeff,nc_best_coeff,"
      "block_information,andor_best_exceeds_lower,nc_best_exceeds_lower,"
      "block_exceeds_k\n"
      "2,0.188721875541,0.333333333333,0.188721875541,0.5,2.43383437338,"
      "true,true,true\n"
      "3,0.4564355568,0.571428571429,0.045565997075,0.333333333333,"
      "3.8049511024,true,true,true\n";
  CHECK(out.str() == expected);
}

TEST_CASE("count and fixed-point bounds are ceiling logs") {
  CHECK(count_bound(1) == 0);
  CHECK(count_bound(2) == 1);
  CHECK(count_bound(3) == 2);
  CHECK(count_bound(4) == 2);
  CHECK(count_bound(5) == 3);
  CHECK(fixed_point_bound(8) == 3);
  CHECK(fixed_point_bound(0) == 0);
  std::mt19937 rng(31);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::uint64_t x = 1 + rng() % 1000000;
    const int expected =
        x <= 1 ? 0 : int(std::ceil(std::log2(double(x)) - 1e-12));
    CHECK(count_bound(x) == expected);
    CHECK(fixed_point_bound(x) == expected);
  }
}

TEST_CASE("per-instance bounds from a summary") {
  const StateSpaceSummary s = summarize(example1().net);
  const InstanceBounds b = instance_bounds(s);
  CHECK(b.max_count == 3);
  CHECK(b.count_log2 == Catch::Approx(std::log2(3.0)).margin(1e-12));
  CHECK(b.count_observers == 2);
  CHECK(b.fixed_points == 1);
  CHECK(b.fixed_point_log2 == 0.0);
  CHECK(b.fixed_point_observers == 0);
}

TEST_CASE("domain checks on k") {
  CHECK_THROWS_AS(andor_entropy(0), std::invalid_argument);
  CHECK_THROWS_AS(andor_lower_coeff(0), std::invalid_argument);
  CHECK_THROWS_AS(nc_lower_coeff(0), std::invalid_argument);
  CHECK_THROWS_AS(andor_best_coeff(1), std::invalid_argument);
  CHECK_THROWS_AS(coefficient_row(1), std::invalid_argument);
  CHECK_THROWS_AS(andor_entropy(61), std::invalid_argument);
}
