#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <sstream>

#include "bnobs/classify.hpp"
#include "bnobs/families.hpp"
#include "bnobs/io.hpp"
#include "bnobs/observability.hpp"
#include "bnobs/state_space.hpp"

using namespace bnobs;

namespace {

ObservabilityVerdict family_verdict(const FamilySpec& spec) {
  REQUIRE(spec.scheme.has_value());
  return check(spec.net, *spec.scheme);
}

void expect_class(const FamilySpec& spec, Classification::Family fam, int k) {
  const Classification c = classify(spec.net);
  CHECK(c.family == fam);
  CHECK(c.k == k);
}

std::string render_steps(const Network& net, int steps) {
  std::ostringstream out;
  const TransitionTable table = transition_table(net, steps);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (int t = 0; t <= steps; ++t) {
      if (t) out << ' ';
      out << format_state(table.rows[r][t], table.n);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("worst-case 2-and-or family") {
  for (int n : {2, 3, 4, 5}) {
    const FamilySpec spec = and_or_worst2(n);
    CHECK(spec.net.node_count() == n);
    expect_class(spec, Classification::Family::AndOr, 2);
    CHECK(spec.claimed_min_observers == n);
    const MinObserversResult r = min_observers(spec.net, {});
    REQUIRE(r.found);
    CHECK(r.min_size == n);
  }
}

TEST_CASE("best-case 2-and-or family and its copies") {
  const FamilySpec base = and_or_best2(3);
  expect_class(base, Classification::Family::AndOr, 2);
  REQUIRE(base.scheme.has_value());
  CHECK(base.scheme->observed == std::vector<int>{1});
  const ObservabilityVerdict v = family_verdict(base);
  CHECK(v.observable);
  CHECK(v.horizon == 3);

  for (int n : {6, 9}) {
    const FamilySpec spec = and_or_best2(n);
    CHECK(spec.net.node_count() == n);
    CHECK(spec.scheme->size() == n / 3);
    CHECK(spec.claimed_min_observers == n / 3);
    const ObservabilityVerdict vc = family_verdict(spec);
    CHECK(vc.observable);
    CHECK(vc.horizon == 3);
  }
}

TEST_CASE("three-step trajectory table of the best-case block") {
  const std::string expected =
      "000 001 100 001\n"
      "001 100 001 100\n"
      "010 000 001 100\n"
      "011 010 000 001\n"
      "100 001 100 001\n"
      "101 100 001 100\n"
      "110 000 001 100\n"
      "111 010 000 001\n";
  CHECK(render_steps(and_or_best2(3).net, 3) == expected);
}

TEST_CASE("worst-case K-and-or family") {
  for (int k : {3, 4}) {
    const FamilySpec spec = and_or_worstK(k);
    CHECK(spec.net.node_count() == k + 1);
    expect_class(spec, Classification::Family::AndOr, k);
    CHECK(spec.claimed_min_observers == k + 1);
    const StateSpaceSummary s = summarize(spec.net);
    CHECK(s.max_count == (std::uint64_t{1} << (k + 1)) - 2 * k);
    const MinObserversResult r = min_observers(spec.net, {});
    REQUIRE(r.found);
    CHECK(r.min_size == k + 1);
  }
}

TEST_CASE("best-case K-and-or family") {
  for (int k : {3, 4}) {
    const FamilySpec spec = and_or_bestK(k);
    const int block = (1 << k) - 1;
    CHECK(spec.net.node_count() == block);
    expect_class(spec, Classification::Family::AndOr, k);
    CHECK(spec.scheme->size() == block - k);
    const ObservabilityVerdict v = family_verdict(spec);
    CHECK(v.observable);
    CHECK(v.horizon <= 2);
  }
  CHECK(and_or_bestK(3).scheme->size() == 4);
  CHECK(and_or_bestK(4).scheme->size() == 11);
  // two blocks of the k = 3 construction
  const FamilySpec two = and_or_bestK(3, 14);
  CHECK(two.net.node_count() == 14);
  CHECK(two.scheme->size() == 8);
  const ObservabilityVerdict v = family_verdict(two);
  CHECK(v.observable);
  CHECK(v.horizon <= 2);
}

TEST_CASE("parity ring family") {
  for (int n = 2; n <= 10; ++n) {
    const FamilySpec spec = xor_ring(n);
    expect_class(spec, Classification::Family::Xor, 2);
    CHECK(spec.scheme->observed == std::vector<int>{1});
    const ObservabilityVerdict v = family_verdict(spec);
    CHECK(v.observable);
    if (n > 2) CHECK(v.horizon <= n - 1);
  }
}

TEST_CASE("paired parity family") {
  for (int n : {2, 4, 6, 8, 10}) {
    const FamilySpec spec = xor_pairs(n);
    expect_class(spec, Classification::Family::Xor, 2);
    CHECK(spec.scheme->size() == n / 2);
    CHECK(family_verdict(spec).observable);
  }
}

TEST_CASE("identical-parity worst case") {
  // The family ships with the claim that all n nodes must be observed, but
  // the true minimum is n - 1: nodes 3..n feed no update and must be observed
  // directly, while y(1) = x1 xor x2 recovers whichever of {x1, x2} is not.
  for (int n : {2, 3, 4}) {
    const FamilySpec spec = xor_worst(n);
    expect_class(spec, Classification::Family::Xor, 2);
    CHECK(spec.claimed_min_observers == n);
    const MinObserversResult r = min_observers(spec.net, {});
    REQUIRE(r.found);
    CHECK(r.min_size == n - 1);
    std::vector<int> want{1};
    for (int i = 3; i <= n; ++i) want.push_back(i);
    CHECK(r.scheme.observed == want);
  }
}

TEST_CASE("complement parity family") {
  for (int k : {3, 5}) {
    const FamilySpec spec = xor_complement(k);
    CHECK(spec.net.node_count() == k + 1);
    expect_class(spec, Classification::Family::Xor, k);
    CHECK(spec.scheme->size() == k);
    const ObservabilityVerdict v = family_verdict(spec);
    CHECK(v.observable);
    CHECK(v.horizon == 1);
    const StateSpaceSummary s = summarize(spec.net);
    CHECK(s.fixed_points.size() == std::size_t{1} << k);
  }
  const MinObserversResult r = min_observers(xor_complement(3).net, {});
  REQUIRE(r.found);
  CHECK(r.min_size == 3);
}

TEST_CASE("complement parity copies") {
  const FamilySpec spec = xor_complement_copies(3, 8);
  CHECK(spec.net.node_count() == 8);
  expect_class(spec, Classification::Family::Xor, 3);
  CHECK(spec.scheme->size() == 6);
  CHECK(family_verdict(spec).observable);
}

TEST_CASE("single-observer parity family") {
  for (int k : {3, 4, 5}) {
    const FamilySpec spec = xor_m1(k);
    CHECK(spec.net.node_count() == k + 1);
    expect_class(spec, Classification::Family::Xor, k);
    CHECK(spec.scheme->observed == std::vector<int>{1});
    const ObservabilityVerdict v = family_verdict(spec);
    CHECK(v.observable);
    CHECK(v.horizon <= k);
  }
}

TEST_CASE("nested-canalyzing block family") {
  const std::pair<int, int> cases[] = {{3, 3}, {4, 4}, {4, 8}, {4, 11},
                                       {3, 10}};
  for (auto [k, n] : cases) {
    const FamilySpec spec = nc_family(k, n);
    CHECK(spec.net.node_count() == n);
    expect_class(spec, Classification::Family::NestedCanalyzing, k);
    const int m = (n + k - 1) / k;
    CHECK(spec.scheme->size() == m);
    CHECK(spec.claimed_min_observers == m);
    CHECK(family_verdict(spec).observable);
  }
  // the padded tail node of the (k=3, n=10) instance
  const FamilySpec spec = nc_family(3, 10);
  CHECK(serialize(spec.net).find("x10 = NC(x10 ; x1, x2)\n") !=
        std::string::npos);
  CHECK(spec.scheme->observed == std::vector<int>{1, 4, 7, 10});
}

TEST_CASE("large nested-canalyzing fixture") {
  const FamilySpec spec = nc_example();
  CHECK(spec.net.node_count() == 11);
  CHECK(spec.k == 4);
  CHECK(spec.scheme->observed == std::vector<int>{1, 5, 9});
  const ObservabilityVerdict v = family_verdict(spec);
  CHECK(v.observable);
  const MinObserversResult r = min_observers(spec.net, {});
  REQUIRE(r.found);
  CHECK(r.min_size == 3);
}

TEST_CASE("fifteen-node best-case fixture") {
  const FamilySpec spec = exmp();
  CHECK(spec.net.node_count() == 15);
  expect_class(spec, Classification::Family::AndOr, 4);
  REQUIRE(spec.scheme.has_value());
  std::vector<int> first_eleven(11);
  std::iota(first_eleven.begin(), first_eleven.end(), 1);
  CHECK(spec.scheme->observed == first_eleven);
  const ObservabilityVerdict v = family_verdict(spec);
  CHECK(v.observable);
  CHECK(v.horizon == 2);
  // same block parameters as the generated variant, different node order
  const FamilySpec gen = and_or_bestK(4);
  CHECK_FALSE(spec.net == gen.net);
  CHECK(check(gen.net, *gen.scheme).horizon <= 2);
}

TEST_CASE("named parity fixtures reuse the generators") {
  CHECK(example_xor().net == xor_complement(3).net);
  CHECK(example_xor().scheme->observed == std::vector<int>{1, 2, 3});
  CHECK(exmp1().net == xor_m1(3).net);
  CHECK(exmp1().scheme->observed == std::vector<int>{1});
}

TEST_CASE("two-step trajectory table of the complement parity fixture") {
  const std::string expected =
      "0000 0000 0000\n"
      "0001 1110 0001\n"
      "0010 1101 0010\n"
      "0011 0011 0011\n"
      "0100 1011 0100\n"
      "0101 0101 0101\n"
      "0110 0110 0110\n"
      "0111 1000 0111\n"
      "1000 0111 1000\n"
      "1001 1001 1001\n"
      "1010 1010 1010\n"
      "1011 0100 1011\n"
      "1100 1100 1100\n"
      "1101 0010 1101\n"
      "1110 0001 1110\n"
      "1111 1111 1111\n";
  CHECK(render_steps(example_xor().net, 2) == expected);
}

TEST_CASE("three-step trajectory table of the single-observer parity fixture") {
  const std::string expected =
      "0000 0000 0000 0000\n"
      "0001 1110 0001 1110\n"
      "0010 0111 0100 1101\n"
      "0011 1001 0101 0011\n"
      "0100 1101 1000 1011\n"
      "0101 0011 1001 0101\n"
      "0110 1010 1100 0110\n"
      "0111 0100 1101 1000\n"
      "1000 1011 0010 0111\n"
      "1001 0101 0011 1001\n"
      "1010 1100 0110 1010\n"
      "1011 0010 0111 0100\n"
      "1100 0110 1010 1100\n"
      "1101 1000 1011 0010\n"
      "1110 0001 1110 0001\n"
      "1111 1111 1111 1111\n";
  CHECK(render_steps(exmp1().net, 3) == expected);
}

TEST_CASE("family constraints are enforced") {
  CHECK_THROWS_AS(and_or_worst2(1), ConstraintError);
  CHECK_THROWS_AS(and_or_best2(4), ConstraintError);
  CHECK_THROWS_AS(and_or_worstK(2), ConstraintError);
  CHECK_THROWS_AS(and_or_bestK(2), ConstraintError);
  CHECK_THROWS_AS(and_or_bestK(5), ConstraintError);  // needs 31 nodes
  CHECK_THROWS_AS(and_or_bestK(3, 10), ConstraintError);
  CHECK_THROWS_AS(xor_ring(1), ConstraintError);
  CHECK_THROWS_AS(xor_pairs(3), ConstraintError);
  CHECK_THROWS_AS(xor_complement(4), ConstraintError);
  CHECK_THROWS_AS(xor_complement(2), ConstraintError);
  CHECK_THROWS_AS(xor_complement_copies(3, 9), ConstraintError);
  CHECK_THROWS_AS(xor_m1(2), ConstraintError);
  CHECK_THROWS_AS(nc_family(2, 4), ConstraintError);
  CHECK_THROWS_AS(nc_family(3, 2), ConstraintError);
}

TEST_CASE("family dispatch by identifier") {
  const FamilySpec ring = make_family("xor_ring", 6, std::nullopt);
  CHECK(ring.net == xor_ring(6).net);
  const FamilySpec nc = make_family("nc", 11, 4);
  CHECK(nc.net == nc_family(4, 11).net);
  const FamilySpec fix = make_family("example1", std::nullopt, std::nullopt);
  CHECK(fix.net == example1().net);
  CHECK_THROWS_AS(make_family("xor_ring", std::nullopt, std::nullopt),
                  ConstraintError);
  CHECK_THROWS_AS(make_family("nc", 11, std::nullopt), ConstraintError);
  CHECK_THROWS_AS(make_family("no_such_family", 3, 3), ConstraintError);
  CHECK_THROWS_AS(make_family("example1", 5, std::nullopt), ConstraintError);
  for (const std::string& id : family_ids()) {
    CAPTURE(id);
    CHECK_NOTHROW([&] {
      try {
        make_family(id, std::nullopt, std::nullopt);
      } catch (const ConstraintError&) {
        // acceptable: the id is valid but needs parameters
      }
    }());
  }
}

TEST_CASE("every family serializes and parses back unchanged") {
  std::vector<FamilySpec> specs = {
      and_or_worst2(4), and_or_best2(6),   and_or_worstK(3),
      and_or_bestK(3),  xor_ring(5),       xor_pairs(6),
      xor_worst(3),     xor_complement(3), xor_complement_copies(3, 8),
      xor_m1(4),        nc_family(3, 10),  example1(),
      example2(),       exmp(),            example_xor(),
      exmp1(),          nc_example()};
  for (const FamilySpec& spec : specs) {
    CAPTURE(spec.family);
    const std::string text = serialize(spec.net, spec.scheme);
    const ParsedNetwork back = parse_network(text);
    REQUIRE(back.net == spec.net);
    if (spec.scheme) {
      REQUIRE(back.scheme.has_value());
      REQUIRE(back.scheme->observed == spec.scheme->observed);
    } else {
      REQUIRE_FALSE(back.scheme.has_value());
    }
  }
}
