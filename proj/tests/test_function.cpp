#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bnobs/function.hpp"

using bnobs::BooleanFunction;
using bnobs::Literal;
using bnobs::State;

namespace {

// Reference semantics for the nested form, written from the definition:
// group 0 (an OR level) or-s its literals with the value of group 1, which
// and-s its literals with the value of group 2, and so on.
bool nc_reference(const std::vector<std::vector<Literal>>& groups,
                  std::size_t g, State s) {
  bool any = false, all = true;
  for (const Literal& lit : groups[g]) {
    any = any || lit.eval(s);
    all = all && lit.eval(s);
  }
  const bool or_level = g % 2 == 0;
  if (g + 1 == groups.size()) return or_level ? any : all;
  const bool inner = nc_reference(groups, g + 1, s);
  return or_level ? any || inner : all && inner;
}

}  // namespace

TEST_CASE("literal evaluation") {
  const Literal pos{2, false}, neg{2, true};
  CHECK(pos.eval(0b010) == true);
  CHECK(pos.eval(0b101) == false);
  CHECK(neg.eval(0b010) == false);
  CHECK(neg.eval(0b101) == true);
}

TEST_CASE("and/or/xor evaluation over all polarity combinations") {
  for (bool na : {false, true})
    for (bool nb : {false, true}) {
      const std::vector<Literal> lits{{1, na}, {3, nb}};
      const auto f_and = BooleanFunction::and_of(lits);
      const auto f_or = BooleanFunction::or_of(lits);
      const auto f_xor = BooleanFunction::xor_of(lits);
      for (State s = 0; s < 8; ++s) {
        const bool a = bnobs::state_bit(s, 1) != na;
        const bool b = bnobs::state_bit(s, 3) != nb;
        CHECK(f_and.eval(s) == (a && b));
        CHECK(f_or.eval(s) == (a || b));
        CHECK(f_xor.eval(s) == (a != b));
      }
    }
}

TEST_CASE("xor of many literals is the parity of the literal values") {
  const auto f = BooleanFunction::xor_of(
      {{1, false}, {2, true}, {3, false}, {4, true}, {5, false}});
  for (State s = 0; s < 32; ++s) {
    int ones = 0;
    for (int v = 1; v <= 5; ++v)
      ones += Literal{v, v % 2 == 0}.eval(s) ? 1 : 0;
    CHECK(f.eval(s) == (ones % 2 == 1));
  }
}

TEST_CASE("nested canalyzing fixture value") {
  const auto f = BooleanFunction::nested_canalyzing(
      {{{2, false}}, {{1, true}, {3, true}, {4, true}}});
  CHECK(f.eval(0b0000) == true);   // x2=0 but the conjunction holds
  CHECK(f.eval(0b0010) == true);   // x2=1 short-circuits the OR
  CHECK(f.eval(0b0001) == false);  // x2=0 and x1=1 kills the conjunction
  CHECK(f.fan_in() == 4);
}

TEST_CASE("nested canalyzing matches the reference expansion") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + int(rng() % 5);  // variables x1..xn, n <= 6
    std::vector<int> vars(n);
    for (int i = 0; i < n; ++i) vars[i] = i + 1;
    std::shuffle(vars.begin(), vars.end(), rng);
    // distribute a prefix of the shuffled variables over 1..3 groups
    const int group_count = 1 + int(rng() % 3);
    std::vector<std::vector<Literal>> groups(group_count);
    int used = 0;
    for (int g = 0; g < group_count; ++g) {
      int take = 1 + int(rng() % 2);
      take = std::min(take, n - used - (group_count - 1 - g));
      for (int t = 0; t < take; ++t)
        groups[g].push_back({vars[used++], rng() % 2 == 0});
    }
    if (groups[0].empty() || std::any_of(groups.begin() + 1, groups.end(),
                                         [](const auto& g) { return g.empty(); }))
      continue;
    const auto f = BooleanFunction::nested_canalyzing(groups);
    for (State s = 0; s < (State{1} << n); ++s)
      REQUIRE(f.eval(s) == nc_reference(groups, 0, s));
  }
}

TEST_CASE("nested canalyzing accepts an empty outermost group") {
  const auto f = BooleanFunction::nested_canalyzing(
      {{}, {{1, false}, {2, false}}, {{3, false}}});
  // pure conjunction headed by group 1: x1 AND x2 AND (x3)
  for (State s = 0; s < 8; ++s)
    CHECK(f.eval(s) == (bnobs::state_bit(s, 1) && bnobs::state_bit(s, 2) &&
                        bnobs::state_bit(s, 3)));
  CHECK_THROWS_AS(BooleanFunction::nested_canalyzing({{}, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::nested_canalyzing({{}}),
                  std::invalid_argument);
}

TEST_CASE("truth table indexing puts the first listed variable in the low bit") {
  // f(x3, x1) = x3 AND NOT x1, listed as vars {3, 1}
  const auto f =
      BooleanFunction::truth_table({3, 1}, {false, true, false, false});
  for (State s = 0; s < 8; ++s)
    CHECK(f.eval(s) == (bnobs::state_bit(s, 3) && !bnobs::state_bit(s, 1)));
  CHECK(f.fan_in() == 2);
  CHECK(f.support() == std::vector<int>{1, 3});
}

TEST_CASE("truth table constants and validation") {
  const auto zero = BooleanFunction::truth_table({}, {false});
  const auto one = BooleanFunction::truth_table({}, {true});
  CHECK(zero.eval(0b101) == false);
  CHECK(one.eval(0b000) == true);
  CHECK(zero.fan_in() == 0);
  // wrong bit count
  CHECK_THROWS_AS(BooleanFunction::truth_table({1}, {false}),
                  std::invalid_argument);
  // irrelevant variable: f ignores x2
  CHECK_THROWS_AS(
      BooleanFunction::truth_table({1, 2}, {false, true, false, true}),
      std::invalid_argument);
}

TEST_CASE("literal list validation") {
  CHECK_THROWS_AS(BooleanFunction::and_of({}), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::and_of({{1, false}, {1, true}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::or_of({{0, false}}), std::invalid_argument);
  CHECK_THROWS_AS(BooleanFunction::xor_of({{31, false}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      BooleanFunction::nested_canalyzing({{{2, false}}, {{2, true}}}),
      std::invalid_argument);
}

TEST_CASE("support, max_var and equality") {
  const auto f = BooleanFunction::and_of({{4, true}, {2, false}});
  CHECK(f.support() == std::vector<int>{2, 4});
  CHECK(f.max_var() == 4);
  CHECK(f == BooleanFunction::and_of({{4, true}, {2, false}}));
  CHECK(f != BooleanFunction::and_of({{2, false}, {4, true}}));
  CHECK(f != BooleanFunction::or_of({{4, true}, {2, false}}));
}
