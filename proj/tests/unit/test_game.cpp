// Copyright 2026 The DGMP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "dgmp.hpp"
#include "oracles.hpp"

namespace dgmp {
namespace {

TEST(GameBuilder, RejectsReferentialProblems) {
  EXPECT_THROW(GameBuilder(1).position("a", 1).position("a", 1).initial("a").build(), Error);
  EXPECT_THROW(GameBuilder(1).position("c", 1).initial("c").build(), Error);
  EXPECT_THROW(GameBuilder(1).position("a", 1).edge("a", "b").initial("a").build(), Error);
  EXPECT_THROW(GameBuilder(1).position("a", 1).terminal("t").edge("a", "t").edge("a", "t")
                   .initial("a").build(),
               Error);
  EXPECT_THROW(GameBuilder(1).position("a", 1).terminal("t").edge("a", "t").build(), Error);
  EXPECT_THROW(GameBuilder(1).position("", 1).initial("").build(), Error);
  EXPECT_THROW(GameBuilder(0).position("a", 1).initial("a").build(), Error);
}

TEST(Validate, ReportsEachViolationKind) {
  const GameStructure bad = GameBuilder(2)
                                .position("v0", 1)
                                .position("sink", 2)
                                .position("orphan", 3)
                                .terminal("t")
                                .position("u", 1)
                                .edge("v0", "sink")
                                .edge("v0", "t")
                                .edge("orphan", "t")
                                .edge("t", "v0")
                                .edge("u", "t")
                                .initial("v0")
                                .build();
  const ValidationReport r = validate(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(r.has(Violation::Kind::kSinkNonTerminal));
  EXPECT_TRUE(r.has(Violation::Kind::kUnownedPosition));
  EXPECT_TRUE(r.has(Violation::Kind::kTerminalWithOutEdge));
  EXPECT_FALSE(r.has(Violation::Kind::kInitialIsTerminal));
  EXPECT_EQ(r.violations.front().message, "sink non-terminal: sink");

  const GameStructure start_at_end =
      GameBuilder(1).terminal("t").position("v", 1).edge("v", "t").initial("t").build();
  EXPECT_TRUE(validate(start_at_end).has(Violation::Kind::kInitialIsTerminal));
  EXPECT_THROW(require_valid(start_at_end), Error);
}

TEST(Validate, ReachabilityAndConnectedness) {
  const GameStructure chain =
      GameBuilder(1).position("v0", 1).terminal("t").edge("v0", "t").initial("v0").build();
  EXPECT_EQ(reachable_positions(chain).size(), 2u);
  EXPECT_TRUE(is_connected(chain));
  const GameStructure island = GameBuilder(1)
                                   .position("v0", 1)
                                   .position("x", 1)
                                   .terminal("t")
                                   .edge("v0", "t")
                                   .edge("x", "t")
                                   .initial("v0")
                                   .build();
  EXPECT_TRUE(validate(island).ok());
  EXPECT_FALSE(is_connected(island));
}

TEST(MainExample, Shape) {
  const GameStructure g = main_example();
  EXPECT_TRUE(validate(g).ok());
  EXPECT_TRUE(is_connected(g));
  EXPECT_EQ(g.num_positions(), 7u);
  EXPECT_EQ(g.num_outcomes(), 4u);
  EXPECT_EQ(g.positions_of(1).size(), 1u);
  EXPECT_EQ(g.positions_of(2).size(), 2u);
  EXPECT_EQ(g.positions_of(3).size(), 1u);
  EXPECT_EQ(g.outcome_labels(), (std::vector<std::string>{"a1", "a2", "a3", "c"}));
  EXPECT_EQ(g.find_outcome("c"), g.cycle_outcome());
  EXPECT_FALSE(g.find_outcome("v"));
}

TEST(Payoff, ConditionCAndNormalize) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  EXPECT_FALSE(check_condition_C(g, u));
  PayoffFunction worst_c(3, 4);
  for (Player i = 1; i <= 3; ++i) {
    for (OutcomeIndex o = 0; o < 3; ++o) worst_c.set(i, o, static_cast<long>(o) + 1);
  }
  EXPECT_TRUE(check_condition_C(g, worst_c));

  PayoffFunction shifted = u;
  for (Player i = 1; i <= 3; ++i) {
    for (OutcomeIndex o = 0; o < 4; ++o) shifted.set(i, o, u(i, o) + make_rational(7, 3));
  }
  EXPECT_EQ(normalize(shifted), u);
  EXPECT_THROW(u(4, 0), Error);
  EXPECT_THROW(require_compatible(g, PayoffFunction(2, 4)), Error);
}

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("0/5"), Rational(0));
  for (const char* bad : {"", "1/", "/2", "1/0", "0.5", "1//2", "a", "1/2x", "- 1"}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
  EXPECT_EQ(format_exact(make_rational(1, 4)), "1/4 (≈ 0.25)");
  EXPECT_EQ(format_exact(Rational(3)), "3");
  EXPECT_TRUE(is_integer_reciprocal(make_rational(1, 20)));
  EXPECT_FALSE(is_integer_reciprocal(make_rational(2, 5)));
  EXPECT_FALSE(is_integer_reciprocal(Rational(2)));
  EXPECT_EQ(reciprocal_steps(make_rational(1, 20)), 20u);
  EXPECT_THROW(reciprocal_steps(make_rational(3, 4)), Error);
}

TEST(Constraints, CanonicalPayoffSatisfiesAllSets) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  EXPECT_TRUE(check_constraints(u, main_order_conditions(g, false)).satisfied);
  EXPECT_TRUE(check_constraints(u, main_order_conditions(g, true)).satisfied);
  EXPECT_TRUE(check_constraints(u, main_apriori_conditions(g)).satisfied);
}

TEST(Constraints, ReportsFirstViolation) {
  const GameStructure g = main_example();
  PayoffFunction u = main_canonical_payoff(g);
  u.set(2, 0, Rational(9));  // u2(a1) above u2(a3)
  ConstraintCheck r = check_constraints(u, main_apriori_conditions(g));
  EXPECT_FALSE(r.satisfied);
  EXPECT_EQ(r.label, "(2)");
  EXPECT_EQ(r.detail, "u2(a3) > u2(a1)");

  u = main_canonical_payoff(g);
  u.set(3, 2, make_rational(3, 2));  // u3(a3)/u3(c) = 1/2
  r = check_constraints(u, main_apriori_conditions(g));
  EXPECT_EQ(r.label, "(5)");

  u = main_canonical_payoff(g);
  u.set(1, 0, Rational(2));  // 2/3 + 5/8 >= 1
  r = check_constraints(u, main_apriori_conditions(g));
  EXPECT_EQ(r.label, "(6)");

  // Shifting breaks the pins but not the orderings.
  u = main_canonical_payoff(g);
  for (OutcomeIndex o = 0; o < 4; ++o) u.set(3, o, u(3, o) + 1);
  EXPECT_TRUE(check_constraints(u, main_order_conditions(g, false)).satisfied);
  r = check_constraints(u, main_order_conditions(g, true));
  EXPECT_EQ(r.label, "(3)");
  EXPECT_EQ(r.detail, "u3(a2) = 0");
}

TEST(Constraints, DegenerateRatioThrows) {
  const GameStructure g = main_example();
  PayoffFunction u(3, 4);  // all zero: chains fail first, so use a bare ratio set
  PayoffConstraintSet cs = main_apriori_conditions(g);
  cs.chains.clear();
  EXPECT_THROW(check_constraints(u, cs), Error);
}

TEST(Constraints, MinOperand) {
  const GameStructure g = main_example();
  PayoffFunction u = main_canonical_payoff(g);
  u.set(3, 3, make_rational(1, 2));  // u3(c) below u3(a3)
  const ConstraintCheck r = check_constraints(u, main_order_conditions(g, true));
  EXPECT_EQ(r.label, "(3)");
  EXPECT_EQ(r.detail, "min{u3(a1), u3(c)} > u3(a3)");
}

// ---------------------------------------------------------------------------
// Text formats.

TEST(TextFormat, RoundTripsCatalogAndRandomGames) {
  for (const char* name : {"main", "fig3-left", "fig3-right"}) {
    const CatalogEntry e = catalog(name);
    const ParsedGame back = parse_game(render_game(e.game, e.payoff));
    EXPECT_EQ(back.game, e.game) << name;
    EXPECT_EQ(back.payoff, e.payoff) << name;
  }
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameStructure g = random_structure(seed, 3, 8, 3, 3);
    const PayoffFunction u = oracle::random_payoff(rng, 3, g.num_outcomes());
    const ParsedGame back = parse_game(render_game(g, u));
    EXPECT_EQ(back.game, g);
    EXPECT_EQ(back.payoff, u);
    const MixedProfile m = oracle::random_profile(g, rng);
    EXPECT_EQ(parse_profile(render_profile(g, m), g), m);
  }
}

TEST(TextFormat, LineOrderIsFree) {
  const std::string text =
      "# shuffled\n"
      "edge v0 t\n"
      "initial v0\n"
      "terminal t\n"
      "payoff 1 c -1\n"
      "position v0 owner 1   # trailing comment\n"
      "payoff 1 t 1/2\n"
      "players 1\n";
  const ParsedGame p = parse_game(text);
  EXPECT_EQ(p.game.num_positions(), 2u);
  ASSERT_TRUE(p.payoff);
  EXPECT_EQ((*p.payoff)(1, 0), make_rational(1, 2));
  EXPECT_EQ((*p.payoff)(1, 1), Rational(-1));
}

void expect_parse_error(const std::string& text, std::size_t line, const std::string& fragment) {
  try {
    parse_game(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(TextFormat, ErrorsCarryLineNumbers) {
  const std::string head = "players 1\nposition v0 owner 1\nterminal t\n";
  expect_parse_error(head + "edge v0 x\ninitial v0\n", 4, "unknown position 'x'");
  expect_parse_error(head + "edge v0 t\nedge v0 t\ninitial v0\n", 5, "parallel edge");
  expect_parse_error(head + "frobnicate\n", 4, "unknown directive");
  expect_parse_error(head + "terminal t\n", 4, "duplicate position");
  expect_parse_error(head + "terminal c\n", 4, "reserved");
  expect_parse_error("players x\n", 1, "malformed player count");
  expect_parse_error(head + "edge v0 t\ninitial v0\npayoff 1 t 1/0\n", 6, "zero denominator");
  expect_parse_error(head + "edge v0 t\ninitial v0\npayoff 2 t 1\n", 6, "unknown player");
  expect_parse_error(head + "edge v0 t\ninitial v0\npayoff 1 zz 1\n", 6, "unknown outcome");
  expect_parse_error(head + "edge v0 t\ninitial v0\npayoff 1 t 1\n", 0, "payoff incomplete");
  expect_parse_error(head + "edge v0 t\n", 0, "missing 'initial'");
  expect_parse_error("position v0 owner 1\n", 0, "missing 'players'");
  expect_parse_error(head + "position v1 boss 1\n", 4, "expected 'owner'");
}

TEST(TextFormat, ProfileErrors) {
  const GameStructure g = main_example();
  EXPECT_THROW(parse_profile("move v0 a1 1\n", g), ParseError);
  try {
    parse_profile("move v0 v 1\nmove v0 z 1/2\n", g);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("no moves for position v"), std::string::npos);
  }
  const std::string full = render_profile(g, MixedProfile::uniform(g));
  EXPECT_NO_THROW(parse_profile(full, g));
  std::string bad = full;
  bad.replace(bad.find("1/2"), 3, "2/3");
  try {
    parse_profile(bad, g);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("sum to 7/6"), std::string::npos) << e.what();
  }
  try {
    parse_profile(full + "move v w 0\n", g);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 9u);
  }
}

}  // namespace
}  // namespace dgmp
