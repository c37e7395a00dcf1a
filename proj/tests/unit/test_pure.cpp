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

#include <algorithm>
#include <random>

#include "dgmp.hpp"
#include "oracles.hpp"

namespace dgmp {
namespace {

GameStructure self_loop_game() {
  return GameBuilder(1)
      .position("v0", 1)
      .terminal("t")
      .edge("v0", "v0")
      .edge("v0", "t")
      .initial("v0")
      .build();
}

TEST(Play, ResolvesTerminalsAndLassos) {
  const GameStructure g = main_example();
  Play p = resolve_play(g, profile_from_moves(g, {{"v0", "v"}, {"v", "a1"}, {"w", "a2"}, {"z", "a3"}}));
  EXPECT_EQ(g.outcome_label(p.outcome), "a1");
  EXPECT_EQ(p.positions, (std::vector<std::size_t>{g.index_of("v0"), g.index_of("v"), g.index_of("a1")}));

  p = resolve_play(g, profile_from_moves(g, {{"v0", "v"}, {"v", "w"}, {"w", "z"}, {"z", "w"}}));
  EXPECT_EQ(p.outcome, g.cycle_outcome());
  EXPECT_EQ(p.positions, (std::vector<std::size_t>{g.index_of("v0"), g.index_of("v"), g.index_of("w"),
                                                   g.index_of("z"), g.index_of("w")}));

  const GameStructure loop = self_loop_game();
  p = resolve_play(loop, profile_from_moves(loop, {{"v0", "v0"}}));
  EXPECT_EQ(p.outcome, loop.cycle_outcome());
  EXPECT_EQ(p.positions.size(), 2u);
}

TEST(Play, ProfileFromMovesChecksInput) {
  const GameStructure g = main_example();
  EXPECT_THROW(profile_from_moves(g, {{"v0", "a1"}}), Error);
  EXPECT_THROW(profile_from_moves(g, {{"v0", "v"}}), Error);
  EXPECT_THROW(profile_from_moves(g, {{"v0", "v"}, {"v0", "z"}}), Error);
}

TEST(Strategies, EnumerationOrder) {
  const GameStructure g = main_example();
  const auto s = enumerate_strategies(g, 2);
  ASSERT_EQ(s.size(), 4u);
  auto at = [&](std::size_t k, const char* pos) {
    for (const auto& [v, w] : s[k].choice) {
      if (g.id(v) == pos) return g.id(w);
    }
    return std::string();
  };
  // The last owned position varies fastest; moves follow edge order.
  EXPECT_EQ(at(0, "v") + at(0, "w"), "wz");
  EXPECT_EQ(at(1, "v") + at(1, "w"), "wa2");
  EXPECT_EQ(at(2, "v") + at(2, "w"), "a1z");
  EXPECT_EQ(at(3, "v") + at(3, "w"), "a1a2");
  EXPECT_THROW(enumerate_strategies(g, 4), Error);
}

TEST(GameForm, MainExampleHasSixteenCells) {
  const GameStructure g = main_example();
  const GameForm gf = build_game_form(g);
  EXPECT_EQ(gf.dims, (std::vector<std::size_t>{2, 4, 2}));
  EXPECT_EQ(gf.num_cells(), 16u);
  const StrategySpace space(g);
  for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
    const PureProfile p = space.profile(gf.coordinates(cell));
    EXPECT_EQ(gf[cell], resolve_play(g, p).outcome);
    EXPECT_EQ(gf.cell(space.coordinates(p)), cell);
  }
}

TEST(GameForm, OnePlayerChain) {
  const GameStructure g =
      GameBuilder(1).position("v0", 1).terminal("t").edge("v0", "t").initial("v0").build();
  const GameForm gf = build_game_form(g);
  EXPECT_EQ(gf.num_cells(), 1u);
  EXPECT_EQ(gf[0], 0u);
}

TEST(GameForm, ExplicitTablesAreChecked) {
  EXPECT_THROW(make_game_form({2, 2}, 2, {0, 1, 1}), Error);
  EXPECT_THROW(make_game_form({2}, 2, {0, 2}), Error);
  EXPECT_THROW(make_game_form({0}, 1, {}), Error);
  const GameForm gf = make_game_form({2, 2}, 2, {0, 1, 1, 0});
  EXPECT_EQ(gf.outcome_labels, (std::vector<std::string>{"o1", "o2"}));
}

TEST(PureNe, MainExampleCanonicalIsNeFree) {
  const GameStructure g = main_example();
  const GameForm gf = build_game_form(g);
  const PayoffFunction u = main_canonical_payoff(g);
  EXPECT_TRUE(find_pure_ne(gf, u).empty());
  EXPECT_FALSE(has_pure_ne(gf, u));
  for (const auto& e : improvement_table(gf, u)) EXPECT_FALSE(e.improvers.empty());
}

TEST(PureNe, ProseCells) {
  const GameStructure g = main_example();
  const GameForm gf = build_game_form(g);
  const PayoffFunction u = main_canonical_payoff(g);
  const StrategySpace space(g);
  auto cell_of = [&](std::vector<std::pair<std::string, std::string>> moves) {
    return gf.cell(space.coordinates(profile_from_moves(g, moves)));
  };
  const std::size_t first = cell_of({{"v0", "v"}, {"v", "a1"}, {"w", "a2"}, {"z", "a3"}});
  EXPECT_EQ(g.outcome_label(gf[first]), "a1");
  EXPECT_EQ(improving_players(gf, u, first), (std::vector<Player>{2}));
  const std::size_t second = cell_of({{"v0", "z"}, {"v", "a1"}, {"w", "z"}, {"z", "a3"}});
  EXPECT_EQ(g.outcome_label(gf[second]), "a3");
  EXPECT_EQ(improving_players(gf, u, second), (std::vector<Player>{1, 3}));
}

TEST(PureNe, AgreesWithOracleOnRandomGames) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const GameStructure g = random_structure(seed, n, 5 + seed % 3, 2, 2 + seed % 2);
    const PayoffFunction u = oracle::random_payoff(rng, n, g.num_outcomes(), 4);
    const GameForm gf = build_game_form(g);
    const StrategySpace space(g);
    std::vector<std::vector<std::size_t>> got;
    for (std::size_t cell : find_pure_ne(gf, u)) {
      PureProfile p = space.profile(gf.coordinates(cell));
      for (std::size_t v : g.terminals()) p.next[v] = 0;
      got.push_back(p.next);
    }
    auto want = oracle::pure_ne(g, u);
    for (auto& w : want) {
      for (std::size_t v : g.terminals()) w[v] = 0;
    }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want) << "seed " << seed;
  }
}

TEST(PureNe, RandomOrderPayoffsStayNeFree) {
  const GameStructure g = main_example();
  const GameForm gf = build_game_form(g);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const PayoffFunction u = oracle::random_main_order_payoff(rng, k % 2 == 0);
    ASSERT_TRUE(check_constraints(u, main_order_conditions(g, false)).satisfied);
    EXPECT_FALSE(has_pure_ne(gf, u));
  }
}

TEST(PureNe, NormalizationPreservesEquilibria) {
  std::mt19937_64 rng(19);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameStructure g = random_structure(seed, 2, 6, 2, 3);
    const GameForm gf = build_game_form(g);
    PayoffFunction u = oracle::random_payoff(rng, 2, g.num_outcomes(), 5);
    for (OutcomeIndex o = 0; o < g.num_outcomes(); ++o) u.set(1, o, u(1, o) + 3);
    EXPECT_EQ(find_pure_ne(gf, u), find_pure_ne(gf, normalize(u)));
  }
}

TEST(Dominance, PlayerTwoMainExample) {
  const GameStructure g = main_example();
  const GameForm gf = build_game_form(g);
  const auto d = dominated_strategies(gf, main_canonical_payoff(g), 2);
  // Zero-based: strategies 1 and 2 are dominated by 3.
  EXPECT_EQ(d, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {2, 3}}));
}

TEST(Dominance, ConstantFormHasNone) {
  const GameForm gf = make_game_form({3, 2}, 1, {0, 0, 0, 0, 0, 0});
  PayoffFunction u(2, 1);
  EXPECT_TRUE(dominated_strategies(gf, u, 1).empty());
  EXPECT_TRUE(dominated_strategies(gf, u, 2).empty());
}

TEST(Budget, LargeFormsAreRejected) {
  GameBuilder b(1);
  b.terminal("t").terminal("s");
  for (int k = 0; k < 25; ++k) {
    const std::string id = "v" + std::to_string(k);
    b.position(id, 1).edge(id, "t").edge(id, "s");
  }
  const GameStructure g = b.initial("v0").build();
  EXPECT_THROW(build_game_form(g), BudgetError);
  try {
    build_game_form(g);
  } catch (const BudgetError& e) {
    EXPECT_EQ(e.bound(), kMaxGameFormCells);
    EXPECT_NE(std::string(e.what()).find("bound 10000000"), std::string::npos);
  }
}

}  // namespace
}  // namespace dgmp
