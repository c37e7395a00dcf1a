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

GameForm random_form(std::mt19937_64& rng, std::vector<std::size_t> dims, std::size_t q) {
  std::size_t cells = 1;
  for (std::size_t d : dims) cells *= d;
  std::vector<std::uint32_t> table(cells);
  std::uniform_int_distribution<std::size_t> pick(0, q - 1);
  for (auto& o : table) o = pick(rng);
  return make_game_form(std::move(dims), q, std::move(table));
}

TEST(Effectivity, MatchesDefinitionOnRandomForms) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    std::vector<std::size_t> dims;
    for (int i = 0; i < n; ++i) dims.push_back(1 + rng() % 3);
    const GameForm gf = random_form(rng, dims, 2 + rng() % 3);
    const EffectivityFunction E = effectivity_function(gf);
    for (Coalition K = 0; K <= E.all_players(); ++K) {
      for (Block B = 0; B <= E.all_outcomes(); ++B) {
        ASSERT_EQ(E(K, B), oracle::effective(gf, K, B)) << "K=" << K << " B=" << B;
        ASSERT_EQ(E(K, B), is_effective(gf, K, B));
      }
    }
  }
}

TEST(Effectivity, BoundaryConventions) {
  std::mt19937_64 rng(2);
  const GameForm gf = random_form(rng, {2, 3}, 3);
  const EffectivityFunction E = effectivity_function(gf);
  for (Coalition K = 0; K <= E.all_players(); ++K) {
    EXPECT_FALSE(E(K, 0));
    EXPECT_TRUE(E(K, E.all_outcomes()));
  }
  // Monotone in both arguments.
  for (Coalition K = 0; K <= E.all_players(); ++K) {
    for (Block B = 0; B <= E.all_outcomes(); ++B) {
      if (!E(K, B)) continue;
      for (Block B2 = B; B2 <= E.all_outcomes(); ++B2) {
        if ((B & ~B2) == 0) {
          EXPECT_TRUE(E(K, B2));
        }
      }
      for (Coalition K2 = K; K2 <= E.all_players(); ++K2) {
        if ((K & ~K2) == 0) {
          EXPECT_TRUE(E(K2, B));
        }
      }
    }
  }
}

TEST(Effectivity, MainExampleIsTightButNotSolvable) {
  const GameForm gf = build_game_form(main_example());
  const EffectivityFunction E = effectivity_function(gf);
  EXPECT_EQ(E.num_players(), 3);
  EXPECT_EQ(E.num_outcomes(), 4u);
  const TightnessResult t = is_tight(E);
  EXPECT_TRUE(t.tight);
  EXPECT_FALSE(t.witness);
  const SolvabilityResult s = is_nash_solvable_ordinal(gf);
  EXPECT_FALSE(s.solvable);
  ASSERT_TRUE(s.witness);
  EXPECT_FALSE(has_pure_ne(gf, *s.witness));
  EXPECT_LE(s.orderings_checked, 13824u);
}

TEST(Effectivity, NotTightHasWitness) {
  // Matching pennies form: player 1 forces nothing alone, nor does player 2.
  const GameForm gf = make_game_form({2, 2}, 2, {0, 1, 1, 0});
  const TightnessResult t = is_tight(gf);
  EXPECT_FALSE(t.tight);
  ASSERT_TRUE(t.witness);
  const EffectivityFunction E = effectivity_function(gf);
  const auto [K, B] = *t.witness;
  EXPECT_EQ(E(K, B), E(E.all_players() & ~K, E.all_outcomes() & ~B));
}

TEST(TwoPerson, EquivalenceOnRandomForms) {
  std::mt19937_64 rng(13);
  int tight = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const GameForm gf = random_form(rng, {1 + rng() % 3, 1 + rng() % 3}, 2 + rng() % 3);
    const TwoPersonReport r = two_person_equivalence_check(gf);
    EXPECT_TRUE(r.all_equal()) << "trial " << trial;
    tight += r.tight;
  }
  EXPECT_GT(tight, 0);
  EXPECT_LT(tight, 300);
}

TEST(TwoPerson, PositionalFormsAreTight) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const GameStructure g = random_structure(seed, 2, 5, 3, 2);
    const GameForm gf = build_game_form(g);
    const TwoPersonReport r = two_person_equivalence_check(gf);
    EXPECT_TRUE(r.tight) << "seed " << seed;
    EXPECT_TRUE(r.all_equal()) << "seed " << seed;
  }
}

TEST(Tightness, PositionalFormsForThreePlayers) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const GameStructure g = random_structure(seed, 3, 6, 2, 2);
    EXPECT_TRUE(is_tight(build_game_form(g)).tight) << "seed " << seed;
  }
}

TEST(Solvability, WeakOrdersAndBudget) {
  const GameForm trivial = make_game_form({1, 1}, 2, {1});
  const SolvabilityResult s = is_nash_solvable_ordinal(trivial, OrderKind::kWeak);
  EXPECT_TRUE(s.solvable);
  EXPECT_EQ(s.orderings_checked, 9u);  // three weak orders on two outcomes, squared
  const GameForm gf = build_game_form(main_example());
  EXPECT_THROW(is_nash_solvable_ordinal(gf, OrderKind::kStrict, 100), BudgetError);
  EXPECT_THROW(is_pm1_solvable(gf), Error);
}

TEST(Text, CoalitionsAndBlocks) {
  EXPECT_EQ(coalition_text(0b101, 3), "{1,3}");
  EXPECT_EQ(coalition_text(0, 3), "{}");
  EXPECT_EQ(block_text(0b1010, {"a1", "a2", "a3", "c"}), "{a2,c}");
}

}  // namespace
}  // namespace dgmp
