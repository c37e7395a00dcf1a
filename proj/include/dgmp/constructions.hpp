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

#pragma once

// Built-in games, the gluing construction and random structures.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgmp/constraints.hpp"
#include "dgmp/monte_carlo.hpp"
#include "dgmp/pure.hpp"

namespace dgmp {

// ---------------------------------------------------------------------------
// The main example.
//
// Out-edges are declared so that the parametrised move comes first at every
// position (see main_layout), which also fixes the strategy numbering.

inline GameStructure main_example() {
  return GameBuilder(3)
      .position("v0", 1)
      .position("v", 2)
      .position("w", 2)
      .position("z", 3)
      .terminal("a1")
      .terminal("a2")
      .terminal("a3")
      .edge("v0", "v")
      .edge("v0", "z")
      .edge("v", "w")
      .edge("v", "a1")
      .edge("w", "z")
      .edge("w", "a2")
      .edge("z", "w")
      .edge("z", "a3")
      .initial("v0")
      .build();
}

namespace detail {

struct MainOutcomes {
  OutcomeIndex a1, a2, a3, c;
};

inline MainOutcomes main_outcomes(const GameStructure& g) {
  auto get = [&](std::string_view label) {
    auto o = g.find_outcome(label);
    if (!o) throw Error("game lacks outcome '" + std::string(label) + "'");
    return *o;
  };
  return {get("a1"), get("a2"), get("a3"), g.cycle_outcome()};
}

}  // namespace detail

inline PayoffFunction main_canonical_payoff(const GameStructure& g = main_example()) {
  const auto [a1, a2, a3, c] = detail::main_outcomes(g);
  PayoffFunction u(3, g.num_outcomes());
  const int values[3][4] = {{1, 4, 0, 3}, {5, 1, 8, 0}, {4, 0, 1, 3}};
  const OutcomeIndex outcomes[4] = {a1, a2, a3, c};
  for (Player i = 1; i <= 3; ++i) {
    for (int k = 0; k < 4; ++k) u.set(i, outcomes[k], values[i - 1][k]);
  }
  return u;
}

// The three orderings of the main example:
//   u1(a2) > u1(c) > u1(a1) > u1(a3)
//   u2(a3) > u2(a1) > u2(a2) > u2(c)
//   min{u3(a1), u3(c)} > u3(a3) > u3(a2)
// With `pinned`, the last element of each chain must also equal 0.
inline PayoffConstraintSet main_order_conditions(const GameStructure& g, bool pinned) {
  const auto [a1, a2, a3, c] = detail::main_outcomes(g);
  using O = Operand;
  PayoffConstraintSet cs;
  cs.outcome_labels = g.outcome_labels();
  cs.chains.push_back(strict_chain("(1)", 1, {O::of(a2), O::of(c), O::of(a1), O::of(a3)}, pinned));
  cs.chains.push_back(strict_chain("(2)", 2, {O::of(a3), O::of(a1), O::of(a2), O::of(c)}, pinned));
  cs.chains.push_back(
      strict_chain("(3)", 3, {O::min({a1, c}), O::of(a3), O::of(a2)}, pinned));
  return cs;
}

// The orderings (pinned) plus the three ratio bounds required by the a priori
// analysis:
//   (u2(a3) - u2(a1)) / (u2(a3) - u2(a2)) < 1/2
//   u3(a3) / u3(c) < 1/2
//   u1(a1) / u1(c) + u2(a1) / u2(a3) < 1
inline PayoffConstraintSet main_apriori_conditions(const GameStructure& g) {
  PayoffConstraintSet cs = main_order_conditions(g, true);
  const auto [a1, a2, a3, c] = detail::main_outcomes(g);
  const Rational one(1), minus(-1);
  cs.ratios.push_back({"(4)",
                       {{{{one, 2, a3}, {minus, 2, a1}}, {{one, 2, a3}, {minus, 2, a2}}}},
                       make_rational(1, 2)});
  cs.ratios.push_back({"(5)", {{{{one, 3, a3}}, {{one, 3, c}}}}, make_rational(1, 2)});
  cs.ratios.push_back(
      {"(6)", {{{{one, 1, a1}}, {{one, 1, c}}}, {{{one, 2, a1}}, {{one, 2, a3}}}}, one});
  return cs;
}

// ---------------------------------------------------------------------------
// Catalog.

struct CatalogEntry {
  std::string name;
  GameStructure game;
  std::optional<PayoffFunction> payoff;
  std::optional<PureProfile> profile;
  std::string note;
};

inline GameStructure fig3_left() {
  return GameBuilder(3)
      .position("v0", 1)
      .position("v1", 1)
      .position("v2", 2)
      .position("v3", 2)
      .position("v4", 3)
      .position("v5", 3)
      .terminal("a1")
      .terminal("a2")
      .terminal("a3")
      .edge("v0", "v3")
      .edge("v0", "v2")
      .edge("v1", "v3")
      .edge("v1", "a1")
      .edge("v2", "v5")
      .edge("v2", "a2")
      .edge("v3", "v5")
      .edge("v3", "v4")
      .edge("v4", "v0")
      .edge("v4", "a3")
      .edge("v5", "v0")
      .edge("v5", "v1")
      .initial("v0")
      .build();
}

inline GameStructure fig3_right() {
  GameBuilder b(4);
  const std::pair<const char*, Player> owners[] = {{"v0", 1}, {"v1", 2}, {"v2", 3}, {"v3", 4},
                                                   {"v4", 3}, {"v5", 4}, {"v6", 2}, {"v7", 1}};
  for (const auto& [id, owner] : owners) b.position(id, owner);
  for (const char* t : {"a1", "a2", "a3"}) b.terminal(t);
  const std::pair<const char*, const char*> edges[] = {
      {"v0", "v2"}, {"v0", "v3"}, {"v1", "v0"}, {"v1", "v4"}, {"v2", "v1"}, {"v2", "v5"},
      {"v2", "v6"}, {"v3", "v2"}, {"v3", "v6"}, {"v3", "v7"}, {"v4", "v5"}, {"v4", "a1"},
      {"v5", "v1"}, {"v5", "a1"}, {"v5", "a2"}, {"v5", "v6"}, {"v6", "a2"}, {"v6", "a3"},
      {"v6", "v7"}, {"v7", "a3"}, {"v7", "v2"}};
  for (const auto& [from, to] : edges) b.edge(from, to);
  return b.initial("v0").build();
}

inline std::vector<std::string> catalog_names() {
  return {"main", "fig3-left", "fig3-right", "volgin"};
}

inline CatalogEntry catalog(std::string_view name) {
  if (name == "main") {
    GameStructure g = main_example();
    PayoffFunction u = main_canonical_payoff(g);
    return {"main", std::move(g), std::move(u), std::nullopt,
            "three-person NE-free game with a unique two-cycle"};
  }
  if (name == "fig3-left") {
    GameStructure g = fig3_left();
    PureProfile s = profile_from_moves(
        g, {{"v0", "v3"}, {"v3", "v5"}, {"v5", "v0"}, {"v4", "v0"}, {"v2", "v5"}, {"v1", "v3"}});
    return {"fig3-left", std::move(g), std::nullopt, std::move(s),
            "three-person game whose cyclic profile is an NE for every payoff"};
  }
  if (name == "fig3-right") {
    GameStructure g = fig3_right();
    PureProfile s = profile_from_moves(g, {{"v0", "v3"},
                                           {"v3", "v2"},
                                           {"v2", "v1"},
                                           {"v1", "v0"},
                                           {"v4", "v5"},
                                           {"v5", "v1"},
                                           {"v6", "v7"},
                                           {"v7", "v2"}});
    return {"fig3-right", std::move(g), std::nullopt, std::move(s),
            "four-person game whose cyclic profile is an NE for every payoff"};
  }
  if (name == "volgin") throw Error("catalog entry 'volgin': entry unavailable");
  throw Error("unknown catalog entry '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// NE for every payoff.

// True iff no unilateral change of pure strategy alters the outcome of s.
inline bool verify_ne_all_orderings(const GameStructure& g, const PureProfile& s) {
  require_valid(g);
  const OutcomeIndex base = resolve_play(g, s).outcome;
  for (Player i = 1; i <= g.num_players(); ++i) {
    for (const PureStrategy& alt : enumerate_strategies(g, i)) {
      PureProfile t = s;
      for (const auto& [v, w] : alt.choice) t.next[v] = w;
      if (resolve_play(g, t).outcome != base) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gluing.

inline GameStructure with_suffix(const GameStructure& g, std::string_view suffix) {
  GameBuilder b(g.num_players());
  for (const Position& p : g.positions()) {
    std::string id = p.id + std::string(suffix);
    if (p.terminal) {
      b.terminal(std::move(id));
    } else {
      b.position(std::move(id), p.owner);
    }
  }
  for (const auto& [from, to] : g.edges()) {
    b.edge(g.id(from) + std::string(suffix), g.id(to) + std::string(suffix));
  }
  return b.initial(g.id(g.initial()) + std::string(suffix)).build();
}

// Replaces every terminal of `first` by the initial position of `second`.
// Players of `second` are renumbered after those of `first`; moves that
// collapse onto the same target are merged.
inline GameStructure glue(const GameStructure& first, const GameStructure& second) {
  require_valid(first);
  require_valid(second);
  if (first.terminals().empty()) throw Error("glue: the first game has no terminal");
  for (const Position& p : first.positions()) {
    if (second.find(p.id)) throw Error("glue: overlapping position id '" + p.id + "'");
  }
  const int shift = first.num_players();
  const std::string& entry = second.id(second.initial());
  GameBuilder b(shift + second.num_players());
  for (std::size_t v : first.non_terminals()) b.position(first.id(v), first.owner(v));
  for (const Position& p : second.positions()) {
    if (p.terminal) {
      b.terminal(p.id);
    } else {
      b.position(p.id, p.owner + shift);
    }
  }
  std::set<std::pair<std::size_t, std::string>> seen;
  for (const auto& [from, to] : first.edges()) {
    std::string target = first.is_terminal(to) ? entry : first.id(to);
    if (seen.emplace(from, target).second) b.edge(first.id(from), target);
  }
  for (const auto& [from, to] : second.edges()) b.edge(second.id(from), second.id(to));
  return b.initial(first.id(first.initial())).build();
}

enum class PrimePreference {
  kCycleBest,   // c above every terminal
  kConditionC,  // c below every terminal
};

// Payoffs over the outcomes of `second` for `players` players: ranks of the
// terminals come from a seeded shuffle, c is placed according to `mode`.
inline PayoffFunction prime_preferences(const GameStructure& second, int players,
                                        PrimePreference mode, std::uint64_t seed = 0) {
  const std::size_t q = second.num_outcomes();
  PayoffFunction u(players, q);
  SplitMix64 rng(seed);
  for (Player i = 1; i <= players; ++i) {
    std::vector<long> ranks(q - 1);
    for (std::size_t k = 0; k + 1 < q; ++k) ranks[k] = static_cast<long>(k) + 1;
    for (std::size_t k = ranks.size(); k > 1; --k) std::swap(ranks[k - 1], ranks[rng() % k]);
    for (std::size_t o = 0; o + 1 < q; ++o) u.set(i, o, ranks[o]);
    u.set(i, second.cycle_outcome(), mode == PrimePreference::kCycleBest ? static_cast<long>(q) : 0L);
  }
  return u;
}

struct Prop4Report {
  std::size_t profiles = 0;
  std::size_t cyclic_ne = 0;
  std::size_t terminal_ne = 0;
  std::optional<std::size_t> first_cyclic_ne;
  bool second_ne_free = false;  // the second game alone has no pure NE
  bool holds() const { return cyclic_ne > 0 && (!second_ne_free || terminal_ne == 0); }
};

// `glued` must come from glue(first, second) with first having n' players;
// u_prime covers those n' players, u_second the players of `second`; both
// are indexed by the outcomes of `second`.
inline Prop4Report verify_prop4(const GameStructure& glued, const GameStructure& second,
                                const PayoffFunction& u_second, const PayoffFunction& u_prime) {
  require_compatible(second, u_second);
  if (u_prime.num_outcomes() != second.num_outcomes()) {
    throw Error("verify-prop4: preferences of the first game's players have the wrong outcomes");
  }
  const int shift = u_prime.num_players();
  if (glued.num_players() != shift + second.num_players() ||
      glued.num_outcomes() != second.num_outcomes()) {
    throw Error("verify-prop4: glued game does not match the supplied payoffs");
  }
  for (OutcomeIndex o = 0; o + 1 < second.num_outcomes(); ++o) {
    if (glued.outcome_label(o) != second.outcome_label(o)) {
      throw Error("verify-prop4: glued terminals differ from the second game's");
    }
  }
  PayoffFunction u(glued.num_players(), glued.num_outcomes());
  for (OutcomeIndex o = 0; o < glued.num_outcomes(); ++o) {
    for (Player i = 1; i <= shift; ++i) u.set(i, o, u_prime(i, o));
    for (Player i = 1; i <= second.num_players(); ++i) u.set(shift + i, o, u_second(i, o));
  }

  Prop4Report report;
  report.second_ne_free = !has_pure_ne(build_game_form(second), u_second);
  const GameForm gf = build_game_form(glued);
  report.profiles = gf.num_cells();
  for (std::size_t cell : find_pure_ne(gf, u)) {
    if (gf[cell] == glued.cycle_outcome()) {
      if (!report.first_cyclic_ne) report.first_cyclic_ne = cell;
      ++report.cyclic_ne;
    } else {
      ++report.terminal_ne;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Random connected structures.

// Positions v0..v{N-1} (non-terminal, v0 initial) and t1..tT. A spanning
// arborescence from v0 is laid down first, then every non-terminal gets a
// random number of extra out-edges (self-loops allowed) up to max_outdegree.
inline GameStructure random_structure(std::uint64_t seed, int players, std::size_t positions,
                                      std::size_t terminals, std::size_t max_outdegree) {
  if (players < 1 || positions < 1 || terminals < 1 || max_outdegree < 1) {
    throw Error("random structure: parameters must be positive");
  }
  if (positions < terminals + 1) {
    throw Error("random structure: need more positions than terminals");
  }
  const std::size_t inner = positions - terminals;
  if (inner * (max_outdegree - 1) + 1 < terminals) {
    throw Error("random structure: terminals cannot all be reached with this out-degree");
  }
  SplitMix64 rng(seed);
  auto below = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

  // Indices 0..inner-1 are non-terminals, the rest terminals.
  std::vector<std::vector<std::size_t>> out(inner);
  std::vector<std::size_t> open = {0};  // non-terminals with spare capacity
  std::size_t left_inner = inner - 1, left_terminal = terminals;
  std::size_t next_inner = 1, next_terminal = inner;
  std::size_t capacity = max_outdegree;
  while (left_inner + left_terminal > 0) {
    // A terminal may be placed only if the remaining nodes still fit.
    const bool terminal_ok =
        left_terminal > 0 &&
        (left_inner == 0 ? capacity >= left_terminal
                         : capacity >= 2 && capacity - 1 + left_inner * (max_outdegree - 1) >=
                                                left_terminal - 1);
    const bool place_terminal = left_inner == 0 || (terminal_ok && below(left_inner + left_terminal) < left_terminal);
    const std::size_t parent_slot = below(open.size());
    const std::size_t parent = open[parent_slot];
    std::size_t child;
    if (place_terminal) {
      child = next_terminal++;
      --left_terminal;
      --capacity;
    } else {
      child = next_inner++;
      --left_inner;
      capacity += max_outdegree - 1;
      open.push_back(child);
    }
    out[parent].push_back(child);
    if (out[parent].size() == max_outdegree) open.erase(open.begin() + static_cast<long>(parent_slot));
  }
  for (std::size_t v = 0; v < inner; ++v) {
    const std::size_t target_degree = 1 + below(max_outdegree);
    for (std::size_t tries = 0; out[v].size() < target_degree && tries < 4 * max_outdegree; ++tries) {
      const std::size_t w = below(positions);
      if (std::find(out[v].begin(), out[v].end(), w) == out[v].end()) out[v].push_back(w);
    }
    while (out[v].empty()) out[v].push_back(below(positions));
  }

  auto name = [&](std::size_t k) {
    return k < inner ? "v" + std::to_string(k) : "t" + std::to_string(k - inner + 1);
  };
  GameBuilder b(players);
  for (std::size_t v = 0; v < inner; ++v) {
    b.position(name(v), static_cast<Player>(1 + below(static_cast<std::size_t>(players))));
  }
  for (std::size_t t = inner; t < positions; ++t) b.terminal(name(t));
  for (std::size_t v = 0; v < inner; ++v) {
    for (std::size_t w : out[v]) b.edge(name(v), name(w));
  }
  return b.initial("v0").build();
}

}  // namespace dgmp
