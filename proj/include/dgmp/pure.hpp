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

// Pure stationary strategies, plays, game forms and pure Nash equilibria.
//
// Indexing conventions:
//  * A player's strategies are ordered as a mixed-radix number over the
//    positions he or she owns (declaration order, first position most
//    significant), each digit running over the position's out-edges in edge
//    declaration order.
//  * A game-form cell is the mixed-radix number over the players' strategy
//    indices, player 1 most significant.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dgmp/game.hpp"

namespace dgmp {

// A move for every position the player owns: (position, target) pairs in
// position declaration order.
struct PureStrategy {
  Player player = 1;
  std::vector<std::pair<std::size_t, std::size_t>> choice;

  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;
};

// One chosen target per position; kNoPosition on terminals.
struct PureProfile {
  std::vector<std::size_t> next;

  friend bool operator==(const PureProfile&, const PureProfile&) = default;
};

inline constexpr double kMaxGameFormCells = 1e7;

inline void require_player(const GameStructure& g, Player player) {
  if (player < 1 || player > g.num_players()) {
    throw Error("unknown player " + std::to_string(player));
  }
}

inline double strategy_count(const GameStructure& g, Player player) {
  double count = 1;
  for (std::size_t v : g.positions_of(player)) count *= static_cast<double>(g.out_degree(v));
  return count;
}

inline std::vector<PureStrategy> enumerate_strategies(const GameStructure& g, Player player) {
  require_player(g, player);
  const std::vector<std::size_t> owned = g.positions_of(player);
  const double total = strategy_count(g, player);
  if (total > kMaxGameFormCells) throw BudgetError("too many strategies", total, kMaxGameFormCells);
  std::vector<PureStrategy> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<std::size_t> digit(owned.size(), 0);
  while (true) {
    PureStrategy s{player, {}};
    for (std::size_t k = 0; k < owned.size(); ++k) {
      s.choice.emplace_back(owned[k], g.successors(owned[k])[digit[k]]);
    }
    out.push_back(std::move(s));
    // Advance the odometer from the least significant (last) position.
    std::size_t k = owned.size();
    while (k > 0) {
      --k;
      if (++digit[k] < g.out_degree(owned[k])) break;
      digit[k] = 0;
      if (k == 0) return out;
    }
    if (owned.empty()) return out;
  }
}

inline PureProfile combine(const GameStructure& g, const std::vector<PureStrategy>& strategies) {
  PureProfile p{std::vector<std::size_t>(g.num_positions(), kNoPosition)};
  for (const auto& s : strategies) {
    for (const auto& [v, w] : s.choice) p.next[v] = w;
  }
  return p;
}

// Builds a profile from (from, to) id pairs. Every non-terminal must be
// covered and each pair must be an edge.
inline PureProfile profile_from_moves(
    const GameStructure& g, const std::vector<std::pair<std::string, std::string>>& moves) {
  PureProfile p{std::vector<std::size_t>(g.num_positions(), kNoPosition)};
  for (const auto& [from, to] : moves) {
    std::size_t v = g.index_of(from);
    std::size_t w = g.index_of(to);
    if (g.successor_slot(v, w) == kNoPosition) throw Error("no edge " + from + " -> " + to);
    if (p.next[v] != kNoPosition) throw Error("two moves chosen at " + from);
    p.next[v] = w;
  }
  for (std::size_t v : g.non_terminals()) {
    if (p.next[v] == kNoPosition) throw Error("profile has no move at " + g.id(v));
  }
  return p;
}

struct Play {
  OutcomeIndex outcome = 0;
  // Visited positions, ending with the terminal or the first repeated position.
  std::vector<std::size_t> positions;
};

inline Play resolve_play(const GameStructure& g, const PureProfile& s) {
  Play play;
  std::vector<bool> seen(g.num_positions(), false);
  std::size_t v = g.initial();
  while (true) {
    play.positions.push_back(v);
    if (g.is_terminal(v)) {
      play.outcome = g.outcome_of_terminal(v);
      return play;
    }
    if (seen[v]) {
      play.outcome = g.cycle_outcome();
      return play;
    }
    seen[v] = true;
    v = s.next.at(v);
    if (v == kNoPosition) throw Error("profile leaves a position without a move");
  }
}

// Outcome only, without recording the play. Uses caller-provided scratch.
inline OutcomeIndex resolve_outcome(const GameStructure& g, const std::vector<std::size_t>& next,
                                    std::vector<std::uint32_t>& stamp, std::uint32_t mark) {
  std::size_t v = g.initial();
  while (!g.is_terminal(v)) {
    if (stamp[v] == mark) return g.cycle_outcome();
    stamp[v] = mark;
    v = next[v];
  }
  return g.outcome_of_terminal(v);
}

// ---------------------------------------------------------------------------
// Game forms.

struct GameForm {
  std::vector<std::size_t> dims;
  std::size_t num_outcomes = 0;
  std::vector<std::uint32_t> table;
  std::vector<std::string> outcome_labels;

  int num_players() const { return static_cast<int>(dims.size()); }
  std::size_t num_cells() const { return table.size(); }
  OutcomeIndex operator[](std::size_t cell) const { return table[cell]; }

  // Distance between cells differing by one in player i's coordinate.
  std::size_t stride(Player i) const {
    std::size_t s = 1;
    for (std::size_t k = static_cast<std::size_t>(i); k < dims.size(); ++k) s *= dims[k];
    return s;
  }
  std::size_t coordinate(std::size_t cell, Player i) const {
    return (cell / stride(i)) % dims[static_cast<std::size_t>(i - 1)];
  }
  std::vector<std::size_t> coordinates(std::size_t cell) const {
    std::vector<std::size_t> c(dims.size());
    for (std::size_t k = dims.size(); k > 0; --k) {
      c[k - 1] = cell % dims[k - 1];
      cell /= dims[k - 1];
    }
    return c;
  }
  std::size_t cell(const std::vector<std::size_t>& coords) const {
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + coords[k];
    return index;
  }
};

// Builds a form from an explicit table; checks sizes and outcome range.
inline GameForm make_game_form(std::vector<std::size_t> dims, std::size_t num_outcomes,
                               std::vector<std::uint32_t> table,
                               std::vector<std::string> labels = {}) {
  std::size_t cells = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error("game form dimension 0");
    cells *= d;
  }
  if (table.size() != cells) throw Error("game form table has the wrong number of cells");
  for (auto o : table) {
    if (o >= num_outcomes) throw Error("game form outcome out of range");
  }
  if (labels.empty()) {
    for (std::size_t o = 0; o < num_outcomes; ++o) labels.push_back("o" + std::to_string(o + 1));
  }
  return GameForm{std::move(dims), num_outcomes, std::move(table), std::move(labels)};
}

// All players' strategy lists, for converting cells back into profiles.
class StrategySpace {
 public:
  explicit StrategySpace(const GameStructure& g) : game_(&g) {
    double cells = 1;
    for (Player i = 1; i <= g.num_players(); ++i) cells *= strategy_count(g, i);
    if (cells > kMaxGameFormCells) throw BudgetError("game form too large", cells, kMaxGameFormCells);
    for (Player i = 1; i <= g.num_players(); ++i) strategies_.push_back(enumerate_strategies(g, i));
  }

  const std::vector<PureStrategy>& of(Player i) const { return strategies_.at(i - 1); }
  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> d;
    for (const auto& s : strategies_) d.push_back(s.size());
    return d;
  }

  PureProfile profile(const std::vector<std::size_t>& coords) const {
    PureProfile p{std::vector<std::size_t>(game_->num_positions(), kNoPosition)};
    for (std::size_t k = 0; k < coords.size(); ++k) {
      for (const auto& [v, w] : strategies_[k][coords[k]].choice) p.next[v] = w;
    }
    return p;
  }

  // Coordinates of a total profile; throws if the profile is not total.
  std::vector<std::size_t> coordinates(const PureProfile& p) const {
    std::vector<std::size_t> coords;
    for (const auto& list : strategies_) {
      std::size_t found = kNoPosition;
      for (std::size_t j = 0; j < list.size() && found == kNoPosition; ++j) {
        bool match = true;
        for (const auto& [v, w] : list[j].choice) match = match && p.next.at(v) == w;
        if (match) found = j;
      }
      if (found == kNoPosition) throw Error("profile is not a combination of pure strategies");
      coords.push_back(found);
    }
    return coords;
  }

 private:
  const GameStructure* game_;
  std::vector<std::vector<PureStrategy>> strategies_;
};

inline GameForm build_game_form(const GameStructure& g) {
  require_valid(g);
  StrategySpace space(g);
  GameForm gf;
  gf.dims = space.dims();
  gf.num_outcomes = g.num_outcomes();
  gf.outcome_labels = g.outcome_labels();
  std::size_t cells = 1;
  for (std::size_t d : gf.dims) cells *= d;
  gf.table.resize(cells);

  std::vector<std::uint32_t> stamp(g.num_positions(), 0);
  std::vector<std::size_t> coords(gf.dims.size(), 0);
  PureProfile p = space.profile(coords);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    gf.table[cell] = static_cast<std::uint32_t>(
        resolve_outcome(g, p.next, stamp, static_cast<std::uint32_t>(cell + 1)));
    // Odometer step; only the changed players' moves are rewritten.
    for (std::size_t k = gf.dims.size(); k > 0; --k) {
      std::size_t axis = k - 1;
      coords[axis] = (coords[axis] + 1) % gf.dims[axis];
      for (const auto& [v, w] : space.of(static_cast<Player>(axis + 1))[coords[axis]].choice) {
        p.next[v] = w;
      }
      if (coords[axis] != 0) break;
    }
  }
  return gf;
}

// ---------------------------------------------------------------------------
// Pure equilibria. The payoff type only needs operator() and operator<.

template <typename Payoff>
std::vector<Player> improving_players(const GameForm& gf, const Payoff& u, std::size_t cell) {
  std::vector<Player> out;
  for (Player i = 1; i <= gf.num_players(); ++i) {
    const std::size_t stride = gf.stride(i);
    const std::size_t dim = gf.dims[static_cast<std::size_t>(i - 1)];
    const std::size_t base = cell - gf.coordinate(cell, i) * stride;
    const auto& here = u(i, gf[cell]);
    for (std::size_t j = 0; j < dim; ++j) {
      if (here < u(i, gf[base + j * stride])) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

template <typename Payoff>
bool is_pure_ne(const GameForm& gf, const Payoff& u, std::size_t cell) {
  for (Player i = 1; i <= gf.num_players(); ++i) {
    const std::size_t stride = gf.stride(i);
    const std::size_t dim = gf.dims[static_cast<std::size_t>(i - 1)];
    const std::size_t base = cell - gf.coordinate(cell, i) * stride;
    const auto& here = u(i, gf[cell]);
    for (std::size_t j = 0; j < dim; ++j) {
      if (here < u(i, gf[base + j * stride])) return false;
    }
  }
  return true;
}

template <typename Payoff>
std::vector<std::size_t> find_pure_ne(const GameForm& gf, const Payoff& u) {
  std::vector<std::size_t> out;
  for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
    if (is_pure_ne(gf, u, cell)) out.push_back(cell);
  }
  return out;
}

template <typename Payoff>
bool has_pure_ne(const GameForm& gf, const Payoff& u) {
  for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
    if (is_pure_ne(gf, u, cell)) return true;
  }
  return false;
}

struct ImprovementEntry {
  std::size_t cell = 0;
  OutcomeIndex outcome = 0;
  std::vector<Player> improvers;
};

template <typename Payoff>
std::vector<ImprovementEntry> improvement_table(const GameForm& gf, const Payoff& u) {
  std::vector<ImprovementEntry> out;
  out.reserve(gf.num_cells());
  for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
    out.push_back({cell, gf[cell], improving_players(gf, u, cell)});
  }
  return out;
}

// (dominated, dominating) strategy index pairs for `player`: the dominating
// strategy is at least as good against every opposing joint strategy and
// strictly better against at least one.
template <typename Payoff>
std::vector<std::pair<std::size_t, std::size_t>> dominated_strategies(const GameForm& gf,
                                                                      const Payoff& u,
                                                                      Player player) {
  if (player < 1 || player > gf.num_players()) {
    throw Error("unknown player " + std::to_string(player));
  }
  const std::size_t stride = gf.stride(player);
  const std::size_t dim = gf.dims[static_cast<std::size_t>(player - 1)];
  // Cells with this player's coordinate at 0 enumerate the opposing profiles.
  std::vector<std::size_t> bases;
  for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
    if (gf.coordinate(cell, player) == 0) bases.push_back(cell);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      if (a == b) continue;
      bool weakly = true;
      bool strictly = false;
      for (std::size_t base : bases) {
        const auto& ua = u(player, gf[base + a * stride]);
        const auto& ub = u(player, gf[base + b * stride]);
        if (ub < ua) {
          weakly = false;
          break;
        }
        if (ua < ub) strictly = true;
      }
      if (weakly && strictly) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace dgmp
