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

// Game structures on finite digraphs: positions owned by players, terminal
// positions, and a single cyclic outcome shared by every infinite play.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgmp/error.hpp"
#include "dgmp/rational.hpp"

namespace dgmp {

// Players are numbered 1..n.
using Player = int;

// Outcomes are indexed 0..q-1: terminals in declaration order, then the
// cyclic outcome c last.
using OutcomeIndex = std::size_t;

inline constexpr std::size_t kNoPosition = static_cast<std::size_t>(-1);
inline constexpr std::string_view kCycleLabel = "c";

struct Outcome {
  enum class Kind { kTerminal, kCycle };

  Kind kind = Kind::kCycle;
  // Index among the terminals; unused for the cycle.
  std::size_t terminal = 0;

  static Outcome cycle() { return {Kind::kCycle, 0}; }
  static Outcome terminal_at(std::size_t t) { return {Kind::kTerminal, t}; }
  bool is_cycle() const { return kind == Kind::kCycle; }

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct Position {
  std::string id;
  bool terminal = false;
  // 0 for terminals. Non-terminals must carry an owner in 1..n.
  Player owner = 0;
};

class GameBuilder;

class GameStructure {
 public:
  int num_players() const { return num_players_; }
  std::size_t num_positions() const { return positions_.size(); }
  const Position& position(std::size_t v) const { return positions_.at(v); }
  const std::vector<Position>& positions() const { return positions_; }
  const std::string& id(std::size_t v) const { return positions_.at(v).id; }
  bool is_terminal(std::size_t v) const { return positions_.at(v).terminal; }
  Player owner(std::size_t v) const { return positions_.at(v).owner; }

  // Out-neighbours of v in edge declaration order.
  std::span<const std::size_t> successors(std::size_t v) const { return successors_.at(v); }
  std::size_t out_degree(std::size_t v) const { return successors_.at(v).size(); }
  // Position of `target` within successors(v), or kNoPosition.
  std::size_t successor_slot(std::size_t v, std::size_t target) const {
    const auto& s = successors_.at(v);
    auto it = std::find(s.begin(), s.end(), target);
    return it == s.end() ? kNoPosition : static_cast<std::size_t>(it - s.begin());
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::size_t initial() const { return initial_; }

  std::optional<std::size_t> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index_of(std::string_view id) const {
    auto v = find(id);
    if (!v) throw Error("unknown position '" + std::string(id) + "'");
    return *v;
  }

  const std::vector<std::size_t>& terminals() const { return terminals_; }
  const std::vector<std::size_t>& non_terminals() const { return non_terminals_; }

  std::size_t num_outcomes() const { return terminals_.size() + 1; }
  OutcomeIndex cycle_outcome() const { return terminals_.size(); }

  // Outcome index of terminal position v.
  OutcomeIndex outcome_of_terminal(std::size_t v) const {
    auto it = std::find(terminals_.begin(), terminals_.end(), v);
    if (it == terminals_.end()) throw Error("position '" + id(v) + "' is not a terminal");
    return static_cast<OutcomeIndex>(it - terminals_.begin());
  }
  OutcomeIndex outcome_index(const Outcome& o) const {
    return o.is_cycle() ? cycle_outcome() : o.terminal;
  }
  Outcome outcome(OutcomeIndex o) const {
    return o == cycle_outcome() ? Outcome::cycle() : Outcome::terminal_at(o);
  }
  std::string outcome_label(OutcomeIndex o) const {
    if (o == cycle_outcome()) return std::string(kCycleLabel);
    return id(terminals_.at(o));
  }
  std::vector<std::string> outcome_labels() const {
    std::vector<std::string> labels;
    for (OutcomeIndex o = 0; o < num_outcomes(); ++o) labels.push_back(outcome_label(o));
    return labels;
  }
  std::optional<OutcomeIndex> find_outcome(std::string_view label) const {
    if (label == kCycleLabel) return cycle_outcome();
    auto v = find(label);
    if (!v || !is_terminal(*v)) return std::nullopt;
    return outcome_of_terminal(*v);
  }

  // Non-terminal positions owned by `player`, in declaration order.
  std::vector<std::size_t> positions_of(Player player) const {
    std::vector<std::size_t> out;
    for (std::size_t v : non_terminals_) {
      if (positions_[v].owner == player) out.push_back(v);
    }
    return out;
  }

  friend bool operator==(const GameStructure& a, const GameStructure& b) {
    if (a.num_players_ != b.num_players_ || a.initial_ != b.initial_ ||
        a.edges_ != b.edges_ || a.positions_.size() != b.positions_.size()) {
      return false;
    }
    for (std::size_t v = 0; v < a.positions_.size(); ++v) {
      const auto& p = a.positions_[v];
      const auto& q = b.positions_[v];
      if (p.id != q.id || p.terminal != q.terminal || p.owner != q.owner) return false;
    }
    return true;
  }

 private:
  friend class GameBuilder;

  int num_players_ = 0;
  std::vector<Position> positions_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<std::size_t> terminals_;
  std::vector<std::size_t> non_terminals_;
  std::size_t initial_ = 0;
};

// Assembles a GameStructure. Referential problems (unknown or duplicate ids,
// parallel edges, a missing initial position) throw; structural invariants are
// left to validate() so that broken structures can still be inspected.
class GameBuilder {
 public:
  explicit GameBuilder(int num_players = 1) : num_players_(num_players) {}

  GameBuilder& players(int n) {
    num_players_ = n;
    return *this;
  }

  GameBuilder& position(std::string id, Player owner) {
    add(std::move(id), false, owner);
    return *this;
  }

  GameBuilder& terminal(std::string id) {
    add(std::move(id), true, 0);
    return *this;
  }

  GameBuilder& edge(std::string_view from, std::string_view to) {
    edges_.emplace_back(std::string(from), std::string(to));
    return *this;
  }

  GameBuilder& initial(std::string id) {
    initial_ = std::move(id);
    return *this;
  }

  GameStructure build() const {
    if (num_players_ < 1) throw Error("a game needs at least one player");
    GameStructure g;
    g.num_players_ = num_players_;
    g.positions_ = positions_;
    for (std::size_t v = 0; v < positions_.size(); ++v) {
      const std::string& id = positions_[v].id;
      if (id.empty()) throw Error("empty position id");
      if (id == kCycleLabel) throw Error("position id 'c' is reserved for the cyclic outcome");
      if (!g.index_.emplace(id, v).second) throw Error("duplicate position '" + id + "'");
      (positions_[v].terminal ? g.terminals_ : g.non_terminals_).push_back(v);
    }
    g.successors_.assign(positions_.size(), {});
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [from, to] : edges_) {
      auto u = g.find(from);
      auto w = g.find(to);
      if (!u) throw Error("edge from unknown position '" + from + "'");
      if (!w) throw Error("edge to unknown position '" + to + "'");
      if (!seen.emplace(*u, *w).second) {
        throw Error("parallel edge " + from + " -> " + to);
      }
      g.edges_.emplace_back(*u, *w);
      g.successors_[*u].push_back(*w);
    }
    if (!initial_) throw Error("no initial position");
    auto v0 = g.find(*initial_);
    if (!v0) throw Error("unknown initial position '" + *initial_ + "'");
    g.initial_ = *v0;
    return g;
  }

 private:
  void add(std::string id, bool terminal, Player owner) {
    positions_.push_back(Position{std::move(id), terminal, owner});
  }

  int num_players_;
  std::vector<Position> positions_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::optional<std::string> initial_;
};

// ---------------------------------------------------------------------------
// Validation.

struct Violation {
  enum class Kind { kTerminalWithOutEdge, kSinkNonTerminal, kUnownedPosition, kInitialIsTerminal };
  Kind kind;
  std::size_t position;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(Violation::Kind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [kind](const Violation& v) { return v.kind == kind; });
  }
};

inline ValidationReport validate(const GameStructure& g) {
  ValidationReport report;
  auto add = [&](Violation::Kind kind, std::size_t v, std::string what) {
    report.violations.push_back({kind, v, std::move(what) + ": " + g.id(v)});
  };
  for (std::size_t v = 0; v < g.num_positions(); ++v) {
    const Position& p = g.position(v);
    if (p.terminal) {
      if (g.out_degree(v) > 0) add(Violation::Kind::kTerminalWithOutEdge, v, "terminal with out-edge");
    } else {
      if (g.out_degree(v) == 0) add(Violation::Kind::kSinkNonTerminal, v, "sink non-terminal");
      if (p.owner < 1 || p.owner > g.num_players()) {
        add(Violation::Kind::kUnownedPosition, v, "unowned position");
      }
    }
  }
  if (g.is_terminal(g.initial())) {
    add(Violation::Kind::kInitialIsTerminal, g.initial(), "initial position is terminal");
  }
  return report;
}

inline void require_valid(const GameStructure& g) {
  auto report = validate(g);
  if (!report.ok()) throw Error("invalid game structure: " + report.violations.front().message);
}

// Positions forward-reachable from the initial one, in BFS order.
inline std::vector<std::size_t> reachable_positions(const GameStructure& g) {
  std::vector<bool> seen(g.num_positions(), false);
  std::vector<std::size_t> order;
  std::deque<std::size_t> frontier{g.initial()};
  seen[g.initial()] = true;
  while (!frontier.empty()) {
    std::size_t v = frontier.front();
    frontier.pop_front();
    order.push_back(v);
    for (std::size_t w : g.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        frontier.push_back(w);
      }
    }
  }
  return order;
}

inline bool is_connected(const GameStructure& g) {
  return reachable_positions(g).size() == g.num_positions();
}

// ---------------------------------------------------------------------------
// Payoffs.

// Per-player values on outcomes. T is Rational for real payoffs and an
// integer rank type for ordinal enumeration.
template <typename T>
class BasicPayoff {
 public:
  BasicPayoff() = default;
  BasicPayoff(int num_players, std::size_t num_outcomes, T fill = T(0))
      : num_outcomes_(num_outcomes),
        values_(static_cast<std::size_t>(num_players) * num_outcomes, fill) {
    if (num_players < 1) throw Error("payoff needs at least one player");
  }

  int num_players() const {
    return num_outcomes_ == 0 ? 0 : static_cast<int>(values_.size() / num_outcomes_);
  }
  std::size_t num_outcomes() const { return num_outcomes_; }

  const T& operator()(Player i, OutcomeIndex o) const { return values_.at(slot(i, o)); }
  void set(Player i, OutcomeIndex o, T value) { values_.at(slot(i, o)) = std::move(value); }

  friend bool operator==(const BasicPayoff&, const BasicPayoff&) = default;

 private:
  std::size_t slot(Player i, OutcomeIndex o) const {
    if (i < 1 || i > num_players() || o >= num_outcomes_) {
      throw Error("payoff index out of range (player " + std::to_string(i) + ", outcome " +
                  std::to_string(o) + ")");
    }
    return static_cast<std::size_t>(i - 1) * num_outcomes_ + o;
  }

  std::size_t num_outcomes_ = 0;
  std::vector<T> values_;
};

using PayoffFunction = BasicPayoff<Rational>;
// Ordinal payoffs: larger rank is better.
using RankPayoff = BasicPayoff<int>;

inline void require_compatible(const GameStructure& g, const PayoffFunction& u) {
  if (u.num_players() != g.num_players() || u.num_outcomes() != g.num_outcomes()) {
    throw Error("payoff function does not match the game (" + std::to_string(u.num_players()) +
                " players x " + std::to_string(u.num_outcomes()) + " outcomes)");
  }
}

// Every player strictly prefers each terminal to the cyclic outcome.
inline bool check_condition_C(const GameStructure& g, const PayoffFunction& u) {
  require_compatible(g, u);
  const OutcomeIndex c = g.cycle_outcome();
  for (Player i = 1; i <= g.num_players(); ++i) {
    for (OutcomeIndex a = 0; a < c; ++a) {
      if (!(u(i, c) < u(i, a))) return false;
    }
  }
  return true;
}

// Shifts every player's payoffs so that the minimum is 0. Leaves the set of
// equilibria unchanged.
template <typename T>
BasicPayoff<T> normalize(const BasicPayoff<T>& u) {
  BasicPayoff<T> out = u;
  for (Player i = 1; i <= u.num_players(); ++i) {
    T low = u(i, 0);
    for (OutcomeIndex o = 1; o < u.num_outcomes(); ++o) low = std::min(low, u(i, o));
    for (OutcomeIndex o = 0; o < u.num_outcomes(); ++o) out.set(i, o, u(i, o) - low);
  }
  return out;
}

}  // namespace dgmp
