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

// Line-based text formats.
//
// Game files ('#' starts a comment):
//   players <n>
//   position <id> owner <player>   |   terminal <id>
//   edge <from> <to>
//   initial <id>
//   payoff <player> <terminal-id|c> <p/q or integer>
// Lines may appear in any order; positions keep their order of appearance and
// so do edges. Payoff lines are optional but, when present, must cover every
// (player, outcome) pair.
//
// Profile files:
//   move <position> <target> <p/q>
// Unlisted moves of a listed position have probability 0.

#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dgmp/mixed.hpp"

namespace dgmp {

struct ParsedGame {
  GameStructure game;
  std::optional<PayoffFunction> payoff;
};

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(begin, end - begin);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {std::istream_iterator<std::string>(in), std::istream_iterator<std::string>()}};
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    begin = end + 1;
  }
  return lines;
}

inline void expect_arity(const Line& line, std::size_t n, const char* usage) {
  if (line.tokens.size() != n) throw ParseError(line.number, std::string("expected '") + usage + "'");
}

inline long parse_int(const Line& line, const std::string& token, const char* what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) {
    throw ParseError(line.number, std::string("malformed ") + what + " '" + token + "'");
  }
  return value;
}

inline Rational parse_value(const Line& line, const std::string& token) {
  try {
    return parse_rational(token);
  } catch (const Error& e) {
    throw ParseError(line.number, e.what());
  }
}

// Consumes payoff lines against a known game.
inline PayoffFunction read_payoffs(const GameStructure& g, const std::vector<Line>& lines) {
  PayoffFunction u(g.num_players(), g.num_outcomes());
  std::set<std::pair<Player, OutcomeIndex>> seen;
  for (const Line& line : lines) {
    expect_arity(line, 4, "payoff <player> <outcome> <value>");
    const long player = parse_int(line, line.tokens[1], "player");
    if (player < 1 || player > g.num_players()) {
      throw ParseError(line.number, "payoff for unknown player " + line.tokens[1]);
    }
    auto outcome = g.find_outcome(line.tokens[2]);
    if (!outcome) throw ParseError(line.number, "unknown outcome '" + line.tokens[2] + "'");
    const Player i = static_cast<Player>(player);
    if (!seen.emplace(i, *outcome).second) {
      throw ParseError(line.number, "duplicate payoff for player " + line.tokens[1] + " at " +
                                        line.tokens[2]);
    }
    u.set(i, *outcome, parse_value(line, line.tokens[3]));
  }
  for (Player i = 1; i <= g.num_players(); ++i) {
    for (OutcomeIndex o = 0; o < g.num_outcomes(); ++o) {
      if (!seen.count({i, o})) {
        throw ParseError(0, "payoff incomplete: missing player " + std::to_string(i) + " at " +
                                g.outcome_label(o));
      }
    }
  }
  return u;
}

}  // namespace detail

inline ParsedGame parse_game(std::string_view text) {
  const auto lines = detail::tokenize(text);
  std::optional<long> players;
  GameBuilder builder;
  std::set<std::string> ids;
  std::vector<detail::Line> edges, payoffs;
  std::optional<detail::Line> initial;

  for (const auto& line : lines) {
    const std::string& key = line.tokens[0];
    if (key == "players") {
      detail::expect_arity(line, 2, "players <n>");
      if (players) throw ParseError(line.number, "duplicate 'players' line");
      players = detail::parse_int(line, line.tokens[1], "player count");
      if (*players < 1) throw ParseError(line.number, "player count must be positive");
    } else if (key == "position" || key == "terminal") {
      const bool terminal = key == "terminal";
      if (terminal) {
        detail::expect_arity(line, 2, "terminal <id>");
      } else {
        detail::expect_arity(line, 4, "position <id> owner <player>");
        if (line.tokens[2] != "owner") throw ParseError(line.number, "expected 'owner'");
      }
      const std::string& id = line.tokens[1];
      if (id == kCycleLabel) throw ParseError(line.number, "position id 'c' is reserved");
      if (!ids.insert(id).second) throw ParseError(line.number, "duplicate position '" + id + "'");
      if (terminal) {
        builder.terminal(id);
      } else {
        builder.position(id, static_cast<Player>(detail::parse_int(line, line.tokens[3], "owner")));
      }
    } else if (key == "edge") {
      detail::expect_arity(line, 3, "edge <from> <to>");
      edges.push_back(line);
    } else if (key == "initial") {
      detail::expect_arity(line, 2, "initial <id>");
      if (initial) throw ParseError(line.number, "duplicate 'initial' line");
      initial = line;
    } else if (key == "payoff") {
      payoffs.push_back(line);
    } else {
      throw ParseError(line.number, "unknown directive '" + key + "'");
    }
  }
  if (!players) throw ParseError(0, "missing 'players' line");
  builder.players(static_cast<int>(*players));

  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& line : edges) {
    for (std::size_t k = 1; k <= 2; ++k) {
      if (!ids.count(line.tokens[k])) {
        throw ParseError(line.number, "edge mentions unknown position '" + line.tokens[k] + "'");
      }
    }
    if (!seen_edges.emplace(line.tokens[1], line.tokens[2]).second) {
      throw ParseError(line.number, "parallel edge " + line.tokens[1] + " -> " + line.tokens[2]);
    }
    builder.edge(line.tokens[1], line.tokens[2]);
  }
  if (!initial) throw ParseError(0, "missing 'initial' line");
  if (!ids.count(initial->tokens[1])) {
    throw ParseError(initial->number, "unknown initial position '" + initial->tokens[1] + "'");
  }
  builder.initial(initial->tokens[1]);

  ParsedGame parsed{builder.build(), std::nullopt};
  if (!payoffs.empty()) parsed.payoff = detail::read_payoffs(parsed.game, payoffs);
  return parsed;
}

// A payoff file: only payoff lines (and comments).
inline PayoffFunction parse_payoff(std::string_view text, const GameStructure& g) {
  const auto lines = detail::tokenize(text);
  for (const auto& line : lines) {
    if (line.tokens[0] != "payoff") {
      throw ParseError(line.number, "expected a payoff line, got '" + line.tokens[0] + "'");
    }
  }
  return detail::read_payoffs(g, lines);
}

inline std::string render_payoff(const GameStructure& g, const PayoffFunction& u) {
  require_compatible(g, u);
  std::ostringstream out;
  for (Player i = 1; i <= g.num_players(); ++i) {
    for (OutcomeIndex o = 0; o < g.num_outcomes(); ++o) {
      out << "payoff " << i << ' ' << g.outcome_label(o) << ' ' << to_string(u(i, o)) << '\n';
    }
  }
  return out.str();
}

inline std::string render_game(const GameStructure& g,
                               const std::optional<PayoffFunction>& u = std::nullopt) {
  std::ostringstream out;
  out << "players " << g.num_players() << '\n';
  for (const Position& p : g.positions()) {
    if (p.terminal) {
      out << "terminal " << p.id << '\n';
    } else {
      out << "position " << p.id << " owner " << p.owner << '\n';
    }
  }
  for (const auto& [from, to] : g.edges()) out << "edge " << g.id(from) << ' ' << g.id(to) << '\n';
  out << "initial " << g.id(g.initial()) << '\n';
  if (u) out << render_payoff(g, *u);
  return out.str();
}

inline MixedProfile parse_profile(std::string_view text, const GameStructure& g) {
  std::vector<std::vector<Rational>> dist(g.num_positions());
  std::vector<bool> listed(g.num_positions(), false);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& line : detail::tokenize(text)) {
    if (line.tokens[0] != "move") {
      throw ParseError(line.number, "expected 'move <position> <target> <p/q>'");
    }
    detail::expect_arity(line, 4, "move <position> <target> <p/q>");
    auto v = g.find(line.tokens[1]);
    auto w = g.find(line.tokens[2]);
    if (!v || !w) throw ParseError(line.number, "move mentions an unknown position");
    const std::size_t slot = g.successor_slot(*v, *w);
    if (slot == kNoPosition) {
      throw ParseError(line.number, "no edge " + line.tokens[1] + " -> " + line.tokens[2]);
    }
    if (!seen.emplace(*v, *w).second) throw ParseError(line.number, "duplicate move");
    if (!listed[*v]) {
      listed[*v] = true;
      dist[*v].assign(g.out_degree(*v), Rational(0));
    }
    dist[*v][slot] = detail::parse_value(line, line.tokens[3]);
  }
  for (std::size_t v : g.non_terminals()) {
    if (!listed[v]) throw ParseError(0, "profile has no moves for position " + g.id(v));
  }
  MixedProfile m(std::move(dist));
  if (auto problem = m.check(g); !problem.empty()) throw ParseError(0, problem);
  return m;
}

inline std::string render_profile(const GameStructure& g, const MixedProfile& m) {
  std::ostringstream out;
  for (std::size_t v : g.non_terminals()) {
    for (std::size_t slot = 0; slot < g.out_degree(v); ++slot) {
      out << "move " << g.id(v) << ' ' << g.id(g.successors(v)[slot]) << ' '
          << to_string(m.prob(v, slot)) << '\n';
    }
  }
  return out.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

}  // namespace dgmp
