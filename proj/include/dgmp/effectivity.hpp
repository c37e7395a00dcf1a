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

// Effectivity functions of game forms, tightness (self-duality), and the
// solvability notions compared against it.
//
// Coalitions are bit masks over players (bit i-1 for player i); blocks are
// bit masks over outcome indices.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dgmp/pure.hpp"

namespace dgmp {

using Coalition = std::uint32_t;
using Block = std::uint32_t;

inline constexpr int kMaxEffectivityVariables = 24;

namespace detail {

inline Coalition all_players(int n) { return (Coalition{1} << n) - 1; }
inline Block all_outcomes(std::size_t q) { return (Block{1} << q) - 1; }

// Outcome sets a coalition can guarantee: one mask per joint strategy of K,
// the union of outcomes over all opposing joint strategies. Minimal masks
// only.
inline std::vector<Block> guaranteed_blocks(const GameForm& gf, Coalition K) {
  const int n = gf.num_players();
  std::vector<Player> members, others;
  for (Player i = 1; i <= n; ++i) ((K >> (i - 1)) & 1 ? members : others).push_back(i);

  auto joint_count = [&](const std::vector<Player>& side) {
    std::size_t count = 1;
    for (Player i : side) count *= gf.dims[static_cast<std::size_t>(i - 1)];
    return count;
  };
  // Cell offset contributed by a joint strategy of `side` (mixed radix).
  auto offset = [&](const std::vector<Player>& side, std::size_t joint) {
    std::size_t cell = 0;
    for (std::size_t k = side.size(); k > 0; --k) {
      const Player i = side[k - 1];
      const std::size_t dim = gf.dims[static_cast<std::size_t>(i - 1)];
      cell += (joint % dim) * gf.stride(i);
      joint /= dim;
    }
    return cell;
  };

  const std::size_t own = joint_count(members);
  const std::size_t opp = joint_count(others);
  std::vector<std::size_t> opp_offsets(opp);
  for (std::size_t j = 0; j < opp; ++j) opp_offsets[j] = offset(others, j);

  std::vector<Block> masks;
  masks.reserve(own);
  for (std::size_t s = 0; s < own; ++s) {
    const std::size_t base = offset(members, s);
    Block mask = 0;
    for (std::size_t off : opp_offsets) mask |= Block{1} << gf[base + off];
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<Block> minimal;
  for (Block m : masks) {
    bool dominated = std::any_of(masks.begin(), masks.end(),
                                 [m](Block o) { return o != m && (o & m) == o; });
    if (!dominated) minimal.push_back(m);
  }
  return minimal;
}

inline void require_effectivity_size(const GameForm& gf) {
  const int vars = gf.num_players() + static_cast<int>(gf.num_outcomes);
  if (vars > kMaxEffectivityVariables) {
    throw BudgetError("effectivity table too large: n + q", vars, kMaxEffectivityVariables);
  }
}

}  // namespace detail

// K is effective for B when some joint strategy of K forces the outcome into
// B against every opposing joint strategy. K = {} is effective only for the
// whole outcome set and K = I for every non-empty block.
inline bool is_effective(const GameForm& gf, Coalition K, Block B) {
  detail::require_effectivity_size(gf);
  const Coalition everyone = detail::all_players(gf.num_players());
  const Block whole = detail::all_outcomes(gf.num_outcomes);
  if ((K & ~everyone) != 0 || (B & ~whole) != 0) throw Error("coalition or block out of range");
  if (K == 0) return B == whole;
  if (K == everyone) return B != 0;
  for (Block m : detail::guaranteed_blocks(gf, K)) {
    if ((m & ~B) == 0) return true;
  }
  return false;
}

class EffectivityFunction {
 public:
  EffectivityFunction(int num_players, std::size_t num_outcomes)
      : num_players_(num_players),
        num_outcomes_(num_outcomes),
        bits_(std::size_t{1} << (num_players + static_cast<int>(num_outcomes)), false) {}

  int num_players() const { return num_players_; }
  std::size_t num_outcomes() const { return num_outcomes_; }
  Coalition all_players() const { return detail::all_players(num_players_); }
  Block all_outcomes() const { return detail::all_outcomes(num_outcomes_); }

  bool operator()(Coalition K, Block B) const { return bits_[slot(K, B)]; }
  void set(Coalition K, Block B, bool value) { bits_[slot(K, B)] = value; }

 private:
  std::size_t slot(Coalition K, Block B) const {
    return static_cast<std::size_t>(K) | (static_cast<std::size_t>(B) << num_players_);
  }

  int num_players_;
  std::size_t num_outcomes_;
  std::vector<bool> bits_;
};

inline EffectivityFunction effectivity_function(const GameForm& gf) {
  detail::require_effectivity_size(gf);
  EffectivityFunction E(gf.num_players(), gf.num_outcomes);
  const Coalition everyone = E.all_players();
  const Block whole = E.all_outcomes();
  for (Coalition K = 0; K <= everyone; ++K) {
    if (K == 0) {
      E.set(K, whole, true);
      continue;
    }
    if (K == everyone) {
      for (Block B = 1; B <= whole; ++B) E.set(K, B, true);
      continue;
    }
    const std::vector<Block> forced = detail::guaranteed_blocks(gf, K);
    for (Block B = 0; B <= whole; ++B) {
      bool effective = std::any_of(forced.begin(), forced.end(),
                                   [B](Block m) { return (m & ~B) == 0; });
      E.set(K, B, effective);
    }
  }
  return E;
}

struct TightnessResult {
  bool tight = true;
  // A pair (K, B) with E(K,B) == E(I\K, A\B).
  std::optional<std::pair<Coalition, Block>> witness;
};

inline TightnessResult is_tight(const EffectivityFunction& E) {
  const Coalition everyone = E.all_players();
  const Block whole = E.all_outcomes();
  for (Coalition K = 0; K <= everyone; ++K) {
    for (Block B = 0; B <= whole; ++B) {
      if (E(K, B) == E(everyone & ~K, whole & ~B)) return {false, std::make_pair(K, B)};
    }
  }
  return {};
}

inline TightnessResult is_tight(const GameForm& gf) { return is_tight(effectivity_function(gf)); }

// ---------------------------------------------------------------------------
// Ordinal Nash-solvability.

enum class OrderKind { kStrict, kWeak };

struct SolvabilityResult {
  bool solvable = true;
  // Ranks (larger is better) per player for a payoff without pure NE.
  std::optional<RankPayoff> witness;
  std::size_t orderings_checked = 0;
};

namespace detail {

// All rank vectors over q outcomes: permutations (strict) or ordered set
// partitions (weak), with ranks in 0..q-1.
inline std::vector<std::vector<int>> rank_vectors(std::size_t q, OrderKind kind) {
  std::vector<std::vector<int>> out;
  if (kind == OrderKind::kStrict) {
    std::vector<int> r(q);
    std::iota(r.begin(), r.end(), 0);
    do out.push_back(r);
    while (std::next_permutation(r.begin(), r.end()));
    return out;
  }
  // Weak orders: rank vectors whose value set is {0..k-1} for some k.
  std::vector<int> r(q, 0);
  while (true) {
    int top = *std::max_element(r.begin(), r.end());
    std::vector<bool> used(static_cast<std::size_t>(top) + 1, false);
    for (int x : r) used[static_cast<std::size_t>(x)] = true;
    if (std::all_of(used.begin(), used.end(), [](bool b) { return b; })) out.push_back(r);
    std::size_t k = q;
    while (k > 0) {
      --k;
      if (++r[k] < static_cast<int>(q)) break;
      r[k] = 0;
      if (k == 0) return out;
    }
    if (q == 0) return out;
  }
}

inline double factorial(std::size_t q) {
  double f = 1;
  for (std::size_t k = 2; k <= q; ++k) f *= static_cast<double>(k);
  return f;
}

}  // namespace detail

inline constexpr double kDefaultOrderingBudget = 2e6;

// Whether every payoff profile (each player's order over outcomes) yields a
// pure NE, by enumeration. Strict orders by default.
inline SolvabilityResult is_nash_solvable_ordinal(const GameForm& gf,
                                                  OrderKind kind = OrderKind::kStrict,
                                                  double budget = kDefaultOrderingBudget) {
  const std::size_t q = gf.num_outcomes;
  const int n = gf.num_players();
  if (q > 8) throw BudgetError("too many outcomes for order enumeration", static_cast<double>(q), 8);
  const double per_player = kind == OrderKind::kStrict
                                ? detail::factorial(q)
                                : static_cast<double>(detail::rank_vectors(q, kind).size());
  const double total = std::pow(per_player, n);
  if (total > budget) throw BudgetError("ordering enumeration over budget", total, budget);

  const auto ranks = detail::rank_vectors(q, kind);
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  RankPayoff u(n, q);
  SolvabilityResult result;
  auto load = [&](Player i) {
    const auto& r = ranks[digit[static_cast<std::size_t>(i - 1)]];
    for (std::size_t o = 0; o < q; ++o) u.set(i, o, r[o]);
  };
  for (Player i = 1; i <= n; ++i) load(i);
  while (true) {
    ++result.orderings_checked;
    if (!has_pure_ne(gf, u)) {
      result.solvable = false;
      result.witness = u;
      return result;
    }
    std::size_t k = static_cast<std::size_t>(n);
    while (k > 0) {
      --k;
      if (++digit[k] < ranks.size()) {
        load(static_cast<Player>(k + 1));
        break;
      }
      digit[k] = 0;
      load(static_cast<Player>(k + 1));
      if (k == 0) return result;
    }
  }
}

// Two-person zero-sum games with payoffs +1/-1: one per block B (player 1
// wins on B). Solvable when every such game has a saddle point.
inline bool is_pm1_solvable(const GameForm& gf) {
  if (gf.num_players() != 2) throw Error("±1-solvability is defined for two-person forms");
  const std::size_t q = gf.num_outcomes;
  if (q > 30) throw BudgetError("too many outcomes for ±1 enumeration", static_cast<double>(q), 30);
  RankPayoff u(2, q);
  for (Block B = 0; B <= detail::all_outcomes(q); ++B) {
    for (std::size_t o = 0; o < q; ++o) {
      int win = ((B >> o) & 1) ? 1 : -1;
      u.set(1, o, win);
      u.set(2, o, -win);
    }
    if (!has_pure_ne(gf, u)) return false;
  }
  return true;
}

struct TwoPersonReport {
  bool nash_solvable = false;
  bool pm1_solvable = false;
  bool tight = false;
  bool all_equal() const { return nash_solvable == pm1_solvable && pm1_solvable == tight; }
};

// Nash-solvability, ±1-solvability and tightness computed independently.
// Zero-sum solvability is not enumerable; it sits between the first two.
inline TwoPersonReport two_person_equivalence_check(const GameForm& gf) {
  if (gf.num_players() != 2) throw Error("equivalence check is defined for two-person forms");
  TwoPersonReport r;
  r.nash_solvable = is_nash_solvable_ordinal(gf).solvable;
  r.pm1_solvable = is_pm1_solvable(gf);
  r.tight = is_tight(gf).tight;
  return r;
}

inline std::string coalition_text(Coalition K, int n) {
  std::string s = "{";
  bool first = true;
  for (Player i = 1; i <= n; ++i) {
    if ((K >> (i - 1)) & 1) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
  }
  return s + "}";
}

inline std::string block_text(Block B, const std::vector<std::string>& labels) {
  std::string s = "{";
  bool first = true;
  for (std::size_t o = 0; o < labels.size(); ++o) {
    if ((B >> o) & 1) {
      s += (first ? "" : ",") + labels[o];
      first = false;
    }
  }
  return s + "}";
}

}  // namespace dgmp
