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

// Sets of exact inequalities on a payoff function: per-player chains of
// strict comparisons and equalities, plus bounds on sums of ratios of linear
// forms.

#include <optional>
#include <string>
#include <vector>

#include "dgmp/game.hpp"

namespace dgmp {

// Either the minimum of a player's payoffs over a set of outcomes, or a
// constant.
struct Operand {
  std::vector<OutcomeIndex> min_of;
  std::optional<Rational> constant;

  static Operand of(OutcomeIndex o) { return {{o}, std::nullopt}; }
  static Operand min(std::vector<OutcomeIndex> os) { return {std::move(os), std::nullopt}; }
  static Operand value(Rational r) { return {{}, std::move(r)}; }
};

enum class Relation { kGreater, kEqual };

struct Link {
  Operand lhs;
  Relation rel;
  Operand rhs;
};

struct Chain {
  std::string label;
  Player player = 1;
  std::vector<Link> links;
};

struct LinearTerm {
  Rational coef;
  Player player;
  OutcomeIndex outcome;
};
using LinearForm = std::vector<LinearTerm>;

struct RatioTerm {
  LinearForm num;
  LinearForm den;
};

// sum of num/den over the terms, strictly below `bound`.
struct RatioConstraint {
  std::string label;
  std::vector<RatioTerm> terms;
  Rational bound;
};

struct PayoffConstraintSet {
  std::vector<Chain> chains;
  std::vector<RatioConstraint> ratios;
  // Outcome names used when describing violations.
  std::vector<std::string> outcome_labels;
};

struct ConstraintCheck {
  bool satisfied = true;
  std::string label;   // e.g. "(2)"
  std::string detail;  // the failing comparison
};

namespace detail {

inline Rational operand_value(const PayoffFunction& u, Player i, const Operand& op) {
  if (op.constant) return *op.constant;
  Rational best = u(i, op.min_of.front());
  for (OutcomeIndex o : op.min_of) {
    if (u(i, o) < best) best = u(i, o);
  }
  return best;
}

inline std::string operand_text(const PayoffConstraintSet& cs, Player i, const Operand& op) {
  if (op.constant) return to_string(*op.constant);
  auto name = [&](OutcomeIndex o) {
    std::string label = o < cs.outcome_labels.size() ? cs.outcome_labels[o] : std::to_string(o);
    return "u" + std::to_string(i) + "(" + label + ")";
  };
  if (op.min_of.size() == 1) return name(op.min_of.front());
  std::string s = "min{";
  for (std::size_t k = 0; k < op.min_of.size(); ++k) s += (k ? ", " : "") + name(op.min_of[k]);
  return s + "}";
}

inline Rational linear_value(const PayoffFunction& u, const LinearForm& form) {
  Rational sum = 0;
  for (const auto& t : form) sum += t.coef * u(t.player, t.outcome);
  return sum;
}

}  // namespace detail

// Evaluates chains then ratio constraints in order and reports the first
// violation. Throws Error("degenerate ratio ...") on a zero denominator.
inline ConstraintCheck check_constraints(const PayoffFunction& u, const PayoffConstraintSet& cs) {
  for (const Chain& chain : cs.chains) {
    for (const Link& link : chain.links) {
      Rational lhs = detail::operand_value(u, chain.player, link.lhs);
      Rational rhs = detail::operand_value(u, chain.player, link.rhs);
      bool ok = link.rel == Relation::kGreater ? lhs > rhs : lhs == rhs;
      if (!ok) {
        return {false, chain.label,
                detail::operand_text(cs, chain.player, link.lhs) +
                    (link.rel == Relation::kGreater ? " > " : " = ") +
                    detail::operand_text(cs, chain.player, link.rhs)};
      }
    }
  }
  for (const RatioConstraint& rc : cs.ratios) {
    Rational sum = 0;
    for (const RatioTerm& term : rc.terms) {
      Rational den = detail::linear_value(u, term.den);
      if (sgn(den) == 0) throw Error("degenerate ratio in constraint " + rc.label);
      sum += detail::linear_value(u, term.num) / den;
    }
    if (!(sum < rc.bound)) {
      return {false, rc.label, "ratio sum " + to_string(sum) + " < " + to_string(rc.bound)};
    }
  }
  return {};
}

// Builds a decreasing chain o[0] > o[1] > ... for one player, optionally
// pinning the last element to zero.
inline Chain strict_chain(std::string label, Player player, std::vector<Operand> ops,
                          bool pin_last_to_zero) {
  Chain chain{std::move(label), player, {}};
  for (std::size_t k = 0; k + 1 < ops.size(); ++k) {
    chain.links.push_back({ops[k], Relation::kGreater, ops[k + 1]});
  }
  if (pin_last_to_zero) chain.links.push_back({ops.back(), Relation::kEqual, Operand::value(0)});
  return chain;
}

}  // namespace dgmp
