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

// Refuting mixed equilibria: deviation certificates, exhaustive grid scans and
// the case analysis for the main example under the Markovian evaluation.
//
// A refuted grid point carries an exact certificate. No statement is made
// about points off the grid.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dgmp/constraints.hpp"
#include "dgmp/mixed.hpp"
#include "dgmp/parallel.hpp"

namespace dgmp {

// Replacement distributions at some of the deviator's positions.
using Deviation = std::vector<std::pair<std::size_t, std::vector<Rational>>>;

struct DeviationCertificate {
  MixedProfile profile;
  Player deviator = 1;
  Deviation deviation;
  Rational before, after, gain;
};

inline MixedProfile apply_deviation(MixedProfile m, const Deviation& d) {
  for (const auto& [v, dist] : d) m.set(v, dist);
  return m;
}

inline std::string distribution_text(const std::vector<Rational>& d) {
  std::string s = "[";
  for (std::size_t k = 0; k < d.size(); ++k) s += (k ? " " : "") + to_string(d[k]);
  return s + "]";
}

inline std::string profile_text(const GameStructure& g, const MixedProfile& m) {
  std::string s;
  for (std::size_t v : g.non_terminals()) {
    if (!s.empty()) s += ' ';
    s += g.id(v) + "=" + distribution_text(m.at(v));
  }
  return s;
}

inline std::string deviation_text(const GameStructure& g, const Deviation& d) {
  std::string s;
  for (const auto& [v, dist] : d) {
    if (!s.empty()) s += ' ';
    s += g.id(v) + "=" + distribution_text(dist);
  }
  return s;
}

// Recomputes both expected payoffs from scratch.
inline bool verify_certificate(const GameStructure& g, const PayoffFunction& u, Evaluation eval,
                               const DeviationCertificate& c) {
  for (const auto& [v, dist] : c.deviation) {
    if (g.is_terminal(v) || g.owner(v) != c.deviator) return false;
  }
  const MixedProfile after = apply_deviation(c.profile, c.deviation);
  if (!after.check(g).empty() || !c.profile.check(g).empty()) return false;
  const Rational before_payoff = expected_payoff(evaluate(g, c.profile, eval), u, c.deviator);
  const Rational after_payoff = expected_payoff(evaluate(g, after, eval), u, c.deviator);
  const Rational gain = after_payoff - before_payoff;
  return sgn(gain) > 0 && gain == c.gain && before_payoff == c.before && after_payoff == c.after;
}

// ---------------------------------------------------------------------------
// Grids of mixed profiles.

// Distributions over d moves with all probabilities in (1/N)Z, ordered
// lexicographically by (p_1, p_2, ...), each ascending.
inline std::vector<std::vector<Rational>> simplex_grid(unsigned long n, std::size_t d) {
  std::vector<std::vector<Rational>> out;
  std::vector<unsigned long> parts(d, 0);
  std::function<void(std::size_t, unsigned long)> rec = [&](std::size_t k, unsigned long left) {
    if (k + 1 == d) {
      parts[k] = left;
      std::vector<Rational> dist(d);
      for (std::size_t j = 0; j < d; ++j) {
        dist[j] = Rational(static_cast<long>(parts[j]), static_cast<long>(n));
        dist[j].canonicalize();
      }
      out.push_back(std::move(dist));
      return;
    }
    for (unsigned long x = 0; x <= left; ++x) {
      parts[k] = x;
      rec(k + 1, left - x);
    }
  };
  if (d > 0) rec(0, n);
  return out;
}

inline constexpr double kMaxGridPoints = 5e8;

// Mixed-radix enumeration over a set of positions: the first position is the
// most significant digit, each digit ranging over simplex_grid.
class ProfileGrid {
 public:
  ProfileGrid(const GameStructure& g, std::vector<std::size_t> positions, unsigned long n)
      : positions_(std::move(positions)) {
    double total = 1;
    for (std::size_t v : positions_) {
      choices_.push_back(simplex_grid(n, g.out_degree(v)));
      total *= static_cast<double>(choices_.back().size());
    }
    if (total > kMaxGridPoints) throw BudgetError("grid too large", total, kMaxGridPoints);
    size_ = static_cast<std::size_t>(total);
  }
  ProfileGrid(const GameStructure& g, unsigned long n) : ProfileGrid(g, g.non_terminals(), n) {}

  std::size_t size() const { return size_; }
  const std::vector<std::size_t>& positions() const { return positions_; }

  // Writes point `index` into m (which must already have the game's shape).
  void fill(std::size_t index, MixedProfile& m) const {
    for (std::size_t k = positions_.size(); k > 0; --k) {
      const auto& list = choices_[k - 1];
      m.set(positions_[k - 1], list[index % list.size()]);
      index /= list.size();
    }
  }
  Deviation deviation(std::size_t index) const {
    Deviation d(positions_.size());
    for (std::size_t k = positions_.size(); k > 0; --k) {
      const auto& list = choices_[k - 1];
      d[k - 1] = {positions_[k - 1], list[index % list.size()]};
      index /= list.size();
    }
    return d;
  }
  MixedProfile profile(const GameStructure& g, std::size_t index) const {
    MixedProfile m(std::vector<std::vector<Rational>>(g.num_positions()));
    fill(index, m);
    return m;
  }

 private:
  std::vector<std::size_t> positions_;
  std::vector<std::vector<std::vector<Rational>>> choices_;
  std::size_t size_ = 0;
};

// ---------------------------------------------------------------------------
// Deviation search.

struct DeviationSearch {
  Rational step = make_rational(1, 20);  // grid for non-vertex deviations
  bool vertex_only = false;
};

namespace detail {

inline std::optional<DeviationCertificate> best_over(
    const PayoffFunction& u, const MixedProfile& m, Player player,
    const Evaluator& eval, const Rational& before, const std::vector<Deviation>& candidates) {
  std::optional<DeviationCertificate> best;
  for (const Deviation& d : candidates) {
    const Rational after = expected_payoff(eval(apply_deviation(m, d)), u, player);
    const Rational gain = after - before;
    if (sgn(gain) > 0 && (!best || gain > best->gain)) {
      best = DeviationCertificate{m, player, d, before, after, gain};
    }
  }
  return best;
}

inline std::vector<Deviation> vertex_deviations(const GameStructure& g, Player player) {
  std::vector<Deviation> out;
  for (const PureStrategy& s : enumerate_strategies(g, player)) {
    Deviation d;
    for (const auto& [v, w] : s.choice) {
      std::vector<Rational> dist(g.out_degree(v), Rational(0));
      dist[g.successor_slot(v, w)] = 1;
      d.emplace_back(v, std::move(dist));
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace detail

namespace detail {

inline std::optional<DeviationCertificate> best_deviation_from(
    const GameStructure& g, const PayoffFunction& u, const MixedProfile& m, Player player,
    const Evaluator& eval, const DeviationSearch& search, const Rational& before) {
  if (auto best = best_over(u, m, player, eval, before, vertex_deviations(g, player))) {
    return best;
  }
  if (search.vertex_only) return std::nullopt;
  const ProfileGrid grid(g, g.positions_of(player), reciprocal_steps(search.step));
  std::vector<Deviation> candidates;
  candidates.reserve(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) candidates.push_back(grid.deviation(k));
  return best_over(u, m, player, eval, before, candidates);
}

}  // namespace detail

// Best strictly improving deviation of `player`: vertex strategies first,
// then (unless vertex_only) the grid of the player's own positions.
inline std::optional<DeviationCertificate> best_deviation(const GameStructure& g,
                                                          const PayoffFunction& u,
                                                          const MixedProfile& m, Player player,
                                                          const Evaluator& eval,
                                                          const DeviationSearch& search = {}) {
  require_player(g, player);
  require_compatible(g, u);
  require_valid(g, m);
  return detail::best_deviation_from(g, u, m, player, eval, search,
                                     expected_payoff(eval(m), u, player));
}

inline std::optional<DeviationCertificate> best_deviation(const GameStructure& g,
                                                          const PayoffFunction& u,
                                                          const MixedProfile& m, Player player,
                                                          Evaluation eval,
                                                          const DeviationSearch& search = {}) {
  return best_deviation(g, u, m, player, Evaluator(g, eval), search);
}

// The first player (in player order) with a strictly improving deviation.
inline std::optional<DeviationCertificate> find_deviation(const GameStructure& g,
                                                          const PayoffFunction& u,
                                                          const MixedProfile& m,
                                                          const Evaluator& eval,
                                                          const DeviationSearch& search = {}) {
  require_compatible(g, u);
  require_valid(g, m);
  const OutcomeDistribution base = eval(m);
  for (Player i = 1; i <= g.num_players(); ++i) {
    if (auto c = detail::best_deviation_from(g, u, m, i, eval, search,
                                             expected_payoff(base, u, i))) {
      return c;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Grid refutation.

struct RefuteOptions {
  Rational step = make_rational(1, 20);
  DeviationSearch search;
  unsigned threads = 1;
  bool collect_certificates = false;
};

struct RefuteReport {
  std::size_t points = 0;
  std::size_t refuted = 0;
  std::optional<std::size_t> first_unrefuted;  // canonical grid index
  std::optional<MixedProfile> counterexample;
  Rational min_gain, max_gain;
  std::vector<std::size_t> refuted_by;  // count per deviating player, index i-1
  // One CSV row per refuted point, in grid order: point,deviator,deviation,gain.
  std::vector<std::string> certificate_rows;

  bool all_refuted() const { return points > 0 && refuted == points; }
};

inline RefuteReport refute_mixed_ne_grid(const GameStructure& g, const PayoffFunction& u,
                                         Evaluation eval, const RefuteOptions& options = {},
                                         const PayoffConstraintSet* precheck = nullptr) {
  require_valid(g);
  require_compatible(g, u);
  if (precheck) {
    const ConstraintCheck check = check_constraints(u, *precheck);
    if (!check.satisfied) {
      throw Error("payoff violates condition " + check.label + ": " + check.detail);
    }
  }
  const ProfileGrid grid(g, reciprocal_steps(options.step));
  const Evaluator evaluator(g, eval);
  const std::size_t count = grid.size();

  std::vector<char> refuted(count, 0);
  std::vector<Player> deviator(count, 0);
  std::vector<Rational> gains(count);
  std::vector<std::string> rows(options.collect_certificates ? count : 0);

  parallel_for(count, options.threads, [&](std::size_t k) {
    const MixedProfile m = grid.profile(g, k);
    if (auto c = find_deviation(g, u, m, evaluator, options.search)) {
      refuted[k] = 1;
      deviator[k] = c->deviator;
      gains[k] = c->gain;
      if (options.collect_certificates) {
        rows[k] = "\"" + profile_text(g, m) + "\"," + std::to_string(c->deviator) + ",\"" +
                  deviation_text(g, c->deviation) + "\"," + to_string(c->gain);
      }
    }
  }, 16);

  RefuteReport report;
  report.points = count;
  report.refuted_by.assign(static_cast<std::size_t>(g.num_players()), 0);
  bool have_gain = false;
  for (std::size_t k = 0; k < count; ++k) {
    if (!refuted[k]) {
      if (!report.first_unrefuted) {
        report.first_unrefuted = k;
        report.counterexample = grid.profile(g, k);
      }
      continue;
    }
    ++report.refuted;
    ++report.refuted_by[static_cast<std::size_t>(deviator[k] - 1)];
    if (!have_gain || gains[k] < report.min_gain) report.min_gain = gains[k];
    if (!have_gain || gains[k] > report.max_gain) report.max_gain = gains[k];
    have_gain = true;
    if (options.collect_certificates) report.certificate_rows.push_back(std::move(rows[k]));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Markovian case analysis for the main example.

struct CaseTrace {
  std::string id;  // "1", "2", "3", "4", "5.1", "5.2", "5.3", "6"
  MainParams point;
  // lambda = P(a1) and mu = P(a2) at the point (Markovian), when the case
  // argues through them.
  std::optional<Rational> lambda, mu;
};

struct CasePrescription {
  CaseTrace trace;
  Player deviator = 1;
  MainParams deviated;  // the point after the prescribed deviation
};

// Exact guard of a case.
inline bool case_guard(std::string_view id, const MainParams& p) {
  const Rational& a = p.alpha;
  const Rational& b = p.beta;
  const Rational& c = p.gamma;
  const Rational& d = p.delta;
  if (id == "1") return c * d == 1;
  if (id == "2") return sgn(a * (1 - b * c) * (1 - d) + d * (1 - c)) > 0 && d < 1;
  if (id == "3") return b * c == 1 && d < 1;
  if (id == "4") return sgn(a) == 0 && sgn(d) == 0;
  if (id == "5") return c < 1 && d == 1;
  if (id == "5.1") return case_guard("5", p) && sgn(a) > 0 && b == 1;
  if (id == "5.2") return case_guard("5", p) && sgn(a) > 0 && b < 1;
  if (id == "5.3") return case_guard("5", p) && sgn(a) == 0;
  if (id == "6") return sgn(a) == 0 && c == 1 && d < 1;
  throw Error("unknown case '" + std::string(id) + "'");
}

// Classifies the point (priority 1, 3, 4, 5, 6, then 2) and returns the
// deviation used to refute it.
inline CasePrescription markovian_case_deviation(const MainParams& p) {
  for (const Rational* x : {&p.alpha, &p.beta, &p.gamma, &p.delta}) {
    if (sgn(*x) < 0 || *x > 1) throw Error("case analysis: parameter outside [0,1]");
  }
  const Rational one(1), zero(0);
  CasePrescription out;
  out.trace.point = p;
  auto with = [&](Player who, MainParams q) {
    out.deviator = who;
    out.deviated = std::move(q);
    return out;
  };
  const auto& [a, b, c, d] = p;
  if (case_guard("1", p)) {
    out.trace.id = "1";
    if (sgn(a) > 0 && b < 1) return with(1, {zero, b, c, d});
    return with(2, {a, one, zero, d});
  }
  if (case_guard("3", p)) {
    out.trace.id = "3";
    return with(3, {a, b, c, one});
  }
  if (case_guard("4", p)) {
    out.trace.id = "4";
    const auto probs = closed_form_main_example(Evaluation::kMarkovian, one, b, c, d);
    out.trace.lambda = probs[0];
    out.trace.mu = probs[1];
    return with(1, {one, b, c, d});
  }
  if (case_guard("5", p)) {
    if (case_guard("5.1", p)) {
      out.trace.id = "5.1";
      return with(2, {a, zero, c, d});
    }
    if (case_guard("5.2", p)) {
      out.trace.id = "5.2";
      return with(1, {zero, b, c, d});
    }
    out.trace.id = "5.3";
    return with(3, {a, b, c, zero});
  }
  if (case_guard("6", p)) {
    out.trace.id = "6";
    return with(3, {a, b, c, one});
  }
  if (!case_guard("2", p)) throw Error("case analysis is not exhaustive at this point");
  out.trace.id = "2";
  const auto probs = closed_form_main_example(Evaluation::kMarkovian, p);
  out.trace.lambda = probs[0];
  out.trace.mu = probs[1];
  return with(2, {a, one, one, d});
}

}  // namespace dgmp
