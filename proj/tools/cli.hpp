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

// Command-line front end. run() is kept in a header so tests can drive it
// with captured streams.

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dgmp.hpp"

namespace dgmp::cli {

inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string command;
  std::string game, payoff, profile, params;
  std::string eval = "markovian";
  std::string step = "1/20";
  std::string deviation_step;  // defaults to step
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::uint64_t max_steps = kDefaultMaxSteps;
  unsigned threads = 0;  // 0: DGMP_THREADS or all cores
  std::string format = "text";
  std::string out, emit, emit_certificates;
  bool vertex_only = false;
  bool no_precheck = false;
  bool weak = false;
  double budget = kDefaultOrderingBudget;
  int player = 0;
  std::string name;
  std::vector<std::string> inputs;
  bool suffix = false;
  std::string first = "fig3-left", second = "main", prime_mode = "cycle-best";
  int players = 2;
  std::size_t positions = 6, terminals = 2, max_outdegree = 2;
  std::size_t samples = 200000, min_samples = 10000, points = 100;
  double fd_step = 1e-6, tolerance = 1e-6;
};

namespace detail {

struct Loaded {
  GameStructure game;
  std::optional<PayoffFunction> payoff;
  std::optional<PureProfile> profile;
};

inline bool is_builtin(const std::string& name) {
  for (const auto& n : catalog_names()) {
    if (n == name) return true;
  }
  return false;
}

inline Loaded load_game(const std::string& spec) {
  if (spec.empty()) throw Error("--game is required");
  if (is_builtin(spec)) {
    CatalogEntry e = catalog(spec);
    return {std::move(e.game), std::move(e.payoff), std::move(e.profile)};
  }
  ParsedGame p = parse_game(read_file(spec));
  return {std::move(p.game), std::move(p.payoff), std::nullopt};
}

inline PayoffFunction load_payoff(const Loaded& l, const std::string& spec) {
  if (spec.empty()) {
    if (!l.payoff) throw Error("no payoff: pass --payoff <file|canonical>");
    return *l.payoff;
  }
  if (spec == "canonical") {
    if (l.game.num_players() != 3) throw Error("the canonical payoff needs a three-person game");
    return main_canonical_payoff(l.game);
  }
  return parse_payoff(read_file(spec), l.game);
}

inline MixedProfile load_profile(const GameStructure& g, const RunConfig& c) {
  if (!c.profile.empty()) return parse_profile(read_file(c.profile), g);
  if (!c.params.empty()) {
    std::vector<Rational> v;
    std::stringstream in(c.params);
    std::string item;
    while (std::getline(in, item, ',')) v.push_back(parse_rational(item));
    if (v.size() != 4) throw Error("--params expects alpha,beta,gamma,delta");
    return main_example_profile(g, {v[0], v[1], v[2], v[3]});
  }
  throw Error("pass --profile <file> or --params a,b,c,d");
}

inline Rational load_step(const std::string& text) {
  const Rational step = parse_rational(text);
  if (!is_integer_reciprocal(step)) throw Error("step must be 1/N for a positive integer N");
  return step;
}

inline unsigned thread_count(const RunConfig& c) { return c.threads ? c.threads : default_threads(); }

inline std::string strategy_text(const GameStructure& g, const PureStrategy& s) {
  if (s.choice.empty()) return "(no positions)";
  std::string t;
  for (const auto& [v, w] : s.choice) t += (t.empty() ? "" : " ") + g.id(v) + "->" + g.id(w);
  return t;
}

inline std::string cell_text(const GameForm& gf, std::size_t cell) {
  std::string t = "(";
  const auto coords = gf.coordinates(cell);
  for (std::size_t k = 0; k < coords.size(); ++k) {
    t += (k ? "," : "") + std::string("#") + std::to_string(coords[k] + 1);
  }
  return t + ")";
}

inline std::string players_text(const std::vector<Player>& ps) {
  std::string t = "{";
  for (std::size_t k = 0; k < ps.size(); ++k) t += (k ? "," : "") + std::to_string(ps[k]);
  return t + "}";
}

inline void print_payoff(std::ostream& out, const GameStructure& g, const PayoffFunction& u) {
  for (Player i = 1; i <= g.num_players(); ++i) {
    out << "u" << i << ":";
    for (OutcomeIndex o = 0; o < g.num_outcomes(); ++o) {
      out << ' ' << g.outcome_label(o) << '=' << to_string(u(i, o));
    }
    out << '\n';
  }
}

inline void print_strategies(std::ostream& out, const GameStructure& g) {
  for (Player i = 1; i <= g.num_players(); ++i) {
    const auto list = enumerate_strategies(g, i);
    for (std::size_t k = 0; k < list.size(); ++k) {
      out << "player " << i << " strategy #" << k + 1 << ": " << strategy_text(g, list[k]) << '\n';
    }
  }
}

inline std::string params_text(const MainParams& p) {
  return "(" + to_string(p.alpha) + ", " + to_string(p.beta) + ", " + to_string(p.gamma) + ", " +
         to_string(p.delta) + ")";
}

// ---------------------------------------------------------------------------
// Commands. Each returns the exit code.

inline int cmd_validate(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const ValidationReport r = validate(l.game);
  out << "valid: " << (r.ok() ? "true" : "false") << '\n';
  for (const auto& v : r.violations) out << "violation: " << v.message << '\n';
  out << "players: " << l.game.num_players() << '\n';
  out << "positions: " << l.game.num_positions() << " (" << l.game.non_terminals().size()
      << " non-terminal, " << l.game.terminals().size() << " terminal)\n";
  out << "edges: " << l.game.edges().size() << '\n';
  out << "connected: " << (is_connected(l.game) ? "true" : "false") << '\n';
  return r.ok() ? 0 : 2;
}

inline int cmd_normal_form(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const GameForm gf = build_game_form(l.game);
  if (c.format == "csv") {
    for (Player i = 1; i <= gf.num_players(); ++i) out << "p" << i << ',';
    out << "outcome\n";
    for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
      for (std::size_t x : gf.coordinates(cell)) out << x + 1 << ',';
      out << gf.outcome_labels[gf[cell]] << '\n';
    }
    return 0;
  }
  print_strategies(out, l.game);
  for (std::size_t cell = 0; cell < gf.num_cells(); ++cell) {
    out << cell_text(gf, cell) << ": " << gf.outcome_labels[gf[cell]] << '\n';
  }
  return 0;
}

inline int cmd_improvement_table(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const PayoffFunction u = load_payoff(l, c.payoff);
  require_compatible(l.game, u);
  const GameForm gf = build_game_form(l.game);
  const auto table = improvement_table(gf, u);
  std::size_t improvable = 0;
  for (const auto& e : table) improvable += !e.improvers.empty();
  if (c.format == "csv") {
    out << "cell,";
    for (Player i = 1; i <= gf.num_players(); ++i) out << "p" << i << ',';
    out << "outcome,improvers\n";
    for (const auto& e : table) {
      out << e.cell << ',';
      for (std::size_t x : gf.coordinates(e.cell)) out << x + 1 << ',';
      out << gf.outcome_labels[e.outcome] << ',';
      for (std::size_t k = 0; k < e.improvers.size(); ++k) out << (k ? ";" : "") << e.improvers[k];
      out << '\n';
    }
    return 0;
  }
  print_payoff(out, l.game, u);
  print_strategies(out, l.game);
  for (const auto& e : table) {
    out << cell_text(gf, e.cell) << ": " << gf.outcome_labels[e.outcome];
    if (!e.improvers.empty()) out << "^" << players_text(e.improvers);
    out << '\n';
  }
  out << "cells: " << table.size() << ", improvable: " << improvable << '\n';
  return 0;
}

inline int cmd_pure_ne(const RunConfig& c, std::ostream& out, bool assertion) {
  const Loaded l = load_game(c.game);
  const PayoffFunction u = load_payoff(l, c.payoff);
  require_compatible(l.game, u);
  const GameForm gf = build_game_form(l.game);
  const auto ne = find_pure_ne(gf, u);
  print_payoff(out, l.game, u);
  const StrategySpace space(l.game);
  out << "pure NE: " << ne.size() << '\n';
  for (std::size_t cell : ne) {
    out << "NE " << cell_text(gf, cell) << " -> " << gf.outcome_labels[gf[cell]] << ':';
    const auto coords = gf.coordinates(cell);
    for (Player i = 1; i <= gf.num_players(); ++i) {
      out << " [" << strategy_text(l.game, space.of(i)[coords[i - 1]]) << ']';
    }
    out << '\n';
  }
  if (!assertion) return 0;
  out << (ne.empty() ? "assertion holds: no pure NE\n" : "assertion failed: a pure NE exists\n");
  return ne.empty() ? 0 : 1;
}

inline int cmd_dominated(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const PayoffFunction u = load_payoff(l, c.payoff);
  require_compatible(l.game, u);
  const GameForm gf = build_game_form(l.game);
  if (c.format == "csv") out << "player,dominated,dominating\n";
  for (Player i = 1; i <= gf.num_players(); ++i) {
    if (c.player != 0 && c.player != i) continue;
    for (const auto& [a, b] : dominated_strategies(gf, u, i)) {
      if (c.format == "csv") {
        out << i << ',' << a + 1 << ',' << b + 1 << '\n';
      } else {
        out << "player " << i << ": strategy #" << a + 1 << " is dominated by #" << b + 1 << '\n';
      }
    }
  }
  return 0;
}

inline int cmd_tight(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const GameForm gf = build_game_form(l.game);
  const TightnessResult r = is_tight(gf);
  out << "tight: " << (r.tight ? "true" : "false") << '\n';
  if (r.witness) {
    const auto [K, B] = *r.witness;
    out << "witness: K=" << coalition_text(K, gf.num_players())
        << " B=" << block_text(B, gf.outcome_labels) << '\n';
  }
  return 0;
}

inline int cmd_nash_solvable(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const GameForm gf = build_game_form(l.game);
  const auto r = is_nash_solvable_ordinal(gf, c.weak ? OrderKind::kWeak : OrderKind::kStrict,
                                          c.budget);
  out << "orders: " << (c.weak ? "weak" : "strict") << '\n';
  out << "nash-solvable: " << (r.solvable ? "true" : "false") << '\n';
  out << "orderings checked: " << r.orderings_checked << '\n';
  if (r.witness) {
    out << "NE-free ranks (larger is better):\n";
    for (Player i = 1; i <= gf.num_players(); ++i) {
      out << "u" << i << ":";
      for (OutcomeIndex o = 0; o < gf.num_outcomes; ++o) {
        out << ' ' << gf.outcome_labels[o] << '=' << (*r.witness)(i, o);
      }
      out << '\n';
    }
  }
  return 0;
}

inline int cmd_equiv2(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const GameForm gf = build_game_form(l.game);
  const TwoPersonReport r = two_person_equivalence_check(gf);
  auto b = [](bool x) { return x ? "true" : "false"; };
  out << "nash-solvable: " << b(r.nash_solvable) << '\n';
  out << "pm1-solvable: " << b(r.pm1_solvable) << '\n';
  out << "tight: " << b(r.tight) << '\n';
  out << "all equal: " << b(r.all_equal()) << '\n';
  return 0;
}

inline int cmd_effectivity(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const GameForm gf = build_game_form(l.game);
  const EffectivityFunction E = effectivity_function(gf);
  const int n = gf.num_players();
  if (c.format == "csv") {
    out << "coalition,block,effective\n";
    for (Coalition K = 0; K <= E.all_players(); ++K) {
      for (Block B = 0; B <= E.all_outcomes(); ++B) {
        out << '"' << coalition_text(K, n) << "\",\"" << block_text(B, gf.outcome_labels)
            << "\"," << (E(K, B) ? 1 : 0) << '\n';
      }
    }
    return 0;
  }
  // Minimal effective blocks per coalition.
  for (Coalition K = 0; K <= E.all_players(); ++K) {
    out << coalition_text(K, n) << ':';
    for (Block B = 0; B <= E.all_outcomes(); ++B) {
      if (!E(K, B)) continue;
      bool minimal = true;
      for (Block sub = (B - 1) & B; sub != B && minimal; sub = (sub - 1) & B) {
        if (E(K, sub)) minimal = false;
        if (sub == 0) break;
      }
      if (minimal) out << ' ' << block_text(B, gf.outcome_labels);
    }
    out << '\n';
  }
  return 0;
}

inline int cmd_mixed(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const Evaluation eval = parse_evaluation(c.eval);
  const MixedProfile m = load_profile(l.game, c);
  const OutcomeDistribution d = evaluate(l.game, m, eval);
  out << "evaluation: " << to_string(eval) << '\n';
  out << "profile: " << profile_text(l.game, m) << '\n';
  out << "P:";
  for (const auto& p : d.prob) out << ' ' << to_string(p);
  out << '\n';
  for (OutcomeIndex o = 0; o < l.game.num_outcomes(); ++o) {
    out << "P(" << l.game.outcome_label(o) << ") = " << format_exact(d.prob[o]) << '\n';
  }
  out << "total: " << to_string(d.total()) << '\n';
  if (!c.payoff.empty() || l.payoff) {
    const PayoffFunction u = load_payoff(l, c.payoff);
    require_compatible(l.game, u);
    for (Player i = 1; i <= l.game.num_players(); ++i) {
      out << "phi" << i << " = " << format_exact(expected_payoff(d, u, i)) << '\n';
    }
  }
  return 0;
}

inline int cmd_gradient_check(const RunConfig& c, std::ostream& out) {
  SplitMix64 rng(c.seed);
  const double h = c.fd_step;
  double worst = 0;
  for (std::size_t k = 0; k < c.points; ++k) {
    // Interior points, kept h away from the boundary.
    std::array<double, 4> x;
    for (double& xi : x) xi = 0.01 + 0.98 * rng.uniform();
    const auto exact = apriori_gradient_main_example(x[0], x[1], x[2], x[3]);
    for (int param = 0; param < 4; ++param) {
      auto lo = x, hi = x;
      lo[param] -= h;
      hi[param] += h;
      const auto pl = closed_form_main_example(Evaluation::kApriori, lo[0], lo[1], lo[2], lo[3]);
      const auto ph = closed_form_main_example(Evaluation::kApriori, hi[0], hi[1], hi[2], hi[3]);
      for (int o = 0; o < 4; ++o) {
        const double fd = (ph[o] - pl[o]) / (2 * h);
        worst = std::max(worst, std::abs(fd - exact[param][o]));
      }
    }
  }
  const bool ok = worst <= c.tolerance;
  out << "seed: " << c.seed << '\n';
  out << "points: " << c.points << ", partials per point: 16\n";
  out << "finite-difference step: " << format_decimal(h, 3) << '\n';
  out << "max abs error: " << format_decimal(worst, 3) << " (tolerance " << format_decimal(c.tolerance, 3)
      << ")\n";
  out << "gradient check: " << (ok ? "pass" : "fail") << '\n';
  return ok ? 0 : 1;
}

inline int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const Evaluation eval = parse_evaluation(c.eval);
  const MixedProfile m = load_profile(l.game, c);
  const OutcomeDistribution exact = evaluate(l.game, m, eval);
  const MonteCarloResult r =
      monte_carlo(l.game, m, eval, c.trials, c.seed, c.max_steps, thread_count(c));
  out << "evaluation: " << to_string(eval) << '\n';
  out << "profile: " << profile_text(l.game, m) << '\n';
  out << "seed: " << c.seed << ", trials: " << c.trials << ", max steps: " << c.max_steps << '\n';
  double worst = 0;
  if (c.format == "csv") out << "outcome,exact,count,frequency,std_error\n";
  for (OutcomeIndex o = 0; o < l.game.num_outcomes(); ++o) {
    const double p = to_double(exact.prob[o]);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(c.trials));
    const double dev = std::abs(r.frequency[o] - p);
    if (se > 0) worst = std::max(worst, dev / se);
    if (c.format == "csv") {
      out << l.game.outcome_label(o) << ',' << to_string(exact.prob[o]) << ',' << r.counts[o]
          << ',' << format_decimal(r.frequency[o]) << ',' << format_decimal(r.std_error[o]) << '\n';
    } else {
      out << l.game.outcome_label(o) << ": exact " << format_exact(exact.prob[o]) << ", observed "
          << r.counts[o] << " (" << format_decimal(r.frequency[o]) << ")\n";
    }
  }
  if (c.format != "csv") {
    out << "truncated walks: " << r.truncated << '\n';
    out << "max deviation: " << format_decimal(worst, 3) << " standard errors\n";
  }
  return 0;
}

inline const PayoffConstraintSet* main_precheck(const GameStructure& g, Evaluation eval,
                                                PayoffConstraintSet& storage) {
  if (!(g == main_example())) return nullptr;
  storage = eval == Evaluation::kApriori ? main_apriori_conditions(g)
                                         : main_order_conditions(g, false);
  return &storage;
}

inline int cmd_refute(const RunConfig& c, std::ostream& out) {
  const Loaded l = load_game(c.game);
  const PayoffFunction u = load_payoff(l, c.payoff);
  const Evaluation eval = parse_evaluation(c.eval);
  RefuteOptions options;
  options.step = load_step(c.step);
  options.search.step = c.deviation_step.empty() ? options.step : load_step(c.deviation_step);
  options.search.vertex_only = c.vertex_only;
  options.threads = thread_count(c);
  options.collect_certificates = !c.emit_certificates.empty();
  PayoffConstraintSet storage;
  const PayoffConstraintSet* precheck = c.no_precheck ? nullptr : main_precheck(l.game, eval, storage);

  out << "evaluation: " << to_string(eval) << '\n';
  out << "grid step: " << format_exact(options.step) << '\n';
  out << "deviation grid step: " << format_exact(options.search.step)
      << (options.search.vertex_only ? " (vertex deviations only)" : "") << '\n';
  print_payoff(out, l.game, u);
  out << "payoff precheck: " << (precheck ? "passed" : "not applied") << '\n';
  const RefuteReport r = refute_mixed_ne_grid(l.game, u, eval, options, precheck);
  if (options.collect_certificates) {
    std::ostringstream csv;
    csv << "point,deviator,deviation,gain\n";
    for (const auto& row : r.certificate_rows) csv << row << '\n';
    write_file(c.emit_certificates, csv.str());
  }
  out << "points checked: " << r.points << '\n';
  out << "points refuted: " << r.refuted << '\n';
  for (std::size_t i = 0; i < r.refuted_by.size(); ++i) {
    out << "  by player " << i + 1 << ": " << r.refuted_by[i] << '\n';
  }
  if (r.refuted > 0) {
    out << "min gain: " << format_exact(r.min_gain) << '\n';
    out << "max gain: " << format_exact(r.max_gain) << '\n';
  }
  if (r.all_refuted()) {
    out << "result: no NE on the checked grid\n";
    out << "note: this is a finite check; nonexistence on the whole strategy space is a theorem, "
           "not a consequence of this run\n";
    return 0;
  }
  out << "result: grid point without a strictly improving deviation\n";
  out << "point #" << *r.first_unrefuted << ": " << profile_text(l.game, *r.counterexample) << '\n';
  return 1;
}

inline int cmd_stationarity(const RunConfig& c, std::ostream& out) {
  const GameStructure g = main_example();
  Loaded l{g, main_canonical_payoff(g), std::nullopt};
  if (!c.game.empty() && c.game != "main") l = load_game(c.game);
  if (!(l.game == g)) throw Error("stationarity is defined for the main example only");
  const PayoffFunction u = load_payoff(l, c.payoff);
  const ConstraintCheck check = check_constraints(u, main_apriori_conditions(g));
  if (!check.satisfied) throw Error("payoff violates condition " + check.label + ": " + check.detail);
  const Rational step = load_step(c.step);
  print_payoff(out, g, u);
  out << "grid step: " << format_exact(step) << '\n';
  const auto survivors = apriori_stationarity_scan(u, step, thread_count(c));
  const Evaluator eval(g, Evaluation::kApriori);
  DeviationSearch search;
  search.step = c.deviation_step.empty() ? step : load_step(c.deviation_step);
  std::size_t uncertified = 0;
  out << "survivors: " << survivors.size() << '\n';
  for (const MainParams& p : survivors) {
    const auto cert = find_deviation(g, u, main_example_profile(g, p), eval, search);
    out << params_text(p) << ": ";
    if (cert) {
      out << "player " << cert->deviator << " -> " << deviation_text(g, cert->deviation)
          << ", gain " << to_string(cert->gain) << '\n';
    } else {
      out << "no certificate\n";
      ++uncertified;
    }
  }
  out << "survivors without a certificate: " << uncertified << '\n';
  return uncertified == 0 ? 0 : 1;
}

inline int cmd_claims(const RunConfig& c, std::ostream& out) {
  const GameStructure g = main_example();
  Loaded l{g, main_canonical_payoff(g), std::nullopt};
  const PayoffFunction u = load_payoff(l, c.payoff);
  const ConstraintCheck check = check_constraints(u, main_apriori_conditions(g));
  if (!check.satisfied) throw Error("payoff violates condition " + check.label + ": " + check.detail);
  ClaimsOptions options;
  options.step = load_step(c.step);
  options.random_samples = c.samples;
  options.seed = c.seed;
  options.threads = thread_count(c);
  print_payoff(out, g, u);
  out << "seed: " << c.seed << ", grid step: " << format_exact(options.step)
      << ", random samples: " << c.samples << '\n';
  const ClaimsReport r = verify_proof_claims(u, options);
  if (c.format == "csv") {
    out << "claim,premise_samples,tested,violations\n";
    for (const auto& x : r.claims) {
      out << x.name << ',' << x.premise_samples << ',' << x.tested << ',' << x.violations << '\n';
    }
  } else {
    for (const auto& x : r.claims) {
      out << x.name << " [" << x.statement << "]: premise " << x.premise_samples << ", tested "
          << x.tested << ", violations " << x.violations << '\n';
      if (x.first_violation) out << "  first violation at " << params_text(*x.first_violation) << '\n';
    }
  }
  const bool ok = r.ok(c.min_samples);
  out << "claims: " << (ok ? "no violations" : "FAILED") << " (empirical check at sampled points)\n";
  return ok ? 0 : 1;
}

inline int cmd_catalog(const RunConfig& c, std::ostream& out) {
  if (c.name.empty()) {
    for (const auto& n : catalog_names()) out << n << '\n';
    return 0;
  }
  const CatalogEntry e = catalog(c.name);
  out << "name: " << e.name << '\n' << "note: " << e.note << '\n';
  out << "players: " << e.game.num_players() << ", positions: " << e.game.num_positions()
      << ", edges: " << e.game.edges().size() << '\n';
  if (e.payoff) print_payoff(out, e.game, *e.payoff);
  if (e.profile) {
    out << "distinguished profile:";
    for (std::size_t v : e.game.non_terminals()) {
      out << ' ' << e.game.id(v) << "->" << e.game.id(e.profile->next[v]);
    }
    out << '\n';
  }
  if (!c.emit.empty()) {
    write_file(c.emit, render_game(e.game, e.payoff));
    out << "written: " << c.emit << '\n';
  } else {
    out << render_game(e.game, e.payoff);
  }
  return 0;
}

inline int cmd_glue(const RunConfig& c, std::ostream& out) {
  if (c.inputs.size() != 2) throw Error("glue expects two games");
  GameStructure a = load_game(c.inputs[0]).game;
  GameStructure b = load_game(c.inputs[1]).game;
  if (c.suffix) {
    a = with_suffix(a, "'");
    b = with_suffix(b, "''");
  }
  const GameStructure g = glue(a, b);
  out << "players: " << g.num_players() << ", positions: " << g.num_positions()
      << ", terminals: " << g.terminals().size() << '\n';
  if (!c.out.empty()) {
    write_file(c.out, render_game(g));
    out << "written: " << c.out << '\n';
  } else {
    out << render_game(g);
  }
  return 0;
}

inline int cmd_verify_prop4(const RunConfig& c, std::ostream& out) {
  const Loaded first = load_game(c.first);
  const Loaded second = load_game(c.second);
  const PayoffFunction u_second = load_payoff(second, c.payoff);
  require_compatible(second.game, u_second);
  PrimePreference mode;
  if (c.prime_mode == "cycle-best") {
    mode = PrimePreference::kCycleBest;
  } else if (c.prime_mode == "condition-c") {
    mode = PrimePreference::kConditionC;
  } else {
    throw Error("unknown --prime-mode '" + c.prime_mode + "' (expected cycle-best|condition-c)");
  }
  const GameStructure a = with_suffix(first.game, "'");
  const GameStructure b = with_suffix(second.game, "''");
  const GameStructure glued = glue(a, b);
  const PayoffFunction u_prime = prime_preferences(b, a.num_players(), mode, c.seed);
  const Prop4Report r = verify_prop4(glued, b, u_second, u_prime);
  out << "first: " << c.first << ", second: " << c.second << '\n';
  out << "seed: " << c.seed << ", first-game preferences: " << c.prime_mode << '\n';
  out << "glued: players " << glued.num_players() << ", positions " << glued.num_positions()
      << ", terminals " << glued.terminals().size() << '\n';
  print_payoff(out, glued, [&] {
    PayoffFunction u(glued.num_players(), glued.num_outcomes());
    for (OutcomeIndex o = 0; o < glued.num_outcomes(); ++o) {
      for (Player i = 1; i <= a.num_players(); ++i) u.set(i, o, u_prime(i, o));
      for (Player i = 1; i <= b.num_players(); ++i) u.set(a.num_players() + i, o, u_second(i, o));
    }
    return u;
  }());
  out << "profiles scanned: " << r.profiles << '\n';
  out << "cyclic NE: " << r.cyclic_ne << '\n';
  out << "terminal NE: " << r.terminal_ne << '\n';
  out << "second game NE-free: " << (r.second_ne_free ? "true" : "false") << '\n';
  if (!r.second_ne_free) out << "terminal NE absence: not asserted\n";
  out << "result: " << (r.holds() ? "holds" : "FAILED") << '\n';
  return r.holds() ? 0 : 1;
}

inline int cmd_gen(const RunConfig& c, std::ostream& out) {
  const GameStructure g =
      random_structure(c.seed, c.players, c.positions, c.terminals, c.max_outdegree);
  out << "# seed " << c.seed << '\n';
  if (!c.out.empty()) {
    write_file(c.out, render_game(g));
    out << "written: " << c.out << '\n';
  } else {
    out << render_game(g);
  }
  return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Deterministic graphical multi-person games"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", c.threads, "Worker threads (default: DGMP_THREADS or all cores)");
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--seed", c.seed, "Random seed");

  auto game = [&](CLI::App* s) {
    s->add_option("--game", c.game, "Built-in name or game file");
    s->add_option("file", c.game, "Same as --game");
  };
  auto payoff = [&](CLI::App* s) {
    s->add_option("--payoff", c.payoff, "Payoff file or 'canonical'");
  };
  auto eval = [&](CLI::App* s) {
    s->add_option("--eval", c.eval, "markovian|apriori")->check(CLI::IsMember({"markovian", "apriori", "a-priori"}));
  };
  auto profile = [&](CLI::App* s) {
    s->add_option("--profile", c.profile, "Profile file");
    s->add_option("--params", c.params, "alpha,beta,gamma,delta for the main example");
  };

  std::vector<std::pair<std::string, CLI::App*>> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    subs.emplace_back(name, s);
    return s;
  };

  game(sub("validate", "Check structural invariants"));
  game(sub("normal-form", "Print the game form"));
  {
    auto* s = sub("improvement-table", "Improving players for every cell");
    game(s);
    payoff(s);
  }
  {
    auto* s = sub("pure-ne", "List pure stationary NE");
    game(s);
    payoff(s);
  }
  {
    auto* s = sub("assert-no-pure-ne", "Exit 1 if a pure stationary NE exists");
    game(s);
    payoff(s);
  }
  {
    auto* s = sub("dominated", "Dominated pure strategies");
    game(s);
    payoff(s);
    s->add_option("--player", c.player, "Only this player");
  }
  game(sub("tight", "Tightness of the game form"));
  {
    auto* s = sub("nash-solvable", "Ordinal Nash-solvability by enumeration");
    game(s);
    s->add_flag("--weak,--weak-orders", c.weak, "Enumerate weak orders instead of strict ones");
    s->add_option("--budget", c.budget, "Maximum number of order profiles");
  }
  game(sub("equiv2", "Nash-, ±1-solvability and tightness of a two-person form"));
  game(sub("effectivity", "Effectivity function"));
  {
    auto* s = sub("mixed", "Exact outcome probabilities of a mixed profile");
    game(s);
    payoff(s);
    eval(s);
    profile(s);
  }
  {
    auto* s = sub("gradient-check", "Finite-difference check of the a priori gradient");
    s->add_option("--points", c.points, "Random interior points");
    s->add_option("--fd-step", c.fd_step, "Central difference step");
    s->add_option("--tolerance", c.tolerance, "Maximum absolute error");
  }
  {
    auto* s = sub("simulate", "Monte Carlo estimate of outcome probabilities");
    game(s);
    eval(s);
    profile(s);
    s->add_option("--trials", c.trials, "Number of plays")->check(CLI::PositiveNumber);
    s->add_option("--max-steps", c.max_steps, "Markovian walk cutoff");
  }
  {
    auto* s = sub("refute", "Refute mixed NE on a rational grid");
    game(s);
    payoff(s);
    eval(s);
    s->add_option("--step", c.step, "Grid step 1/N");
    s->add_option("--deviation-step", c.deviation_step, "Grid step for deviations");
    s->add_flag("--vertex-only", c.vertex_only, "Only deterministic deviations");
    s->add_flag("--no-precheck", c.no_precheck, "Skip the payoff condition check");
    s->add_option("--emit-certificates", c.emit_certificates, "Write certificates as CSV");
  }
  {
    auto* s = sub("stationarity", "A priori first-order scan of the main example");
    game(s);
    payoff(s);
    s->add_option("--step", c.step, "Grid step 1/N");
    s->add_option("--deviation-step", c.deviation_step, "Grid step for deviations");
  }
  {
    auto* s = sub("claims", "Sample the implications of the a priori argument");
    payoff(s);
    s->add_option("--step", c.step, "Grid step 1/N (all grid points are included)");
    s->add_option("--samples", c.samples, "Additional random points");
    s->add_option("--min-samples", c.min_samples, "Required premise samples per claim");
  }
  {
    auto* s = sub("catalog", "Built-in games");
    s->add_option("name", c.name, "Entry name");
    s->add_option("--emit", c.emit, "Write the entry as a game file");
  }
  {
    auto* s = sub("glue", "Glue the terminals of one game to the start of another");
    s->add_option("games", c.inputs, "First and second game")->expected(2);
    s->add_option("--out", c.out, "Output file");
    s->add_flag("--suffix", c.suffix, "Rename positions with ' and '' first");
  }
  {
    auto* s = sub("verify-prop4", "Cyclic but no terminal NE in a glued game");
    s->add_option("--first", c.first, "Game whose terminals are glued");
    s->add_option("--second", c.second, "NE-free game");
    payoff(s);
    s->add_option("--prime-mode", c.prime_mode, "cycle-best|condition-c");
  }
  {
    auto* s = sub("gen", "Random connected game structure");
    s->add_option("--players", c.players, "Players");
    s->add_option("--positions", c.positions, "Positions");
    s->add_option("--terminals", c.terminals, "Terminals");
    s->add_option("--max-outdegree", c.max_outdegree, "Maximum out-degree");
    s->add_option("--out", c.out, "Output file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  for (const auto& [name, s] : subs) {
    if (s->parsed()) c.command = name;
  }

  std::ostringstream buffer;
  int code = 0;
  try {
    buffer << "dgmp " << kVersion << '\n' << "command: " << c.command << '\n';
    if (!c.game.empty()) buffer << "game: " << c.game << '\n';
    if (!c.payoff.empty()) buffer << "payoff: " << c.payoff << '\n';
    using namespace detail;
    const std::string& k = c.command;
    if (k == "validate") code = cmd_validate(c, buffer);
    else if (k == "normal-form") code = cmd_normal_form(c, buffer);
    else if (k == "improvement-table") code = cmd_improvement_table(c, buffer);
    else if (k == "pure-ne") code = cmd_pure_ne(c, buffer, false);
    else if (k == "assert-no-pure-ne") code = cmd_pure_ne(c, buffer, true);
    else if (k == "dominated") code = cmd_dominated(c, buffer);
    else if (k == "tight") code = cmd_tight(c, buffer);
    else if (k == "nash-solvable") code = cmd_nash_solvable(c, buffer);
    else if (k == "equiv2") code = cmd_equiv2(c, buffer);
    else if (k == "effectivity") code = cmd_effectivity(c, buffer);
    else if (k == "mixed") code = cmd_mixed(c, buffer);
    else if (k == "gradient-check") code = cmd_gradient_check(c, buffer);
    else if (k == "simulate") code = cmd_simulate(c, buffer);
    else if (k == "refute") code = cmd_refute(c, buffer);
    else if (k == "stationarity") code = cmd_stationarity(c, buffer);
    else if (k == "claims") code = cmd_claims(c, buffer);
    else if (k == "catalog") code = cmd_catalog(c, buffer);
    else if (k == "glue") code = cmd_glue(c, buffer);
    else if (k == "verify-prop4") code = cmd_verify_prop4(c, buffer);
    else if (k == "gen") code = cmd_gen(c, buffer);
  } catch (const std::exception& e) {
    out << buffer.str();
    err << "error: " << e.what() << '\n';
    return 2;
  }
  out << buffer.str();
  return code;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv = {"dgmp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace dgmp::cli
