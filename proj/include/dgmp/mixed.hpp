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

// Independently mixed strategies and exact outcome probabilities under the
// Markovian evaluation (moves redrawn at every visit) and the a priori
// evaluation (one draw per position before the play starts).

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dgmp/pure.hpp"

namespace dgmp {

enum class Evaluation { kMarkovian, kApriori };

inline std::string_view to_string(Evaluation e) {
  return e == Evaluation::kMarkovian ? "markovian" : "apriori";
}

inline Evaluation parse_evaluation(std::string_view text) {
  if (text == "markovian") return Evaluation::kMarkovian;
  if (text == "apriori" || text == "a-priori") return Evaluation::kApriori;
  throw Error("unknown evaluation '" + std::string(text) + "' (expected markovian|apriori)");
}

// One distribution per position over its out-edges, aligned with
// GameStructure::successors. Terminals carry an empty vector.
class MixedProfile {
 public:
  MixedProfile() = default;
  explicit MixedProfile(std::vector<std::vector<Rational>> dist) : dist_(std::move(dist)) {}

  static MixedProfile from_pure(const GameStructure& g, const PureProfile& s) {
    std::vector<std::vector<Rational>> dist(g.num_positions());
    for (std::size_t v : g.non_terminals()) {
      dist[v].assign(g.out_degree(v), Rational(0));
      const std::size_t slot = g.successor_slot(v, s.next.at(v));
      if (slot == kNoPosition) throw Error("pure profile uses a non-edge at " + g.id(v));
      dist[v][slot] = 1;
    }
    return MixedProfile(std::move(dist));
  }

  static MixedProfile uniform(const GameStructure& g) {
    std::vector<std::vector<Rational>> dist(g.num_positions());
    for (std::size_t v : g.non_terminals()) {
      const long d = static_cast<long>(g.out_degree(v));
      dist[v].assign(g.out_degree(v), make_rational(1, d));
    }
    return MixedProfile(std::move(dist));
  }

  const std::vector<Rational>& at(std::size_t v) const { return dist_.at(v); }
  const Rational& prob(std::size_t v, std::size_t slot) const { return dist_.at(v).at(slot); }
  void set(std::size_t v, std::vector<Rational> d) { dist_.at(v) = std::move(d); }
  std::size_t size() const { return dist_.size(); }

  // Empty string when valid, otherwise the first problem found.
  std::string check(const GameStructure& g) const {
    if (dist_.size() != g.num_positions()) return "profile size does not match the game";
    for (std::size_t v : g.non_terminals()) {
      const auto& d = dist_[v];
      if (d.size() != g.out_degree(v)) return "wrong number of moves at " + g.id(v);
      Rational sum = 0;
      for (const auto& p : d) {
        if (sgn(p) < 0 || p > 1) return "probability outside [0,1] at " + g.id(v);
        sum += p;
      }
      if (sum != 1) return "probabilities at " + g.id(v) + " sum to " + to_string(sum);
    }
    return {};
  }

  bool is_pure() const {
    for (const auto& d : dist_) {
      for (const auto& p : d) {
        if (sgn(p) != 0 && p != 1) return false;
      }
    }
    return true;
  }

  friend bool operator==(const MixedProfile&, const MixedProfile&) = default;

 private:
  std::vector<std::vector<Rational>> dist_;
};

inline void require_valid(const GameStructure& g, const MixedProfile& m) {
  if (auto problem = m.check(g); !problem.empty()) throw Error("invalid mixed profile: " + problem);
}

struct OutcomeDistribution {
  std::vector<Rational> prob;

  Rational total() const {
    Rational sum = 0;
    for (const auto& p : prob) sum += p;
    return sum;
  }
  // Sums to exactly one with every entry in [0,1].
  bool is_valid() const {
    for (const auto& p : prob) {
      if (sgn(p) < 0 || p > 1) return false;
    }
    return total() == 1;
  }
  friend bool operator==(const OutcomeDistribution&, const OutcomeDistribution&) = default;
};

inline Rational expected_payoff(const OutcomeDistribution& dist, const PayoffFunction& u,
                                Player player) {
  if (dist.prob.size() != u.num_outcomes()) throw Error("distribution/payoff size mismatch");
  Rational sum = 0;
  for (OutcomeIndex o = 0; o < dist.prob.size(); ++o) sum += dist.prob[o] * u(player, o);
  return sum;
}

inline constexpr double kMaxAprioriProfiles = 1e7;

// Sums the weights of all pure profiles, grouped by outcome. Outcomes of the
// pure profiles are resolved once at construction.
class AprioriEvaluator {
 public:
  explicit AprioriEvaluator(const GameStructure& g) : game_(&g) {
    require_valid(g);
    double total = 1;
    for (std::size_t v : g.non_terminals()) total *= static_cast<double>(g.out_degree(v));
    if (total > kMaxAprioriProfiles) {
      throw BudgetError("a priori enumeration over budget", total, kMaxAprioriProfiles);
    }
    const auto& nts = g.non_terminals();
    outcomes_.resize(static_cast<std::size_t>(total));
    std::vector<std::size_t> digit(nts.size(), 0);
    std::vector<std::size_t> next(g.num_positions(), kNoPosition);
    for (std::size_t k = 0; k < nts.size(); ++k) next[nts[k]] = g.successors(nts[k])[0];
    std::vector<std::uint32_t> stamp(g.num_positions(), 0);
    for (std::size_t index = 0; index < outcomes_.size(); ++index) {
      outcomes_[index] = static_cast<std::uint32_t>(
          resolve_outcome(g, next, stamp, static_cast<std::uint32_t>(index + 1)));
      for (std::size_t k = nts.size(); k > 0; --k) {
        const std::size_t v = nts[k - 1];
        digit[k - 1] = (digit[k - 1] + 1) % g.out_degree(v);
        next[v] = g.successors(v)[digit[k - 1]];
        if (digit[k - 1] != 0) break;
      }
    }
  }

  OutcomeDistribution operator()(const MixedProfile& m) const {
    const GameStructure& g = *game_;
    require_valid(g, m);
    OutcomeDistribution out{std::vector<Rational>(g.num_outcomes(), Rational(0))};
    const auto& nts = g.non_terminals();
    std::vector<Rational> weight(nts.size() + 1);
    weight[0] = 1;
    accumulate(m, 0, 0, weight, out);
    return out;
  }

 private:
  void accumulate(const MixedProfile& m, std::size_t depth, std::size_t index,
                  std::vector<Rational>& weight, OutcomeDistribution& out) const {
    const auto& nts = game_->non_terminals();
    if (depth == nts.size()) {
      out.prob[outcomes_[index]] += weight[depth];
      return;
    }
    const std::size_t v = nts[depth];
    const std::size_t d = game_->out_degree(v);
    for (std::size_t slot = 0; slot < d; ++slot) {
      const Rational& p = m.prob(v, slot);
      if (sgn(p) == 0) continue;
      weight[depth + 1] = weight[depth] * p;
      accumulate(m, depth + 1, index * d + slot, weight, out);
    }
  }

  const GameStructure* game_;
  std::vector<std::uint32_t> outcomes_;
};

inline OutcomeDistribution outcome_probs_apriori(const GameStructure& g, const MixedProfile& m) {
  return AprioriEvaluator(g)(m);
}

// Absorption probabilities of the position-level Markov chain. Closed
// recurrent classes among non-terminals absorb into the cyclic outcome.
class MarkovianEvaluator {
 public:
  explicit MarkovianEvaluator(const GameStructure& g) : game_(&g) { require_valid(g); }

  OutcomeDistribution operator()(const MixedProfile& m) const {
    const GameStructure& g = *game_;
    require_valid(g, m);
    const std::size_t n = g.num_positions();
    const OutcomeIndex c = g.cycle_outcome();
    OutcomeDistribution out{std::vector<Rational>(g.num_outcomes(), Rational(0))};

    // Reachability from v0 along positive-probability moves.
    std::vector<bool> reach(n, false);
    std::vector<std::size_t> order{g.initial()};
    reach[g.initial()] = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t v = order[k];
      if (g.is_terminal(v)) continue;
      for (std::size_t slot = 0; slot < g.out_degree(v); ++slot) {
        const std::size_t w = g.successors(v)[slot];
        if (sgn(m.prob(v, slot)) > 0 && !reach[w]) {
          reach[w] = true;
          order.push_back(w);
        }
      }
    }

    const std::vector<int> component = strongly_connected(m, reach);
    // A component is closed when no positive move leaves it.
    std::vector<bool> open(n, false);
    for (std::size_t v : order) {
      if (g.is_terminal(v)) continue;
      for (std::size_t slot = 0; slot < g.out_degree(v); ++slot) {
        const std::size_t w = g.successors(v)[slot];
        if (sgn(m.prob(v, slot)) > 0 && (g.is_terminal(w) || component[w] != component[v])) {
          open[static_cast<std::size_t>(component[v])] = true;
        }
      }
    }
    auto closed = [&](std::size_t v) {
      return !g.is_terminal(v) && !open[static_cast<std::size_t>(component[v])];
    };
    if (closed(g.initial())) {
      out.prob[c] = 1;
      return out;
    }

    // Transient positions get unknowns; solve (I - Q) X = R.
    std::vector<std::size_t> unknown(n, kNoPosition);
    std::vector<std::size_t> transient;
    for (std::size_t v : order) {
      if (!g.is_terminal(v) && !closed(v)) {
        unknown[v] = transient.size();
        transient.push_back(v);
      }
    }
    const std::size_t k = transient.size();
    const std::size_t q = g.num_outcomes();
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(k + q, Rational(0)));
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t v = transient[r];
      a[r][r] = 1;
      for (std::size_t slot = 0; slot < g.out_degree(v); ++slot) {
        const Rational& p = m.prob(v, slot);
        if (sgn(p) == 0) continue;
        const std::size_t w = g.successors(v)[slot];
        if (g.is_terminal(w)) {
          a[r][k + g.outcome_of_terminal(w)] += p;
        } else if (closed(w)) {
          a[r][k + c] += p;
        } else {
          a[r][unknown[w]] -= p;
        }
      }
    }
    // Gauss-Jordan elimination on the augmented matrix.
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t pivot = col;
      while (pivot < k && sgn(a[pivot][col]) == 0) ++pivot;
      if (pivot == k) throw Error("internal error: singular absorption system");
      std::swap(a[pivot], a[col]);
      const Rational inv = 1 / a[col][col];
      for (std::size_t j = col; j < k + q; ++j) a[col][j] *= inv;
      for (std::size_t r = 0; r < k; ++r) {
        if (r == col || sgn(a[r][col]) == 0) continue;
        const Rational factor = a[r][col];
        for (std::size_t j = col; j < k + q; ++j) a[r][j] -= factor * a[col][j];
      }
    }
    const std::size_t row = unknown[g.initial()];
    for (OutcomeIndex o = 0; o < q; ++o) out.prob[o] = a[row][k + o];
    return out;
  }

 private:
  // Tarjan's algorithm restricted to reachable non-terminals and
  // positive-probability moves. Returns a component id per position.
  std::vector<int> strongly_connected(const MixedProfile& m, const std::vector<bool>& reach) const {
    const GameStructure& g = *game_;
    const std::size_t n = g.num_positions();
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    int counter = 0, components = 0;

    std::function<void(std::size_t)> visit = [&](std::size_t v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (std::size_t slot = 0; slot < g.out_degree(v); ++slot) {
        const std::size_t w = g.successors(v)[slot];
        if (sgn(m.prob(v, slot)) == 0 || g.is_terminal(w)) continue;
        if (index[w] < 0) {
          visit(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        while (true) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
          if (w == v) break;
        }
        ++components;
      }
    };
    for (std::size_t v = 0; v < n; ++v) {
      if (reach[v] && !g.is_terminal(v) && index[v] < 0) visit(v);
    }
    return comp;
  }

  const GameStructure* game_;
};

inline OutcomeDistribution outcome_probs_markovian(const GameStructure& g, const MixedProfile& m) {
  return MarkovianEvaluator(g)(m);
}

// Either evaluator behind one call signature.
class Evaluator {
 public:
  Evaluator(const GameStructure& g, Evaluation e) : kind_(e) {
    if (e == Evaluation::kApriori) {
      apriori_.emplace(g);
    } else {
      markovian_.emplace(g);
    }
  }
  Evaluation kind() const { return kind_; }
  OutcomeDistribution operator()(const MixedProfile& m) const {
    return kind_ == Evaluation::kApriori ? (*apriori_)(m) : (*markovian_)(m);
  }

 private:
  Evaluation kind_;
  std::optional<AprioriEvaluator> apriori_;
  std::optional<MarkovianEvaluator> markovian_;
};

inline OutcomeDistribution evaluate(const GameStructure& g, const MixedProfile& m, Evaluation e) {
  return Evaluator(g, e)(m);
}

// ---------------------------------------------------------------------------
// The three-player seven-position example, parametrised by
//   alpha = P(v0 -> v), beta = P(v -> w), gamma = P(w -> z), delta = P(z -> w).
// Outcome order is (a1, a2, a3, c).

template <typename T>
struct MainPoint {
  T alpha, beta, gamma, delta;
};

using MainParams = MainPoint<Rational>;

template <typename T>
std::array<T, 4> closed_form_main_example(Evaluation e, const T& a, const T& b, const T& g,
                                          const T& d) {
  const T one(1);
  const T p1 = a * (one - b);
  if (e == Evaluation::kApriori) {
    T p2 = (a * b + (one - a) * d) * (one - g);
    T p3 = (one - a + a * b * g) * (one - d);
    T pc = (one - a + a * b) * g * d;
    return {p1, p2, p3, pc};
  }
  const T gd = g * d;
  if (gd == one) return {p1, T(0), T(0), T(one - a + a * b)};
  T p2 = (a * b + (one - a) * d) * (one - g) / (one - gd);
  T p3 = (one - a + a * b * g) * (one - d) / (one - gd);
  return {p1, p2, p3, T(0)};
}

template <typename T>
std::array<T, 4> closed_form_main_example(Evaluation e, const MainPoint<T>& p) {
  return closed_form_main_example<T>(e, p.alpha, p.beta, p.gamma, p.delta);
}

// d P(outcome) / d parameter for the a priori closed forms;
// result[param][outcome] with params ordered (alpha, beta, gamma, delta).
template <typename T>
std::array<std::array<T, 4>, 4> apriori_gradient_main_example(const T& a, const T& b, const T& g,
                                                              const T& d) {
  const T one(1);
  std::array<std::array<T, 4>, 4> j;
  j[0] = {T(one - b), T((b - d) * (one - g)), T(-(one - b * g) * (one - d)),
          T(-(one - b) * g * d)};
  j[1] = {T(-a), T(a * (one - g)), T(a * g * (one - d)), T(a * g * d)};
  j[2] = {T(0), T(-(a * b + (one - a) * d)), T(a * b * (one - d)), T((one - a + a * b) * d)};
  j[3] = {T(0), T((one - a) * (one - g)), T(-(one - a + a * b * g)), T((one - a + a * b) * g)};
  return j;
}

// Positions and moves carrying the four parameters.
struct MainLayout {
  std::array<std::size_t, 4> position;  // v0, v, w, z
  std::array<std::size_t, 4> slot;      // slot of the parametrised move at each
};

inline MainLayout main_layout(const GameStructure& g) {
  static constexpr std::array<std::pair<const char*, const char*>, 4> kMoves = {
      {{"v0", "v"}, {"v", "w"}, {"w", "z"}, {"z", "w"}}};
  MainLayout layout{};
  for (std::size_t k = 0; k < 4; ++k) {
    const std::size_t v = g.index_of(kMoves[k].first);
    const std::size_t w = g.index_of(kMoves[k].second);
    if (g.out_degree(v) != 2 || g.successor_slot(v, w) == kNoPosition) {
      throw Error("game does not have the layout of the main example");
    }
    layout.position[k] = v;
    layout.slot[k] = g.successor_slot(v, w);
  }
  return layout;
}

inline MixedProfile main_example_profile(const GameStructure& g, const MainParams& p) {
  const MainLayout layout = main_layout(g);
  const std::array<const Rational*, 4> values = {&p.alpha, &p.beta, &p.gamma, &p.delta};
  std::vector<std::vector<Rational>> dist(g.num_positions());
  for (std::size_t k = 0; k < 4; ++k) {
    const Rational& x = *values[k];
    if (sgn(x) < 0 || x > 1) throw Error("parameter outside [0,1]");
    std::vector<Rational> d(2);
    d[layout.slot[k]] = x;
    d[1 - layout.slot[k]] = 1 - x;
    dist[layout.position[k]] = std::move(d);
  }
  return MixedProfile(std::move(dist));
}

inline MainParams main_example_parameters(const GameStructure& g, const MixedProfile& m) {
  const MainLayout layout = main_layout(g);
  return {m.prob(layout.position[0], layout.slot[0]), m.prob(layout.position[1], layout.slot[1]),
          m.prob(layout.position[2], layout.slot[2]), m.prob(layout.position[3], layout.slot[3])};
}

}  // namespace dgmp
