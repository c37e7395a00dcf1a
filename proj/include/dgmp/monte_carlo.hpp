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

// Sampling estimates of outcome probabilities, used to cross-check the exact
// evaluators.
//
// Trial t of a run with seed s draws from its own SplitMix64 stream seeded
// with mix(s + (t + 1) * 0x9E3779B97F4A7C15), so results do not depend on
// how trials are split across threads.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "dgmp/mixed.hpp"
#include "dgmp/parallel.hpp"

namespace dgmp {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return SplitMix64::mix(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

struct MonteCarloResult {
  std::vector<std::uint64_t> counts;
  std::vector<double> frequency;
  std::vector<double> std_error;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Markovian walks classified as c only because they hit max_steps.
  std::uint64_t truncated = 0;
};

inline constexpr std::uint64_t kDefaultMaxSteps = 10000;

inline MonteCarloResult monte_carlo(const GameStructure& g, const MixedProfile& m, Evaluation eval,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::uint64_t max_steps = kDefaultMaxSteps,
                                    unsigned threads = 1) {
  require_valid(g);
  require_valid(g, m);
  if (trials < 1) throw Error("trials must be at least 1");
  if (max_steps < g.num_positions()) throw Error("max_steps must be at least the number of positions");

  // Cumulative move probabilities as doubles, with zero-probability moves
  // marked so they are never drawn.
  std::vector<std::vector<double>> cumulative(g.num_positions());
  std::vector<std::vector<bool>> positive(g.num_positions());
  for (std::size_t v : g.non_terminals()) {
    double acc = 0;
    for (std::size_t slot = 0; slot < g.out_degree(v); ++slot) {
      acc += to_double(m.prob(v, slot));
      cumulative[v].push_back(acc);
      positive[v].push_back(sgn(m.prob(v, slot)) > 0);
    }
  }
  auto draw = [&](std::size_t v, SplitMix64& rng) {
    const double x = rng.uniform();
    std::size_t chosen = 0;
    for (std::size_t slot = 0; slot < cumulative[v].size(); ++slot) {
      if (!positive[v][slot]) continue;
      chosen = slot;
      if (x < cumulative[v][slot]) break;
    }
    return g.successors(v)[chosen];
  };

  const std::size_t q = g.num_outcomes();
  const OutcomeIndex c = g.cycle_outcome();
  std::vector<std::uint64_t> outcome(trials);
  std::vector<std::uint8_t> cut(trials, 0);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    SplitMix64 rng(trial_seed(seed, t));
    if (eval == Evaluation::kApriori) {
      std::vector<std::size_t> next(g.num_positions(), kNoPosition);
      for (std::size_t v : g.non_terminals()) next[v] = draw(v, rng);
      std::vector<std::uint32_t> stamp(g.num_positions(), 0);
      outcome[t] = resolve_outcome(g, next, stamp, 1);
      return;
    }
    std::size_t v = g.initial();
    std::uint64_t steps = 0;
    while (!g.is_terminal(v)) {
      if (steps == max_steps) {
        outcome[t] = c;
        cut[t] = 1;
        return;
      }
      v = draw(v, rng);
      ++steps;
    }
    outcome[t] = g.outcome_of_terminal(v);
  }, 4096);

  MonteCarloResult r;
  r.counts.assign(q, 0);
  r.trials = trials;
  r.seed = seed;
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++r.counts[outcome[t]];
    r.truncated += cut[t];
  }
  for (std::size_t o = 0; o < q; ++o) {
    const double f = static_cast<double>(r.counts[o]) / static_cast<double>(trials);
    r.frequency.push_back(f);
    r.std_error.push_back(std::sqrt(f * (1 - f) / static_cast<double>(trials)));
  }
  return r;
}

}  // namespace dgmp
