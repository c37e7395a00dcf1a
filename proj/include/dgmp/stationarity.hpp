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

// First-order conditions of an a priori equilibrium of the main example, and
// an empirical harness for the implications derived from them.
//
// At an equilibrium each coordinate x with partial derivative D of its
// owner's expected payoff satisfies
//   x = 0 => D <= 0,   0 < x < 1 => D = 0,   x = 1 => D >= 0.
// The claims below are checked by sampling, which corroborates but does not
// prove them.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dgmp/constructions.hpp"
#include "dgmp/refute.hpp"

namespace dgmp {

enum Condition : std::uint32_t {
  kStatAlpha = 1u << 0,  // player 1, alpha
  kStatBeta = 1u << 1,   // player 2, beta
  kStatGamma = 1u << 2,  // player 2, gamma
  kStatDelta = 1u << 3,  // player 3, delta
  kNoGainP1Zero = 1u << 4,  // player 1 gains nothing by alpha = 0
  kNoGainP2One = 1u << 5,   // player 2 gains nothing by (beta, gamma) = (1, 1)
  kPureVertexStable = 1u << 6,  // a pure point has no improving vertex deviation
};
inline constexpr std::uint32_t kStationary = kStatAlpha | kStatBeta | kStatGamma | kStatDelta;
inline constexpr std::uint32_t kAllConditions = kStationary | kNoGainP1Zero | kNoGainP2One |
                                                kPureVertexStable;

namespace detail {

inline bool sign_condition(const Rational& x, const Rational& derivative) {
  if (sgn(x) == 0) return sgn(derivative) <= 0;
  if (x == 1) return sgn(derivative) >= 0;
  return sgn(derivative) == 0;
}

struct MainPayoffs {
  std::array<std::array<Rational, 4>, 3> u;  // [player-1][a1, a2, a3, c]
};

inline MainPayoffs main_payoffs(const PayoffFunction& u, const GameStructure& g) {
  const auto [a1, a2, a3, c] = main_outcomes(g);
  MainPayoffs out;
  for (Player i = 1; i <= 3; ++i) out.u[i - 1] = {u(i, a1), u(i, a2), u(i, a3), u(i, c)};
  return out;
}

inline Rational phi(const MainPayoffs& u, Player i, const MainParams& p) {
  const auto probs = closed_form_main_example(Evaluation::kApriori, p);
  Rational sum = 0;
  for (int k = 0; k < 4; ++k) sum += probs[k] * u.u[i - 1][k];
  return sum;
}

// Partial derivatives of phi^1 in alpha, phi^2 in beta and gamma, phi^3 in delta.
inline std::array<Rational, 4> owner_derivatives(const MainPayoffs& u, const MainParams& p) {
  const auto j = apriori_gradient_main_example(p.alpha, p.beta, p.gamma, p.delta);
  const Player owner[4] = {1, 2, 2, 3};
  std::array<Rational, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = 0;
    for (int o = 0; o < 4; ++o) out[k] += j[k][o] * u.u[owner[k] - 1][o];
  }
  return out;
}

inline bool is_vertex(const MainParams& p) {
  for (const Rational* x : {&p.alpha, &p.beta, &p.gamma, &p.delta}) {
    if (sgn(*x) != 0 && *x != 1) return false;
  }
  return true;
}

inline std::uint32_t conditions_at(const MainPayoffs& u, const MainParams& p) {
  const auto d = owner_derivatives(u, p);
  std::uint32_t mask = 0;
  if (sign_condition(p.alpha, d[0])) mask |= kStatAlpha;
  if (sign_condition(p.beta, d[1])) mask |= kStatBeta;
  if (sign_condition(p.gamma, d[2])) mask |= kStatGamma;
  if (sign_condition(p.delta, d[3])) mask |= kStatDelta;
  const Rational one(1), zero(0);
  const Rational phi1 = phi(u, 1, p), phi2 = phi(u, 2, p);
  if (!(phi(u, 1, {zero, p.beta, p.gamma, p.delta}) > phi1)) mask |= kNoGainP1Zero;
  if (!(phi(u, 2, {p.alpha, one, one, p.delta}) > phi2)) mask |= kNoGainP2One;
  bool deviable = false;
  if (is_vertex(p)) {
    const Rational phi3 = phi(u, 3, p);
    for (int x = 0; x <= 1 && !deviable; ++x) {
      const Rational r(x);
      deviable = phi(u, 1, {r, p.beta, p.gamma, p.delta}) > phi1 ||
                 phi(u, 3, {p.alpha, p.beta, p.gamma, r}) > phi3;
      for (int y = 0; y <= 1 && !deviable; ++y) {
        deviable = phi(u, 2, {p.alpha, r, Rational(y), p.delta}) > phi2;
      }
    }
  }
  if (!deviable) mask |= kPureVertexStable;
  return mask;
}

}  // namespace detail

// Grid points satisfying all four sign conditions, in grid order
// (alpha most significant).
inline std::vector<MainParams> apriori_stationarity_scan(const PayoffFunction& u,
                                                         const Rational& step,
                                                         unsigned threads = 1) {
  const GameStructure g = main_example();
  require_compatible(g, u);
  const auto payoffs = detail::main_payoffs(u, g);
  const unsigned long n = reciprocal_steps(step);
  const std::size_t side = n + 1;
  const std::size_t count = side * side * side * side;
  std::vector<char> survives(count, 0);
  auto point = [&](std::size_t k) {
    const auto coord = [&](std::size_t digit) {
      Rational r(static_cast<long>(digit), static_cast<long>(n));
      r.canonicalize();
      return r;
    };
    return MainParams{coord(k / (side * side * side)), coord((k / (side * side)) % side),
                      coord((k / side) % side), coord(k % side)};
  };
  parallel_for(count, threads, [&](std::size_t k) {
    const MainParams p = point(k);
    const auto d = detail::owner_derivatives(payoffs, p);
    survives[k] = detail::sign_condition(p.alpha, d[0]) && detail::sign_condition(p.beta, d[1]) &&
                  detail::sign_condition(p.gamma, d[2]) && detail::sign_condition(p.delta, d[3]);
  });
  std::vector<MainParams> out;
  for (std::size_t k = 0; k < count; ++k) {
    if (survives[k]) out.push_back(point(k));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Claims harness.

struct ProofClaim {
  std::string name;
  std::string statement;
  std::uint32_t conditions;  // conditions the argument relies on
  std::function<bool(const MainParams&)> premise;
  std::function<bool(const MainParams&)> conclusion;
};

inline std::vector<ProofClaim> proof_claims() {
  using P = const MainParams&;
  const Rational half = make_rational(1, 2);
  auto zero = [](const Rational& x) { return sgn(x) == 0; };
  auto pos = [](const Rational& x) { return sgn(x) > 0; };
  auto always = [](P) { return true; };
  return {
      {"Observation 1", "(1-b)gd = 0 and b >= d  =>  (b = 1 and (1-d)(1-g) = 0) or a = 1",
       kStatAlpha,
       [=](P p) { return zero((1 - p.beta) * p.gamma * p.delta) && p.beta >= p.delta; },
       [=](P p) {
         return (p.beta == 1 && zero((1 - p.delta) * (1 - p.gamma))) || p.alpha == 1;
       }},
      {"Observation 2A", "a > 0 and g(1-d) = 0  =>  b = 0", kStatBeta,
       [=](P p) { return pos(p.alpha) && zero(p.gamma * (1 - p.delta)); },
       [=](P p) { return zero(p.beta); }},
      {"Observation 2B", "ab(1-d) = 0  =>  ab + (1-a)d = 0 or g = 0", kStatGamma,
       [=](P p) { return zero(p.alpha * p.beta * (1 - p.delta)); },
       [=](P p) {
         return zero(p.alpha * p.beta + (1 - p.alpha) * p.delta) || zero(p.gamma);
       }},
      {"Observation 3A", "(1-a+ab)g = 0  =>  1-a+abg = 0 or d = 0", kStatDelta,
       [=](P p) { return zero((1 - p.alpha + p.alpha * p.beta) * p.gamma); },
       [=](P p) {
         return zero(1 - p.alpha + p.alpha * p.beta * p.gamma) || zero(p.delta);
       }},
      {"Observation 3B", "g = 1  =>  1-a+ab = 0 or d = 1", kStatDelta,
       [=](P p) { return p.gamma == 1; },
       [=](P p) { return zero(1 - p.alpha + p.alpha * p.beta) || p.delta == 1; }},
      {"Claim 1", "a > 0 and b > 0  =>  g > 1/2", kStatBeta,
       [=](P p) { return pos(p.alpha) && pos(p.beta); }, [=](P p) { return p.gamma > half; }},
      {"Claim 2", "d < 1 and 1-a+abg > 0  =>  g < 1/2", kStatDelta,
       [=](P p) { return p.delta < 1 && pos(1 - p.alpha + p.alpha * p.beta * p.gamma); },
       [=](P p) { return p.gamma < half; }},
      {"Claim 3", "a > 0, b > 0, d < 1  =>  a = 1 and g = 0", kStatBeta | kStatDelta,
       [=](P p) { return pos(p.alpha) && pos(p.beta) && p.delta < 1; },
       [=](P p) { return p.alpha == 1 && zero(p.gamma); }},
      {"Claim 4", "b > 0 and 0 < d < 1  =>  a = g = 0", kStatBeta | kStatGamma | kStatDelta,
       [=](P p) { return pos(p.beta) && pos(p.delta) && p.delta < 1; },
       [=](P p) { return zero(p.alpha) && zero(p.gamma); }},
      {"Claim 5", "b = 0 or d in {0, 1}", kStatBeta | kStatGamma | kStatDelta, always,
       [=](P p) { return zero(p.beta) || zero(p.delta) || p.delta == 1; }},
      {"Claim 6", "b > 0", kStatAlpha | kStatGamma | kStatDelta | kNoGainP1Zero | kNoGainP2One,
       always, [=](P p) { return pos(p.beta); }},
      {"Claim 7", "0 < b < 1 and d in {0, 1}", kAllConditions, always,
       [=](P p) {
         return pos(p.beta) && p.beta < 1 && (zero(p.delta) || p.delta == 1);
       }},
      {"Claim 8", "d = 0", kAllConditions, always, [=](P p) { return zero(p.delta); }},
      {"Final step", "no point satisfies every condition", kAllConditions, always,
       [](P) { return false; }},
  };
}

struct ClaimResult {
  std::string name;
  std::string statement;
  std::size_t premise_samples = 0;  // sampled points satisfying the premise
  std::size_t tested = 0;           // ... and the conditions the argument uses
  std::size_t violations = 0;
  std::optional<MainParams> first_violation;
};

struct ClaimsReport {
  std::vector<ClaimResult> claims;
  std::size_t samples = 0;
  bool ok(std::size_t min_premise_samples = 0) const {
    for (const auto& c : claims) {
      if (c.violations != 0 || c.premise_samples < min_premise_samples) return false;
    }
    return true;
  }
};

struct ClaimsOptions {
  Rational step = make_rational(1, 20);  // every grid point is included
  std::size_t random_samples = 200000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

namespace detail {

// Each coordinate is 0, 1, a grid value, or a fine random rational, each
// with probability 1/4.
inline MainParams sample_point(std::uint64_t seed, std::size_t index, unsigned long n) {
  SplitMix64 rng(trial_seed(seed, index));
  auto coord = [&] {
    switch (rng() % 4) {
      case 0:
        return Rational(0);
      case 1:
        return Rational(1);
      case 2: {
        Rational r(static_cast<long>(rng() % (n + 1)), static_cast<long>(n));
        r.canonicalize();
        return r;
      }
      default: {
        constexpr long kDen = 1L << 20;
        Rational r(static_cast<long>(rng() % (kDen + 1)), kDen);
        r.canonicalize();
        return r;
      }
    }
  };
  MainParams p;
  p.alpha = coord();
  p.beta = coord();
  p.gamma = coord();
  p.delta = coord();
  return p;
}

}  // namespace detail

inline ClaimsReport verify_proof_claims(const PayoffFunction& u, const ClaimsOptions& options = {}) {
  const GameStructure g = main_example();
  require_compatible(g, u);
  const auto payoffs = detail::main_payoffs(u, g);
  const auto claims = proof_claims();
  const unsigned long n = reciprocal_steps(options.step);
  const std::size_t side = n + 1;
  const std::size_t grid = side * side * side * side;
  const std::size_t total = grid + options.random_samples;

  auto point = [&](std::size_t k) {
    if (k >= grid) return detail::sample_point(options.seed, k - grid, n);
    auto coord = [&](std::size_t digit) {
      Rational r(static_cast<long>(digit), static_cast<long>(n));
      r.canonicalize();
      return r;
    };
    return MainParams{coord(k / (side * side * side)), coord((k / (side * side)) % side),
                      coord((k / side) % side), coord(k % side)};
  };

  // Per point and claim: bit 0 premise, bit 1 tested, bit 2 violated.
  std::vector<std::uint8_t> flags(total * claims.size(), 0);
  parallel_for(total, options.threads, [&](std::size_t k) {
    const MainParams p = point(k);
    std::optional<std::uint32_t> mask;
    for (std::size_t c = 0; c < claims.size(); ++c) {
      if (!claims[c].premise(p)) continue;
      std::uint8_t f = 1;
      if (!mask) mask = detail::conditions_at(payoffs, p);
      if ((*mask & claims[c].conditions) == claims[c].conditions) {
        f |= 2;
        if (!claims[c].conclusion(p)) f |= 4;
      }
      flags[k * claims.size() + c] = f;
    }
  });

  ClaimsReport report;
  report.samples = total;
  for (std::size_t c = 0; c < claims.size(); ++c) {
    ClaimResult r{claims[c].name, claims[c].statement, 0, 0, 0, std::nullopt};
    for (std::size_t k = 0; k < total; ++k) {
      const std::uint8_t f = flags[k * claims.size() + c];
      r.premise_samples += f & 1;
      r.tested += (f >> 1) & 1;
      if (f & 4) {
        if (!r.first_violation) r.first_violation = point(k);
        ++r.violations;
      }
    }
    report.claims.push_back(std::move(r));
  }
  return report;
}

}  // namespace dgmp
