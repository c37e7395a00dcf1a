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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dgmp.hpp"
#include "oracles.hpp"

namespace dgmp {
namespace {

RefuteOptions options_at(long n, bool certificates = false) {
  RefuteOptions o;
  o.step = make_rational(1, n);
  o.collect_certificates = certificates;
  return o;
}

TEST(Grid, SimplexAndProfileGrids) {
  EXPECT_EQ(simplex_grid(4, 2).size(), 5u);
  EXPECT_EQ(simplex_grid(4, 3).size(), 15u);
  EXPECT_EQ(simplex_grid(3, 2).front(), (std::vector<Rational>{Rational(0), Rational(1)}));
  for (const auto& d : simplex_grid(6, 3)) {
    EXPECT_EQ(d[0] + d[1] + d[2], 1);
  }
  const GameStructure g = main_example();
  const ProfileGrid grid(g, 20);
  EXPECT_EQ(grid.size(), 194481u);
  // The first position (v0) is the most significant digit.
  const MainParams p = main_example_parameters(g, grid.profile(g, 21 * 21 * 21 + 2));
  EXPECT_EQ(p.alpha, make_rational(1, 20));
  EXPECT_EQ(p.beta, 0);
  EXPECT_EQ(p.delta, make_rational(1, 10));
  EXPECT_THROW(ProfileGrid(g, 100000), BudgetError);
}

TEST(Refute, CertificatesRevalidate) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  std::mt19937_64 rng(8);
  for (Evaluation e : {Evaluation::kApriori, Evaluation::kMarkovian}) {
    const Evaluator eval(g, e);
    for (int k = 0; k < 100; ++k) {
      const MixedProfile m = oracle::random_profile(g, rng, 10);
      const auto c = find_deviation(g, u, m, eval);
      ASSERT_TRUE(c) << profile_text(g, m);
      EXPECT_TRUE(verify_certificate(g, u, e, *c));
      EXPECT_GT(c->gain, 0);
      EXPECT_EQ(c->gain, c->after - c->before);
      // Each deviation only touches the deviator's own positions.
      for (const auto& [v, dist] : c->deviation) EXPECT_EQ(g.owner(v), c->deviator);
      DeviationCertificate forged = *c;
      forged.gain += 1;
      EXPECT_FALSE(verify_certificate(g, u, e, forged));
    }
  }
}

TEST(Refute, VertexOnlyIsWeaker) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  const MixedProfile m = MixedProfile::uniform(g);
  DeviationSearch vertex;
  vertex.vertex_only = true;
  for (Player i = 1; i <= 3; ++i) {
    const auto full = best_deviation(g, u, m, i, Evaluation::kApriori);
    const auto only = best_deviation(g, u, m, i, Evaluation::kApriori, vertex);
    if (only) {
      ASSERT_TRUE(full);
      EXPECT_GE(full->gain, only->gain);
    }
  }
}

TEST(Refute, CoarseMainGridBothEvaluations) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  for (Evaluation e : {Evaluation::kApriori, Evaluation::kMarkovian}) {
    const RefuteReport r = refute_mixed_ne_grid(g, u, e, options_at(5));
    EXPECT_EQ(r.points, 1296u);
    EXPECT_TRUE(r.all_refuted()) << to_string(e);
    EXPECT_GT(r.min_gain, 0);
    EXPECT_EQ(r.refuted_by[0] + r.refuted_by[1] + r.refuted_by[2], r.points);
  }
}

TEST(Refute, ThreadCountDoesNotChangeReport) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  RefuteOptions one = options_at(4, true);
  RefuteOptions four = one;
  four.threads = 4;
  const RefuteReport a = refute_mixed_ne_grid(g, u, Evaluation::kMarkovian, one);
  const RefuteReport b = refute_mixed_ne_grid(g, u, Evaluation::kMarkovian, four);
  EXPECT_EQ(a.certificate_rows, b.certificate_rows);
  EXPECT_EQ(a.refuted_by, b.refuted_by);
  EXPECT_EQ(a.min_gain, b.min_gain);
}

TEST(Refute, CoarseGridCertificatesReappearOnFinerGrid) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  for (Evaluation e : {Evaluation::kApriori, Evaluation::kMarkovian}) {
    const RefuteReport coarse = refute_mixed_ne_grid(g, u, e, options_at(4, true));
    const RefuteReport fine = refute_mixed_ne_grid(g, u, e, options_at(8, true));
    ASSERT_TRUE(coarse.all_refuted());
    ASSERT_TRUE(fine.all_refuted());
    const std::set<std::string> fine_rows(fine.certificate_rows.begin(), fine.certificate_rows.end());
    for (const auto& row : coarse.certificate_rows) {
      EXPECT_TRUE(fine_rows.count(row)) << row;
    }
    EXPECT_LE(fine.min_gain, coarse.min_gain);
  }
}

TEST(Refute, PrecheckRejectsViolatingPayoff) {
  const GameStructure g = main_example();
  PayoffFunction u = main_canonical_payoff(g);
  u.set(1, 0, Rational(5));
  const PayoffConstraintSet cs = main_apriori_conditions(g);
  try {
    refute_mixed_ne_grid(g, u, Evaluation::kApriori, options_at(2), &cs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("(1)"), std::string::npos) << e.what();
  }
  RefuteOptions odd;
  odd.step = make_rational(2, 5);
  EXPECT_THROW(refute_mixed_ne_grid(g, main_canonical_payoff(g), Evaluation::kApriori, odd), Error);
}

TEST(Refute, ReportsCounterexampleWhenEquilibriumExists) {
  const CatalogEntry e = catalog("fig3-left");
  const ParsedGame p = parse_game(read_file(std::string(DGMP_SAMPLES_DIR) + "/fig3-left.game"));
  const PayoffFunction u = parse_payoff(
      read_file(std::string(DGMP_SAMPLES_DIR) + "/fig3-left-clast.payoff"), p.game);
  const RefuteReport r = refute_mixed_ne_grid(p.game, u, Evaluation::kMarkovian, options_at(2));
  EXPECT_FALSE(r.all_refuted());
  ASSERT_TRUE(r.first_unrefuted);
  ASSERT_TRUE(r.counterexample);
  const Evaluator eval(p.game, Evaluation::kMarkovian);
  EXPECT_FALSE(find_deviation(p.game, u, *r.counterexample, eval));
  EXPECT_EQ(e.game, p.game);
}

// ---------------------------------------------------------------------------
// Markovian case analysis.

TEST(Cases, EveryGridPointHasAnImprovingPrescription) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  const MarkovianEvaluator eval(g);
  const long n = 10;
  std::set<std::string> seen;
  for (long a = 0; a <= n; ++a)
    for (long b = 0; b <= n; ++b)
      for (long c = 0; c <= n; ++c)
        for (long d = 0; d <= n; ++d) {
          const MainParams p{make_rational(a, n), make_rational(b, n), make_rational(c, n),
                             make_rational(d, n)};
          const CasePrescription cp = markovian_case_deviation(p);
          seen.insert(cp.trace.id);
          const Player i = cp.deviator;
          const Rational before = expected_payoff(eval(main_example_profile(g, p)), u, i);
          const Rational after = expected_payoff(eval(main_example_profile(g, cp.deviated)), u, i);
          ASSERT_GT(after, before) << "case " << cp.trace.id;
          ASSERT_TRUE(case_guard(cp.trace.id, p));
        }
  EXPECT_EQ(seen, (std::set<std::string>{"1", "2", "3", "4", "5.1", "5.2", "5.3", "6"}));
}

TEST(Cases, OrdinalPayoffsAlsoRefuted) {
  const GameStructure g = main_example();
  const MarkovianEvaluator eval(g);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 30; ++k) {
    const PayoffFunction u = oracle::random_main_order_payoff(rng, false);
    for (int s = 0; s < 200; ++s) {
      const MixedProfile m = oracle::random_profile(g, rng, 6);
      const MainParams p = main_example_parameters(g, m);
      const CasePrescription cp = markovian_case_deviation(p);
      const Rational before = expected_payoff(eval(m), u, cp.deviator);
      const Rational after =
          expected_payoff(eval(main_example_profile(g, cp.deviated)), u, cp.deviator);
      ASSERT_GT(after, before) << "case " << cp.trace.id;
    }
  }
}

TEST(Cases, TracesRecordLambdaAndMu) {
  const MainParams p{make_rational(1, 2), make_rational(1, 2), make_rational(1, 2), make_rational(1, 2)};
  const CasePrescription cp = markovian_case_deviation(p);
  EXPECT_EQ(cp.trace.id, "2");
  EXPECT_EQ(cp.deviator, 2);
  ASSERT_TRUE(cp.trace.lambda);
  EXPECT_EQ(*cp.trace.lambda, make_rational(1, 4));
  EXPECT_EQ(*cp.trace.mu, make_rational(1, 3));
  EXPECT_THROW(case_guard("7", p), Error);
  EXPECT_THROW(markovian_case_deviation({Rational(2), Rational(0), Rational(0), Rational(0)}), Error);
}

// ---------------------------------------------------------------------------
// A priori stationarity and the claims harness.

TEST(Stationarity, SurvivorsAreCertified) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  const auto survivors = apriori_stationarity_scan(u, make_rational(1, 10));
  EXPECT_FALSE(survivors.empty());
  const Evaluator eval(g, Evaluation::kApriori);
  for (const MainParams& p : survivors) {
    const auto c = find_deviation(g, u, main_example_profile(g, p), eval);
    ASSERT_TRUE(c);
    EXPECT_TRUE(verify_certificate(g, u, Evaluation::kApriori, *c));
  }
  // Thread count does not change the scan.
  EXPECT_EQ(apriori_stationarity_scan(u, Rational(1)).size(),
            apriori_stationarity_scan(u, Rational(1), 3).size());
}

TEST(Stationarity, InteriorPhiGradientMatchesScan) {
  const GameStructure g = main_example();
  const PayoffFunction u = main_canonical_payoff(g);
  const auto pay = detail::main_payoffs(u, g);
  const MainParams half{make_rational(1, 2), make_rational(1, 2), make_rational(1, 2), make_rational(1, 2)};
  EXPECT_EQ(detail::phi(pay, 1, half), make_rational(29, 16));
  EXPECT_EQ(detail::phi(pay, 2, half), Rational(4));
  EXPECT_EQ(detail::phi(pay, 3, half), make_rational(15, 8));
  const auto d = detail::owner_derivatives(pay, half);
  const auto j = apriori_gradient_main_example<Rational>(half.alpha, half.beta, half.gamma, half.delta);
  const Player owner[4] = {1, 2, 2, 3};
  for (int k = 0; k < 4; ++k) {
    Rational want = 0;
    for (OutcomeIndex o = 0; o < 4; ++o) want += j[k][o] * u(owner[k], o);
    EXPECT_EQ(d[k], want);
  }
}

TEST(Claims, NoViolationsOnSmallSample) {
  const PayoffFunction u = main_canonical_payoff();
  ClaimsOptions o;
  o.step = make_rational(1, 10);
  o.random_samples = 20000;
  const ClaimsReport r = verify_proof_claims(u, o);
  EXPECT_EQ(r.samples, 14641u + 20000u);
  EXPECT_EQ(r.claims.size(), proof_claims().size());
  for (const auto& c : r.claims) {
    EXPECT_EQ(c.violations, 0u) << c.name;
    EXPECT_LE(c.tested, c.premise_samples);
  }
  EXPECT_TRUE(r.ok(1000));
}

TEST(Claims, DetectsBrokenConclusions) {
  // Dropping an ordinal assumption (u1(a2) > u1(c)) breaks the argument.
  const GameStructure g = main_example();
  PayoffFunction u = main_canonical_payoff(g);
  u.set(1, 1, Rational(2));
  u.set(1, 3, Rational(5));
  ClaimsOptions o;
  o.step = make_rational(1, 10);
  o.random_samples = 5000;
  const ClaimsReport r = verify_proof_claims(u, o);
  EXPECT_FALSE(r.ok());
}

TEST(Claims, SamplingIsSeeded) {
  EXPECT_EQ(detail::sample_point(3, 17, 20).alpha, detail::sample_point(3, 17, 20).alpha);
  std::size_t differ = 0;
  for (std::size_t k = 0; k < 50; ++k) {
    const auto a = detail::sample_point(1, k, 20);
    const auto b = detail::sample_point(2, k, 20);
    differ += !(a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.delta == b.delta);
  }
  EXPECT_GT(differ, 25u);
}

}  // namespace
}  // namespace dgmp
