// Copyright 2026 The claimorder Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "claimorder/audit.hpp"
#include "claimorder/cases.hpp"
#include "claimorder/commands.hpp"
#include "claimorder/instance.hpp"
#include "claimorder/ordercheck.hpp"
#include "fuzz_instances.hpp"

namespace claimorder {
namespace {

std::string instance_path(const std::string& name) {
  return std::string(CLAIMORDER_INSTANCES_DIR) + "/" + name + ".json";
}

Portfolio exponential_pf(std::vector<double> p, std::vector<double> alpha) {
  std::vector<Claim> c;
  for (std::size_t i = 0; i < p.size(); ++i) c.push_back({p[i], alpha[i]});
  return Portfolio(SeverityFamily::exponential(), PsiTransform::neg_log(), c);
}

const std::vector<double>& unit_grid() {
  static const auto g = hybrid_grid(1e-4, 12.0, 800);
  return g;
}

TEST(VerifySt, ReflexiveWithZeroMargin) {
  const Curve s = [](double x) { return std::exp(-1.3 * x); };
  const auto v = verify_st(s, s, unit_grid());
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.witness);
  EXPECT_EQ(v.margin, 0.0);
}

TEST(VerifySt, ExponentialRatesOrderOneWayOnly) {
  const Curve slow = [](double x) { return std::exp(-x); };
  const Curve fast = [](double x) { return std::exp(-2.0 * x); };
  const auto forward = verify_st(slow, fast, unit_grid());
  const auto backward = verify_st(fast, slow, unit_grid());
  EXPECT_TRUE(forward.holds);
  EXPECT_GT(forward.margin, 0.0);
  EXPECT_FALSE(backward.holds);
  ASSERT_TRUE(backward.witness);
  EXPECT_LT(backward.witness->lhs, backward.witness->rhs);
}

TEST(VerifySt, AntisymmetricOnRandomPairs) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int t = 0; t < 100; ++t) {
    const double a = u(rng);
    const double b = u(rng);
    const Curve sa = [a](double x) { return std::exp(-a * x); };
    const Curve sb = [b](double x) { return std::exp(-b * x); };
    const bool ab = verify_st(sa, sb, unit_grid()).holds;
    const bool ba = verify_st(sb, sa, unit_grid()).holds;
    EXPECT_TRUE(ab || ba);
    if (ab && ba) {
      for (double x : unit_grid()) EXPECT_NEAR(sa(x), sb(x), 1e-9);
    }
  }
}

TEST(VerifySt, IsolatedDipWithinToleranceIsIgnored) {
  const Curve s = [](double x) { return std::exp(-x); };
  const Curve bumped = [](double x) { return std::exp(-x) + (std::abs(x - 3.0) < 1e-3 ? 5e-10 : 0.0); };
  EXPECT_TRUE(verify_st(s, bumped, unit_grid()).holds);
}

TEST(VerifySt, RejectsBadGrids) {
  const Curve s = [](double x) { return std::exp(-x); };
  EXPECT_THROW(verify_st(s, s, {1.0}), EvaluationError);
  EXPECT_THROW(verify_st(s, s, {2.0, 1.0}), EvaluationError);
}

TEST(VerifyRh, ImpliesUsualOrderOnRandomExponentialPortfolios) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> p(0.05, 0.95);
  std::uniform_real_distribution<double> a(0.3, 5.0);
  int rh_held = 0;
  for (int t = 0; t < 150; ++t) {
    const auto pa = exponential_pf({p(rng), p(rng), p(rng)}, {a(rng), a(rng), a(rng)});
    const auto pb = exponential_pf({p(rng), p(rng), p(rng)}, {a(rng), a(rng), a(rng)});
    const Curve fa = [&](double x) { return cdf_max_fixed(pa, 3, x); };
    const Curve fb = [&](double x) { return cdf_max_fixed(pb, 3, x); };
    const Curve sa = [&](double x) { return 1.0 - cdf_max_fixed(pa, 3, x); };
    const Curve sb = [&](double x) { return 1.0 - cdf_max_fixed(pb, 3, x); };
    if (verify_rh(fa, fb, unit_grid()).holds) {
      ++rh_held;
      EXPECT_TRUE(verify_st(sa, sb, unit_grid()).holds) << t;
    }
  }
  EXPECT_GT(rh_held, 10);
}

TEST(VerifyRh, PointwiseEvidenceAgreesWithRatioOnExponentials) {
  const Curve fa = [](double x) { return 1.0 - std::exp(-x); };
  const Curve fb = [](double x) { return 1.0 - std::exp(-3.0 * x); };
  const Curve ra = [](double x) { return std::exp(-x) / (1.0 - std::exp(-x)); };
  const Curve rb = [](double x) { return 3.0 * std::exp(-3.0 * x) / (1.0 - std::exp(-3.0 * x)); };
  // The slower exponential is larger in rh order: F_a/F_b increases.
  const auto v = verify_rh(fa, fb, unit_grid(), kOrderTolerance, ra, rb);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.pointwise_checked);
  EXPECT_EQ(v.pointwise_violations, 0u);
  const auto w = verify_rh(fb, fa, unit_grid(), kOrderTolerance, rb, ra);
  EXPECT_FALSE(w.holds);
  EXPECT_GT(w.pointwise_violations, 0u);
}

TEST(VerifyRh, VanishingDenominatorIsSingular) {
  const Curve fa = [](double x) { return x; };
  const Curve zero = [](double) { return 0.0; };
  EXPECT_THROW(verify_rh(fa, zero, unit_grid()), SingularityError);
}

TEST(PublishedCases, CounterexampleOneWitnessIsBisected) {
  const auto rc = build_case(*find_published_case("cex3_1"));
  const Curve sa = [&](double x) { return 1.0 - cdf_max_random(rc.a, rc.counts_a, x); };
  const Curve sb = [&](double x) { return 1.0 - cdf_max_random(rc.b, rc.counts_b, x); };
  const double hi = auto_upper_bound({[&](double x) { return 1.0 - sa(x); },
                                      [&](double x) { return 1.0 - sb(x); }});
  const auto grid = hybrid_grid(1e-4 * hi, hi);
  const auto v = verify_st(sa, sb, grid);
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  EXPECT_LT(v.witness->lhs - v.witness->rhs, -kOrderTolerance);
  const Curve diff = [&](double x) { return (1.0 - sa(x)) - (1.0 - sb(x)); };
  const auto changes = find_sign_changes(diff, grid);
  ASSERT_FALSE(changes.empty());
  for (const auto& c : changes) {
    EXPECT_LE(c.right - c.left, kWitnessWidth);
    EXPECT_EQ(diff(c.left) > 0.0, c.from_sign > 0);
    EXPECT_NE(diff(c.right) > 0.0, c.from_sign > 0);
  }
  EXPECT_NEAR(changes.front().x(), 0.8413815, 1e-5);
}

TEST(PublishedCases, CounterexampleThreeRatioDecreases) {
  const auto rc = build_case(*find_published_case("cex3_3"));
  const Curve fa = [&](double x) { return cdf_max_random(rc.a, rc.counts_a, x); };
  const Curve fb = [&](double x) { return cdf_max_random(rc.b, rc.counts_b, x); };
  const double hi = auto_upper_bound({fa, fb});
  const auto v = verify_rh(fa, fb, hybrid_grid(1e-4 * hi, hi));
  EXPECT_FALSE(v.holds);
  ASSERT_TRUE(v.decreasing_interval);
  EXPECT_LT(v.decreasing_interval->first, v.decreasing_interval->second);
}

TEST(SignChanges, FindsEachCrossingOfASine) {
  const Curve s = [](double x) { return std::sin(x); };
  const auto changes = find_sign_changes(s, hybrid_grid(0.05, 10.0, 1000));
  ASSERT_EQ(changes.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(changes[k].x(), M_PI * (k + 1), 1e-6);
}

TEST(Schur, CoordinateSumFunctionsAreConstant) {
  const std::vector<std::function<double(const RealVector&)>> fs{
      [](const RealVector& u) { return std::accumulate(u.begin(), u.end(), 0.0); },
      [](const RealVector& u) { return std::exp(-0.3 * std::accumulate(u.begin(), u.end(), 0.0)); },
      [](const RealVector& u) { return std::sin(std::accumulate(u.begin(), u.end(), 0.0)); }};
  for (const auto& f : fs) {
    const auto r = schur_test(f, RealVector{1.9, 2.0, 3.0, 5.0, 6.0});
    EXPECT_EQ(r.evidence, SchurEvidence::kConstant);
    EXPECT_LT(std::max(std::abs(r.min_value), std::abs(r.max_value)), 1e-7);
  }
}

TEST(Schur, SumsOfSquaresAndTheirNegatives) {
  auto sq = [](const RealVector& u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return s;
  };
  EXPECT_EQ(schur_test(sq, RealVector{1, 2, 4}).evidence, SchurEvidence::kConvex);
  EXPECT_EQ(schur_test([&](const RealVector& u) { return -sq(u); }, RealVector{1, 2, 4}).evidence,
            SchurEvidence::kConcave);
  EXPECT_THROW(schur_test(sq, RealVector{1.0}), ShapeError);
}

double min_survival_equal_p(const SeverityFamily& fam, const RealVector& alpha, double x) {
  double s = 1.0;
  for (double a : alpha) s *= 0.5 * fam.survival(a, x);
  return s;
}

TEST(Schur, MinimumSurvivalUnderExponentialIsConstantInAlpha) {
  const auto fam = SeverityFamily::exponential();
  for (double x : {0.1, 0.5, 1.0}) {
    const auto r = schur_test([&](const RealVector& a) { return min_survival_equal_p(fam, a, x); },
                              RealVector{1.9, 2.0, 3.0, 5.0, 6.0});
    EXPECT_EQ(r.evidence, SchurEvidence::kConstant) << x;
  }
}

TEST(Schur, MinimumSurvivalUnderGammaDependsOnShape) {
  const RealVector alpha{1.9, 2.0, 3.0, 5.0, 6.0};
  const auto light = SeverityFamily::gamma_rate(0.7);
  const auto heavy = SeverityFamily::gamma_rate(10.09);
  for (double x : {0.5, 1.0, 1.5}) {
    EXPECT_EQ(schur_test([&](const RealVector& a) { return min_survival_equal_p(light, a, x); }, alpha)
                  .evidence,
              SchurEvidence::kConvex);
    EXPECT_EQ(schur_test([&](const RealVector& a) { return min_survival_equal_p(heavy, a, x); }, alpha)
                  .evidence,
              SchurEvidence::kConcave);
  }
}

cli::AuditRun run_all(const std::string& name) {
  const auto spec = load_instance(instance_path(name));
  const auto opt = cli::audit_options(spec);
  cli::AuditRun run;
  for (const auto& info : kTheorems) {
    try {
      run.audits.push_back(audit(info.id, spec.a, spec.b, spec.counts_a, spec.counts_b, opt));
    } catch (const StructuralError& e) {
      run.not_applicable.push_back({info.id, e.what()});
    }
  }
  return run;
}

const TheoremAudit* find(const cli::AuditRun& run, TheoremId id) {
  for (const auto& a : run.audits) {
    if (a.theorem_id == id) return &a;
  }
  return nullptr;
}

const Precondition* find(const TheoremAudit& a, const std::string& name) {
  for (const auto& p : a.preconditions) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

TEST(Audit, BuiltInInstancesHaveNoPotentialCounterexample) {
  for (const char* name : {"ex3_1", "cex3_1", "cex3_2", "cex3_3"}) {
    const auto run = run_all(name);
    EXPECT_FALSE(run.audits.empty());
    for (const auto& a : run.audits) {
      EXPECT_NE(a.classification, Classification::kPotentialCounterexample)
          << name << " " << to_string(a.theorem_id);
    }
  }
}

TEST(Audit, WorkedExampleConclusionHoldsDespiteFailedHypotheses) {
  const auto run = run_all("ex3_1");
  const auto* a = find(run, TheoremId::ST_MAX_RANDOM);
  ASSERT_NE(a, nullptr);
  EXPECT_TRUE(a->conclusion.holds);
  EXPECT_EQ(a->classification, Classification::kHypothesisViolatedConclusionHolds);
  EXPECT_TRUE(find(*a, "N1 <=st N2")->satisfied);
  EXPECT_FALSE(find(*a, "(psi(p),alpha) in M_n")->satisfied);
  EXPECT_FALSE(find(*a, "psi row: psi(p) >=w psi(p*)")->satisfied);
  EXPECT_TRUE(find(*a, "alpha row: alpha >=w beta")->satisfied);
}

TEST(Audit, CounterexampleOneFailsSimilarOrdering) {
  const auto run = run_all("cex3_1");
  const auto* a = find(run, TheoremId::ST_MAX_RANDOM);
  ASSERT_NE(a, nullptr);
  EXPECT_FALSE(a->conclusion.holds);
  EXPECT_EQ(a->classification, Classification::kHypothesisViolatedConclusionFails);
  EXPECT_FALSE(find(*a, "(psi(p),alpha) in M_n")->satisfied);
  EXPECT_FALSE(find(*a, "(psi(p*),beta) in M_n")->satisfied);
}

TEST(Audit, CounterexampleTwoFailsCountOrdering) {
  const auto run = run_all("cex3_2");
  const auto* a = find(run, TheoremId::ST_MIN_RANDOM);
  ASSERT_NE(a, nullptr);
  EXPECT_FALSE(a->conclusion.holds);
  EXPECT_FALSE(find(*a, "N1 <=st N2")->satisfied);
  EXPECT_EQ(a->classification, Classification::kHypothesisViolatedConclusionFails);
}

TEST(Audit, RhRandomResultsNeedEqualCounts) {
  const auto run = run_all("cex3_3");
  bool found = false;
  for (const auto& [name, why] : run.not_applicable) {
    if (name == TheoremId::RH_MAX_RANDOM) {
      found = true;
      EXPECT_NE(why.find("N1 = N2"), std::string::npos);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Audit, StructuralMismatchesThrow) {
  const auto a = exponential_pf({0.3, 0.4}, {1.0, 2.0});
  const auto b3 = exponential_pf({0.3, 0.4, 0.5}, {1.0, 2.0, 3.0});
  const auto b2 = exponential_pf({0.2, 0.4}, {1.0, 2.0});
  const auto g = Portfolio(SeverityFamily::gamma_rate(2.0), PsiTransform::neg_log(),
                           {{0.3, 1.0}, {0.4, 2.0}});
  const auto c = ClaimCountDistribution::degenerate(2);
  EXPECT_THROW(audit(TheoremId::ST_MAX_FIXED, a, b3, c, c), StructuralError);
  EXPECT_THROW(audit(TheoremId::ST_MAX_FIXED, a, g, c, c), StructuralError);
  EXPECT_THROW(audit(TheoremId::ST_MIN_ALPHA, a, b2, c, c), StructuralError);
  EXPECT_THROW(audit(TheoremId::ST_MAX_KWG, a, b2, c, c), StructuralError);
  EXPECT_THROW(audit(TheoremId::RH_MAX_RANDOM, a, b2, c, ClaimCountDistribution::degenerate(1)),
               StructuralError);
}

TEST(Audit, TheoremIdsRoundTrip) {
  for (const auto& info : kTheorems) EXPECT_EQ(parse_theorem_id(info.name), info.id);
  EXPECT_FALSE(parse_theorem_id("ST_NOPE"));
}

// Equal portfolios with N1 <=st N2 satisfy every listed hypothesis of the
// random-count maximum result, yet more claims push the maximum up.
TEST(Audit, RandomMaximumFailsForEqualPortfoliosAndLargerCount) {
  const auto pf = exponential_pf({0.5, 0.3}, {1.0, 2.0});
  const auto n1 = ClaimCountDistribution::degenerate(1);
  const auto n2 = ClaimCountDistribution::degenerate(2);
  const auto a = audit(TheoremId::ST_MAX_RANDOM, pf, pf, n1, n2);
  for (const auto& p : a.preconditions) EXPECT_TRUE(p.satisfied) << p.name << ": " << p.evidence;
  EXPECT_FALSE(a.conclusion.holds);
  EXPECT_EQ(a.classification, Classification::kPotentialCounterexample);
}

TEST(Audit, RandomMinimumHoldsForEqualPortfoliosAndLargerCount) {
  const auto pf = exponential_pf({0.2, 0.1}, {1.0, 2.0});
  const auto a = audit(TheoremId::ST_MIN_RANDOM, pf, pf, ClaimCountDistribution::degenerate(1),
                       ClaimCountDistribution::degenerate(2));
  EXPECT_EQ(a.classification, Classification::kConfirmed);
}

TEST(Audit, FuzzedRandomMinimumInstancesAreConfirmed) {
  std::mt19937_64 rng(2026);
  for (int t = 0; t < 60; ++t) {
    const auto in = fuzz::make_instance(rng, true);
    const auto a = audit(TheoremId::ST_MIN_RANDOM, in.a, in.b, in.counts_a, in.counts_b);
    EXPECT_EQ(a.classification, Classification::kConfirmed) << t;
  }
}

TEST(Audit, FuzzedFixedMaximumInstancesAreConfirmed) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    const auto in = fuzz::make_instance(rng, false);
    const auto c = ClaimCountDistribution::degenerate(in.a.size());
    const auto a = audit(TheoremId::ST_MAX_FIXED, in.a, in.b, c, c);
    EXPECT_EQ(a.classification, Classification::kConfirmed) << t;
  }
}

}  // namespace
}  // namespace claimorder
