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
#include <vector>

#include <gtest/gtest.h>

#include "claimorder/severity.hpp"
#include "claimorder/special_functions.hpp"
#include "oracles.hpp"

namespace claimorder {
namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> g;
  for (std::size_t k = 0; k < n; ++k) g.push_back(lo + (hi - lo) * k / (n - 1));
  return g;
}

std::vector<BaselineDistribution> baselines() {
  return {BaselineDistribution::exponential(1.3), BaselineDistribution::weibull(0.7, 2.0),
          BaselineDistribution::weibull(2.5, 1.0), BaselineDistribution::lomax(3.0, 1.5),
          BaselineDistribution::uniform(4.0)};
}

std::vector<SeverityFamily> families() {
  std::vector<SeverityFamily> f{SeverityFamily::exponential(),
                                SeverityFamily::weibull_rate(1.7),
                                SeverityFamily::gamma(10.09),
                                SeverityFamily::gamma_rate(1.5),
                                SeverityFamily::gamma_rate(10.09),
                                SeverityFamily::power_generalized_weibull(2.0)};
  for (const auto& b : baselines()) {
    f.push_back(SeverityFamily::scale(b));
    f.push_back(SeverityFamily::proportional_hazard(b));
    f.push_back(SeverityFamily::kumaraswamy_g(b, 1.8));
  }
  return f;
}

TEST(Survival, ExponentialAtZeroIsOne) {
  EXPECT_DOUBLE_EQ(SeverityFamily::exponential().survival(0.0, 3.7), 1.0);
}

TEST(Survival, ExponentialClosedForm) {
  EXPECT_NEAR(SeverityFamily::exponential().survival(2.0, 1.0), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(SeverityFamily::exponential().survival(2.0, 1.0), 0.135335, 1e-6);
}

TEST(Survival, GammaShapeTwoMatchesIndependentEvaluations) {
  // Q(2, y) = e^{-y}(1 + y); the 30-digit value was computed separately.
  const double y = 5.0 / 10.09;
  const double closed = std::exp(-y) * (1.0 + y);
  const double frozen = 0.911145481356921988;
  const double quad = 1.0 - oracle::integrate(
                                [](double t) {
                                  return t * std::exp(-t / 10.09) / (10.09 * 10.09);
                                },
                                0.0, 5.0);
  const double got = SeverityFamily::gamma(10.09).survival(5.0, 2.0);
  EXPECT_NEAR(got, frozen, 1e-14);
  EXPECT_NEAR(got, closed, 1e-14);
  EXPECT_NEAR(got, quad, 1e-11);
}

TEST(Survival, IncompleteGammaAgreesWithQuadratureAcrossRegimes) {
  for (double a : {0.5, 1.5, 3.0, 10.09, 40.0}) {
    for (double x : {0.01, 0.3, 1.0, 4.0, 12.0, 45.0}) {
      const double p = special::gamma_p(a, x);
      const double q = special::gamma_q(a, x);
      EXPECT_NEAR(p + q, 1.0, 1e-13) << a << " " << x;
      if (a >= 1.0) {
        const double quad = oracle::integrate(
            [a](double t) { return oracle::gamma_rate_density(a, 1.0, t); }, 0.0, x, 1e-14);
        EXPECT_NEAR(p, quad, 1e-10) << a << " " << x;
      }
    }
  }
}

TEST(Survival, GammaRateClosedFormForIntegerShape) {
  // shape 3, rate 2: survival e^{-2x}(1 + 2x + 2x^2).
  const auto fam = SeverityFamily::gamma_rate(3.0);
  for (double x : {0.1, 0.7, 2.0, 9.0}) {
    const double t = 2.0 * x;
    EXPECT_NEAR(fam.survival(x, 2.0), std::exp(-t) * (1.0 + t + 0.5 * t * t), 1e-14);
  }
}

TEST(Survival, RejectsBadArguments) {
  const auto fam = SeverityFamily::exponential();
  EXPECT_THROW(fam.survival(-1.0, 1.0), DomainError);
  EXPECT_THROW(fam.survival(1.0, 0.0), DomainError);
  EXPECT_THROW(fam.survival(1.0, -2.0), DomainError);
  EXPECT_THROW(SeverityFamily::gamma_rate(0.0), DomainError);
}

TEST(Survival, CustomBaselineOutsideUnitIntervalIsEvaluationError) {
  CustomBaseline c;
  c.label = "broken";
  c.cdf = [](double x) { return 1.5 * x; };
  c.density = [](double) { return 1.5; };
  const auto fam = SeverityFamily::scale(BaselineDistribution::custom(c));
  EXPECT_THROW(fam.survival(1.0, 1.0), EvaluationError);
}

TEST(Survival, NonIncreasingInXForEveryFamily) {
  const auto xs = linspace(0.0, 6.0, 241);
  for (const auto& fam : families()) {
    for (double alpha : {0.4, 1.0, 3.3}) {
      for (std::size_t k = 1; k < xs.size(); ++k) {
        EXPECT_LE(fam.survival(xs[k], alpha) - fam.survival(xs[k - 1], alpha), 1e-12)
            << fam.describe() << " alpha=" << alpha << " x=" << xs[k];
      }
    }
  }
}

TEST(Density, IntegratesToCdf) {
  for (const auto& fam : families()) {
    for (double alpha : {0.8, 2.0}) {
      for (double x : {0.5, 1.7, 3.0}) {
        // Start slightly above zero to avoid integrable singularities.
        const double lo = 1e-9;
        const double quad = oracle::integrate([&](double t) { return fam.density(t, alpha); }, lo, x,
                                              1e-11);
        EXPECT_NEAR(quad + fam.cdf(lo, alpha), fam.cdf(x, alpha), 1e-6)
            << fam.describe() << " alpha=" << alpha << " x=" << x;
      }
    }
  }
}

TEST(Hazard, ExponentialIsConstant) {
  const auto fam = SeverityFamily::exponential();
  for (double x : {0.0, 0.3, 5.0, 40.0}) EXPECT_NEAR(fam.hazard(x, 2.0), 2.0, 1e-12);
}

TEST(Hazard, WeibullRateClosedForms) {
  const double a = 1.7;
  const double beta = 0.9;
  const auto fam = SeverityFamily::weibull_rate(a);
  for (double x : {0.2, 1.0, 2.4}) {
    const double sf = std::exp(-beta * std::pow(x, a));
    EXPECT_NEAR(fam.survival(x, beta), sf, 1e-15);
    EXPECT_NEAR(fam.density(x, beta), a * beta * std::pow(x, a - 1.0) * sf, 1e-14);
    EXPECT_NEAR(fam.hazard(x, beta), a * beta * std::pow(x, a - 1.0), 1e-13);
  }
}

TEST(Hazard, GammaReversedHazardAgainstQuadratureCdf) {
  const auto fam = SeverityFamily::gamma(10.09);
  const double x = 1.0;
  const double alpha = 3.0;
  auto dens = [&](double t) {
    return t * t * std::exp(-t / 10.09) / (2.0 * std::pow(10.09, 3.0));
  };
  const double cdf = oracle::integrate(dens, 0.0, x, 1e-16);
  EXPECT_NEAR(fam.reversed_hazard(x, alpha), dens(x) / cdf, 1e-8);
  EXPECT_NEAR(fam.reversed_hazard(x, alpha), 2.92604036323635660, 1e-8);
}

TEST(Hazard, SingularWhenDenominatorUnderflows) {
  EXPECT_THROW(SeverityFamily::exponential().reversed_hazard(0.0, 1.0), SingularityError);
  EXPECT_THROW(SeverityFamily::scale(BaselineDistribution::uniform(1.0)).hazard(2.0, 1.0),
               SingularityError);
}

TEST(Identities, ProportionalHazardIsPowerOfBaselineInLogSpace) {
  for (const auto& b : baselines()) {
    const auto fam = SeverityFamily::proportional_hazard(b);
    for (double alpha : {0.3, 1.0, 4.2}) {
      for (double x : {0.1, 0.9, 2.5}) {
        EXPECT_NEAR(fam.log_survival(x, alpha), alpha * b.log_survival(x),
                    1e-15 * (1.0 + std::abs(alpha * b.log_survival(x))));
      }
    }
  }
}

// Five-point stencils in α.
double fd_dalpha(const SeverityFamily& fam, double x, double alpha) {
  const double h = 1e-3 * alpha;
  auto f = [&](double a) { return fam.survival(x, a); };
  return (-f(alpha + 2 * h) + 8 * f(alpha + h) - 8 * f(alpha - h) + f(alpha - 2 * h)) / (12 * h);
}

double fd_d2alpha(const SeverityFamily& fam, double x, double alpha) {
  const double h = 1e-3 * alpha;
  auto f = [&](double a) { return fam.survival(x, a); };
  return (-f(alpha + 2 * h) + 16 * f(alpha + h) - 30 * f(alpha) + 16 * f(alpha - h) -
          f(alpha - 2 * h)) /
         (12 * h * h);
}

void expect_relative(double got, double want, double rel, const std::string& what) {
  EXPECT_LE(std::abs(got - want), rel * std::max(std::abs(want), 1e-300)) << what << " got " << got
                                                                          << " want " << want;
}

TEST(Identities, KumaraswamyGParameterDerivatives) {
  for (const auto& b : baselines()) {
    const double gam = 1.8;
    const auto fam = SeverityFamily::kumaraswamy_g(b, gam);
    for (double alpha : {0.5, 1.4, 3.0}) {
      for (double x : {0.3, 0.9, 1.6}) {
        const double g = std::pow(b.cdf(x), gam);
        const double l = std::log(1.0 - g);
        const double first = l * std::pow(1.0 - g, alpha);
        const double second = l * l * std::pow(1.0 - g, alpha);
        expect_relative(*fam.survival_dalpha(x, alpha), first, 1e-12, b.describe());
        expect_relative(fd_dalpha(fam, x, alpha), first, 1e-4, b.describe());
        expect_relative(fd_d2alpha(fam, x, alpha), second, 1e-4, b.describe());
      }
    }
  }
}

TEST(Identities, ScaleFamilyParameterDerivative) {
  for (const auto& b : baselines()) {
    const auto fam = SeverityFamily::scale(b);
    for (double alpha : {0.5, 1.4, 2.0}) {
      for (double x : {0.3, 0.9, 1.6}) {
        if (b.survival(alpha * x) <= 0.0) continue;
        const double closed = -x * b.density(alpha * x);
        expect_relative(*fam.survival_dalpha(x, alpha), closed, 1e-12, b.describe());
        expect_relative(fd_dalpha(fam, x, alpha), closed, 1e-4, b.describe());
      }
    }
  }
}

TEST(Identities, ProportionalHazardParameterDerivative) {
  for (const auto& b : baselines()) {
    const auto fam = SeverityFamily::proportional_hazard(b);
    for (double alpha : {0.5, 1.4, 2.0}) {
      for (double x : {0.3, 0.9, 1.6}) {
        const double sb = b.survival(x);
        if (sb <= 0.0) continue;
        const double closed = std::log(sb) * std::pow(sb, alpha);
        expect_relative(fd_dalpha(fam, x, alpha), closed, 1e-4, b.describe());
        expect_relative(fd_d2alpha(fam, x, alpha), std::log(sb) * closed, 1e-4, b.describe());
      }
    }
  }
}

TEST(Identities, ClosedFormDerivativesMatchFiniteDifferences) {
  for (const auto& fam : families()) {
    for (double alpha : {0.7, 2.2}) {
      for (double x : {0.4, 1.3}) {
        const auto d1 = fam.survival_dalpha(x, alpha);
        if (d1 && std::abs(*d1) > 1e-9) {
          expect_relative(fd_dalpha(fam, x, alpha), *d1, 1e-4, fam.describe());
        }
        const auto d2 = fam.survival_d2alpha(x, alpha);
        if (d2 && std::abs(*d2) > 1e-9) {
          expect_relative(fd_d2alpha(fam, x, alpha), *d2, 1e-4, fam.describe());
        }
      }
    }
  }
}

TEST(Quantile, InvertsCdf) {
  for (const auto& fam : families()) {
    for (double alpha : {0.6, 2.5}) {
      for (double u : {0.01, 0.3, 0.5, 0.93}) {
        const double x = fam.quantile(u, alpha);
        EXPECT_NEAR(fam.cdf(x, alpha), u, 1e-9) << fam.describe();
      }
    }
  }
}

TEST(Psi, BuiltInsRoundTrip) {
  for (const auto& psi : {PsiTransform::neg_log(), PsiTransform::exponential_decay(1.3),
                          PsiTransform::power_inverse(0.8)}) {
    for (int k = 1; k < 1000; ++k) {
      const double p = k / 1000.0;
      EXPECT_NEAR(psi.inverse(psi(p)), p, 1e-12) << psi.describe();
    }
  }
}

TEST(Psi, RejectsEndpoints) {
  const auto psi = PsiTransform::neg_log();
  EXPECT_THROW(psi(0.0), DomainError);
  EXPECT_THROW(psi(1.0), DomainError);
  EXPECT_THROW(psi(1.2), DomainError);
}

TEST(Psi, BuiltInsStrictlyDecreasingAndConvex) {
  const auto xs = linspace(0.3, 3.0, 5);
  for (const auto& psi : {PsiTransform::neg_log(), PsiTransform::exponential_decay(1.3),
                          PsiTransform::power_inverse(0.8)}) {
    const auto r = check_regularity(SeverityFamily::exponential(), psi, {1.0, 2.0, 3.0}, xs);
    EXPECT_TRUE(r.psi_decreasing.holds) << psi.describe();
    EXPECT_GT(r.psi_decreasing.worst_margin, 0.0) << psi.describe();
    EXPECT_TRUE(r.psi_convex.holds) << psi.describe();
    EXPECT_FALSE(r.psi_increasing.holds) << psi.describe();
  }
}

TEST(Psi, PlainPowerIsIncreasing) {
  const auto r = check_regularity(SeverityFamily::exponential(), PsiTransform::power(2.0),
                                  {1.0, 2.0, 3.0}, {1.0});
  EXPECT_TRUE(r.psi_increasing.holds);
  EXPECT_FALSE(r.psi_decreasing.holds);
}

TEST(Psi, NegLogIsNotLogConvexAboveOneOverE) {
  // (log ψ)'' = (ψ - 1)/(p ψ)^2 < 0 for p > 1/e.
  const std::vector<double> low{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35};
  const std::vector<double> high{0.4, 0.5, 0.6, 0.7, 0.8};
  const auto fam = SeverityFamily::exponential();
  EXPECT_TRUE(check_regularity(fam, PsiTransform::neg_log(), {1, 2, 3}, {1.0}, 1e-9, low)
                  .psi_logconvex.holds);
  EXPECT_FALSE(check_regularity(fam, PsiTransform::neg_log(), {1, 2, 3}, {1.0}, 1e-9, high)
                   .psi_logconvex.holds);
}

TEST(Regularity, ExponentialIsLogLinear) {
  const auto r = check_regularity(SeverityFamily::exponential(), PsiTransform::neg_log(),
                                  linspace(0.5, 5.0, 10), linspace(0.1, 10.0, 30));
  EXPECT_TRUE(r.decreasing_in_alpha.holds);
  EXPECT_TRUE(r.convex_in_alpha.holds);
  EXPECT_TRUE(r.logconvex_in_alpha.holds);
  EXPECT_TRUE(r.hazard_convex_in_alpha.holds);
  // r(x; α) = α increases with α.
  EXPECT_FALSE(r.hazard_decreasing_in_alpha.holds);
}

TEST(Regularity, GammaShapeReadingIsIncreasingInShape) {
  // Shape α, scale 10.09: Q(α, x/θ) grows with α, and is log-concave.
  const auto r = check_regularity(SeverityFamily::gamma(10.09), PsiTransform::neg_log(),
                                  linspace(1.9, 10.9, 10), linspace(0.5, 200.0, 60));
  EXPECT_FALSE(r.decreasing_in_alpha.holds);
  EXPECT_FALSE(r.logconvex_in_alpha.holds);
}

TEST(Regularity, GammaRateReadingIsDecreasingButLogConcave) {
  // Fixed shape 10.09, rate α: decreasing in α; IFR, so log F̄ is concave in α.
  const auto r = check_regularity(SeverityFamily::gamma_rate(10.09), PsiTransform::neg_log(),
                                  linspace(1.9, 10.9, 10), linspace(0.05, 20.0, 60));
  EXPECT_TRUE(r.decreasing_in_alpha.holds);
  EXPECT_FALSE(r.logconvex_in_alpha.holds);
  EXPECT_LT(r.logconvex_in_alpha.worst_margin, -1e-3);
}

TEST(Regularity, ExponentialOfRatesShapeOneMatchesExponential) {
  const auto g = linspace(0.5, 4.0, 8);
  const auto xs = linspace(0.1, 6.0, 12);
  const auto a = check_regularity(SeverityFamily::gamma_rate(1.0), PsiTransform::neg_log(), g, xs);
  const auto b = check_regularity(SeverityFamily::exponential(), PsiTransform::neg_log(), g, xs);
  EXPECT_EQ(a.decreasing_in_alpha.holds, b.decreasing_in_alpha.holds);
  EXPECT_EQ(a.logconvex_in_alpha.holds, b.logconvex_in_alpha.holds);
  EXPECT_NEAR(a.logconvex_in_alpha.worst_margin, b.logconvex_in_alpha.worst_margin, 1e-9);
}

TEST(Regularity, PowerGeneralizedWeibullInK) {
  // F̄ = exp(1 - (1 + x^c)^{1/k}) grows with k: the decreasing property fails.
  const auto r = check_regularity(SeverityFamily::power_generalized_weibull(2.0),
                                  PsiTransform::neg_log(), linspace(0.5, 5.0, 10),
                                  linspace(0.1, 5.0, 25));
  EXPECT_FALSE(r.decreasing_in_alpha.holds);
  EXPECT_GT(r.decreasing_in_alpha.points, 0u);
  for (double x : {0.5, 1.0, 2.0}) {
    EXPECT_GT(SeverityFamily::power_generalized_weibull(2.0).survival(x, 3.0),
              SeverityFamily::power_generalized_weibull(2.0).survival(x, 1.0));
  }
}

TEST(Regularity, AnalyticSecondDerivativeAgreesWithDividedDifferences) {
  // Exponential: ∂²F̄/∂α² = x² e^{-αx} > 0, matching convex_in_alpha.
  const auto fam = SeverityFamily::exponential();
  const auto r = check_regularity(fam, PsiTransform::neg_log(), linspace(0.5, 3.0, 6), {0.7, 1.5});
  EXPECT_TRUE(r.convex_in_alpha.holds);
  for (double a : {0.5, 1.0, 3.0}) EXPECT_GT(*fam.survival_d2alpha(1.5, a), 0.0);
  // Gamma rate, shape 10.09: closed form negative near the mode, as the check reports.
  const auto g = SeverityFamily::gamma_rate(10.09);
  const auto rg = check_regularity(g, PsiTransform::neg_log(), linspace(1.9, 10.9, 10),
                                   linspace(0.2, 6.0, 30));
  EXPECT_FALSE(rg.convex_in_alpha.holds);
  EXPECT_LT(*g.survival_d2alpha(rg.convex_in_alpha.x, rg.convex_in_alpha.parameter), 0.0);
}

TEST(Regularity, GridValidation) {
  const auto fam = SeverityFamily::exponential();
  const auto psi = PsiTransform::neg_log();
  EXPECT_THROW(check_regularity(fam, psi, {1.0, 2.0}, {1.0}), EvaluationError);
  EXPECT_THROW(check_regularity(fam, psi, {1.0, 3.0, 2.0}, {1.0}), EvaluationError);
  EXPECT_THROW(check_regularity(fam, psi, {1.0, 2.0, 3.0}, {}), EvaluationError);
}

TEST(Regularity, BaselineDensityDecreasing) {
  const auto xs = linspace(0.01, 5.0, 50);
  EXPECT_TRUE(baseline_density_decreasing(BaselineDistribution::exponential(1.0), xs).holds);
  EXPECT_TRUE(baseline_density_decreasing(BaselineDistribution::lomax(2.0, 1.0), xs).holds);
  EXPECT_FALSE(baseline_density_decreasing(BaselineDistribution::weibull(2.5, 1.0), xs).holds);
}

TEST(Sampling, GammaSamplerMatchesMean) {
  for (double shape : {0.5, 1.5, 10.09}) {
    const auto fam = SeverityFamily::gamma_rate(shape);
    std::uint64_t s = 0x9E3779B97F4A7C15ull;
    auto next = [&]() {
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      return (static_cast<double>(s >> 11) + 0.5) * 0x1.0p-53;
    };
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += fam.sample(2.0, next);
    const double mean = shape / 2.0;
    const double sd = std::sqrt(shape) / 2.0;
    EXPECT_NEAR(sum / n, mean, 4.0 * sd / std::sqrt(n)) << shape;
  }
}

}  // namespace
}  // namespace claimorder
