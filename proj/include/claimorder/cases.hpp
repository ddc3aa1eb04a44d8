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

// Built-in worked example and counterexamples. Occurrence probabilities are
// stored as the published exponents of e; two published exponents are
// positive (p > 1) and are corrected by sign flip unless `literal` is set.

#ifndef CLAIMORDER_CASES_HPP_
#define CLAIMORDER_CASES_HPP_

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/severity.hpp"

namespace claimorder {

/// Which curve a case plots.
enum class CaseCurve {
  kMaxCdfDifference,  // F_{T_{N1:N1}} - F_{T*_{N2:N2}}
  kMinSurvivalDifference,  // F̄_{T_{1:N1}} - F̄_{T*_{1:N2}}
  kMaxCdfRatio,  // F_{T_{N1:N1}} / F_{T*_{N2:N2}}
};

/// Published parameters of one case, before any correction.
struct PublishedCase {
  std::string id;
  std::string title;
  double gamma_shape = 1.0;
  std::vector<double> log_p;  // p_i = e^{log_p[i]}
  std::vector<double> log_q;
  std::vector<double> alpha;
  std::vector<double> beta;
  double lambda_1 = 1.0;
  double lambda_2 = 1.0;
  std::vector<std::size_t> support;
  CaseCurve curve = CaseCurve::kMaxCdfDifference;
};

inline const std::vector<PublishedCase>& published_cases() {
  static const std::vector<PublishedCase> cases{
      {"ex3_1", "Worked example: maximum CDF difference", 1.5,
       {-0.7, -0.9, -3.0, -4.9, 3.9}, {-1.2, -1.5, -1.6, -2.6, 3.9},
       {1.9, 2.0, 3.0, 5.0, 6.0}, {4.9, 6.5, 7.6, 8.2, 10.9},
       0.9, 1.9, {3, 4, 5}, CaseCurve::kMaxCdfDifference},
      {"cex3_1", "First counterexample: maximum CDF difference", 1.5,
       {-0.7, -0.9, -3.0, -4.9, 3.9}, {-3.9, -1.5, -1.6, -4.2, 2.6},
       {1.9, 5.0, 5.5, 6.0, 10.0}, {0.7, 0.9, 3.0, 4.9, 3.9},
       0.9, 1.9, {3, 4, 5}, CaseCurve::kMaxCdfDifference},
      {"cex3_2", "Second counterexample: minimum survival difference", 10.09,
       {-0.7, -2.1, -3.2, -4.9, -6.9}, {-1.5, -1.6, -2.6, -3.9, -4.2},
       {1.9, 2.0, 3.0, 5.0, 6.0}, {4.9, 6.5, 7.6, 8.2, 10.9},
       10.9, 2.0, {3, 4, 5}, CaseCurve::kMinSurvivalDifference},
      {"cex3_3", "Third counterexample: maximum CDF ratio", 1.5,
       {-0.7, -0.9, -3.0, -4.9, 3.9}, {-1.2, -1.5, -1.6, -2.6, 3.9},
       {1.9, 2.0, 3.0, 5.0, 6.0}, {4.9, 6.5, 7.6, 8.2, 10.9},
       0.9, 1.9, {3, 4, 5}, CaseCurve::kMaxCdfRatio},
  };
  return cases;
}

inline std::optional<PublishedCase> find_published_case(std::string_view id) {
  for (const auto& c : published_cases()) {
    if (c.id == id) return c;
  }
  return std::nullopt;
}

/// Raised when a case is requested literally but has probabilities > 1.
class LiteralCaseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A case ready for evaluation, with any corrections listed.
struct ReproductionCase {
  PublishedCase published;
  Portfolio a;
  Portfolio b;
  ClaimCountDistribution counts_a;
  ClaimCountDistribution counts_b;
  std::vector<std::string> corrections;
};

inline ReproductionCase build_case(const PublishedCase& pc, bool literal = false) {
  std::vector<std::string> corrections;
  auto probabilities = [&](const std::vector<double>& exps, const char* sym) {
    std::vector<double> out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      double e = exps[i];
      if (e >= 0.0) {
        const std::string what = std::string(sym) + "_" + std::to_string(i + 1) + " = e^{" +
                                 detail::format_number(e) + "}";
        if (literal) {
          throw LiteralCaseError(pc.id + ": published " + what + " = " +
                                 detail::format_number(std::exp(e)) +
                                 " is not a probability; refusing to evaluate (drop --literal "
                                 "to apply the sign correction)");
        }
        corrections.push_back(what + " exceeds 1; using e^{" + detail::format_number(-e) + "}");
        e = -e;
      }
      out.push_back(std::exp(e));
    }
    return out;
  };
  const auto p = probabilities(pc.log_p, "p");
  const auto q = probabilities(pc.log_q, "q");
  const auto fam = SeverityFamily::gamma_rate(pc.gamma_shape);
  const auto psi = PsiTransform::neg_log();
  std::vector<Claim> ca;
  std::vector<Claim> cb;
  for (std::size_t i = 0; i < p.size(); ++i) {
    ca.push_back({p[i], pc.alpha[i]});
    cb.push_back({q[i], pc.beta[i]});
  }
  return ReproductionCase{pc,
                          Portfolio(fam, psi, ca),
                          Portfolio(fam, psi, cb),
                          poisson_counts(pc.lambda_1, pc.support),
                          poisson_counts(pc.lambda_2, pc.support),
                          std::move(corrections)};
}

}  // namespace claimorder

#endif  // CLAIMORDER_CASES_HPP_
