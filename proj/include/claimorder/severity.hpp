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

// Severity laws F̄(x; α) indexed by a positive parameter α, the ψ transforms
// applied to occurrence probabilities, and grid checkers for the
// monotonicity / convexity hypotheses that the ordering results rely on.

#ifndef CLAIMORDER_SEVERITY_HPP_
#define CLAIMORDER_SEVERITY_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/special_functions.hpp"

namespace claimorder {

namespace detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be a positive finite number");
  }
}

inline std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// log(1 - e^{x}) for x <= 0, accurate on both ends.
inline double log1mexp(double x) {
  if (x > -std::numbers::ln2) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Baseline distributions G used by the scale, proportional-hazard and
// Kumaraswamy-G wrappers.

struct ExponentialBaseline {
  double rate = 1.0;
};
struct WeibullBaseline {
  double shape = 1.0;
  double scale = 1.0;
};
struct LomaxBaseline {
  double shape = 1.0;
  double scale = 1.0;
};
struct UniformBaseline {
  double upper = 1.0;
};
/// User-supplied G and g. `quantile` may be left empty; sampling then falls
/// back to bisection on the CDF.
struct CustomBaseline {
  std::string label;
  std::function<double(double)> cdf;
  std::function<double(double)> density;
  std::function<double(double)> quantile;
};

class BaselineDistribution {
 public:
  using Kind = std::variant<ExponentialBaseline, WeibullBaseline, LomaxBaseline,
                            UniformBaseline, CustomBaseline>;

  static BaselineDistribution exponential(double rate) {
    detail::require_positive(rate, "exponential baseline rate");
    return BaselineDistribution(ExponentialBaseline{rate});
  }
  static BaselineDistribution weibull(double shape, double scale) {
    detail::require_positive(shape, "weibull baseline shape");
    detail::require_positive(scale, "weibull baseline scale");
    return BaselineDistribution(WeibullBaseline{shape, scale});
  }
  static BaselineDistribution lomax(double shape, double scale) {
    detail::require_positive(shape, "lomax baseline shape");
    detail::require_positive(scale, "lomax baseline scale");
    return BaselineDistribution(LomaxBaseline{shape, scale});
  }
  static BaselineDistribution uniform(double upper) {
    detail::require_positive(upper, "uniform baseline upper bound");
    return BaselineDistribution(UniformBaseline{upper});
  }
  static BaselineDistribution custom(CustomBaseline c) {
    if (!c.cdf || !c.density) {
      throw DomainError("custom baseline needs both cdf and density");
    }
    return BaselineDistribution(std::move(c));
  }

  const Kind& kind() const { return kind_; }

  /// G(x), validated to lie in [0,1].
  double cdf(double x) const {
    check_x(x);
    const double g = std::visit(
        detail::Overloaded{
            [&](const ExponentialBaseline& b) { return -std::expm1(-b.rate * x); },
            [&](const WeibullBaseline& b) {
              return -std::expm1(-std::pow(x / b.scale, b.shape));
            },
            [&](const LomaxBaseline& b) {
              return -std::expm1(-b.shape * std::log1p(x / b.scale));
            },
            [&](const UniformBaseline& b) { return std::min(1.0, x / b.upper); },
            [&](const CustomBaseline& b) { return b.cdf(x); }},
        kind_);
    if (!(g >= 0.0 && g <= 1.0)) {
      throw EvaluationError("baseline CDF returned a value outside [0,1] at x=" +
                            detail::format_number(x));
    }
    return g;
  }

  /// log(1 - G(x)); -inf beyond a bounded support.
  double log_survival(double x) const {
    check_x(x);
    return std::visit(
        detail::Overloaded{
            [&](const ExponentialBaseline& b) { return -b.rate * x; },
            [&](const WeibullBaseline& b) { return -std::pow(x / b.scale, b.shape); },
            [&](const LomaxBaseline& b) { return -b.shape * std::log1p(x / b.scale); },
            [&](const UniformBaseline& b) {
              return x >= b.upper ? detail::kNegInf : std::log1p(-x / b.upper);
            },
            [&](const CustomBaseline&) { return std::log1p(-cdf(x)); }},
        kind_);
  }

  double survival(double x) const { return std::exp(log_survival(x)); }

  double density(double x) const {
    check_x(x);
    const double g = std::visit(
        detail::Overloaded{
            [&](const ExponentialBaseline& b) { return b.rate * std::exp(-b.rate * x); },
            [&](const WeibullBaseline& b) {
              const double z = x / b.scale;
              if (x == 0.0) {
                if (b.shape < 1.0) return std::numeric_limits<double>::infinity();
                return b.shape == 1.0 ? 1.0 / b.scale : 0.0;
              }
              return b.shape / b.scale * std::pow(z, b.shape - 1.0) *
                     std::exp(-std::pow(z, b.shape));
            },
            [&](const LomaxBaseline& b) {
              return b.shape / b.scale * std::pow(1.0 + x / b.scale, -(b.shape + 1.0));
            },
            [&](const UniformBaseline& b) { return x < b.upper ? 1.0 / b.upper : 0.0; },
            [&](const CustomBaseline& b) { return b.density(x); }},
        kind_);
    if (!(g >= 0.0)) {
      throw EvaluationError("baseline density negative or NaN at x=" +
                            detail::format_number(x));
    }
    return g;
  }

  /// g'(x) for the built-in baselines; empty for custom ones.
  std::optional<double> density_derivative(double x) const {
    check_x(x);
    return std::visit(
        detail::Overloaded{
            [&](const ExponentialBaseline& b) -> std::optional<double> {
              return -b.rate * density(x);
            },
            [&](const WeibullBaseline& b) -> std::optional<double> {
              if (x == 0.0) return std::nullopt;
              const double z = x / b.scale;
              return density(x) *
                     ((b.shape - 1.0) / x - b.shape / b.scale * std::pow(z, b.shape - 1.0));
            },
            [&](const LomaxBaseline& b) -> std::optional<double> {
              return -density(x) * (b.shape + 1.0) / (b.scale + x);
            },
            [&](const UniformBaseline&) -> std::optional<double> { return 0.0; },
            [&](const CustomBaseline&) -> std::optional<double> { return std::nullopt; }},
        kind_);
  }

  /// Inverse CDF at level u ∈ (0,1).
  double quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("baseline quantile level must be in (0,1)");
    return std::visit(
        detail::Overloaded{
            [&](const ExponentialBaseline& b) { return -std::log1p(-u) / b.rate; },
            [&](const WeibullBaseline& b) {
              return b.scale * std::pow(-std::log1p(-u), 1.0 / b.shape);
            },
            [&](const LomaxBaseline& b) {
              return b.scale * std::expm1(-std::log1p(-u) / b.shape);
            },
            [&](const UniformBaseline& b) { return u * b.upper; },
            [&](const CustomBaseline& b) {
              if (b.quantile) return b.quantile(u);
              return invert_cdf(u);
            }},
        kind_);
  }

  std::string describe() const {
    return std::visit(
        detail::Overloaded{
            [](const ExponentialBaseline& b) {
              return "exponential(rate=" + detail::format_number(b.rate) + ")";
            },
            [](const WeibullBaseline& b) {
              return "weibull(shape=" + detail::format_number(b.shape) +
                     ",scale=" + detail::format_number(b.scale) + ")";
            },
            [](const LomaxBaseline& b) {
              return "lomax(shape=" + detail::format_number(b.shape) +
                     ",scale=" + detail::format_number(b.scale) + ")";
            },
            [](const UniformBaseline& b) {
              return "uniform(upper=" + detail::format_number(b.upper) + ")";
            },
            [](const CustomBaseline& b) { return "custom(" + b.label + ")"; }},
        kind_);
  }

 private:
  explicit BaselineDistribution(Kind k) : kind_(std::move(k)) {}

  static void check_x(double x) {
    if (!(x >= 0.0)) throw DomainError("baseline evaluated at negative or NaN x");
  }

  double invert_cdf(double u) const {
    double hi = 1.0;
    while (cdf(hi) < u) {
      hi *= 2.0;
      if (hi > 1e300) throw EvaluationError("custom baseline quantile: CDF never reaches level");
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  Kind kind_;
};

// ---------------------------------------------------------------------------
// Severity families F̄(x; α).

/// F̄ = e^{-αx}.
struct Exponential {};
/// F̄ = e^{-α x^shape}; α is the rate.
struct WeibullRate {
  double shape = 1.0;
};
/// Shape α, fixed scale θ: density x^{α-1} e^{-x/θ} / (Γ(α) θ^α).
struct Gamma {
  double scale = 1.0;
};
/// Fixed shape k, rate α: density α^k x^{k-1} e^{-αx} / Γ(k).
struct GammaRate {
  double shape = 1.0;
};
/// F̄ = exp(1 - (1 + x^c)^{1/α}); α plays the role of k.
struct PowerGeneralizedWeibull {
  double c = 1.0;
};
/// F̄(x; α) = Ḡ(αx).
struct ScaleFamily {
  BaselineDistribution baseline;
};
/// F̄(x; α) = Ḡ(x)^α.
struct ProportionalHazard {
  BaselineDistribution baseline;
};
/// F̄(x; α) = (1 - G(x)^γ)^α.
struct KumaraswamyG {
  BaselineDistribution baseline;
  double gamma = 1.0;
};

class SeverityFamily {
 public:
  using Kind = std::variant<Exponential, WeibullRate, Gamma, GammaRate,
                            PowerGeneralizedWeibull, ScaleFamily,
                            ProportionalHazard, KumaraswamyG>;

  static SeverityFamily exponential() { return SeverityFamily(Exponential{}); }
  static SeverityFamily weibull_rate(double shape) {
    detail::require_positive(shape, "weibull shape");
    return SeverityFamily(WeibullRate{shape});
  }
  static SeverityFamily gamma(double scale) {
    detail::require_positive(scale, "gamma scale");
    return SeverityFamily(Gamma{scale});
  }
  static SeverityFamily gamma_rate(double shape) {
    detail::require_positive(shape, "gamma shape");
    return SeverityFamily(GammaRate{shape});
  }
  static SeverityFamily power_generalized_weibull(double c) {
    detail::require_positive(c, "power-generalized weibull exponent c");
    return SeverityFamily(PowerGeneralizedWeibull{c});
  }
  static SeverityFamily scale(BaselineDistribution baseline) {
    return SeverityFamily(ScaleFamily{std::move(baseline)});
  }
  static SeverityFamily proportional_hazard(BaselineDistribution baseline) {
    return SeverityFamily(ProportionalHazard{std::move(baseline)});
  }
  static SeverityFamily kumaraswamy_g(BaselineDistribution baseline, double gamma) {
    detail::require_positive(gamma, "Kumaraswamy-G exponent gamma");
    return SeverityFamily(KumaraswamyG{std::move(baseline), gamma});
  }

  const Kind& kind() const { return kind_; }

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(kind_);
  }

  /// log F̄(x; α). Products of survivals are formed by summing these.
  double log_survival(double x, double alpha) const {
    check_args(x, alpha);
    const double v = std::visit(
        detail::Overloaded{
            [&](const Exponential&) { return -alpha * x; },
            [&](const WeibullRate& f) { return -alpha * std::pow(x, f.shape); },
            [&](const Gamma& f) {
              return special::log_incomplete_gamma(alpha, x / f.scale).log_q;
            },
            [&](const GammaRate& f) {
              return special::log_incomplete_gamma(f.shape, alpha * x).log_q;
            },
            [&](const PowerGeneralizedWeibull& f) {
              return -std::expm1(std::log1p(std::pow(x, f.c)) / alpha);
            },
            [&](const ScaleFamily& f) { return f.baseline.log_survival(alpha * x); },
            [&](const ProportionalHazard& f) {
              const double l = f.baseline.log_survival(x);
              return l == 0.0 ? 0.0 : alpha * l;
            },
            [&](const KumaraswamyG& f) {
              const double g = f.baseline.cdf(x);
              if (g == 0.0) return 0.0;
              return alpha * std::log1p(-std::pow(g, f.gamma));
            }},
        kind_);
    if (std::isnan(v) || v > 0.0) {
      throw EvaluationError("survival evaluation failed for " + describe());
    }
    return v;
  }

  double survival(double x, double alpha) const { return std::exp(log_survival(x, alpha)); }

  double cdf(double x, double alpha) const { return -std::expm1(log_survival(x, alpha)); }

  /// log F(x; α).
  double log_cdf(double x, double alpha) const {
    return detail::log1mexp(log_survival(x, alpha));
  }

  double log_density(double x, double alpha) const {
    check_args(x, alpha);
    return std::visit(
        detail::Overloaded{
            [&](const Exponential&) { return std::log(alpha) - alpha * x; },
            [&](const WeibullRate& f) {
              if (x == 0.0) {
                if (f.shape < 1.0) return std::numeric_limits<double>::infinity();
                return f.shape == 1.0 ? std::log(alpha) : detail::kNegInf;
              }
              return std::log(alpha * f.shape) + (f.shape - 1.0) * std::log(x) -
                     alpha * std::pow(x, f.shape);
            },
            [&](const Gamma& f) {
              if (x == 0.0) return gamma_log_density_at_zero(alpha);
              return (alpha - 1.0) * std::log(x) - x / f.scale - std::lgamma(alpha) -
                     alpha * std::log(f.scale);
            },
            [&](const GammaRate& f) {
              if (x == 0.0) {
                return f.shape == 1.0 ? std::log(alpha) : gamma_log_density_at_zero(f.shape);
              }
              return f.shape * std::log(alpha) + (f.shape - 1.0) * std::log(x) -
                     alpha * x - std::lgamma(f.shape);
            },
            [&](const PowerGeneralizedWeibull& f) {
              if (x == 0.0) {
                if (f.c < 1.0) return std::numeric_limits<double>::infinity();
                return f.c == 1.0 ? -std::log(alpha) : detail::kNegInf;
              }
              const double l1p = std::log1p(std::pow(x, f.c));
              return log_survival(x, alpha) - std::log(alpha) + std::log(f.c) +
                     (f.c - 1.0) * std::log(x) + (1.0 / alpha - 1.0) * l1p;
            },
            [&](const ScaleFamily& f) {
              return std::log(alpha) + std::log(f.baseline.density(alpha * x));
            },
            [&](const ProportionalHazard& f) {
              return std::log(alpha) + std::log(f.baseline.density(x)) +
                     (alpha - 1.0) * f.baseline.log_survival(x);
            },
            [&](const KumaraswamyG& f) {
              const double g = f.baseline.cdf(x);
              const double gg = std::pow(g, f.gamma);
              return std::log(alpha * f.gamma) + std::log(f.baseline.density(x)) +
                     (f.gamma - 1.0) * std::log(g) + (alpha - 1.0) * std::log1p(-gg);
            }},
        kind_);
  }

  double density(double x, double alpha) const { return std::exp(log_density(x, alpha)); }

  /// r(x; α) = f / F̄.
  double hazard(double x, double alpha) const {
    const double ls = log_survival(x, alpha);
    if (ls == detail::kNegInf) {
      throw SingularityError("hazard: survival is zero at x=" + detail::format_number(x));
    }
    return std::exp(log_density(x, alpha) - ls);
  }

  /// r̃(x; α) = f / F.
  double reversed_hazard(double x, double alpha) const {
    const double lc = log_cdf(x, alpha);
    if (lc == detail::kNegInf) {
      throw SingularityError("reversed hazard: CDF is zero at x=" + detail::format_number(x));
    }
    return std::exp(log_density(x, alpha) - lc);
  }

  /// Closed-form ∂F̄/∂α where one exists.
  std::optional<double> survival_dalpha(double x, double alpha) const {
    check_args(x, alpha);
    return std::visit(
        detail::Overloaded{
            [&](const Exponential&) -> std::optional<double> {
              return -x * std::exp(-alpha * x);
            },
            [&](const WeibullRate& f) -> std::optional<double> {
              const double xa = std::pow(x, f.shape);
              return -xa * std::exp(-alpha * xa);
            },
            [&](const Gamma&) -> std::optional<double> { return std::nullopt; },
            [&](const GammaRate& f) -> std::optional<double> {
              return -x * standard_gamma_density(f.shape, alpha * x);
            },
            [&](const PowerGeneralizedWeibull& f) -> std::optional<double> {
              const double l = std::log1p(std::pow(x, f.c));
              return survival(x, alpha) * std::exp(l / alpha) * l / (alpha * alpha);
            },
            [&](const ScaleFamily& f) -> std::optional<double> {
              return -x * f.baseline.density(alpha * x);
            },
            [&](const ProportionalHazard& f) -> std::optional<double> {
              const double l = f.baseline.log_survival(x);
              return l * std::exp(alpha * l);
            },
            [&](const KumaraswamyG& f) -> std::optional<double> {
              const double l = std::log1p(-std::pow(f.baseline.cdf(x), f.gamma));
              return l * std::exp(alpha * l);
            }},
        kind_);
  }

  /// Closed-form ∂²F̄/∂α² where one exists.
  std::optional<double> survival_d2alpha(double x, double alpha) const {
    check_args(x, alpha);
    return std::visit(
        detail::Overloaded{
            [&](const Exponential&) -> std::optional<double> {
              return x * x * std::exp(-alpha * x);
            },
            [&](const WeibullRate& f) -> std::optional<double> {
              const double xa = std::pow(x, f.shape);
              return xa * xa * std::exp(-alpha * xa);
            },
            [&](const Gamma&) -> std::optional<double> { return std::nullopt; },
            [&](const GammaRate& f) -> std::optional<double> {
              const double t = alpha * x;
              if (t == 0.0) return std::nullopt;
              const double g = standard_gamma_density(f.shape, t);
              return -x * x * g * ((f.shape - 1.0) / t - 1.0);
            },
            [&](const PowerGeneralizedWeibull& f) -> std::optional<double> {
              const double l = std::log1p(std::pow(x, f.c));
              const double s = std::exp(l / alpha);
              const double d1 = s * l / (alpha * alpha);
              const double d2 = -s * l * l / std::pow(alpha, 4) - 2.0 * s * l / std::pow(alpha, 3);
              return survival(x, alpha) * (d1 * d1 + d2);
            },
            [&](const ScaleFamily& f) -> std::optional<double> {
              const auto dg = f.baseline.density_derivative(alpha * x);
              if (!dg) return std::nullopt;
              return -x * x * *dg;
            },
            [&](const ProportionalHazard& f) -> std::optional<double> {
              const double l = f.baseline.log_survival(x);
              return l * l * std::exp(alpha * l);
            },
            [&](const KumaraswamyG& f) -> std::optional<double> {
              const double l = std::log1p(-std::pow(f.baseline.cdf(x), f.gamma));
              return l * l * std::exp(alpha * l);
            }},
        kind_);
  }

  /// Inverse CDF at level u ∈ (0,1). Gamma kinds use bisection here;
  /// `sample` draws them by rejection instead.
  double quantile(double u, double alpha) const {
    if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must be in (0,1)");
    detail::require_positive(alpha, "severity parameter alpha");
    const double log_s = std::log1p(-u);  // log F̄ at the target
    return std::visit(
        detail::Overloaded{
            [&](const Exponential&) { return -log_s / alpha; },
            [&](const WeibullRate& f) { return std::pow(-log_s / alpha, 1.0 / f.shape); },
            [&](const Gamma&) { return bisect_quantile(u, alpha); },
            [&](const GammaRate&) { return bisect_quantile(u, alpha); },
            [&](const PowerGeneralizedWeibull& f) {
              // (1 + x^c)^{1/α} = 1 - log F̄
              return std::pow(std::expm1(alpha * std::log1p(-log_s)), 1.0 / f.c);
            },
            [&](const ScaleFamily& f) { return f.baseline.quantile(u) / alpha; },
            [&](const ProportionalHazard& f) {
              // Ḡ(x) = F̄^{1/α}
              return f.baseline.quantile(-std::expm1(log_s / alpha));
            },
            [&](const KumaraswamyG& f) {
              // 1 - G^γ = F̄^{1/α}
              const double one_minus = -std::expm1(log_s / alpha);
              return f.baseline.quantile(std::pow(one_minus, 1.0 / f.gamma));
            }},
        kind_);
  }

  /// Draws one severity. `next_uniform()` must return values in (0,1).
  /// Gamma kinds use the Marsaglia–Tsang squeeze; everything else inverts
  /// the CDF.
  template <typename UniformSource>
  double sample(double alpha, UniformSource&& next_uniform) const {
    if (const auto* g = std::get_if<Gamma>(&kind_)) {
      return g->scale * sample_standard_gamma(alpha, next_uniform);
    }
    if (const auto* g = std::get_if<GammaRate>(&kind_)) {
      return sample_standard_gamma(g->shape, next_uniform) / alpha;
    }
    return quantile(next_uniform(), alpha);
  }

  std::string name() const {
    return std::visit(detail::Overloaded{[](const Exponential&) { return "exponential"; },
                                         [](const WeibullRate&) { return "weibull_rate"; },
                                         [](const Gamma&) { return "gamma"; },
                                         [](const GammaRate&) { return "gamma_rate"; },
                                         [](const PowerGeneralizedWeibull&) { return "pgw"; },
                                         [](const ScaleFamily&) { return "scale"; },
                                         [](const ProportionalHazard&) { return "phr"; },
                                         [](const KumaraswamyG&) { return "kw_g"; }},
                      kind_);
  }

  std::string describe() const {
    using detail::format_number;
    return std::visit(
        detail::Overloaded{
            [](const Exponential&) { return std::string("exponential"); },
            [](const WeibullRate& f) { return "weibull_rate(shape=" + format_number(f.shape) + ")"; },
            [](const Gamma& f) { return "gamma(scale=" + format_number(f.scale) + ")"; },
            [](const GammaRate& f) { return "gamma_rate(shape=" + format_number(f.shape) + ")"; },
            [](const PowerGeneralizedWeibull& f) { return "pgw(c=" + format_number(f.c) + ")"; },
            [](const ScaleFamily& f) { return "scale(" + f.baseline.describe() + ")"; },
            [](const ProportionalHazard& f) { return "phr(" + f.baseline.describe() + ")"; },
            [](const KumaraswamyG& f) {
              return "kw_g(" + f.baseline.describe() + ",gamma=" + format_number(f.gamma) + ")";
            }},
        kind_);
  }

  /// Same law up to the α parameter. Custom baselines compare by label.
  bool same_law(const SeverityFamily& other) const { return describe() == other.describe(); }

 private:
  explicit SeverityFamily(Kind k) : kind_(std::move(k)) {}

  static void check_args(double x, double alpha) {
    if (!(x >= 0.0)) throw DomainError("severity evaluated at negative or NaN x");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
      throw DomainError("severity parameter alpha must be > 0");
    }
  }

  static double gamma_log_density_at_zero(double shape) {
    if (shape < 1.0) return std::numeric_limits<double>::infinity();
    return shape == 1.0 ? 0.0 : detail::kNegInf;
  }

  static double standard_gamma_density(double shape, double t) {
    if (t == 0.0) return shape == 1.0 ? 1.0 : (shape < 1.0 ? std::numeric_limits<double>::infinity() : 0.0);
    return std::exp((shape - 1.0) * std::log(t) - t - std::lgamma(shape));
  }

  template <typename UniformSource>
  static double standard_normal(UniformSource& next_uniform) {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  template <typename UniformSource>
  static double sample_standard_gamma(double shape, UniformSource& next_uniform) {
    if (shape < 1.0) {
      const double boost = std::pow(next_uniform(), 1.0 / shape);
      return sample_standard_gamma(shape + 1.0, next_uniform) * boost;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double z = 0.0;
      double v = 0.0;
      do {
        z = standard_normal(next_uniform);
        v = 1.0 + c * z;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = next_uniform();
      if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
      if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double bisect_quantile(double u, double alpha) const {
    double hi = 1.0;
    while (cdf(hi, alpha) < u) {
      hi *= 2.0;
      if (hi > 1e300) throw EvaluationError("quantile search diverged");
    }
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
      const double mid = 0.5 * (lo + hi);
      (cdf(mid, alpha) < u ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  Kind kind_;
};

// ---------------------------------------------------------------------------
// ψ transforms: (0,1) → (0,∞).

class PsiTransform {
 public:
  enum class Kind { kNegLog, kExponentialDecay, kPowerInverse, kCustom };

  /// ψ(p) = -ln p.
  static PsiTransform neg_log() { return PsiTransform(Kind::kNegLog, 0.0); }
  /// ψ(p) = e^{-a p}.
  static PsiTransform exponential_decay(double a) {
    detail::require_positive(a, "exponential transform rate");
    return PsiTransform(Kind::kExponentialDecay, a);
  }
  /// ψ(p) = p^{-b}.
  static PsiTransform power_inverse(double b) {
    detail::require_positive(b, "power-inverse exponent");
    return PsiTransform(Kind::kPowerInverse, b);
  }
  /// ψ(p) = p^{b}, increasing on (0,1); experimental, exposed as Custom.
  static PsiTransform power(double b) {
    detail::require_positive(b, "power exponent");
    return custom("power(b=" + detail::format_number(b) + ")",
                  [b](double p) { return std::pow(p, b); },
                  [b](double v) { return std::pow(v, 1.0 / b); });
  }
  /// Arbitrary transform. Without an inverse, ψ^{-1} is found by bisection,
  /// which assumes ψ is monotone.
  static PsiTransform custom(std::string label, std::function<double(double)> fn,
                             std::function<double(double)> inverse = {}) {
    if (!fn) throw DomainError("custom psi needs a function");
    PsiTransform t(Kind::kCustom, 0.0);
    t.label_ = std::move(label);
    t.fn_ = std::move(fn);
    t.inverse_ = std::move(inverse);
    return t;
  }

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }

  double operator()(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("psi is defined on the open interval (0,1); got p=" +
                        detail::format_number(p));
    }
    double v = 0.0;
    switch (kind_) {
      case Kind::kNegLog:
        v = -std::log(p);
        break;
      case Kind::kExponentialDecay:
        v = std::exp(-param_ * p);
        break;
      case Kind::kPowerInverse:
        v = std::pow(p, -param_);
        break;
      case Kind::kCustom:
        v = fn_(p);
        break;
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw EvaluationError("psi(p) must be positive and finite");
    }
    return v;
  }

  /// ψ^{-1}(v); the result is validated to lie in (0,1).
  double inverse(double v) const {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("psi inverse needs v > 0");
    double p = 0.0;
    switch (kind_) {
      case Kind::kNegLog:
        p = std::exp(-v);
        break;
      case Kind::kExponentialDecay:
        p = -std::log(v) / param_;
        break;
      case Kind::kPowerInverse:
        p = std::pow(v, -1.0 / param_);
        break;
      case Kind::kCustom:
        p = inverse_ ? inverse_(v) : bisect_inverse(v);
        break;
    }
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("psi inverse of " + detail::format_number(v) + " lies outside (0,1)");
    }
    return p;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::kNegLog:
        return "neg_log";
      case Kind::kExponentialDecay:
        return "exp_decay";
      case Kind::kPowerInverse:
        return "power_inverse";
      case Kind::kCustom:
        return "custom";
    }
    return "unknown";
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::kNegLog:
        return "neg_log";
      case Kind::kExponentialDecay:
        return "exp_decay(a=" + detail::format_number(param_) + ")";
      case Kind::kPowerInverse:
        return "power_inverse(b=" + detail::format_number(param_) + ")";
      case Kind::kCustom:
        return "custom(" + label_ + ")";
    }
    return "unknown";
  }

  bool same_transform(const PsiTransform& other) const { return describe() == other.describe(); }

 private:
  PsiTransform(Kind k, double param) : kind_(k), param_(param) {}

  double bisect_inverse(double v) const {
    double lo = 1e-15;
    double hi = 1.0 - 1e-15;
    const bool increasing = fn_(hi) > fn_(lo);
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      const bool below = increasing ? fn_(mid) < v : fn_(mid) > v;
      (below ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  Kind kind_;
  double param_;
  std::string label_;
  std::function<double(double)> fn_;
  std::function<double(double)> inverse_;
};

// ---------------------------------------------------------------------------
// Regularity hypotheses on a grid.

/// Outcome of one grid inequality. `worst_margin` is the smallest signed
/// slack seen; the check holds when it is >= -tol. `x` / `parameter` locate
/// the worst point (x is NaN for ψ checks).
struct HypothesisCheck {
  bool holds = true;
  double worst_margin = std::numeric_limits<double>::infinity();
  double x = std::numeric_limits<double>::quiet_NaN();
  double parameter = std::numeric_limits<double>::quiet_NaN();
  std::size_t points = 0;

  void record(double margin, double at_x, double at_param) {
    ++points;
    if (margin < worst_margin) {
      worst_margin = margin;
      x = at_x;
      parameter = at_param;
    }
  }
  void finalize(double tol) { holds = points > 0 && worst_margin >= -tol; }

  std::string evidence() const {
    std::ostringstream os;
    os.precision(6);
    os << "worst margin " << worst_margin;
    if (!std::isnan(x)) os << " at x=" << x;
    if (!std::isnan(parameter)) os << " param=" << parameter;
    os << " over " << points << " checks";
    return os.str();
  }
};

struct RegularityReport {
  HypothesisCheck decreasing_in_alpha;        // F̄
  HypothesisCheck convex_in_alpha;            // F̄
  HypothesisCheck logconvex_in_alpha;         // F̄
  HypothesisCheck logconvex_in_alpha_of_F;    // F
  HypothesisCheck hazard_decreasing_in_alpha;
  HypothesisCheck hazard_convex_in_alpha;
  HypothesisCheck psi_decreasing;
  HypothesisCheck psi_convex;
  HypothesisCheck psi_logconvex;
  HypothesisCheck psi_increasing;
  std::vector<double> alpha_grid;
  std::vector<double> x_grid;
  std::vector<double> p_grid;
  double tol = 1e-9;
};

inline constexpr double kRegularityTolerance = 1e-9;

/// p-grid used when the caller does not restrict ψ to an interval:
/// k/200 for k = 1..199.
inline std::vector<double> default_p_grid() {
  std::vector<double> g;
  for (int k = 1; k < 200; ++k) g.push_back(k / 200.0);
  return g;
}

namespace detail {

inline void require_grid(const std::vector<double>& g, std::size_t min_size, const char* what) {
  if (g.size() < min_size) {
    throw EvaluationError(std::string(what) + " grid needs at least " +
                          std::to_string(min_size) + " points");
  }
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] > g[i - 1])) {
      throw EvaluationError(std::string(what) + " grid must be strictly increasing");
    }
  }
}

// Second divided difference scaled to approximate f''/2·2 = f'' on
// non-uniform grids.
inline double second_divided_difference(double a0, double a1, double a2, double f0, double f1,
                                        double f2) {
  return 2.0 * ((f2 - f1) / (a2 - a1) - (f1 - f0) / (a1 - a0)) / (a2 - a0);
}

// Fills `decreasing` (consecutive differences) and `convex` (second divided
// differences) for one row of values along `params`.
inline void check_row(const std::vector<double>& params, const std::vector<double>& values,
                      double at_x, HypothesisCheck* decreasing, HypothesisCheck* convex,
                      HypothesisCheck* increasing = nullptr) {
  for (std::size_t k = 0; k + 1 < params.size(); ++k) {
    const double diff = values[k + 1] - values[k];
    if (decreasing) decreasing->record(-diff, at_x, params[k]);
    if (increasing) increasing->record(diff, at_x, params[k]);
  }
  if (convex) {
    for (std::size_t k = 0; k + 2 < params.size(); ++k) {
      convex->record(second_divided_difference(params[k], params[k + 1], params[k + 2],
                                               values[k], values[k + 1], values[k + 2]),
                     at_x, params[k + 1]);
    }
  }
}

inline void require_all_finite(const std::vector<double>& v, const char* what) {
  for (double d : v) {
    if (!std::isfinite(d)) throw EvaluationError(std::string(what) + ": non-finite evaluation");
  }
}

}  // namespace detail

/// Evaluates each regularity hypothesis on the (x, α) grid and the ψ
/// hypotheses on `p_grid`: monotonicity by consecutive differences,
/// convexity by second divided differences, log-convexity by second divided
/// differences of the logarithm.
inline RegularityReport check_regularity(const SeverityFamily& family, const PsiTransform& psi,
                                         const std::vector<double>& alpha_grid,
                                         const std::vector<double>& x_grid,
                                         double tol = kRegularityTolerance,
                                         const std::vector<double>& p_grid = default_p_grid()) {
  detail::require_grid(alpha_grid, 3, "alpha");
  detail::require_grid(x_grid, 1, "x");
  detail::require_grid(p_grid, 3, "p");
  if (!(x_grid.front() > 0.0)) throw EvaluationError("x grid must be strictly positive");

  RegularityReport r;
  r.alpha_grid = alpha_grid;
  r.x_grid = x_grid;
  r.p_grid = p_grid;
  r.tol = tol;

  const std::size_t na = alpha_grid.size();
  std::vector<double> sf(na), log_sf(na), log_f(na), hz(na);
  for (double x : x_grid) {
    for (std::size_t k = 0; k < na; ++k) {
      log_sf[k] = family.log_survival(x, alpha_grid[k]);
      sf[k] = std::exp(log_sf[k]);
      log_f[k] = detail::log1mexp(log_sf[k]);
      hz[k] = family.hazard(x, alpha_grid[k]);
    }
    detail::require_all_finite(log_sf, "log survival");
    detail::require_all_finite(log_f, "log cdf");
    detail::require_all_finite(hz, "hazard");
    detail::check_row(alpha_grid, sf, x, &r.decreasing_in_alpha, &r.convex_in_alpha);
    detail::check_row(alpha_grid, log_sf, x, nullptr, &r.logconvex_in_alpha);
    detail::check_row(alpha_grid, log_f, x, nullptr, &r.logconvex_in_alpha_of_F);
    detail::check_row(alpha_grid, hz, x, &r.hazard_decreasing_in_alpha, &r.hazard_convex_in_alpha);
  }

  std::vector<double> psi_v(p_grid.size()), log_psi(p_grid.size());
  for (std::size_t k = 0; k < p_grid.size(); ++k) {
    psi_v[k] = psi(p_grid[k]);
    log_psi[k] = std::log(psi_v[k]);
  }
  detail::check_row(p_grid, psi_v, std::numeric_limits<double>::quiet_NaN(), &r.psi_decreasing,
                    &r.psi_convex, &r.psi_increasing);
  detail::check_row(p_grid, log_psi, std::numeric_limits<double>::quiet_NaN(), nullptr,
                    &r.psi_logconvex);

  for (HypothesisCheck* h :
       {&r.decreasing_in_alpha, &r.convex_in_alpha, &r.logconvex_in_alpha,
        &r.logconvex_in_alpha_of_F, &r.hazard_decreasing_in_alpha, &r.hazard_convex_in_alpha,
        &r.psi_decreasing, &r.psi_convex, &r.psi_logconvex, &r.psi_increasing}) {
    h->finalize(tol);
  }
  return r;
}

/// g(x) non-increasing on the grid (hypothesis of the scale-family results).
inline HypothesisCheck baseline_density_decreasing(const BaselineDistribution& baseline,
                                                   const std::vector<double>& x_grid,
                                                   double tol = kRegularityTolerance) {
  detail::require_grid(x_grid, 2, "x");
  std::vector<double> g(x_grid.size());
  for (std::size_t k = 0; k < x_grid.size(); ++k) g[k] = baseline.density(x_grid[k]);
  HypothesisCheck h;
  detail::check_row(x_grid, g, std::numeric_limits<double>::quiet_NaN(), &h, nullptr);
  h.finalize(tol);
  return h;
}

}  // namespace claimorder

#endif  // CLAIMORDER_SEVERITY_HPP_
