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

// Theorem audits: each ordering result is paired with checkers for its
// hypotheses and a grid verification of its conclusion on a concrete pair
// of portfolios.

#ifndef CLAIMORDER_AUDIT_HPP_
#define CLAIMORDER_AUDIT_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/majorization.hpp"
#include "claimorder/ordercheck.hpp"
#include "claimorder/severity.hpp"

namespace claimorder {

enum class TheoremId {
  ST_MIN_ALPHA,
  ST_MIN_PSI,
  ST_MIN_RANDOM,
  ST_MAX_FIXED,
  ST_MAX_RANDOM,
  ST_MAX_KWG,
  ST_MAX_SCALE,
  ST_MAX_PHR,
  ST_MAX_CHAIN,
  ST_MAX_SCALE_CHAIN,
  RH_MAX_ALPHA,
  RH_MAX_PSI,
  RH_MAX_RANDOM,
  RH_MIN_ALPHA,
  RH_MIN_PSI,
  RH_MIN_RANDOM,
  RH_MIN_PRESERVE,
};

enum class OrderKind { kSt, kRh };

struct TheoremInfo {
  TheoremId id;
  std::string_view name;
  ExtremeKind extreme;
  OrderKind order;
  bool random_count;
  std::string_view statement;
};

inline constexpr std::array<TheoremInfo, 17> kTheorems{{
    {TheoremId::ST_MIN_ALPHA, "ST_MIN_ALPHA", ExtremeKind::kMin, OrderKind::kSt, false,
     "alpha >=w beta, equal p => T_{1:n} >=st T*_{1:n}"},
    {TheoremId::ST_MIN_PSI, "ST_MIN_PSI", ExtremeKind::kMin, OrderKind::kSt, false,
     "psi(p) >=w psi(p*), equal alpha => T_{1:n} >=st T*_{1:n}"},
    {TheoremId::ST_MIN_RANDOM, "ST_MIN_RANDOM", ExtremeKind::kMin, OrderKind::kSt, true,
     "(psi(p),alpha) >w (psi(p*),beta), N1 <=st N2 => T_{1:N1} >=st T*_{1:N2}"},
    {TheoremId::ST_MAX_FIXED, "ST_MAX_FIXED", ExtremeKind::kMax, OrderKind::kSt, false,
     "(psi(p),alpha) >w (psi(p*),beta) => T_{n:n} >=st T*_{n:n}"},
    {TheoremId::ST_MAX_RANDOM, "ST_MAX_RANDOM", ExtremeKind::kMax, OrderKind::kSt, true,
     "(psi(p),alpha) >w (psi(p*),beta), N1 <=st N2 => T_{N1:N1} >=st T*_{N2:N2}"},
    {TheoremId::ST_MAX_KWG, "ST_MAX_KWG", ExtremeKind::kMax, OrderKind::kSt, true,
     "Kumaraswamy-G severities, row weak majorization => T_{N1:N1} >=st T*_{N2:N2}"},
    {TheoremId::ST_MAX_SCALE, "ST_MAX_SCALE", ExtremeKind::kMax, OrderKind::kSt, true,
     "scale-family severities, row weak majorization => T_{N1:N1} >=st T*_{N2:N2}"},
    {TheoremId::ST_MAX_PHR, "ST_MAX_PHR", ExtremeKind::kMax, OrderKind::kSt, true,
     "proportional-hazard severities, row weak majorization => T_{N1:N1} >=st T*_{N2:N2}"},
    {TheoremId::ST_MAX_CHAIN, "ST_MAX_CHAIN", ExtremeKind::kMax, OrderKind::kSt, true,
     "(psi(p*),beta) = (psi(p),alpha) T => T_{N1:N1} >=st T*_{N2:N2}"},
    {TheoremId::ST_MAX_SCALE_CHAIN, "ST_MAX_SCALE_CHAIN", ExtremeKind::kMax, OrderKind::kSt, true,
     "scale family, (psi(p*),beta) = (psi(p),alpha) T => T_{N1:N1} >=st T*_{N2:N2}"},
    {TheoremId::RH_MAX_ALPHA, "RH_MAX_ALPHA", ExtremeKind::kMax, OrderKind::kRh, false,
     "alpha >=w beta, equal p => T_{n:n} >=rh T*_{n:n}"},
    {TheoremId::RH_MAX_PSI, "RH_MAX_PSI", ExtremeKind::kMax, OrderKind::kRh, false,
     "psi(p) >=w psi(p*), equal alpha => T_{n:n} >=rh T*_{n:n}"},
    {TheoremId::RH_MAX_RANDOM, "RH_MAX_RANDOM", ExtremeKind::kMax, OrderKind::kRh, true,
     "(psi(p),alpha) >w (psi(p*),beta), N1 = N2 => T_{N:N} >=rh T*_{N:N}"},
    {TheoremId::RH_MIN_ALPHA, "RH_MIN_ALPHA", ExtremeKind::kMin, OrderKind::kRh, false,
     "alpha >=m beta, equal p => T_{1:n} >=rh T*_{1:n}"},
    {TheoremId::RH_MIN_PSI, "RH_MIN_PSI", ExtremeKind::kMin, OrderKind::kRh, false,
     "psi(p) >=m psi(p*), equal alpha => T_{1:n} >=rh T*_{1:n}"},
    {TheoremId::RH_MIN_RANDOM, "RH_MIN_RANDOM", ExtremeKind::kMin, OrderKind::kRh, true,
     "(psi(p),alpha) >row (psi(p*),beta), N1 = N2 => T_{1:N} >=rh T*_{1:N}"},
    {TheoremId::RH_MIN_PRESERVE, "RH_MIN_PRESERVE", ExtremeKind::kMin, OrderKind::kRh, true,
     "fixed-m rh order with monotone-in-m conditions => T_{1:N} >=rh T*_{1:N}"},
}};

inline const TheoremInfo& theorem_info(TheoremId id) {
  return kTheorems[static_cast<std::size_t>(id)];
}

inline std::string to_string(TheoremId id) { return std::string(theorem_info(id).name); }

inline std::optional<TheoremId> parse_theorem_id(std::string_view s) {
  for (const auto& t : kTheorems) {
    if (t.name == s) return t.id;
  }
  return std::nullopt;
}

struct Precondition {
  std::string name;
  bool satisfied = false;
  std::string evidence;
};

enum class Classification {
  kConfirmed,
  kHypothesisViolatedConclusionFails,
  kHypothesisViolatedConclusionHolds,
  kPotentialCounterexample,
};

inline const char* to_string(Classification c) {
  switch (c) {
    case Classification::kConfirmed:
      return "confirmed";
    case Classification::kHypothesisViolatedConclusionFails:
      return "hypothesis_violated_and_conclusion_fails";
    case Classification::kHypothesisViolatedConclusionHolds:
      return "hypothesis_violated_but_conclusion_holds";
    case Classification::kPotentialCounterexample:
      return "POTENTIAL_COUNTEREXAMPLE";
  }
  return "unknown";
}

struct TheoremAudit {
  TheoremId theorem_id = TheoremId::ST_MIN_ALPHA;
  std::vector<Precondition> preconditions;
  OrderVerdict conclusion;
  Classification classification = Classification::kConfirmed;
  bool rechecked = false;  // conclusion re-run at doubled grid resolution
  std::vector<std::string> notes;

  bool all_preconditions() const {
    return std::all_of(preconditions.begin(), preconditions.end(),
                       [](const Precondition& p) { return p.satisfied; });
  }
};

struct AuditOptions {
  std::size_t grid_points = kDefaultGridPoints;
  std::optional<double> x_min;
  std::optional<double> x_max;
  double tol = kOrderTolerance;
  double regularity_tol = kRegularityTolerance;
  std::size_t alpha_points = 25;
  std::size_t p_points = 25;
  std::size_t x_points = 60;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline std::string join_vec(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s + ")";
}

inline std::vector<double> hull_grid(std::vector<double> values, std::size_t points, double lo_clamp,
                                     double hi_clamp) {
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  if (hi - lo < 1e-9 * (1.0 + std::abs(hi))) {
    lo *= 0.9;
    hi *= 1.1;
  }
  lo = std::max(lo, lo_clamp);
  hi = std::min(hi, hi_clamp);
  std::vector<double> g;
  for (std::size_t k = 0; k < points; ++k) {
    g.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1));
  }
  return g;
}

inline bool same_vector(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-12 * (1.0 + std::abs(a[i]))) return false;
  }
  return true;
}

inline Precondition from_check(const std::string& name, const HypothesisCheck& h) {
  return {name, h.holds, h.evidence()};
}

inline Precondition strict_from_check(const std::string& name, const HypothesisCheck& h) {
  return {name, h.holds && h.worst_margin > 0.0, h.evidence()};
}

inline Precondition weak_majorization_pre(const std::string& name, const RealVector& a,
                                          const RealVector& b) {
  const auto d = weak_supermajorization_detail(a, b);
  std::string ev = "prefix sums " + join_vec(d.table.prefix_a) + " vs " + join_vec(d.table.prefix_b);
  if (!d.holds) ev += "; fails at l=" + std::to_string(d.first_failure);
  return {name, d.holds, ev};
}

inline Precondition majorization_pre(const std::string& name, const RealVector& a,
                                     const RealVector& b) {
  const auto d = majorization_detail(a, b);
  std::string ev = "prefix sums " + join_vec(d.table.prefix_a) + " vs " + join_vec(d.table.prefix_b);
  if (!d.totals_equal) ev += "; totals differ";
  if (!d.holds && d.totals_equal) ev += "; fails at l=" + std::to_string(d.first_failure);
  return {name, d.holds, ev};
}

inline Precondition mn_pre(const std::string& name, const ParamMatrix& m) {
  const auto r = in_Mn_detail(m);
  std::string ev = r.holds ? "rows similarly ordered"
                           : (r.positive ? "columns " + std::to_string(r.i + 1) + "," +
                                               std::to_string(r.j + 1) + " ordered oppositely"
                                         : "non-positive entry");
  return {name, r.holds, ev};
}

}  // namespace detail

/// Everything an audit needs about a pair of portfolios, computed once.
class AuditContext {
 public:
  AuditContext(const Portfolio& a, const Portfolio& b, const ClaimCountDistribution& ca,
               const ClaimCountDistribution& cb, const AuditOptions& opt)
      : a_(a), b_(b), ca_(ca), cb_(cb), opt_(opt) {}

  const Portfolio& a() const { return a_; }
  const Portfolio& b() const { return b_; }
  const ClaimCountDistribution& counts_a() const { return ca_; }
  const ClaimCountDistribution& counts_b() const { return cb_; }
  const AuditOptions& options() const { return opt_; }

  /// Grid for a conclusion curve pair; `scale` multiplies the point count.
  std::vector<double> grid(ExtremeKind kind, bool random, std::size_t scale = 1) const {
    double hi = 0.0;
    if (opt_.x_max) {
      hi = *opt_.x_max;
    } else {
      hi = auto_upper_bound({[&](double x) { return cdf(a_, ca_, kind, random, x); },
                             [&](double x) { return cdf(b_, cb_, kind, random, x); }});
    }
    const double lo = opt_.x_min ? *opt_.x_min : 1e-4 * hi;
    return hybrid_grid(lo, hi, opt_.grid_points * scale);
  }

  static double cdf(const Portfolio& pf, const ClaimCountDistribution& c, ExtremeKind kind,
                    bool random, double x) {
    return random ? extreme_random(pf, c, kind, x).cdf
                  : extreme_fixed(pf, pf.size(), kind, x).cdf;
  }
  static double survival(const Portfolio& pf, const ClaimCountDistribution& c, ExtremeKind kind,
                         bool random, double x) {
    return random ? extreme_random(pf, c, kind, x).survival
                  : extreme_fixed(pf, pf.size(), kind, x).survival;
  }
  static double reversed_hazard(const Portfolio& pf, const ClaimCountDistribution& c,
                                ExtremeKind kind, bool random, double x) {
    if (random) return reversed_hazard_random(pf, c, kind, x);
    return kind == ExtremeKind::kMax ? reversed_hazard_max_fixed(pf, pf.size(), x)
                                     : reversed_hazard_min_fixed(pf, pf.size(), x);
  }

  /// Regularity of the shared family and ψ on the hull of the instance's
  /// parameters; x taken geometrically across the conclusion grid where all
  /// survivals stay representable.
  const RegularityReport& regularity() const {
    if (!regularity_) {
      std::vector<double> alphas = a_.alphas();
      const auto beta = b_.alphas();
      alphas.insert(alphas.end(), beta.begin(), beta.end());
      std::vector<double> ps = a_.probabilities();
      const auto qs = b_.probabilities();
      ps.insert(ps.end(), qs.begin(), qs.end());
      const auto ag = detail::hull_grid(alphas, opt_.alpha_points, 1e-12, 1e300);
      const auto pg = detail::hull_grid(ps, opt_.p_points, 1e-9, 1.0 - 1e-9);
      const auto cg = grid(ExtremeKind::kMax, false);
      std::vector<double> xg;
      const double lo = cg.front();
      const double hi = cg.back();
      for (std::size_t k = 0; k < opt_.x_points; ++k) {
        const double x = lo * std::pow(hi / lo, static_cast<double>(k) / (opt_.x_points - 1));
        bool usable = true;
        for (double a : ag) {
          usable = usable && a_.family().log_survival(x, a) > -600.0 &&
                   std::isfinite(a_.family().log_density(x, a));
        }
        if (usable) xg.push_back(x);
      }
      if (xg.empty()) throw EvaluationError("no usable x points for regularity checks");
      regularity_ = check_regularity(a_.family(), a_.psi(), ag, xg, opt_.regularity_tol, pg);
    }
    return *regularity_;
  }

 private:
  const Portfolio& a_;
  const Portfolio& b_;
  const ClaimCountDistribution& ca_;
  const ClaimCountDistribution& cb_;
  AuditOptions opt_;
  mutable std::optional<RegularityReport> regularity_;
};

namespace detail {

inline void require_structure(TheoremId id, const Portfolio& a, const Portfolio& b,
                              const ClaimCountDistribution& ca, const ClaimCountDistribution& cb) {
  const std::string name = to_string(id);
  if (a.size() != b.size()) {
    throw StructuralError(name + ": portfolios have different sizes " + std::to_string(a.size()) +
                          " and " + std::to_string(b.size()));
  }
  if (!a.family().same_law(b.family())) {
    throw StructuralError(name + ": portfolios use different severity families (" +
                          a.family().describe() + " vs " + b.family().describe() + ")");
  }
  if (!a.psi().same_transform(b.psi())) {
    throw StructuralError(name + ": portfolios use different psi transforms");
  }
  const auto& info = theorem_info(id);
  if (info.random_count) {
    if (ca.max_support() > a.size() || cb.max_support() > b.size()) {
      throw StructuralError(name + ": count support exceeds the portfolio size");
    }
  }
  switch (id) {
    case TheoremId::ST_MIN_ALPHA:
    case TheoremId::RH_MAX_ALPHA:
    case TheoremId::RH_MIN_ALPHA:
      if (!same_vector(a.probabilities(), b.probabilities())) {
        throw StructuralError(name + ": requires equal occurrence probabilities p = p*");
      }
      break;
    case TheoremId::ST_MIN_PSI:
    case TheoremId::RH_MAX_PSI:
    case TheoremId::RH_MIN_PSI:
      if (!same_vector(a.alphas(), b.alphas())) {
        throw StructuralError(name + ": requires equal severity parameters alpha = beta");
      }
      break;
    case TheoremId::RH_MAX_RANDOM:
    case TheoremId::RH_MIN_RANDOM:
    case TheoremId::RH_MIN_PRESERVE:
      if (!ca.same_as(cb)) {
        throw StructuralError(name + ": requires identically distributed counts N1 = N2");
      }
      break;
    case TheoremId::ST_MAX_KWG:
      if (!a.family().is<KumaraswamyG>()) {
        throw StructuralError(name + ": requires a Kumaraswamy-G family");
      }
      break;
    case TheoremId::ST_MAX_SCALE:
    case TheoremId::ST_MAX_SCALE_CHAIN:
      if (!a.family().is<ScaleFamily>()) throw StructuralError(name + ": requires a scale family");
      break;
    case TheoremId::ST_MAX_PHR:
      if (!a.family().is<ProportionalHazard>()) {
        throw StructuralError(name + ": requires a proportional-hazard family");
      }
      break;
    default:
      break;
  }
}

inline OrderVerdict run_conclusion(TheoremId id, const AuditContext& ctx, std::size_t scale) {
  const auto& info = theorem_info(id);
  const ExtremeKind kind = info.extreme;
  const bool random = info.random_count;
  const auto grid = ctx.grid(kind, random, scale);
  const Portfolio& a = ctx.a();
  const Portfolio& b = ctx.b();
  const auto& ca = ctx.counts_a();
  const auto& cb = ctx.counts_b();
  const double tol = ctx.options().tol;
  if (info.order == OrderKind::kSt) {
    return verify_st([&](double x) { return AuditContext::survival(a, ca, kind, random, x); },
                     [&](double x) { return AuditContext::survival(b, cb, kind, random, x); },
                     grid, tol);
  }
  return verify_rh([&](double x) { return AuditContext::cdf(a, ca, kind, random, x); },
                   [&](double x) { return AuditContext::cdf(b, cb, kind, random, x); }, grid, tol,
                   [&](double x) { return AuditContext::reversed_hazard(a, ca, kind, random, x); },
                   [&](double x) { return AuditContext::reversed_hazard(b, cb, kind, random, x); });
}

// Sub-conditions of the rh preservation result for random minima, each
// checked on the conclusion grid across consecutive support points.
inline void preserve_preconditions(const AuditContext& ctx, std::vector<Precondition>& out) {
  const auto& support = ctx.counts_a().support();
  const auto grid = ctx.grid(ExtremeKind::kMin, true);
  const double tol = ctx.options().tol;
  const Portfolio& a = ctx.a();
  const Portfolio& b = ctx.b();

  double worst_rh = std::numeric_limits<double>::infinity();
  double worst_ratio = std::numeric_limits<double>::infinity();
  double at_rh = 0.0;
  double at_ratio = 0.0;
  for (std::size_t k = 0; k + 1 < support.size(); ++k) {
    const std::size_t m0 = support[k];
    const std::size_t m1 = support[k + 1];
    for (double x : grid) {
      const double d_rh = reversed_hazard_min_fixed(b, m1, x) - reversed_hazard_min_fixed(b, m0, x);
      if (d_rh < worst_rh) {
        worst_rh = d_rh;
        at_rh = x;
      }
      const double r0 = extreme_fixed(a, m0, ExtremeKind::kMin, x).cdf /
                        extreme_fixed(b, m0, ExtremeKind::kMin, x).cdf;
      const double r1 = extreme_fixed(a, m1, ExtremeKind::kMin, x).cdf /
                        extreme_fixed(b, m1, ExtremeKind::kMin, x).cdf;
      if (r1 - r0 < worst_ratio) {
        worst_ratio = r1 - r0;
        at_ratio = x;
      }
    }
  }
  if (support.size() < 2) {
    out.push_back({"reversed hazard of B's fixed-m minimum increasing in m", true,
                   "single-point support"});
    out.push_back({"F_{A,1:m}/F_{B,1:m} increasing in m", true, "single-point support"});
  } else {
    out.push_back({"reversed hazard of B's fixed-m minimum increasing in m", worst_rh >= -tol,
                   "worst step " + fmt(worst_rh) + " at x=" + fmt(at_rh)});
    out.push_back({"F_{A,1:m}/F_{B,1:m} increasing in m", worst_ratio >= -tol,
                   "worst step " + fmt(worst_ratio) + " at x=" + fmt(at_ratio)});
  }
  bool fixed_ok = true;
  std::string ev;
  for (std::size_t m : support) {
    const auto v = verify_rh(
        [&](double x) { return extreme_fixed(a, m, ExtremeKind::kMin, x).cdf; },
        [&](double x) { return extreme_fixed(b, m, ExtremeKind::kMin, x).cdf; }, grid, tol);
    if (!v.holds) {
      fixed_ok = false;
      ev += "m=" + std::to_string(m) + " fails at x=" + fmt(v.witness->x) + "; ";
    }
  }
  out.push_back({"T_{1:m} >=rh T*_{1:m} for every m in the support", fixed_ok,
                 fixed_ok ? "verified on the grid" : ev});
}

}  // namespace detail

/// Audits one theorem on a pair of portfolios. Throws StructuralError when
/// the theorem's setting does not apply to the instance.
inline TheoremAudit audit(TheoremId id, const Portfolio& a, const Portfolio& b,
                          const ClaimCountDistribution& ca, const ClaimCountDistribution& cb,
                          const AuditOptions& opt = {}) {
  detail::require_structure(id, a, b, ca, cb);
  AuditContext ctx(a, b, ca, cb, opt);
  TheoremAudit out;
  out.theorem_id = id;
  auto& pre = out.preconditions;

  const ParamMatrix ma = a.param_matrix();
  const ParamMatrix mb = b.param_matrix();

  using detail::from_check;
  using detail::strict_from_check;
  auto reg = [&]() -> const RegularityReport& { return ctx.regularity(); };
  auto mn_both = [&] {
    pre.push_back(detail::mn_pre("(psi(p),alpha) in M_n", ma));
    pre.push_back(detail::mn_pre("(psi(p*),beta) in M_n", mb));
  };
  auto row_weak = [&] {
    pre.push_back(detail::weak_majorization_pre("psi row: psi(p) >=w psi(p*)", ma.row_psi, mb.row_psi));
    pre.push_back(detail::weak_majorization_pre("alpha row: alpha >=w beta", ma.row_alpha, mb.row_alpha));
  };
  auto counts_leq = [&] {
    pre.push_back({"N1 <=st N2", counts_st_leq(ca, cb),
                   ca.label() + " vs " + cb.label() + " on the declared supports"});
  };
  auto psi_sdc = [&] {
    pre.push_back(strict_from_check("psi strictly decreasing", reg().psi_decreasing));
    pre.push_back(from_check("psi convex", reg().psi_convex));
  };
  auto chain = [&] {
    const auto r = chain_majorizes_doubly_stochastic(ma, mb);
    std::string ev = r.status == ChainStatus::kFeasible     ? "doubly stochastic P found"
                     : r.status == ChainStatus::kInfeasible ? "no doubly stochastic P exists"
                                                            : "feasibility solver did not converge";
    pre.push_back({"(psi(p*),beta) = (psi(p),alpha) P with P doubly stochastic", r.feasible(), ev});
  };
  auto baseline_decreasing = [&] {
    const BaselineDistribution& base = std::get<ScaleFamily>(a.family().kind()).baseline;
    const auto g = ctx.grid(ExtremeKind::kMax, true);
    pre.push_back(from_check("baseline density decreasing in x",
                             baseline_density_decreasing(base, g, opt.regularity_tol)));
  };

  switch (id) {
    case TheoremId::ST_MIN_ALPHA:
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("survival log-convex in alpha", reg().logconvex_in_alpha));
      mn_both();
      pre.push_back(detail::weak_majorization_pre("alpha >=w beta", ma.row_alpha, mb.row_alpha));
      break;
    case TheoremId::ST_MIN_PSI:
      pre.push_back(from_check("psi decreasing", reg().psi_decreasing));
      pre.push_back(from_check("psi log-convex", reg().psi_logconvex));
      mn_both();
      pre.push_back(detail::weak_majorization_pre("psi(p) >=w psi(p*)", ma.row_psi, mb.row_psi));
      break;
    case TheoremId::ST_MIN_RANDOM:
      counts_leq();
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("survival log-convex in alpha", reg().logconvex_in_alpha));
      pre.push_back(strict_from_check("psi strictly decreasing", reg().psi_decreasing));
      pre.push_back(from_check("psi log-convex", reg().psi_logconvex));
      mn_both();
      row_weak();
      break;
    case TheoremId::ST_MAX_FIXED:
    case TheoremId::ST_MAX_RANDOM:
      if (id == TheoremId::ST_MAX_RANDOM) counts_leq();
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("survival convex in alpha", reg().convex_in_alpha));
      psi_sdc();
      mn_both();
      row_weak();
      break;
    case TheoremId::ST_MAX_KWG:
    case TheoremId::ST_MAX_PHR:
      counts_leq();
      psi_sdc();
      mn_both();
      row_weak();
      out.notes.push_back("family regularity (informational): decreasing " +
                          std::string(reg().decreasing_in_alpha.holds ? "yes" : "no") +
                          ", convex " + (reg().convex_in_alpha.holds ? "yes" : "no"));
      break;
    case TheoremId::ST_MAX_SCALE:
      counts_leq();
      psi_sdc();
      baseline_decreasing();
      mn_both();
      row_weak();
      break;
    case TheoremId::ST_MAX_CHAIN:
      counts_leq();
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("survival convex in alpha", reg().convex_in_alpha));
      psi_sdc();
      mn_both();
      chain();
      break;
    case TheoremId::ST_MAX_SCALE_CHAIN:
      counts_leq();
      psi_sdc();
      baseline_decreasing();
      mn_both();
      chain();
      break;
    case TheoremId::RH_MAX_ALPHA:
      pre.push_back(from_check("psi decreasing", reg().psi_decreasing));
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("survival log-convex in alpha", reg().logconvex_in_alpha));
      pre.push_back(from_check("hazard decreasing in alpha", reg().hazard_decreasing_in_alpha));
      pre.push_back(from_check("hazard convex in alpha", reg().hazard_convex_in_alpha));
      mn_both();
      pre.push_back(detail::weak_majorization_pre("alpha >=w beta", ma.row_alpha, mb.row_alpha));
      break;
    case TheoremId::RH_MAX_PSI:
      pre.push_back(from_check("psi decreasing", reg().psi_decreasing));
      pre.push_back(from_check("psi log-convex", reg().psi_logconvex));
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("hazard decreasing in alpha", reg().hazard_decreasing_in_alpha));
      mn_both();
      pre.push_back(detail::weak_majorization_pre("psi(p) >=w psi(p*)", ma.row_psi, mb.row_psi));
      break;
    case TheoremId::RH_MAX_RANDOM: {
      const std::size_t n = a.size() - 1;
      pre.push_back({"alpha_n >= beta_n", a.claims()[n].alpha >= b.claims()[n].alpha,
                     detail::fmt(a.claims()[n].alpha) + " vs " + detail::fmt(b.claims()[n].alpha)});
      pre.push_back({"p_n <= p*_n", a.claims()[n].p <= b.claims()[n].p,
                     detail::fmt(a.claims()[n].p) + " vs " + detail::fmt(b.claims()[n].p)});
      pre.push_back(strict_from_check("psi strictly decreasing", reg().psi_decreasing));
      pre.push_back(from_check("psi log-convex", reg().psi_logconvex));
      pre.push_back(from_check("survival decreasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("survival log-convex in alpha", reg().logconvex_in_alpha));
      pre.push_back(from_check("hazard decreasing in alpha", reg().hazard_decreasing_in_alpha));
      pre.push_back(from_check("hazard convex in alpha", reg().hazard_convex_in_alpha));
      mn_both();
      row_weak();
      break;
    }
    case TheoremId::RH_MIN_ALPHA:
      pre.push_back(from_check("CDF increasing in alpha", reg().decreasing_in_alpha));
      pre.push_back(from_check("CDF log-convex in alpha", reg().logconvex_in_alpha_of_F));
      pre.push_back(from_check("hazard convex in alpha", reg().hazard_convex_in_alpha));
      mn_both();
      pre.push_back(detail::majorization_pre("alpha >=m beta", ma.row_alpha, mb.row_alpha));
      break;
    case TheoremId::RH_MIN_PSI:
      pre.push_back(from_check("psi increasing", reg().psi_increasing));
      pre.push_back(from_check("psi log-convex", reg().psi_logconvex));
      mn_both();
      pre.push_back(detail::majorization_pre("psi(p) >=m psi(p*)", ma.row_psi, mb.row_psi));
      break;
    case TheoremId::RH_MIN_RANDOM:
      pre.push_back(strict_from_check("psi strictly increasing", reg().psi_increasing));
      pre.push_back(from_check("psi log-convex", reg().psi_logconvex));
      pre.push_back(from_check("CDF log-convex in alpha", reg().logconvex_in_alpha_of_F));
      pre.push_back(from_check("hazard convex in alpha", reg().hazard_convex_in_alpha));
      mn_both();
      pre.push_back(detail::majorization_pre("psi row: psi(p) >=m psi(p*)", ma.row_psi, mb.row_psi));
      pre.push_back(detail::majorization_pre("alpha row: alpha >=m beta", ma.row_alpha, mb.row_alpha));
      break;
    case TheoremId::RH_MIN_PRESERVE:
      detail::preserve_preconditions(ctx, pre);
      break;
  }

  out.conclusion = detail::run_conclusion(id, ctx, 1);
  const bool pre_ok = out.all_preconditions();
  if (pre_ok && !out.conclusion.holds) {
    out.rechecked = true;
    OrderVerdict fine = detail::run_conclusion(id, ctx, 2);
    if (fine.holds) {
      out.notes.push_back("violation at base resolution vanished at doubled resolution");
      out.conclusion = fine;
    } else {
      out.conclusion = fine;
    }
  }
  if (pre_ok) {
    out.classification = out.conclusion.holds ? Classification::kConfirmed
                                              : Classification::kPotentialCounterexample;
  } else {
    out.classification = out.conclusion.holds ? Classification::kHypothesisViolatedConclusionHolds
                                              : Classification::kHypothesisViolatedConclusionFails;
  }
  return out;
}

}  // namespace claimorder

#endif  // CLAIMORDER_AUDIT_HPP_
