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

// Command implementations behind the `claimorder` executable. Each command
// writes its report to a stream and returns a process exit code, so the
// same code paths are exercised by the tests.

#ifndef CLAIMORDER_COMMANDS_HPP_
#define CLAIMORDER_COMMANDS_HPP_

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimorder/audit.hpp"
#include "claimorder/cases.hpp"
#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/instance.hpp"
#include "claimorder/majorization.hpp"
#include "claimorder/ordercheck.hpp"
#include "claimorder/simulate.hpp"

namespace claimorder::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitCounterexample = 2,
  kExitNumerical = 3,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// CSV curve tables.

/// Shortest round-trip is not used: every value gets exactly 17 significant
/// digits in the "general" format, independent of the locale.
inline std::string csv_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

struct CurveTable {
  std::vector<double> x;
  std::vector<double> value_a;
  std::vector<double> value_b;
  std::vector<double> delta;
};

inline void write_csv(std::ostream& os, const CurveTable& t) {
  os << "x,value_a,value_b,delta\n";
  for (std::size_t k = 0; k < t.x.size(); ++k) {
    os << csv_number(t.x[k]) << ',' << csv_number(t.value_a[k]) << ',' << csv_number(t.value_b[k])
       << ',' << csv_number(t.delta[k]) << '\n';
  }
}

inline void write_csv_file(const std::string& path, const CurveTable& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_csv(out, t);
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

inline CurveTable tabulate(const std::vector<double>& grid, const Curve& a, const Curve& b,
                           bool ratio) {
  CurveTable t;
  t.x = grid;
  t.value_a = evaluate_on_grid(grid, a);
  t.value_b = evaluate_on_grid(grid, b);
  t.delta.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (ratio) {
      if (!(t.value_b[k] > 0.0)) {
        throw SingularityError("ratio denominator vanishes at x=" + csv_number(grid[k]));
      }
      t.delta[k] = t.value_a[k] / t.value_b[k];
    } else {
      t.delta[k] = t.value_a[k] - t.value_b[k];
    }
  }
  return t;
}

inline std::string fmt(double v, int digits = 6) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(digits) << v;
  return os.str();
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproductionOutcome {
  std::string case_id;
  std::vector<std::string> corrections;
  CurveTable table;
  std::string verdict;
  bool matches_published = false;
  double max_delta = 0.0;
  std::vector<SignChange> sign_changes;
  std::optional<std::pair<double, double>> decreasing_interval;
  std::optional<bool> counts_st_leq;
};

inline ReproductionOutcome reproduce(const PublishedCase& pc, bool literal = false,
                                     std::size_t points = kDefaultGridPoints,
                                     double tol = kOrderTolerance) {
  const ReproductionCase rc = build_case(pc, literal);
  ReproductionOutcome out;
  out.case_id = pc.id;
  out.corrections = rc.corrections;

  const bool min_kind = pc.curve == CaseCurve::kMinSurvivalDifference;
  const ExtremeKind kind = min_kind ? ExtremeKind::kMin : ExtremeKind::kMax;
  const Curve cdf_a = [&](double x) { return extreme_random(rc.a, rc.counts_a, kind, x, false).cdf; };
  const Curve cdf_b = [&](double x) { return extreme_random(rc.b, rc.counts_b, kind, x, false).cdf; };
  const double x_max = auto_upper_bound({cdf_a, cdf_b});
  const auto grid = hybrid_grid(1e-4 * x_max, x_max, points);

  switch (pc.curve) {
    case CaseCurve::kMaxCdfDifference: {
      out.table = tabulate(grid, cdf_a, cdf_b, false);
      out.max_delta = *std::max_element(out.table.delta.begin(), out.table.delta.end());
      const Curve diff = [&](double x) { return cdf_a(x) - cdf_b(x); };
      if (pc.id == "ex3_1") {
        out.matches_published = out.max_delta <= tol;
        out.verdict = out.matches_published
                          ? "difference ≤ 0 everywhere (max difference " + fmt(out.max_delta) + ")"
                          : "difference positive somewhere (max difference " + fmt(out.max_delta) +
                                ")";
      } else {
        out.sign_changes = find_sign_changes(diff, grid, tol);
        out.matches_published = !out.sign_changes.empty();
      }
      break;
    }
    case CaseCurve::kMinSurvivalDifference: {
      const Curve exact_sa = [&](double x) { return survival_min_random(rc.a, rc.counts_a, x); };
      const Curve exact_sb = [&](double x) { return survival_min_random(rc.b, rc.counts_b, x); };
      out.table = tabulate(grid, exact_sa, exact_sb, false);
      out.max_delta = *std::max_element(out.table.delta.begin(), out.table.delta.end());
      const Curve diff = [&](double x) { return exact_sa(x) - exact_sb(x); };
      out.sign_changes = find_sign_changes(diff, grid, tol);
      out.matches_published = !out.sign_changes.empty();
      out.counts_st_leq = counts_st_leq(rc.counts_a, rc.counts_b);
      break;
    }
    case CaseCurve::kMaxCdfRatio: {
      out.table = tabulate(grid, cdf_a, cdf_b, true);
      const OrderVerdict v = verify_rh(cdf_a, cdf_b, grid, tol);
      out.decreasing_interval = v.decreasing_interval;
      out.matches_published = !v.holds;
      out.verdict = v.decreasing_interval
                        ? "ratio decreases on [" + fmt(v.decreasing_interval->first) + "," +
                              fmt(v.decreasing_interval->second) + "]"
                        : "ratio non-decreasing on the grid";
      break;
    }
  }
  if (pc.curve != CaseCurve::kMaxCdfRatio && pc.id != "ex3_1") {
    out.verdict = out.sign_changes.empty()
                      ? "no sign change on the grid"
                      : "sign change at x ≈ " + fmt(out.sign_changes.front().x(), 8);
  }
  return out;
}

inline int cmd_reproduce(const std::string& case_id, const std::string& out_path, bool literal,
                         std::ostream& out, std::ostream& err) {
  const auto pc = find_published_case(case_id);
  if (!pc) {
    err << "error: unknown case '" << case_id << "' (expected ex3_1, cex3_1, cex3_2 or cex3_3)\n";
    return kExitUsage;
  }
  ReproductionOutcome r;
  try {
    r = reproduce(*pc, literal);
  } catch (const LiteralCaseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  out << pc->id << ": " << pc->title << "\n";
  out << "severity: Gamma with shape " << fmt(pc->gamma_shape) << " and rate alpha_i; psi = -ln p\n";
  for (const auto& c : r.corrections) out << "correction: " << c << "\n";
  if (r.counts_st_leq) out << "N1 <=st N2: " << (*r.counts_st_leq ? "true" : "false") << "\n";
  if (!out_path.empty()) {
    try {
      write_csv_file(out_path, r.table);
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    out << "wrote " << r.table.x.size() << " rows to " << out_path << "\n";
  }
  out << "verdict: " << r.verdict << "\n";
  if (!r.matches_published) {
    out << "note: the published shape was not reproduced\n";
    return kExitCounterexample;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// audit

inline AuditOptions audit_options(const InstanceSpec& spec) {
  AuditOptions opt;
  opt.grid_points = spec.grid.points;
  opt.x_min = spec.grid.x_min;
  opt.x_max = spec.grid.x_max;
  opt.tol = spec.order_tol;
  opt.regularity_tol = spec.regularity_tol;
  return opt;
}

inline nlohmann::json to_json(const TheoremAudit& a) {
  using nlohmann::json;
  json pre = json::array();
  for (const auto& p : a.preconditions) {
    pre.push_back({{"name", p.name}, {"satisfied", p.satisfied}, {"evidence", p.evidence}});
  }
  json conclusion{{"holds", a.conclusion.holds}, {"grid", a.conclusion.grid_spec}};
  conclusion["witness"] = a.conclusion.witness
                              ? json{{"x", a.conclusion.witness->x},
                                     {"lhs", a.conclusion.witness->lhs},
                                     {"rhs", a.conclusion.witness->rhs}}
                              : json(nullptr);
  conclusion["margin"] =
      std::isfinite(a.conclusion.margin) ? json(a.conclusion.margin) : json(nullptr);
  if (a.conclusion.crossing) {
    conclusion["crossing"] = {a.conclusion.crossing->first, a.conclusion.crossing->second};
  }
  if (a.conclusion.decreasing_interval) {
    conclusion["decreasing_interval"] = {a.conclusion.decreasing_interval->first,
                                         a.conclusion.decreasing_interval->second};
  }
  if (a.conclusion.pointwise_checked) {
    conclusion["pointwise_rh_violations"] = a.conclusion.pointwise_violations;
  }
  return json{{"theorem_id", to_string(a.theorem_id)},
              {"statement", std::string(theorem_info(a.theorem_id).statement)},
              {"preconditions", pre},
              {"conclusion", conclusion},
              {"classification", to_string(a.classification)},
              {"rechecked_at_double_resolution", a.rechecked},
              {"notes", a.notes}};
}

struct AuditRun {
  std::vector<TheoremAudit> audits;
  std::vector<std::pair<TheoremId, std::string>> not_applicable;
};

inline void print_audit_table(std::ostream& out, const AuditRun& run) {
  out << std::left << std::setw(20) << "theorem" << std::setw(8) << "pre" << std::setw(11)
      << "conclusion" << "classification\n";
  for (const auto& a : run.audits) {
    std::size_t ok = 0;
    for (const auto& p : a.preconditions) ok += p.satisfied ? 1 : 0;
    const std::string pre = std::to_string(ok) + "/" + std::to_string(a.preconditions.size());
    out << std::left << std::setw(20) << to_string(a.theorem_id) << std::setw(8) << pre
        << std::setw(11) << (a.conclusion.holds ? "holds" : "fails") << to_string(a.classification)
        << "\n";
    for (const auto& p : a.preconditions) {
      out << "    [" << (p.satisfied ? "x" : " ") << "] " << p.name;
      if (!p.evidence.empty()) out << ": " << p.evidence;
      out << "\n";
    }
    if (a.conclusion.witness) {
      out << "    witness x=" << fmt(a.conclusion.witness->x, 10) << " lhs="
          << fmt(a.conclusion.witness->lhs, 10) << " rhs=" << fmt(a.conclusion.witness->rhs, 10)
          << "\n";
    }
    for (const auto& n : a.notes) out << "    note: " << n << "\n";
  }
  for (const auto& [id, why] : run.not_applicable) {
    out << std::left << std::setw(20) << to_string(id) << "not applicable: " << why << "\n";
  }
}

inline int cmd_audit(const std::string& spec_path, const std::string& theorem,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
  std::vector<TheoremId> ids;
  const bool all = theorem == "all";
  if (all) {
    for (const auto& t : kTheorems) ids.push_back(t.id);
  } else {
    const auto id = parse_theorem_id(theorem);
    if (!id) {
      err << "error: unknown theorem id '" << theorem << "'\n";
      return kExitUsage;
    }
    ids.push_back(*id);
  }
  AuditRun run;
  std::string name;
  try {
    const InstanceSpec spec = load_instance(spec_path);
    name = spec.name;
    const AuditOptions opt = audit_options(spec);
    for (TheoremId id : ids) {
      try {
        run.audits.push_back(audit(id, spec.a, spec.b, spec.counts_a, spec.counts_b, opt));
      } catch (const StructuralError& e) {
        if (!all) throw;
        run.not_applicable.emplace_back(id, e.what());
      }
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StructuralError& e) {
    err << "structural mismatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  out << "instance: " << name << "\n";
  print_audit_table(out, run);
  bool counterexample = false;
  nlohmann::json report{{"instance", name}, {"audits", nlohmann::json::array()},
                        {"not_applicable", nlohmann::json::array()}};
  for (const auto& a : run.audits) {
    counterexample = counterexample || a.classification == Classification::kPotentialCounterexample;
    report["audits"].push_back(to_json(a));
  }
  for (const auto& [id, why] : run.not_applicable) {
    report["not_applicable"].push_back({{"theorem_id", to_string(id)}, {"reason", why}});
  }
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << out_path << " for writing\n";
      return kExitUsage;
    }
    f << report.dump(2) << "\n";
    out << "wrote JSON report to " << out_path << "\n";
  }
  return counterexample ? kExitCounterexample : kExitOk;
}

// ---------------------------------------------------------------------------
// majorize

inline std::string join(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i], 10);
  return s + ")";
}

inline void print_prefix_table(std::ostream& out, const PrefixTable& t, const char* la,
                               const char* lb) {
  out << "    " << std::left << std::setw(4) << "l" << std::setw(14) << std::string(la) + "(l)"
      << std::setw(14) << std::string(lb) + "(l)" << std::setw(14) << std::string("sum ") + la
      << std::setw(14) << std::string("sum ") + lb << "\n";
  for (std::size_t l = 0; l < t.prefix_a.size(); ++l) {
    out << "    " << std::left << std::setw(4) << (l + 1) << std::setw(14) << fmt(t.sorted_a[l], 8)
        << std::setw(14) << fmt(t.sorted_b[l], 8) << std::setw(14) << fmt(t.prefix_a[l], 8)
        << std::setw(14) << fmt(t.prefix_b[l], 8) << "\n";
  }
}

inline std::string describe(const MajorizationDetail& d, bool full) {
  if (d.holds) return "true";
  if (full && !d.totals_equal) return "false (totals differ)";
  return "false (prefix inequality fails at l=" + std::to_string(d.first_failure) + ")";
}

inline void report_vectors(std::ostream& out, const std::string& label, const std::vector<double>& a,
                           const std::vector<double>& b, const char* la, const char* lb) {
  out << label << ": " << la << " = " << join(a) << ", " << lb << " = " << join(b) << "\n";
  out << "  ascending prefix sums (x >=w y iff every prefix sum of x is <= that of y):\n";
  print_prefix_table(out, prefix_table(a, b), la, lb);
  out << "  " << la << " >=w " << lb << ": " << describe(weak_supermajorization_detail(a, b), false)
      << "\n";
  out << "  " << lb << " >=w " << la << ": " << describe(weak_supermajorization_detail(b, a), false)
      << "\n";
  out << "  " << la << " >=m " << lb << ": " << describe(majorization_detail(a, b), true) << "\n";
  out << "  " << lb << " >=m " << la << ": " << describe(majorization_detail(b, a), true) << "\n";
}

inline const char* chain_text(const DoublyStochasticResult& r) {
  switch (r.status) {
    case ChainStatus::kFeasible:
      return "true";
    case ChainStatus::kInfeasible:
      return "false";
    case ChainStatus::kNotConverged:
      return "undetermined (solver did not converge)";
  }
  return "unknown";
}

inline std::string mn_text(const MnReport& r) {
  if (r.holds) return "true";
  if (!r.positive) return "false (non-positive entry)";
  return "false (columns " + std::to_string(r.i + 1) + " and " + std::to_string(r.j + 1) +
         " are oppositely ordered)";
}

inline int cmd_majorize(const std::string& spec_path, std::ostream& out, std::ostream& err) {
  try {
    const InstanceSpec spec = load_instance(spec_path);
    const ParamMatrix ma = spec.a.param_matrix();
    const ParamMatrix mb = spec.b.param_matrix();
    out << "instance: " << spec.name << " (n = " << ma.size() << ")\n";
    out << "A = (psi(p), alpha), B = (psi(p*), beta), psi = " << spec.a.psi().describe() << "\n\n";
    report_vectors(out, "psi row", ma.row_psi, mb.row_psi, "psi(p)", "psi(p*)");
    out << "\n";
    report_vectors(out, "alpha row", ma.row_alpha, mb.row_alpha, "alpha", "beta");
    out << "\nmatrix relations:\n";
    out << "  A >w B (row weak majorization): " << (row_weakly_majorizes(ma, mb) ? "true" : "false")
        << "\n";
    out << "  B >w A (row weak majorization): " << (row_weakly_majorizes(mb, ma) ? "true" : "false")
        << "\n";
    out << "  A >row B: " << (row_majorizes(ma, mb) ? "true" : "false") << "\n";
    out << "  B >row A: " << (row_majorizes(mb, ma) ? "true" : "false") << "\n";
    out << "  A >> B (B = A P, P doubly stochastic): "
        << chain_text(chain_majorizes_doubly_stochastic(ma, mb)) << "\n";
    out << "  B >> A (A = B P, P doubly stochastic): "
        << chain_text(chain_majorizes_doubly_stochastic(mb, ma)) << "\n";
    out << "  A in M_n: " << mn_text(in_Mn_detail(ma)) << "\n";
    out << "  B in M_n: " << mn_text(in_Mn_detail(mb)) << "\n";
    out << "\ncounts:\n";
    out << "  N1 <=st N2: " << (counts_st_leq(spec.counts_a, spec.counts_b) ? "true" : "false")
        << "\n";
    out << "  N2 <=st N1: " << (counts_st_leq(spec.counts_b, spec.counts_a) ? "true" : "false")
        << "\n";
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

inline constexpr double kDkwLevel = 1e-3;

struct SimulationCheck {
  std::string side;  // "a" or "b"
  ExtremeKind kind = ExtremeKind::kMax;
  double ks = 0.0;
  double bound = 0.0;
  bool passes() const { return ks < bound; }
};

/// KS distance of simulated against analytic CDF for one portfolio/count pair.
inline SimulationCheck simulate_check(const Portfolio& pf, const ClaimCountDistribution& counts,
                                      ExtremeKind kind, const SimulationConfig& config,
                                      EmpiricalCurve* keep = nullptr) {
  EmpiricalCurve emp = sample_extreme(pf, counts, kind, config);
  SimulationCheck c;
  c.kind = kind;
  c.ks = ks_distance(emp, [&](double x) { return extreme_random(pf, counts, kind, x, false).cdf; });
  c.bound = dkw_bound(config.samples, kDkwLevel);
  if (keep) *keep = std::move(emp);
  return c;
}

inline std::string suffixed(const std::string& path, const std::string& tag) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_" + tag;
  }
  return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

inline int cmd_simulate(const std::string& spec_path, std::size_t samples,
                        std::optional<std::uint64_t> seed, const std::string& out_path,
                        std::ostream& out, std::ostream& err) {
  bool all_pass = true;
  try {
    const InstanceSpec spec = load_instance(spec_path);
    SimulationConfig config;
    config.samples = samples;
    config.seed = seed.value_or(spec.seed);
    out << "instance: " << spec.name << "\n";
    out << "samples: " << samples << ", seed: " << config.seed << ", DKW level: " << kDkwLevel
        << "\n";
    struct Side {
      const char* tag;
      const Portfolio* pf;
      const ClaimCountDistribution* counts;
    };
    const Side sides[] = {{"a", &spec.a, &spec.counts_a}, {"b", &spec.b, &spec.counts_b}};
    for (const auto& side : sides) {
      for (ExtremeKind kind : {ExtremeKind::kMin, ExtremeKind::kMax}) {
        EmpiricalCurve emp;
        SimulationCheck c = simulate_check(*side.pf, *side.counts, kind, config, &emp);
        c.side = side.tag;
        all_pass = all_pass && c.passes();
        out << "portfolio " << side.tag << ", " << to_string(kind) << ": KS = " << fmt(c.ks)
            << ", DKW bound = " << fmt(c.bound) << " -> " << (c.passes() ? "PASS" : "FAIL")
            << "\n";
        if (!out_path.empty()) {
          const Curve analytic = [&](double x) {
            return extreme_random(*side.pf, *side.counts, kind, x, false).cdf;
          };
          const double x_max = auto_upper_bound({analytic});
          const auto grid = hybrid_grid(1e-4 * x_max, x_max, spec.grid.points);
          const Curve empirical = [&](double x) { return emp.cdf(x); };
          const std::string path = suffixed(out_path, std::string(side.tag) + "_" + to_string(kind));
          write_csv_file(path, tabulate(grid, empirical, analytic, false));
          out << "  wrote " << path << " (value_a = empirical CDF, value_b = analytic CDF)\n";
        }
      }
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvaluationError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << "verdict: " << (all_pass ? "simulation agrees with the analytic curves"
                                  : "simulation disagrees with an analytic curve")
      << "\n";
  return all_pass ? kExitOk : kExitNumerical;
}

}  // namespace claimorder::cli

#endif  // CLAIMORDER_COMMANDS_HPP_
