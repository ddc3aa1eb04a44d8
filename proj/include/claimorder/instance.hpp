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

// Instance files (JSON): two portfolios, two count distributions, grid and
// tolerance settings. Errors name the offending field as a JSON pointer or
// give the line and column of a syntax error. The schema is documented in
// README.md.

#ifndef CLAIMORDER_INSTANCE_HPP_
#define CLAIMORDER_INSTANCE_HPP_

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimorder/error.hpp"
#include "claimorder/extremes.hpp"
#include "claimorder/severity.hpp"

namespace claimorder {

struct GridOptions {
  std::optional<double> x_min;
  std::optional<double> x_max;  // empty = auto
  std::size_t points = kDefaultGridPoints;
};

struct InstanceSpec {
  std::string name;
  Portfolio a;
  Portfolio b;
  ClaimCountDistribution counts_a;
  ClaimCountDistribution counts_b;
  GridOptions grid;
  double order_tol = 1e-9;
  double regularity_tol = 1e-9;
  std::uint64_t seed = 42;
};

namespace detail {

using Json = nlohmann::json;

inline const Json& field(const Json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) throw ParseError(ptr + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError("missing field " + ptr + "/" + key);
  return *it;
}

inline double number(const Json& obj, const std::string& key, const std::string& ptr) {
  const Json& v = field(obj, key, ptr);
  if (!v.is_number()) throw ParseError(ptr + "/" + key + ": expected a number");
  return v.get<double>();
}

inline std::string text(const Json& obj, const std::string& key, const std::string& ptr) {
  const Json& v = field(obj, key, ptr);
  if (!v.is_string()) throw ParseError(ptr + "/" + key + ": expected a string");
  return v.get<std::string>();
}

inline std::vector<double> numbers(const Json& obj, const std::string& key, const std::string& ptr) {
  const Json& v = field(obj, key, ptr);
  if (!v.is_array()) throw ParseError(ptr + "/" + key + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ParseError(ptr + "/" + key + "/" + std::to_string(i) + ": expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

inline std::vector<std::size_t> integers(const Json& obj, const std::string& key,
                                         const std::string& ptr) {
  const Json& v = field(obj, key, ptr);
  if (!v.is_array()) throw ParseError(ptr + "/" + key + ": expected an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_unsigned()) {
      throw ParseError(ptr + "/" + key + "/" + std::to_string(i) + ": expected a positive integer");
    }
    out.push_back(v[i].get<std::size_t>());
  }
  return out;
}

template <typename F>
auto at_pointer(const std::string& ptr, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(ptr + ": " + e.what());
  }
}

inline BaselineDistribution parse_baseline(const Json& j, const std::string& ptr) {
  const std::string kind = text(j, "kind", ptr);
  return at_pointer(ptr, [&] {
    if (kind == "exponential") return BaselineDistribution::exponential(number(j, "rate", ptr));
    if (kind == "weibull") {
      return BaselineDistribution::weibull(number(j, "shape", ptr), number(j, "scale", ptr));
    }
    if (kind == "lomax") {
      return BaselineDistribution::lomax(number(j, "shape", ptr), number(j, "scale", ptr));
    }
    if (kind == "uniform") return BaselineDistribution::uniform(number(j, "upper", ptr));
    throw ParseError(ptr + "/kind: unknown baseline '" + kind + "'");
  });
}

inline SeverityFamily parse_family(const Json& j, const std::string& ptr) {
  const std::string kind = text(j, "kind", ptr);
  return at_pointer(ptr, [&] {
    if (kind == "exponential") return SeverityFamily::exponential();
    if (kind == "weibull_rate") return SeverityFamily::weibull_rate(number(j, "shape", ptr));
    if (kind == "gamma") return SeverityFamily::gamma(number(j, "scale", ptr));
    if (kind == "gamma_rate") return SeverityFamily::gamma_rate(number(j, "shape", ptr));
    if (kind == "pgw") return SeverityFamily::power_generalized_weibull(number(j, "c", ptr));
    if (kind == "scale") {
      return SeverityFamily::scale(parse_baseline(field(j, "baseline", ptr), ptr + "/baseline"));
    }
    if (kind == "phr") {
      return SeverityFamily::proportional_hazard(
          parse_baseline(field(j, "baseline", ptr), ptr + "/baseline"));
    }
    if (kind == "kw_g") {
      return SeverityFamily::kumaraswamy_g(
          parse_baseline(field(j, "baseline", ptr), ptr + "/baseline"), number(j, "gamma", ptr));
    }
    throw ParseError(ptr + "/kind: unknown family '" + kind + "'");
  });
}

inline PsiTransform parse_psi(const Json& j, const std::string& ptr) {
  const std::string kind = text(j, "kind", ptr);
  return at_pointer(ptr, [&] {
    if (kind == "neg_log") return PsiTransform::neg_log();
    if (kind == "exp_decay") return PsiTransform::exponential_decay(number(j, "a", ptr));
    if (kind == "power_inverse") return PsiTransform::power_inverse(number(j, "b", ptr));
    if (kind == "power") return PsiTransform::power(number(j, "b", ptr));
    throw ParseError(ptr + "/kind: unknown psi '" + kind + "'");
  });
}

// Occurrence probabilities come from exactly one of p, log_p or psi_values.
inline Portfolio parse_portfolio(const Json& j, const std::string& ptr) {
  if (!j.is_object()) throw ParseError(ptr + ": expected an object");
  SeverityFamily fam = parse_family(field(j, "family", ptr), ptr + "/family");
  PsiTransform psi = parse_psi(field(j, "psi", ptr), ptr + "/psi");
  const std::vector<double> alpha = numbers(j, "alpha", ptr);
  std::vector<double> p;
  const int given = static_cast<int>(j.contains("p")) + static_cast<int>(j.contains("log_p")) +
                    static_cast<int>(j.contains("psi_values"));
  if (given == 0) throw ParseError("missing field " + ptr + "/p (or /log_p, /psi_values)");
  if (given > 1) throw ParseError(ptr + ": give only one of p, log_p, psi_values");
  if (j.contains("p")) {
    p = numbers(j, "p", ptr);
  } else if (j.contains("log_p")) {
    for (double e : numbers(j, "log_p", ptr)) p.push_back(std::exp(e));
  } else {
    const auto v = numbers(j, "psi_values", ptr);
    p = at_pointer(ptr + "/psi_values", [&] {
      std::vector<double> out;
      for (double x : v) out.push_back(psi.inverse(x));
      return out;
    });
  }
  if (p.size() != alpha.size()) {
    throw ParseError(ptr + ": probability and alpha vectors differ in length (" +
                     std::to_string(p.size()) + " vs " + std::to_string(alpha.size()) + ")");
  }
  return at_pointer(ptr, [&] {
    std::vector<Claim> claims;
    for (std::size_t i = 0; i < p.size(); ++i) claims.push_back({p[i], alpha[i]});
    return Portfolio(fam, psi, claims);
  });
}

inline ClaimCountDistribution parse_counts(const Json& j, const std::string& ptr) {
  const std::string kind = text(j, "kind", ptr);
  return at_pointer(ptr, [&] {
    if (kind == "poisson") {
      return ClaimCountDistribution::poisson(number(j, "lambda", ptr), integers(j, "support", ptr));
    }
    if (kind == "explicit") {
      return ClaimCountDistribution::from_weights(integers(j, "support", ptr),
                                                  numbers(j, "weights", ptr));
    }
    if (kind == "degenerate") {
      const Json& m = field(j, "m", ptr);
      if (!m.is_number_unsigned()) throw ParseError(ptr + "/m: expected a positive integer");
      return ClaimCountDistribution::degenerate(m.get<std::size_t>());
    }
    throw ParseError(ptr + "/kind: unknown count distribution '" + kind + "'");
  });
}

inline std::string locate(const std::string& textual, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < textual.size(); ++i) {
    if (textual[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace detail

/// Parses an instance from JSON text. Blank input is treated as an empty
/// object, so the first missing field is reported.
inline InstanceSpec parse_instance(const std::string& textual) {
  using detail::Json;
  Json j;
  const bool blank = textual.find_first_not_of(" \t\r\n") == std::string::npos;
  if (blank) {
    j = Json::object();
  } else {
    try {
      j = Json::parse(textual);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("syntax error at " + detail::locate(textual, e.byte > 0 ? e.byte - 1 : 0) +
                       ": " + e.what());
    }
  }
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  Portfolio a = detail::parse_portfolio(detail::field(j, "portfolio_a", ""), "/portfolio_a");
  Portfolio b = detail::parse_portfolio(detail::field(j, "portfolio_b", ""), "/portfolio_b");
  ClaimCountDistribution ca = detail::parse_counts(detail::field(j, "counts_a", ""), "/counts_a");
  ClaimCountDistribution cb = detail::parse_counts(detail::field(j, "counts_b", ""), "/counts_b");
  if (a.size() != b.size()) {
    throw ParseError("/portfolio_b: portfolio sizes differ (" + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()) + ")");
  }
  if (ca.max_support() > a.size()) throw ParseError("/counts_a/support: exceeds portfolio size");
  if (cb.max_support() > b.size()) throw ParseError("/counts_b/support: exceeds portfolio size");

  InstanceSpec spec{j.value("name", std::string("unnamed")), std::move(a), std::move(b),
                    std::move(ca), std::move(cb), {}, 1e-9, 1e-9, 42};
  if (j.contains("grid")) {
    const Json& g = j["grid"];
    if (!g.is_object()) throw ParseError("/grid: expected an object");
    if (g.contains("x_min")) spec.grid.x_min = detail::number(g, "x_min", "/grid");
    if (g.contains("x_max") && !(g["x_max"].is_string() && g["x_max"] == "auto")) {
      spec.grid.x_max = detail::number(g, "x_max", "/grid");
    }
    if (g.contains("points")) {
      if (!g["points"].is_number_unsigned()) throw ParseError("/grid/points: expected an integer");
      spec.grid.points = g["points"].get<std::size_t>();
    }
  }
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (t.contains("order")) spec.order_tol = detail::number(t, "order", "/tolerances");
    if (t.contains("regularity")) spec.regularity_tol = detail::number(t, "regularity", "/tolerances");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("/seed: expected a non-negative integer");
    spec.seed = j["seed"].get<std::uint64_t>();
  }
  return spec;
}

inline InstanceSpec load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_instance(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace claimorder

#endif  // CLAIMORDER_INSTANCE_HPP_
