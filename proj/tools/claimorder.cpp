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

// claimorder: reproduce the built-in cases, audit theorems on an instance,
// report majorization relations, and cross-check curves by simulation.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "claimorder/commands.hpp"

int main(int argc, char** argv) {
  namespace cli = claimorder::cli;
  CLI::App app{"Stochastic comparison of extreme claims in Bernoulli-thinned portfolios"};
  app.require_subcommand(1);

  std::string case_id;
  std::string reproduce_out;
  bool literal = false;
  auto* reproduce = app.add_subcommand("reproduce", "Tabulate a built-in case as CSV and print its verdict");
  reproduce->add_option("case", case_id, "ex3_1, cex3_1, cex3_2 or cex3_3")->required();
  reproduce->add_option("--out", reproduce_out, "CSV output path");
  reproduce->add_flag("--literal", literal, "Refuse to correct published probabilities above 1");

  std::string audit_spec;
  std::string theorem = "all";
  std::string audit_out;
  auto* audit = app.add_subcommand("audit", "Check theorem hypotheses and conclusions on an instance");
  audit->add_option("spec", audit_spec, "Instance file (JSON)")->required();
  audit->add_option("--theorem", theorem, "Theorem id or 'all'");
  audit->add_option("--out", audit_out, "JSON report path");

  std::string majorize_spec;
  auto* majorize = app.add_subcommand("majorize", "Report vector and matrix majorization relations");
  majorize->add_option("spec", majorize_spec, "Instance file (JSON)")->required();

  std::string simulate_spec;
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  std::string simulate_out;
  auto* simulate = app.add_subcommand("simulate", "Compare Monte Carlo extremes with analytic CDFs");
  simulate->add_option("spec", simulate_spec, "Instance file (JSON)")->required();
  simulate->add_option("--samples", samples, "Replicates per curve")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Seed (defaults to the instance seed)");
  simulate->add_option("--out", simulate_out, "CSV path prefix for overlay tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (*reproduce) return cli::cmd_reproduce(case_id, reproduce_out, literal, std::cout, std::cerr);
    if (*audit) return cli::cmd_audit(audit_spec, theorem, audit_out, std::cout, std::cerr);
    if (*majorize) return cli::cmd_majorize(majorize_spec, std::cout, std::cerr);
    if (*simulate) {
      return cli::cmd_simulate(simulate_spec, samples, seed, simulate_out, std::cout, std::cerr);
    }
  } catch (const claimorder::EvaluationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return cli::kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
