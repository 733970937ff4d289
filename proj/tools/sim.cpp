// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <CLI11.hpp>

#include "bcast/harness.hpp"

using namespace bcast;

namespace {

int run_command(const std::string& config_file, ExperimentConfig flags, CLI::App& sub, bool strict) {
  ExperimentConfig config = config_file.empty() ? ExperimentConfig{} : load_config(config_file);
  // explicit flags win over the file
  if (sub.count("--topology")) config.topology = flags.topology;
  if (sub.count("--size")) config.sizes = flags.sizes;
  if (sub.count("--alpha")) config.alphas = flags.alphas;
  if (sub.count("--eps")) config.eps = flags.eps;
  if (sub.count("--protocol")) config.protocol = flags.protocol;
  if (sub.count("--adversary")) config.adversaries = flags.adversaries;
  if (sub.count("--seeds")) config.seeds = flags.seeds;
  if (sub.count("--out")) config.out = flags.out;
  if (sub.count("--horizon")) config.horizon = flags.horizon;
  if (strict) config.validation = Validation::strict;

  const RunReport report = run_experiments(config);
  std::cout << csv_header() << '\n';
  for (const auto& row : report.rows) std::cout << csv_row(row) << '\n';
  for (const auto& row : report.rows) {
    for (const auto& v : row.violations) {
      std::cerr << (row.below_minimum ? "note: " : "violation: ") << row.protocol << " size " << row.size
                << " alpha " << row.alpha << " " << row.adversary << " seed " << row.seed << ": " << v << '\n';
    }
  }
  return report.strict_failure ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadcast simulator under fractional dynamic faults"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a parameter sweep and validate every trace");
  ExperimentConfig flags;
  std::optional<double> eps_flag;
  std::string config_file;
  bool strict = false;
  run->add_option("--config", config_file, "JSON config with the same field names");
  run->add_option("--topology", flags.topology, "complete or hypercube");
  run->add_option("--size", flags.sizes, "n for complete graphs, d for hypercubes");
  run->add_option("--alpha", flags.alphas, "loss fraction(s)");
  run->add_option("--eps", eps_flag, "slack constant");
  run->add_option("--protocol", flags.protocol, "protocol id");
  run->add_option("--adversary", flags.adversaries, "adversary id(s)");
  run->add_option("--seeds", flags.seeds, "seeds per adversary");
  run->add_option("--out", flags.out, "output directory for traces and summaries");
  run->add_option("--horizon", flags.horizon, "stop runs after this many steps");
  run->add_flag("--strict", strict, "exit nonzero on any invariant violation");

  auto* bnd = app.add_subcommand("bounds", "Print closed-form bounds as JSON");
  std::string b_topology = "complete";
  std::size_t b_size = 64;
  double b_alpha = 0.5;
  std::optional<double> b_eps;
  bnd->add_option("--topology", b_topology);
  bnd->add_option("--size", b_size)->required();
  bnd->add_option("--alpha", b_alpha);
  bnd->add_option("--eps", b_eps);

  auto* ver = app.add_subcommand("verify-regressions", "Recompute the frozen worst cases");
  std::string reg_file = "regressions/worst_case.json";
  ver->add_option("--file", reg_file);

  auto* srch = app.add_subcommand("search", "Exhaustive worst-case adversary search");
  RegressionEntry query;
  query.protocol = "almost-kn";
  query.alpha = 0.5;
  bool all_sizes = false;
  srch->add_option("--n", query.size, "vertices of the complete graph")->required();
  srch->add_option("--alpha", query.alpha);
  srch->add_option("--protocol", query.protocol);
  srch->add_option("--horizon", query.horizon, "step limit; 0 means the whole schedule");
  srch->add_flag("--all-sizes", all_sizes, "also try kill sets below the budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      flags.eps = eps_flag;
      return run_command(config_file, flags, *run, strict);
    }
    if (*bnd) {
      const double eps = b_eps.value_or(b_topology == "hypercube" ? 0.5 : 2.0);
      std::cout << bounds_json(b_topology, b_size, b_alpha, eps).dump(2) << '\n';
      return 0;
    }
    if (*ver) {
      bool ok = true;
      for (const auto& o : verify_regressions(reg_file)) {
        std::cout << (o.pass ? "PASS " : "FAIL ") << o.entry.topology << " n=" << o.entry.size
                  << " alpha=" << o.entry.alpha << " " << o.entry.protocol << ": " << o.detail << '\n';
        ok = ok && o.pass;
      }
      return ok ? 0 : 1;
    }
    if (*srch) {
      ProtocolParams params;
      params.alpha = query.alpha;
      SearchOptions options;
      options.horizon = query.horizon;
      options.all_sizes = all_sizes;
      const auto result = worst_case_search(build_complete(query.size), parse_protocol(query.protocol), params, options);
      std::cout << search_json(query, result).dump(2) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
