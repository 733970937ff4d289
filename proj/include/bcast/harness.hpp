// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcast/adversary.hpp"
#include "bcast/engine.hpp"
#include "bcast/protocol.hpp"
#include "bcast/search.hpp"

namespace bcast {

enum class Validation { strict, warn };

struct ExperimentConfig {
  std::string topology = "complete";  // complete | hypercube
  std::vector<std::size_t> sizes;     // n for complete graphs, d for hypercubes
  std::vector<double> alphas = {0.5};
  std::optional<double> eps;          // 2 on complete graphs, 0.5 on hypercubes
  std::string protocol = "almost-kn";
  std::vector<std::string> adversaries = adversary_defaults();
  std::size_t seeds = 10;
  std::string out;                    // output directory; empty writes nothing
  Validation validation = Validation::warn;
  std::size_t horizon = 0;            // 0 runs the full schedule

  static std::vector<std::string> adversary_defaults();
  double eps_value() const;
};

/// Field names match the CLI flags: topology, size (number or list), alpha
/// (number or list), eps, protocol, adversary (string or list), seeds, out,
/// validation, horizon.
ExperimentConfig load_config(const std::filesystem::path& file);
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Every problem with the config, collected before anything runs.
std::vector<std::string> config_problems(const ExperimentConfig& config);

struct RunRow {
  std::string topology;
  std::size_t size = 0;
  double alpha = 0;
  double eps = 0;
  std::string protocol;
  std::string adversary;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  std::size_t first_complete = 0;
  std::size_t final_k = 0;
  std::size_t final_h = 0;
  bool below_minimum = false;
  std::vector<std::string> violations;
};

struct Aggregate {
  std::size_t size = 0;
  double alpha = 0;
  std::size_t runs = 0;
  std::size_t max_steps = 0;
  double mean_first_complete = 0;
  std::size_t max_first_complete = 0;
  std::size_t max_final_k = 0;
  std::size_t max_final_h = 0;
};

struct RunReport {
  std::vector<RunRow> rows;
  std::vector<Aggregate> aggregates;
  std::size_t violations = 0;
  /// True when strict validation found a violation on an instance of at least
  /// the minimum size.
  bool strict_failure = false;
};

/// Budget and bookkeeping checks on a finished trace; the protocol's own
/// invariant findings are in trace.summary.violations.
std::vector<std::string> validate_trace(const Trace& trace, const Topology& topology, double alpha);

/// Runs every (size, alpha, adversary, seed) combination in a fixed order.
/// Throws config-error listing every problem before any run starts.
RunReport run_experiments(const ExperimentConfig& config);

/// Single run with one adversary; the building block of run_experiments.
RunResult run_single(const ExperimentConfig& config, std::size_t size, double alpha, const std::string& adversary,
                     std::uint64_t seed, bool keep_records = true);

std::string csv_header();
std::string csv_row(const RunRow& row);

/// Writes summary.csv and summary.dat into config.out.
void write_summaries(const ExperimentConfig& config, const RunReport& report);
/// File name of the JSONL trace of one run.
std::string trace_file_name(const RunRow& row);

struct RegressionEntry {
  std::string topology = "complete";
  std::size_t size = 0;
  double alpha = 0;
  std::string protocol;
  std::size_t horizon = 0;
  std::size_t steps = 0;
  bool exceeds_horizon = false;
};

struct RegressionOutcome {
  RegressionEntry entry;
  SearchResult actual;
  bool pass = false;
  std::string detail;
};

std::vector<RegressionEntry> load_regressions(const std::filesystem::path& file);
/// Recomputes every frozen worst case and compares.
std::vector<RegressionOutcome> verify_regressions(const std::filesystem::path& file);

/// Every closed-form bound for one instance.
nlohmann::ordered_json bounds_json(const std::string& topology, std::size_t size, double alpha, double eps);

nlohmann::ordered_json search_json(const RegressionEntry& query, const SearchResult& result);

}  // namespace bcast
