// SPDX-License-Identifier: Apache-2.0

#include "bcast/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "bcast/adversary.hpp"
#include "bcast/bounds.hpp"

namespace bcast {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> ExperimentConfig::adversary_defaults() { return adversary_ids(); }

double ExperimentConfig::eps_value() const {
  if (eps) return *eps;
  return topology == "hypercube" ? 0.5 : 2.0;
}

namespace {

template <typename T>
std::vector<T> one_or_many(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

}  // namespace

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::config_error, "config must be a JSON object");
  static const char* const kKnown[] = {"topology", "size",   "alpha",      "eps",    "protocol",
                                       "adversary", "seeds", "out", "validation", "horizon"};
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
        throw Error(ErrorKind::config_error, "unknown config field '" + key + "'");
      }
    }
    if (j.contains("topology")) c.topology = j.at("topology").get<std::string>();
    if (j.contains("size")) c.sizes = one_or_many<std::size_t>(j, "size");
    if (j.contains("alpha")) c.alphas = one_or_many<double>(j, "alpha");
    if (j.contains("eps")) c.eps = j.at("eps").get<double>();
    if (j.contains("protocol")) c.protocol = j.at("protocol").get<std::string>();
    if (j.contains("adversary")) c.adversaries = one_or_many<std::string>(j, "adversary");
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::size_t>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("validation")) {
      const auto v = j.at("validation").get<std::string>();
      if (v != "strict" && v != "warn") throw Error(ErrorKind::config_error, "validation must be strict or warn");
      c.validation = v == "strict" ? Validation::strict : Validation::warn;
    }
    if (j.contains("horizon")) c.horizon = j.at("horizon").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config_error, e.what());
  }
  return c;
}

ExperimentConfig load_config(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::io_error, "cannot open config " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config_error, file.string() + ": " + e.what());
  }
  return config_from_json(j);
}

std::vector<std::string> config_problems(const ExperimentConfig& c) {
  std::vector<std::string> problems;
  std::optional<TopologyKind> kind;
  if (c.topology == "complete") {
    kind = TopologyKind::complete;
  } else if (c.topology == "hypercube") {
    kind = TopologyKind::hypercube;
  } else {
    problems.push_back("unknown topology '" + c.topology + "'");
  }
  if (c.sizes.empty()) problems.push_back("no size given");
  for (std::size_t s : c.sizes) {
    if (kind == TopologyKind::complete && s < 2) problems.push_back("complete graphs need n >= 2");
    if (kind == TopologyKind::hypercube && (s < 1 || s > 24)) problems.push_back("hypercube dimension must be in 1..24");
  }
  if (c.alphas.empty()) problems.push_back("no alpha given");
  for (double a : c.alphas) {
    if (!(a > 0 && a < 1)) problems.push_back("alpha " + std::to_string(a) + " outside (0, 1)");
  }
  std::optional<ProtocolSpec> spec;
  try {
    spec = parse_protocol(c.protocol);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  if (spec && kind) {
    if (const auto need = required_topology(spec->kind); need && *need != *kind) {
      problems.push_back(c.protocol + " cannot run on " + c.topology + " graphs");
    }
    const double eps = c.eps_value();
    if (*kind == TopologyKind::complete && spec->kind != ProtocolKind::greedy_kn &&
        spec->kind != ProtocolKind::simple_rounds && !(eps > 1)) {
      problems.push_back("eps must exceed 1 on complete graphs");
    }
    if (spec->kind == ProtocolKind::hypercube && !(eps > 0 && eps < 1)) {
      problems.push_back("eps must lie in (0, 1) on hypercubes");
    }
    if (spec->kind == ProtocolKind::nosod_complete) {
      for (double a : c.alphas) {
        if (a > 0 && a < 1 && !(bounds::constants(a).Y > 0)) {
          problems.push_back("unsupported-alpha: " + std::to_string(a) + " has 1 - a - 2a^2 + a^3 <= 0");
        }
      }
      for (std::size_t s : c.sizes) {
        if (s < 3) problems.push_back("nosod-complete needs n >= 3");
      }
    }
  }
  if (c.adversaries.empty()) problems.push_back("no adversary given");
  for (const auto& a : c.adversaries) {
    if (a != "none" && std::find(adversary_ids().begin(), adversary_ids().end(), a) == adversary_ids().end()) {
      problems.push_back("unknown adversary '" + a + "'");
    }
  }
  if (c.seeds == 0) problems.push_back("seeds must be positive");
  return problems;
}

}  // namespace bcast

namespace bcast {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::shared_ptr<const Topology> make_topology(const std::string& kind, std::size_t size) {
  return std::make_shared<const Topology>(kind == "hypercube" ? build_hypercube(size) : build_complete(size));
}

}  // namespace

std::vector<std::string> validate_trace(const Trace& trace, const Topology& topology, double alpha) {
  std::vector<std::string> problems;
  const std::size_t c = topology.edge_connectivity();
  for (std::size_t i = 0; i < trace.rounds.size(); ++i) {
    const StepRecord& r = trace.rounds[i];
    if (r.step != i + 1) problems.push_back("record " + std::to_string(i) + " has step " + std::to_string(r.step));
    const std::size_t budget = fault_budget(r.m_sent, c, alpha);
    if (r.m_lost > budget || r.m_lost > r.m_sent) {
      problems.push_back("step " + std::to_string(r.step) + ": lost " + std::to_string(r.m_lost) + " of " +
                         std::to_string(r.m_sent) + " with budget " + std::to_string(budget));
    }
  }
  if (!trace.rounds.empty()) {
    const StepRecord& last = trace.rounds.back();
    if (last.k != trace.summary.final_k || last.h != trace.summary.final_h || last.step != trace.summary.steps) {
      problems.push_back("summary disagrees with the last record");
    }
  }
  return problems;
}

RunResult run_single(const ExperimentConfig& config, std::size_t size, double alpha, const std::string& adversary,
                     std::uint64_t seed, bool keep_records) {
  const auto topo = make_topology(config.topology, size);
  const auto adv = adversary == "none" ? std::make_unique<BenignAdversary>()
                                       : make_adversary(adversary, seed, static_cast<VertexId>(topo->vertex_count() - 1));
  ProtocolParams params;
  params.alpha = alpha;
  params.eps = config.eps_value();
  params.keep_records = keep_records;
  params.horizon = config.horizon;
  RunResult result = run_protocol(parse_protocol(config.protocol), topo, *adv, params);
  result.trace.summary.seed = seed;
  return result;
}

std::string trace_file_name(const RunRow& row) {
  std::string name = row.protocol + "_" + row.topology + "_" + std::to_string(row.size) + "_a" + num(row.alpha) + "_" +
                     row.adversary + "_s" + std::to_string(row.seed) + ".jsonl";
  for (char& ch : name) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '.' && ch != '_' && ch != '-') ch = '_';
  }
  return name;
}

RunReport run_experiments(const ExperimentConfig& config) {
  if (const auto problems = config_problems(config); !problems.empty()) {
    std::string all;
    for (const auto& p : problems) all += "\n  " + p;
    throw Error(ErrorKind::config_error, "invalid config:" + all);
  }
  const bool write = !config.out.empty();
  if (write) fs::create_directories(fs::path(config.out) / "traces");

  RunReport report;
  for (std::size_t size : config.sizes) {
    for (double alpha : config.alphas) {
      Aggregate agg;
      agg.size = size;
      agg.alpha = alpha;
      double first_sum = 0;
      for (const auto& adversary : config.adversaries) {
        for (std::uint64_t seed = 1; seed <= config.seeds; ++seed) {
          const RunResult result = run_single(config, size, alpha, adversary, seed, true);
          const RunSummary& s = result.trace.summary;
          RunRow row{config.topology, size,     alpha,     config.eps_value(), s.protocol, s.adversary, seed,
                     s.steps,         s.first_complete, s.final_k, s.final_h, s.below_minimum, s.violations};
          for (auto& p : validate_trace(result.trace, *result.topology, alpha)) row.violations.push_back(std::move(p));
          if (write) {
            std::ofstream out(fs::path(config.out) / "traces" / trace_file_name(row));
            write_jsonl(out, result.trace);
            if (!out) throw Error(ErrorKind::io_error, "cannot write trace for " + trace_file_name(row));
          }
          report.violations += row.violations.size();
          if (config.validation == Validation::strict && !row.violations.empty() && !row.below_minimum) {
            report.strict_failure = true;
          }
          ++agg.runs;
          agg.max_steps = std::max(agg.max_steps, row.steps);
          agg.max_first_complete = std::max(agg.max_first_complete, row.first_complete);
          agg.max_final_k = std::max(agg.max_final_k, row.final_k);
          agg.max_final_h = std::max(agg.max_final_h, row.final_h);
          first_sum += static_cast<double>(row.first_complete);
          report.rows.push_back(std::move(row));
        }
      }
      agg.mean_first_complete = agg.runs ? first_sum / static_cast<double>(agg.runs) : 0;
      report.aggregates.push_back(agg);
    }
  }
  if (write) write_summaries(config, report);
  return report;
}

std::string csv_header() {
  return "topology,size,alpha,eps,protocol,adversary,seed,steps,first_complete,final_k,final_h,violations";
}

std::string csv_row(const RunRow& r) {
  std::ostringstream os;
  os << r.topology << ',' << r.size << ',' << num(r.alpha) << ',' << num(r.eps) << ',' << r.protocol << ','
     << r.adversary << ',' << r.seed << ',' << r.steps << ',' << r.first_complete << ',' << r.final_k << ','
     << r.final_h << ',' << r.violations.size();
  return os.str();
}

void write_summaries(const ExperimentConfig& config, const RunReport& report) {
  const fs::path dir(config.out);
  fs::create_directories(dir);
  std::ofstream csv(dir / "summary.csv");
  csv << csv_header() << '\n';
  for (const auto& row : report.rows) csv << csv_row(row) << '\n';

  // one gnuplot data block per alpha, rows ordered by size
  std::ofstream dat(dir / "summary.dat");
  std::map<double, std::vector<const Aggregate*>> by_alpha;
  for (const auto& a : report.aggregates) by_alpha[a.alpha].push_back(&a);
  bool first = true;
  for (auto& [alpha, rows] : by_alpha) {
    if (!first) dat << "\n\n";
    first = false;
    std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->size < b->size; });
    dat << "# alpha=" << num(alpha) << "\n# param steps final_k final_h\n";
    for (const Aggregate* a : rows) {
      dat << a->size << ' ' << a->max_steps << ' ' << a->max_final_k << ' ' << a->max_final_h << '\n';
    }
  }
  if (!csv || !dat) throw Error(ErrorKind::io_error, "cannot write summaries to " + dir.string());
}

}  // namespace bcast

namespace bcast {

std::vector<RegressionEntry> load_regressions(const fs::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw Error(ErrorKind::io_error, "regression file " + file.string() +
                                         " not found; run from the repository root or pass --file");
  }
  std::vector<RegressionEntry> entries;
  try {
    json j;
    in >> j;
    for (const json& e : j.at("entries")) {
      RegressionEntry r;
      r.topology = e.value("topology", "complete");
      r.size = e.at("size").get<std::size_t>();
      r.alpha = e.at("alpha").get<double>();
      r.protocol = e.at("protocol").get<std::string>();
      r.horizon = e.value("horizon", std::size_t{0});
      r.exceeds_horizon = e.value("exceeds_horizon", false);
      r.steps = r.exceeds_horizon ? 0 : e.at("steps").get<std::size_t>();
      entries.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config_error, file.string() + ": " + e.what());
  }
  return entries;
}

std::vector<RegressionOutcome> verify_regressions(const fs::path& file) {
  std::vector<RegressionOutcome> outcomes;
  for (const auto& entry : load_regressions(file)) {
    RegressionOutcome o;
    o.entry = entry;
    const auto topo = make_topology(entry.topology, entry.size);
    ProtocolParams params;
    params.alpha = entry.alpha;
    params.eps = entry.topology == "hypercube" ? 0.5 : 2.0;
    SearchOptions options;
    options.horizon = entry.horizon;
    o.actual = worst_case_search(*topo, parse_protocol(entry.protocol), params, options);
    o.pass = o.actual.exceeds_horizon == entry.exceeds_horizon && o.actual.steps == entry.steps;
    auto show = [](bool exceeds, std::size_t steps) {
      return exceeds ? std::string("exceeds horizon") : std::to_string(steps) + " steps";
    };
    o.detail = "expected " + show(entry.exceeds_horizon, entry.steps) + ", got " +
               show(o.actual.exceeds_horizon, o.actual.steps);
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

ordered_json bounds_json(const std::string& topology, std::size_t size, double alpha, double eps) {
  const auto k = bounds::constants(alpha);
  ordered_json j;
  j["topology"] = topology;
  j["size"] = size;
  j["alpha"] = alpha;
  j["eps"] = eps;
  j["X"] = k.X;
  j["beta"] = k.beta;
  j["c"] = k.c;
  j["Y"] = k.Y;
  if (topology == "hypercube") {
    j["greedy_floor"] = bounds::greedy_qd_floor(size, alpha);
    if (size >= 2 && eps > 0 && eps < 1) {
      const auto r = bounds::rounds_hypercube(size, alpha, eps);
      j["T1"] = r.t1;
      j["T2"] = r.t2;
      j["d_min"] = bounds::d_min(alpha, eps);
      j["final_k_bound"] = k.X / (1 - eps);
      j["final_h_bound"] = k.X * (static_cast<double>(size) - 1);
    }
    return j;
  }
  const double f = bounds::f_root(size, alpha);
  j["f_n"] = std::isnan(f) ? ordered_json(nullptr) : ordered_json(f);
  j["greedy_floor"] = bounds::greedy_kn_floor(size, alpha);
  j["R_kn"] = bounds::rounds_kn(size, alpha);
  if (eps > 1) {
    j["n_min"] = bounds::n_min(alpha, eps);
    j["n_min_sod"] = bounds::n_min_sod(alpha, eps);
    j["candidate_cap"] = bounds::candidate_cap(alpha, eps);
    j["final_k_bound"] = k.X * eps;
    j["final_h_bound"] = k.X * (static_cast<double>(size) - 2);
  }
  if (k.Y > 0 && size >= 3) {
    const auto l = bounds::l_params(size, alpha, eps);
    j["L"] = {l.l1, l.l2, l.l3, l.l4};
  } else {
    j["L"] = nullptr;
  }
  return j;
}

ordered_json search_json(const RegressionEntry& q, const SearchResult& r) {
  ordered_json j;
  j["topology"] = q.topology;
  j["size"] = q.size;
  j["alpha"] = q.alpha;
  j["protocol"] = q.protocol;
  j["horizon"] = r.horizon;
  j["exceeds_horizon"] = r.exceeds_horizon;
  if (r.exceeds_horizon) {
    j["steps"] = nullptr;
  } else {
    j["steps"] = r.steps;
  }
  j["states"] = r.states;
  return j;
}

}  // namespace bcast
