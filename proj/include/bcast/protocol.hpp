// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcast/engine.hpp"
#include "bcast/schedule.hpp"
#include "bcast/simulation.hpp"
#include "bcast/topology.hpp"

namespace bcast {

enum class ProtocolKind {
  greedy_kn,
  greedy_qd,
  almost_kn,
  hypercube,
  sod_all_but_one,
  sod_complete,
  nosod_complete,
  simple_rounds,
};

struct ProtocolSpec {
  ProtocolKind kind = ProtocolKind::almost_kn;
  std::size_t rounds = 0;  // simple-rounds only
};

/// Accepts greedy-kn, greedy-qd, almost-kn, hypercube, sod-all-but-one,
/// sod-complete, nosod-complete and simple-rounds(N).
ProtocolSpec parse_protocol(std::string_view id);
std::string protocol_id(const ProtocolSpec& spec);

/// Topology the protocol runs on; nullopt when both are accepted.
std::optional<TopologyKind> required_topology(ProtocolKind kind);
bool needs_labels(ProtocolKind kind);

struct ProtocolParams {
  double alpha = 0.5;
  double eps = 2.0;
  VertexId initiator = 0;
  std::optional<std::uint64_t> port_seed;  // K_n port shuffling for the size-based entry points
  bool keep_records = true;
  bool record_history = false;
  std::size_t horizon = 0;  // stop after this many steps; 0 runs the whole schedule
};

struct CandidateSet {
  std::vector<VertexId> members;  // vertex ids, sorted by chordal identifier
  std::uint32_t origin = 0;
};

// A compiled protocol: schedule plus the parent of every payload layer.
struct Plan {
  SchedulePtr schedule;
  std::vector<LayerId> parents;
  bool labels = false;
};

Plan build_plan(const ProtocolSpec& spec, const Topology& topology, const ProtocolParams& params);

struct RunResult {
  Trace trace;
  std::size_t completion_step = 0;  // 0 when some vertex stayed uninformed
  std::vector<CandidateSet> candidates;
  std::shared_ptr<const Topology> topology;
  std::shared_ptr<const ChordalLabeling> labels;
  std::shared_ptr<Simulation> simulation;

  const NetworkState& state() const { return simulation->state(); }
};

/// Runs a protocol to the end of its schedule, checking every invariant that
/// applies along the way. Violations land in trace.summary.violations.
RunResult run_protocol(const ProtocolSpec& spec, std::shared_ptr<const Topology> topology,
                       AdversaryPolicy& adv, const ProtocolParams& params);

RunResult greedy_init_complete(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult greedy_init_complete(std::size_t n, double alpha, AdversaryPolicy& adv);
RunResult greedy_init_hypercube(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult greedy_init_hypercube(std::size_t d, double alpha, AdversaryPolicy& adv);
RunResult almost_complete_kn(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult almost_complete_kn(std::size_t n, double alpha, double eps, AdversaryPolicy& adv);
RunResult broadcast_hypercube(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult broadcast_hypercube(std::size_t d, double alpha, double eps, AdversaryPolicy& adv);
RunResult sod_all_but_one(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult sod_all_but_one(std::size_t n, double alpha, double eps, AdversaryPolicy& adv);
RunResult sod_complete(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult sod_complete(std::size_t n, double alpha, double eps, AdversaryPolicy& adv);
RunResult nosod_complete(const Topology& topology, AdversaryPolicy& adv, const ProtocolParams& params);
RunResult nosod_complete(std::size_t n, double alpha, double eps, AdversaryPolicy& adv);
RunResult simple_rounds(const Topology& topology, std::size_t rounds, AdversaryPolicy& adv,
                        const ProtocolParams& params);

/// Upper bound on the schedule length the protocol may use on this instance.
std::size_t schedule_budget(const ProtocolSpec& spec, const Topology& topology, const ProtocolParams& params);

}  // namespace bcast
