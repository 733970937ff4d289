// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bcast/topology.hpp"
#include "bcast/types.hpp"

namespace bcast {

enum class PayloadKind : std::uint8_t { info, ack, candidates, info_candidates };

const char* to_string(PayloadKind kind);

using LayerId = std::uint8_t;
using CandidateList = std::shared_ptr<const std::vector<std::uint32_t>>;

// Payload bodies travel out of line so that the common message stays small.
struct Attachment {
  CandidateList candidates;            // reported candidate set
  std::array<CandidateList, 2> chain;  // payload of the message layer, then of its parent
};

struct Message {
  ArcId arc = 0;
  PayloadKind kind = PayloadKind::info;
  LayerId layer = 0;
  std::int32_t sender_id = -1;  // only sent when the network has a sense of direction
  std::uint32_t attachment = kNone;
};

struct SendBatch {
  std::vector<Message> messages;
  std::vector<Attachment> attachments;

  std::size_t size() const { return messages.size(); }
  bool empty() const { return messages.empty(); }
  void clear() {
    messages.clear();
    attachments.clear();
  }
};

struct DeliveryReport {
  std::vector<std::uint32_t> delivered;  // indices into the batch
  std::vector<std::uint32_t> lost;
  std::size_t budget = 0;
  std::size_t acks_delivered = 0;

  std::size_t budget_used() const { return lost.size(); }
};

/// max{c - 1, floor(alpha m)}: messages the adversary may destroy in one step.
std::size_t fault_budget(std::size_t m, std::size_t c, double alpha);

enum class ArcState { active, passive, hyperactive };

const char* to_string(ArcState s);

class AdversaryPolicy;

// Global observer of a run: informed set, arcs whose opposite carried a
// delivered message, and the counters derived from them. Protocol state
// machines never read this; they see only their own deliveries.
class NetworkState {
 public:
  NetworkState(const Topology& topology, double alpha, VertexId initiator = 0);

  const Topology& topology() const { return *topology_; }
  double alpha() const { return alpha_; }
  VertexId initiator() const { return initiator_; }
  std::size_t step_index() const { return step_; }

  bool informed(VertexId v) const { return informed_[v] != 0; }
  std::span<const std::uint8_t> informed_mask() const { return informed_; }
  std::size_t informed_count() const { return informed_count_; }
  std::size_t uninformed_count() const { return topology_->vertex_count() - informed_count_; }

  bool passive(ArcId a) const { return passive_[a] != 0; }
  std::size_t passive_count() const { return passive_count_; }

  /// Out-arcs of informed vertices that lead to uninformed ones; equals the
  /// edge boundary of the informed set.
  std::size_t active_count() const { return cut_; }
  std::size_t hyperactive_count() const { return live_informed_ - cut_; }
  /// 2 deg k + h, the potential that every delivered acknowledgement lowers.
  std::size_t measure() const {
    return 2 * topology_->degree() * uninformed_count() + hyperactive_count();
  }

  ArcState classify(ArcId a) const;

  void inform(VertexId v);
  void mark_passive(ArcId a);

 private:
  friend DeliveryReport execute_step(NetworkState&, const SendBatch&, AdversaryPolicy&);

  const Topology* topology_;
  double alpha_;
  VertexId initiator_;
  std::size_t step_ = 0;
  std::vector<std::uint8_t> informed_;
  std::size_t informed_count_ = 0;
  std::vector<std::uint8_t> passive_;
  std::size_t passive_count_ = 0;
  std::vector<std::uint32_t> nonpassive_out_;
  std::size_t live_informed_ = 0;
  std::size_t cut_ = 0;

  // scratch for batch validation
  std::vector<std::uint32_t> arc_stamp_;
  std::vector<std::uint8_t> killed_;
};

struct StepContext {
  std::size_t step = 0;
  const Topology& topology;
  const NetworkState& state;
};

class AdversaryPolicy {
 public:
  virtual ~AdversaryPolicy() = default;
  virtual std::string id() const = 0;
  /// Indices of batch messages to destroy; at most `budget` of them.
  virtual std::vector<std::uint32_t> decide(const StepContext& ctx, const SendBatch& batch,
                                            std::size_t budget) = 0;
};

/// Validates the batch, lets the adversary pick losses, and delivers the rest:
/// a receiver becomes informed and marks its opposite arc passive.
DeliveryReport execute_step(NetworkState& state, const SendBatch& batch, AdversaryPolicy& adv);

struct StepRecord {
  std::size_t step = 0;  // 1-based; counters describe the state after the step
  std::size_t k = 0;
  std::size_t h = 0;
  std::size_t b = 0;
  std::size_t m_sent = 0;
  std::size_t m_lost = 0;
  std::size_t acks = 0;
  std::size_t M = 0;
};

StepRecord make_record(const NetworkState& state, const SendBatch& batch, const DeliveryReport& r);

struct RoundRecord {
  StepRecord flood;
  StepRecord ack;
};

/// One simple round straight on the global state: every informed vertex floods
/// its non-passive out-arcs, then each receiver acknowledges over every arc it
/// heard from.
RoundRecord run_simple_round(NetworkState& state, AdversaryPolicy& adv);

struct RunSummary {
  std::string protocol;
  std::string adversary;
  std::uint64_t seed = 0;
  std::string topology;
  std::size_t n = 0;
  std::size_t d = 0;
  double alpha = 0;
  double eps = 0;
  std::size_t final_k = 0;
  std::size_t final_h = 0;
  std::size_t steps = 0;
  std::size_t first_complete = 0;
  bool below_minimum = false;
  std::size_t checks = 0;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
};

struct Trace {
  std::vector<StepRecord> rounds;
  RunSummary summary;
};

std::string record_json(const StepRecord& r);
std::string summary_json(const RunSummary& s);
/// One JSON object per step record, then the summary object.
void write_jsonl(std::ostream& out, const Trace& trace);

}  // namespace bcast
