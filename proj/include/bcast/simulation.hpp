// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "bcast/engine.hpp"
#include "bcast/schedule.hpp"
#include "bcast/topology.hpp"

namespace bcast {

// One message as seen by the vertex that sent or received it.
struct LocalEvent {
  std::size_t step = 0;
  bool outgoing = false;
  PortId port = 0;
  PayloadKind kind = PayloadKind::info;
  LayerId layer = 0;
  std::int32_t sender_id = -1;
  CandidateList candidates;
  std::array<CandidateList, 2> chain;
};

bool same_event(const LocalEvent& a, const LocalEvent& b);

// Runs a schedule on every vertex in lock step. Vertices only touch their own
// memory; the NetworkState is the harness-side observer.
class Simulation {
 public:
  Simulation(SchedulePtr schedule, std::vector<LayerId> parents, const Topology& topology,
             const ChordalLabeling* labels, double alpha, VertexId initiator);

  std::size_t length() const { return schedule_->length(); }
  std::size_t now() const { return state_.step_index(); }
  bool finished() const { return now() >= length(); }

  const Topology& topology() const { return *topology_; }
  const ChordalLabeling* labels() const { return labels_; }
  const NetworkState& state() const { return state_; }
  const std::vector<VertexMemory>& memories() const { return memories_; }
  const std::vector<LayerId>& parents() const { return parents_; }
  const Schedule& schedule() const { return *schedule_; }

  const Leaf& next_leaf(std::size_t& local) const { return schedule_->locate(now(), local); }

  struct StepResult {
    const Leaf* leaf = nullptr;
    std::size_t local = 0;
    StepRecord record;
  };

  StepResult step(AdversaryPolicy& adv);

  /// Messages of the next step, without executing it.
  const SendBatch& prepare();
  /// Executes the prepared batch with a fixed kill set.
  StepResult commit(std::span<const std::uint32_t> kills);

  const SendBatch& last_batch() const { return batch_; }

  /// Step after which the uninformed count last changed.
  std::size_t first_complete() const { return last_k_change_; }
  /// Step at which everyone was informed, extended to the end of the simple
  /// round it happened in; 0 while someone is uninformed.
  std::size_t zero_step() const { return zero_step_; }

  /// Identifier of v along the chordal cycle, counted from the initiator.
  std::uint32_t chordal_id(VertexId v) const {
    const std::size_t n = topology_->vertex_count();
    return static_cast<std::uint32_t>((v + n - state_.initiator()) % n);
  }

  void record_history(bool on) { record_history_ = on; history_.assign(on ? memories_.size() : 0, {}); }
  const std::vector<std::vector<LocalEvent>>& history() const { return history_; }

  static VertexMemory initial_memory(std::size_t layer_count, std::size_t degree, bool initiator,
                                     bool labelled);
  VertexView view(VertexId v, VertexMemory& mem) const;

 private:
  class BatchOutbox;
  StepResult finish(const DeliveryReport& report, const Leaf& leaf, std::size_t local);

  SchedulePtr schedule_;
  std::vector<LayerId> parents_;
  const Topology* topology_;
  const ChordalLabeling* labels_;
  NetworkState state_;
  std::vector<VertexMemory> memories_;
  SendBatch batch_;
  bool prepared_ = false;
  std::size_t last_k_ = kNone;
  std::size_t last_k_change_ = 0;
  std::size_t zero_step_ = 0;
  bool record_history_ = false;
  std::vector<std::vector<LocalEvent>> history_;
};

/// Applies a delivered message to the receiver's own memory: awareness and
/// passive marks for the message layer and its ancestors, payloads, and (with
/// a sense of direction) the receiver's own identifier.
void absorb(VertexView& self, const Incoming& in, const std::vector<LayerId>& parents);

/// Re-runs vertex v's state machine from its initial memory on its recorded
/// deliveries and checks that it reproduces its recorded sends exactly.
bool replay_vertex(const Simulation& sim, VertexId v, std::string* why = nullptr);

}  // namespace bcast
