// SPDX-License-Identifier: Apache-2.0

#include "bcast/simulation.hpp"

namespace bcast {

namespace {

bool same_list(const CandidateList& a, const CandidateList& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

Attachment make_attachment(const VertexMemory& mem, LayerId layer, const std::vector<LayerId>& parents,
                           CandidateList candidates) {
  Attachment att;
  att.candidates = std::move(candidates);
  att.chain[0] = mem.layers[layer].payload;
  const LayerId parent = parents[layer];
  if (parent != 0) att.chain[1] = mem.layers[parent].payload;
  return att;
}

}  // namespace

bool same_event(const LocalEvent& a, const LocalEvent& b) {
  return a.step == b.step && a.outgoing == b.outgoing && a.port == b.port && a.kind == b.kind &&
         a.layer == b.layer && a.sender_id == b.sender_id && same_list(a.candidates, b.candidates) &&
         same_list(a.chain[0], b.chain[0]) && same_list(a.chain[1], b.chain[1]);
}

void absorb(VertexView& self, const Incoming& in, const std::vector<LayerId>& parents) {
  VertexMemory& mem = self.mem;
  LayerId layer = in.layer;
  for (std::size_t depth = 0;; ++depth) {
    LayerMemory& lm = mem.layers[layer];
    become_aware(lm, self.degree, depth < 2 && layer != 0 ? in.chain[depth] : CandidateList{});
    lm.live.erase(in.port);
    if (layer == 0) break;
    layer = parents[layer];
  }
  if (self.has_labels() && mem.id < 0 && in.sender_id >= 0) {
    // the label of my port towards the sender is (sender - me) mod n
    mem.id = static_cast<std::int64_t>((static_cast<std::size_t>(in.sender_id) + self.n - self.labels[in.port]) % self.n);
  }
}

class Simulation::BatchOutbox : public Outbox {
 public:
  BatchOutbox(const Simulation& sim, SendBatch& batch, std::vector<std::vector<LocalEvent>>* history)
      : sim_(sim), batch_(batch), history_(history) {}

  void start(VertexId v, const VertexMemory& mem) {
    v_ = v;
    mem_ = &mem;
  }

  void send(PortId port, PayloadKind kind, LayerId layer, CandidateList candidates) override {
    Message msg;
    msg.arc = sim_.topology_->arc(v_, port);
    msg.kind = kind;
    msg.layer = layer;
    msg.sender_id = sim_.labels_ ? static_cast<std::int32_t>(mem_->id) : -1;
    if (layer != 0 || candidates) {
      msg.attachment = static_cast<std::uint32_t>(batch_.attachments.size());
      batch_.attachments.push_back(make_attachment(*mem_, layer, sim_.parents_, std::move(candidates)));
    }
    batch_.messages.push_back(msg);
    if (history_) {
      LocalEvent ev;
      ev.step = sim_.now();
      ev.outgoing = true;
      ev.port = port;
      ev.kind = kind;
      ev.layer = layer;
      ev.sender_id = msg.sender_id;
      if (msg.attachment != kNone) {
        const Attachment& att = batch_.attachments[msg.attachment];
        ev.candidates = att.candidates;
        ev.chain = att.chain;
      }
      (*history_)[v_].push_back(std::move(ev));
    }
  }

 private:
  const Simulation& sim_;
  SendBatch& batch_;
  std::vector<std::vector<LocalEvent>>* history_;
  VertexId v_ = 0;
  const VertexMemory* mem_ = nullptr;
};

Simulation::Simulation(SchedulePtr schedule, std::vector<LayerId> parents, const Topology& topology,
                       const ChordalLabeling* labels, double alpha, VertexId initiator)
    : schedule_(std::move(schedule)),
      parents_(std::move(parents)),
      topology_(&topology),
      labels_(labels),
      state_(topology, alpha, initiator) {
  if (parents_.empty() || parents_[0] != 0) {
    throw Error(ErrorKind::invalid_parameter, "layer 0 must be its own root");
  }
  if (labels_ && labels_->vertex_count() != topology.vertex_count()) {
    throw Error(ErrorKind::invalid_parameter, "labeling does not match topology");
  }
  last_k_ = state_.uninformed_count();
  memories_.reserve(topology.vertex_count());
  for (VertexId v = 0; v < topology.vertex_count(); ++v) {
    memories_.push_back(initial_memory(parents_.size(), topology.degree(), v == initiator, labels_ != nullptr));
  }
}

VertexMemory Simulation::initial_memory(std::size_t layer_count, std::size_t degree, bool initiator,
                                        bool labelled) {
  VertexMemory mem;
  mem.layers.resize(layer_count);
  if (initiator) {
    become_aware(mem.layers[0], degree, {});
    if (labelled) mem.id = 0;
  }
  return mem;
}

VertexView Simulation::view(VertexId v, VertexMemory& mem) const {
  VertexView view{mem, topology_->degree(), topology_->vertex_count(), {}, {}};
  if (labels_) {
    view.labels = labels_->labels_at(v);
    view.label_ports = labels_->ports_at(v);
  }
  return view;
}

const SendBatch& Simulation::prepare() {
  if (prepared_) return batch_;
  if (finished()) throw Error(ErrorKind::precondition_violation, "schedule already finished");
  std::size_t local = 0;
  const Leaf& leaf = schedule_->locate(now(), local);
  batch_.clear();
  BatchOutbox out(*this, batch_, record_history_ ? &history_ : nullptr);
  for (VertexId v = 0; v < memories_.size(); ++v) {
    VertexView self = view(v, memories_[v]);
    out.start(v, memories_[v]);
    leaf.emit(local, self, out);
  }
  prepared_ = true;
  return batch_;
}

namespace {

// Adversary that replays a fixed kill set.
class FixedKills : public AdversaryPolicy {
 public:
  explicit FixedKills(std::span<const std::uint32_t> kills) : kills_(kills.begin(), kills.end()) {}
  std::string id() const override { return "fixed"; }
  std::vector<std::uint32_t> decide(const StepContext&, const SendBatch&, std::size_t) override {
    return kills_;
  }

 private:
  std::vector<std::uint32_t> kills_;
};

}  // namespace

Simulation::StepResult Simulation::step(AdversaryPolicy& adv) {
  std::size_t local = 0;
  const Leaf& leaf = schedule_->locate(now(), local);
  prepare();
  const DeliveryReport report = execute_step(state_, batch_, adv);
  return finish(report, leaf, local);
}

Simulation::StepResult Simulation::commit(std::span<const std::uint32_t> kills) {
  FixedKills adv(kills);
  return step(adv);
}

Simulation::StepResult Simulation::finish(const DeliveryReport& report, const Leaf& leaf, std::size_t local) {
  prepared_ = false;
  for (std::uint32_t i : report.delivered) {
    const Message& msg = batch_.messages[i];
    const VertexId receiver = topology_->target(msg.arc);
    Incoming in;
    in.port = topology_->port(topology_->opposite(msg.arc));
    in.kind = msg.kind;
    in.layer = msg.layer;
    in.sender_id = msg.sender_id;
    if (msg.attachment != kNone) {
      const Attachment& att = batch_.attachments[msg.attachment];
      in.candidates = att.candidates;
      in.chain = att.chain;
    }
    VertexView self = view(receiver, memories_[receiver]);
    absorb(self, in, parents_);
    leaf.receive(local, self, in);
    if (record_history_) {
      LocalEvent ev;
      ev.step = now() - 1;
      ev.outgoing = false;
      ev.port = in.port;
      ev.kind = in.kind;
      ev.layer = in.layer;
      ev.sender_id = in.sender_id;
      ev.candidates = in.candidates;
      ev.chain = in.chain;
      history_[receiver].push_back(std::move(ev));
    }
  }

  StepResult result;
  result.leaf = &leaf;
  result.local = local;
  result.record = make_record(state_, batch_, report);
  const std::size_t k = state_.uninformed_count();
  if (k != last_k_) {
    last_k_ = k;
    last_k_change_ = now();
  }
  if (k == 0 && zero_step_ == 0) zero_step_ = now() + (leaf.opens_unit(local) ? 1 : 0);
  return result;
}

bool replay_vertex(const Simulation& sim, VertexId v, std::string* why) {
  if (sim.history().size() <= v) {
    if (why) *why = "history was not recorded";
    return false;
  }
  const auto& events = sim.history()[v];
  const Topology& topo = sim.topology();
  VertexMemory mem = Simulation::initial_memory(sim.parents().size(), topo.degree(),
                                                v == sim.state().initiator(), sim.labels() != nullptr);
  VertexView self = sim.view(v, mem);

  struct Recorder : Outbox {
    const VertexMemory* mem = nullptr;
    const std::vector<LayerId>* parents = nullptr;
    bool labelled = false;
    std::size_t step = 0;
    std::vector<LocalEvent> sent;
    void send(PortId port, PayloadKind kind, LayerId layer, CandidateList candidates) override {
      LocalEvent ev;
      ev.step = step;
      ev.outgoing = true;
      ev.port = port;
      ev.kind = kind;
      ev.layer = layer;
      ev.sender_id = labelled ? static_cast<std::int32_t>(mem->id) : -1;
      if (layer != 0 || candidates) {
        const Attachment att = make_attachment(*mem, layer, *parents, std::move(candidates));
        ev.candidates = att.candidates;
        ev.chain = att.chain;
      }
      sent.push_back(std::move(ev));
    }
  } recorder;
  recorder.mem = &mem;
  recorder.parents = &sim.parents();
  recorder.labelled = sim.labels() != nullptr;

  std::size_t cursor = 0;
  for (std::size_t t = 0; t < sim.now(); ++t) {
    std::size_t local = 0;
    const Leaf& leaf = sim.schedule().locate(t, local);
    recorder.step = t;
    recorder.sent.clear();
    leaf.emit(local, self, recorder);
    for (const LocalEvent& ev : recorder.sent) {
      if (cursor >= events.size() || !same_event(ev, events[cursor])) {
        if (why) *why = "send mismatch at step " + std::to_string(t);
        return false;
      }
      ++cursor;
    }
    if (cursor < events.size() && events[cursor].step == t && events[cursor].outgoing) {
      if (why) *why = "recorded send missing on replay at step " + std::to_string(t);
      return false;
    }
    while (cursor < events.size() && events[cursor].step == t && !events[cursor].outgoing) {
      const LocalEvent& ev = events[cursor];
      Incoming in;
      in.port = ev.port;
      in.kind = ev.kind;
      in.layer = ev.layer;
      in.sender_id = ev.sender_id;
      in.candidates = ev.candidates;
      in.chain = ev.chain;
      absorb(self, in, sim.parents());
      leaf.receive(local, self, in);
      ++cursor;
    }
  }
  if (cursor != events.size()) {
    if (why) *why = "unconsumed events";
    return false;
  }
  return true;
}

}  // namespace bcast
