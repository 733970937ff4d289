// SPDX-License-Identifier: Apache-2.0

#include "bcast/engine.hpp"

#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

namespace bcast {

const char* to_string(PayloadKind kind) {
  switch (kind) {
    case PayloadKind::info: return "info";
    case PayloadKind::ack: return "ack";
    case PayloadKind::candidates: return "candidates";
    case PayloadKind::info_candidates: return "info+candidates";
  }
  return "?";
}

const char* to_string(ArcState s) {
  switch (s) {
    case ArcState::active: return "active";
    case ArcState::passive: return "passive";
    case ArcState::hyperactive: return "hyperactive";
  }
  return "?";
}

std::size_t fault_budget(std::size_t m, std::size_t c, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::invalid_parameter, "alpha must lie in (0,1)");
  }
  if (c < 1) throw Error(ErrorKind::invalid_parameter, "edge connectivity must be positive");
  const auto fraction = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(m)));
  return std::max(c - 1, fraction);
}

NetworkState::NetworkState(const Topology& topology, double alpha, VertexId initiator)
    : topology_(&topology), alpha_(alpha), initiator_(initiator) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::invalid_parameter, "alpha must lie in (0,1)");
  }
  if (initiator >= topology.vertex_count()) {
    throw Error(ErrorKind::invalid_parameter, "initiator out of range");
  }
  informed_.assign(topology.vertex_count(), 0);
  passive_.assign(topology.arc_count(), 0);
  nonpassive_out_.assign(topology.vertex_count(), static_cast<std::uint32_t>(topology.degree()));
  arc_stamp_.assign(topology.arc_count(), 0);
  inform(initiator);
}

ArcState NetworkState::classify(ArcId a) const {
  if (!informed(topology_->source(a))) {
    throw Error(ErrorKind::precondition_violation, "arc classification needs an informed source");
  }
  if (!informed(topology_->target(a))) return ArcState::active;
  return passive(a) ? ArcState::passive : ArcState::hyperactive;
}

void NetworkState::inform(VertexId v) {
  if (informed_[v]) return;
  informed_[v] = 1;
  ++informed_count_;
  live_informed_ += nonpassive_out_[v];
  for (VertexId w : topology_->neighbors(v)) {
    if (informed_[w]) {
      --cut_;
    } else {
      ++cut_;
    }
  }
}

void NetworkState::mark_passive(ArcId a) {
  if (passive_[a]) return;
  passive_[a] = 1;
  ++passive_count_;
  const VertexId u = topology_->source(a);
  --nonpassive_out_[u];
  if (informed_[u]) --live_informed_;
}

DeliveryReport execute_step(NetworkState& state, const SendBatch& batch, AdversaryPolicy& adv) {
  const Topology& topo = state.topology();
  const std::size_t m = batch.size();
  const auto stamp = static_cast<std::uint32_t>(state.step_ + 1);
  for (const Message& msg : batch.messages) {
    if (msg.arc >= topo.arc_count()) {
      throw Error(ErrorKind::precondition_violation, "message on unknown arc");
    }
    if (!state.informed(topo.source(msg.arc))) {
      throw Error(ErrorKind::precondition_violation, "uninformed vertex tried to send");
    }
    if (state.arc_stamp_[msg.arc] == stamp) {
      throw Error(ErrorKind::precondition_violation, "two messages on one arc in one step");
    }
    state.arc_stamp_[msg.arc] = stamp;
  }

  DeliveryReport report;
  report.budget = fault_budget(m, topo.edge_connectivity(), state.alpha());
  const StepContext ctx{state.step_, topo, state};
  std::vector<std::uint32_t> kills = adv.decide(ctx, batch, report.budget);
  if (kills.size() > report.budget) {
    throw Error(ErrorKind::adversary_violation,
                adv.id() + " destroyed " + std::to_string(kills.size()) + " messages with budget " +
                    std::to_string(report.budget));
  }
  state.killed_.assign(m, 0);
  for (std::uint32_t i : kills) {
    if (i >= m) throw Error(ErrorKind::adversary_violation, adv.id() + " named an unsent message");
    if (state.killed_[i]) throw Error(ErrorKind::adversary_violation, adv.id() + " named a message twice");
    state.killed_[i] = 1;
  }

  report.delivered.reserve(m - kills.size());
  report.lost.reserve(kills.size());
  for (std::uint32_t i = 0; i < m; ++i) {
    if (state.killed_[i]) {
      report.lost.push_back(i);
      continue;
    }
    report.delivered.push_back(i);
    const Message& msg = batch.messages[i];
    state.inform(topo.target(msg.arc));
    state.mark_passive(topo.opposite(msg.arc));
    if (msg.kind == PayloadKind::ack) ++report.acks_delivered;
  }
  ++state.step_;
  return report;
}

StepRecord make_record(const NetworkState& state, const SendBatch& batch, const DeliveryReport& r) {
  StepRecord rec;
  rec.step = state.step_index();
  rec.k = state.uninformed_count();
  rec.h = state.hyperactive_count();
  rec.b = state.passive_count();
  rec.m_sent = batch.size();
  rec.m_lost = r.lost.size();
  rec.acks = r.acks_delivered;
  rec.M = state.measure();
  return rec;
}

RoundRecord run_simple_round(NetworkState& state, AdversaryPolicy& adv) {
  const Topology& topo = state.topology();
  RoundRecord round;

  SendBatch flood;
  for (VertexId u = 0; u < topo.vertex_count(); ++u) {
    if (!state.informed(u)) continue;
    for (PortId p = 0; p < topo.degree(); ++p) {
      const ArcId a = topo.arc(u, p);
      if (!state.passive(a)) flood.messages.push_back({a, PayloadKind::info, 0, -1, kNone});
    }
  }
  const DeliveryReport first = execute_step(state, flood, adv);
  round.flood = make_record(state, flood, first);

  SendBatch acks;
  for (std::uint32_t i : first.delivered) {
    acks.messages.push_back({topo.opposite(flood.messages[i].arc), PayloadKind::ack, 0, -1, kNone});
  }
  const DeliveryReport second = execute_step(state, acks, adv);
  round.ack = make_record(state, acks, second);
  return round;
}

std::string record_json(const StepRecord& r) {
  nlohmann::ordered_json j;
  j["step"] = r.step;
  j["k"] = r.k;
  j["h"] = r.h;
  j["b"] = r.b;
  j["m_sent"] = r.m_sent;
  j["m_lost"] = r.m_lost;
  j["acks"] = r.acks;
  j["M"] = r.M;
  return j.dump();
}

std::string summary_json(const RunSummary& s) {
  nlohmann::ordered_json j;
  j["summary"] = true;
  j["protocol"] = s.protocol;
  j["adversary"] = s.adversary;
  j["seed"] = s.seed;
  j["topology"] = s.topology;
  j["n"] = s.n;
  j["d"] = s.d;
  j["alpha"] = s.alpha;
  j["eps"] = s.eps;
  j["final_k"] = s.final_k;
  j["final_h"] = s.final_h;
  j["steps"] = s.steps;
  j["first_complete"] = s.first_complete;
  j["below_minimum"] = s.below_minimum;
  j["checks"] = s.checks;
  j["violations"] = s.violations;
  j["notes"] = s.notes;
  return j.dump();
}

void write_jsonl(std::ostream& out, const Trace& trace) {
  for (const StepRecord& r : trace.rounds) out << record_json(r) << '\n';
  out << summary_json(trace.summary) << '\n';
}

}  // namespace bcast
