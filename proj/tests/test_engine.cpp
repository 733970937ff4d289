// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "bcast/adversary.hpp"
#include "bcast/engine.hpp"

using namespace bcast;

namespace {

// Kills a fixed list of batch indices, valid or not.
class Scripted : public AdversaryPolicy {
 public:
  explicit Scripted(std::vector<std::uint32_t> kills) : kills_(std::move(kills)) {}
  std::string id() const override { return "scripted"; }
  std::vector<std::uint32_t> decide(const StepContext&, const SendBatch&, std::size_t) override { return kills_; }

 private:
  std::vector<std::uint32_t> kills_;
};

// Kills everything, ignoring the budget.
class Greedy : public AdversaryPolicy {
 public:
  std::string id() const override { return "cheater"; }
  std::vector<std::uint32_t> decide(const StepContext&, const SendBatch& batch, std::size_t) override {
    std::vector<std::uint32_t> all(batch.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
};

SendBatch info_from(const Topology& t, VertexId u) {
  SendBatch b;
  for (PortId p = 0; p < t.degree(); ++p) b.messages.push_back({t.arc(u, p), PayloadKind::info, 0, -1, kNone});
  return b;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::io_error;
}

// Counters recomputed from scratch.
void expect_consistent(const NetworkState& s) {
  const Topology& t = s.topology();
  std::size_t informed = 0, passive = 0, cut = 0, hyper = 0;
  for (VertexId v = 0; v < t.vertex_count(); ++v) informed += s.informed(v);
  for (ArcId a = 0; a < t.arc_count(); ++a) {
    passive += s.passive(a);
    if (!s.informed(t.source(a))) continue;
    if (!s.informed(t.target(a))) {
      ++cut;
      EXPECT_EQ(s.classify(a), ArcState::active);
    } else if (!s.passive(a)) {
      ++hyper;
      EXPECT_EQ(s.classify(a), ArcState::hyperactive);
    }
  }
  EXPECT_EQ(s.informed_count(), informed);
  EXPECT_EQ(s.passive_count(), passive);
  EXPECT_EQ(s.active_count(), cut);
  EXPECT_EQ(s.hyperactive_count(), hyper);
  EXPECT_EQ(s.measure(), 2 * t.degree() * (t.vertex_count() - informed) + hyper);
}

}  // namespace

TEST(FaultBudget, Formula) {
  EXPECT_EQ(fault_budget(10, 9, 0.5), 8u);
  EXPECT_EQ(fault_budget(100, 9, 0.5), 50u);
  EXPECT_EQ(fault_budget(1, 1, 0.5), 0u);
  EXPECT_EQ(fault_budget(7, 4, 0.3), 3u);
  EXPECT_EQ(fault_budget(0, 6, 0.9), 5u);
  EXPECT_THROW(fault_budget(5, 3, 1.0), Error);
}

TEST(Engine, TwoVerticesAlwaysDeliver) {
  const Topology t = build_complete(2);
  NetworkState s(t, 0.9);
  RandomAdversary adv(1);
  const auto r = execute_step(s, info_from(t, 0), adv);
  EXPECT_EQ(r.budget, 0u);
  EXPECT_EQ(s.informed_count(), 2u);
  EXPECT_TRUE(s.passive(t.arc(1, 0)));
  EXPECT_FALSE(s.passive(t.arc(0, 0)));
  expect_consistent(s);
}

TEST(Engine, DeliveryMarksOppositeArcPassive) {
  const Topology t = build_complete(5);
  NetworkState s(t, 0.5);
  Scripted adv({0, 1});
  const auto r = execute_step(s, info_from(t, 0), adv);
  EXPECT_EQ(r.delivered.size(), 2u);
  EXPECT_EQ(r.lost.size(), 2u);
  EXPECT_EQ(s.informed_count(), 3u);
  for (std::uint32_t i : r.delivered) {
    const ArcId a = t.arc(0, static_cast<PortId>(i));
    EXPECT_TRUE(s.passive(t.opposite(a)));
    EXPECT_EQ(s.classify(a), ArcState::hyperactive);
  }
  expect_consistent(s);
}

TEST(Engine, ClassifyNeedsInformedSource) {
  const Topology t = build_complete(4);
  NetworkState s(t, 0.5);
  EXPECT_EQ(kind_of([&] { s.classify(t.arc(2, 0)); }), ErrorKind::precondition_violation);
}

TEST(Engine, RejectsMalformedBatches) {
  const Topology t = build_complete(4);
  BenignAdversary none;
  {
    NetworkState s(t, 0.5);
    SendBatch b;
    b.messages.push_back({t.arc(2, 0), PayloadKind::info, 0, -1, kNone});
    EXPECT_EQ(kind_of([&] { execute_step(s, b, none); }), ErrorKind::precondition_violation);
  }
  {
    NetworkState s(t, 0.5);
    SendBatch b = info_from(t, 0);
    b.messages.push_back(b.messages.front());
    EXPECT_EQ(kind_of([&] { execute_step(s, b, none); }), ErrorKind::precondition_violation);
  }
  {
    NetworkState s(t, 0.5);
    SendBatch b;
    b.messages.push_back({static_cast<ArcId>(t.arc_count()), PayloadKind::info, 0, -1, kNone});
    EXPECT_EQ(kind_of([&] { execute_step(s, b, none); }), ErrorKind::precondition_violation);
  }
}

TEST(Engine, RejectsAdversaryOverBudget) {
  const Topology t = build_complete(4);
  {
    NetworkState s(t, 0.5);
    Greedy cheat;
    EXPECT_EQ(kind_of([&] { execute_step(s, info_from(t, 0), cheat); }), ErrorKind::adversary_violation);
  }
  {
    NetworkState s(t, 0.5);
    Scripted dup({1, 1});
    EXPECT_EQ(kind_of([&] { execute_step(s, info_from(t, 0), dup); }), ErrorKind::adversary_violation);
  }
  {
    NetworkState s(t, 0.5);
    Scripted out_of_range({7});
    EXPECT_EQ(kind_of([&] { execute_step(s, info_from(t, 0), out_of_range); }), ErrorKind::adversary_violation);
  }
}

TEST(Engine, CountersStayConsistentUnderRandomRounds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Topology t = seed % 2 ? build_complete(9, seed) : build_hypercube(4);
    NetworkState s(t, 0.3 + 0.03 * static_cast<double>(seed % 10), static_cast<VertexId>(seed % t.vertex_count()));
    RandomAdversary adv(seed);
    std::size_t last_m = s.measure();
    for (int r = 0; r < 12; ++r) {
      const RoundRecord rr = run_simple_round(s, adv);
      expect_consistent(s);
      EXPECT_LE(s.measure(), last_m);
      last_m = s.measure();
      EXPECT_EQ(rr.ack.step, rr.flood.step + 1);
      EXPECT_EQ(rr.ack.m_sent, rr.flood.m_sent - rr.flood.m_lost);
      EXPECT_EQ(rr.flood.acks, 0u);
      EXPECT_EQ(rr.ack.acks, rr.ack.m_sent - rr.ack.m_lost);
    }
  }
}

TEST(Engine, SimpleRoundFloodsOnlyNonPassiveArcs) {
  const Topology t = build_complete(3);
  NetworkState s(t, 0.5);
  BenignAdversary none;
  const RoundRecord r1 = run_simple_round(s, none);
  EXPECT_EQ(r1.flood.m_sent, 2u);
  EXPECT_EQ(r1.ack.m_sent, 2u);
  EXPECT_EQ(s.informed_count(), 3u);
  // all arcs into and out of the initiator are passive; 1 and 2 still flood each other
  const RoundRecord r2 = run_simple_round(s, none);
  EXPECT_EQ(r2.flood.m_sent, 2u);
  EXPECT_EQ(s.hyperactive_count(), 0u);
  const RoundRecord r3 = run_simple_round(s, none);
  EXPECT_EQ(r3.flood.m_sent, 0u);
}

TEST(Trace, JsonlKeysInOrder) {
  Trace trace;
  trace.rounds.push_back({1, 2, 3, 4, 5, 6, 7, 8});
  trace.summary.protocol = "almost-kn";
  trace.summary.final_k = 2;
  std::ostringstream os;
  write_jsonl(os, trace);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, R"({"step":1,"k":2,"h":3,"b":4,"m_sent":5,"m_lost":6,"acks":7,"M":8})");
  std::getline(in, line);
  const auto j = nlohmann::json::parse(line);
  EXPECT_TRUE(j.at("summary").get<bool>());
  EXPECT_EQ(j.at("final_k"), 2);
  EXPECT_FALSE(std::getline(in, line));
}
