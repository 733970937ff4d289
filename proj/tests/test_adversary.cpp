// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bcast/adversary.hpp"

using namespace bcast;

namespace {

struct Fixture {
  Topology topo = build_complete(6);
  NetworkState state{topo, 0.5};
  StepContext ctx() const { return {0, topo, state}; }
};

Message msg(const Topology& t, VertexId u, VertexId v, PayloadKind kind) {
  return {t.arc(u, t.port_to(u, v)), kind, 0, -1, kNone};
}

std::set<std::uint32_t> as_set(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(RandomAdversary, KillsMinOfBudgetAndBatch) {
  Fixture f;
  SendBatch b;
  b.messages = {msg(f.topo, 0, 1, PayloadKind::info), msg(f.topo, 0, 2, PayloadKind::info)};
  RandomAdversary adv(3);
  EXPECT_TRUE(adv.decide(f.ctx(), b, 0).empty());
  EXPECT_EQ(as_set(adv.decide(f.ctx(), b, 5)), (std::set<std::uint32_t>{0, 1}));
  for (VertexId v = 3; v < 6; ++v) b.messages.push_back(msg(f.topo, 0, v, PayloadKind::info));
  const auto kills = adv.decide(f.ctx(), b, 3);
  EXPECT_EQ(kills.size(), 3u);
  EXPECT_EQ(as_set(kills).size(), 3u);
}

TEST(RandomAdversary, SeedDeterminesKills) {
  Fixture f;
  SendBatch b;
  for (VertexId v = 1; v < 6; ++v) b.messages.push_back(msg(f.topo, 0, v, PayloadKind::info));
  RandomAdversary a(11), c(11), other(12);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    const auto ka = a.decide(f.ctx(), b, 2);
    EXPECT_EQ(ka, c.decide(f.ctx(), b, 2));
    differs = differs || as_set(ka) != as_set(other.decide(f.ctx(), b, 2));
  }
  EXPECT_TRUE(differs);
}

TEST(RandomAdversary, UniformOverSubsets) {
  Fixture f;
  SendBatch b;
  for (VertexId v = 1; v < 5; ++v) b.messages.push_back(msg(f.topo, 0, v, PayloadKind::info));
  RandomAdversary adv(5);
  std::vector<int> hits(4, 0);
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    for (auto k : adv.decide(f.ctx(), b, 2)) ++hits[k];
  }
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(trials), 0.5, 0.02);
}

TEST(VictimGuard, StarvesVictimFirst) {
  Fixture f;
  VictimGuard adv(5, 1);
  SendBatch two;
  two.messages = {msg(f.topo, 0, 1, PayloadKind::info), msg(f.topo, 0, 5, PayloadKind::info),
                  msg(f.topo, 2, 5, PayloadKind::info), msg(f.topo, 1, 0, PayloadKind::ack)};
  EXPECT_EQ(as_set(adv.decide(f.ctx(), two, 2)), (std::set<std::uint32_t>{1, 2}));
  EXPECT_TRUE(adv.decide(f.ctx(), two, 0).empty());
  // then acknowledgements, then a random fill
  EXPECT_EQ(as_set(adv.decide(f.ctx(), two, 3)), (std::set<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(adv.decide(f.ctx(), two, 4).size(), 4u);
}

TEST(VictimGuard, PicksLowestArcsAmongVictimMessages) {
  Fixture f;
  SendBatch five;
  for (VertexId u = 0; u < 5; ++u) five.messages.push_back(msg(f.topo, 4 - u, 5, PayloadKind::info));
  VictimGuard a(5, 1), b(5, 99);
  const auto ka = a.decide(f.ctx(), five, 3);
  EXPECT_EQ(ka.size(), 3u);
  EXPECT_EQ(as_set(ka), as_set(b.decide(f.ctx(), five, 3)));
  // senders 0, 1, 2 own the lowest arc ids; they sit at batch positions 4, 3, 2
  EXPECT_EQ(as_set(ka), (std::set<std::uint32_t>{2, 3, 4}));
}

TEST(AckSuppressor, AcksFirst) {
  Fixture f;
  AckSuppressor adv(4);
  SendBatch b;
  b.messages = {msg(f.topo, 0, 1, PayloadKind::info), msg(f.topo, 0, 2, PayloadKind::info),
                msg(f.topo, 0, 3, PayloadKind::info), msg(f.topo, 1, 0, PayloadKind::ack),
                msg(f.topo, 2, 0, PayloadKind::ack),  msg(f.topo, 3, 0, PayloadKind::ack)};
  EXPECT_EQ(as_set(adv.decide(f.ctx(), b, 3)), (std::set<std::uint32_t>{3, 4, 5}));
  SendBatch one;
  one.messages = {msg(f.topo, 0, 1, PayloadKind::info), msg(f.topo, 2, 0, PayloadKind::ack)};
  EXPECT_EQ(as_set(adv.decide(f.ctx(), one, 2)), (std::set<std::uint32_t>{0, 1}));
}

TEST(AckSuppressor, PrefersMessagesToUninformedVertices) {
  Fixture f;
  f.state.inform(1);
  f.state.inform(2);
  AckSuppressor adv(4);
  SendBatch b;
  b.messages = {msg(f.topo, 0, 1, PayloadKind::info), msg(f.topo, 0, 4, PayloadKind::info),
                msg(f.topo, 0, 2, PayloadKind::info), msg(f.topo, 1, 0, PayloadKind::ack)};
  EXPECT_EQ(as_set(adv.decide(f.ctx(), b, 2)), (std::set<std::uint32_t>{1, 3}));
}

TEST(AckSuppressor, AllInfoFallsBackToRandom) {
  Fixture f;
  AckSuppressor adv(4);
  SendBatch b;
  for (VertexId v = 1; v < 6; ++v) b.messages.push_back(msg(f.topo, 0, v, PayloadKind::info));
  const auto kills = adv.decide(f.ctx(), b, 3);
  EXPECT_EQ(as_set(kills).size(), 3u);
}

TEST(Adversaries, FactoryAndIds) {
  EXPECT_EQ(adversary_ids(), (std::vector<std::string>{"random", "victim_guard", "ack_suppressor"}));
  for (const auto& id : adversary_ids()) EXPECT_EQ(make_adversary(id, 1, 0)->id(), id);
  EXPECT_EQ(make_adversary("none", 1, 0)->id(), "none");
  try {
    make_adversary("oracle", 1, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::config_error);
  }
}

TEST(Adversaries, FuzzedBatchesPassEngineValidation) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 10);
    const Topology t = trial % 3 == 0 ? build_hypercube(1 + uniform_below(rng, 5)) : build_complete(n);
    const double alpha = 0.05 + 0.9 * static_cast<double>(uniform_below(rng, 1000)) / 1000.0;
    NetworkState s(t, alpha);
    for (VertexId v = 1; v < t.vertex_count(); ++v) {
      if (uniform_below(rng, 2)) s.inform(v);
    }
    SendBatch b;
    for (ArcId a = 0; a < t.arc_count(); ++a) {
      if (s.informed(t.source(a)) && uniform_below(rng, 3) != 0) {
        b.messages.push_back({a, uniform_below(rng, 2) ? PayloadKind::ack : PayloadKind::info, 0, -1, kNone});
      }
    }
    for (const auto& id : adversary_ids()) {
      NetworkState copy = s;
      auto adv = make_adversary(id, static_cast<std::uint64_t>(trial), static_cast<VertexId>(t.vertex_count() - 1));
      const DeliveryReport r = execute_step(copy, b, *adv);
      EXPECT_EQ(r.lost.size(), std::min(b.size(), r.budget)) << id;
    }
  }
}
