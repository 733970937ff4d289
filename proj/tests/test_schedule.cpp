// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "bcast/schedule.hpp"
#include "bcast/simulation.hpp"

using namespace bcast;

namespace {

struct Sent {
  PortId port;
  PayloadKind kind;
  LayerId layer;
  CandidateList candidates;
};

class Recorder : public Outbox {
 public:
  void send(PortId port, PayloadKind kind, LayerId layer, CandidateList candidates) override {
    sent.push_back({port, kind, layer, std::move(candidates)});
  }
  std::vector<Sent> sent;
};

CandidateList list(std::vector<std::uint32_t> v) { return std::make_shared<const std::vector<std::uint32_t>>(std::move(v)); }

// Vertex with chordal identifier `id` on K_n with the standard port layout.
struct LabelledVertex {
  Topology topo;
  ChordalLabeling labels;
  VertexMemory mem;
  VertexView view;

  LabelledVertex(std::size_t n, std::uint32_t id, std::size_t layers)
      : topo(build_complete(n)),
        labels(chordal_labels(topo)),
        mem(Simulation::initial_memory(layers, n - 1, false, true)),
        view{mem, n - 1, n, labels.labels_at(id), labels.ports_at(id)} {
    mem.id = id;
  }
  std::uint32_t target(PortId p) const { return topo.neighbor(static_cast<VertexId>(mem.id), p); }
};

}  // namespace

TEST(PortSet, InsertEraseIterate) {
  PortSet s;
  s.reset(5, true);
  EXPECT_EQ(s.size(), 5u);
  s.erase(2);
  s.erase(2);
  EXPECT_FALSE(s.contains(2));
  EXPECT_EQ(s.size(), 4u);
  s.insert(2);
  s.insert(2);
  EXPECT_EQ(s.size(), 5u);
  s.clear();
  EXPECT_TRUE(s.empty());
  EXPECT_TRUE(s.allocated());
  PortSet empty;
  EXPECT_FALSE(empty.allocated());
  EXPECT_FALSE(empty.contains(0));
}

TEST(Composition, SequenceRepeatInterleave) {
  auto a = std::make_shared<GreedyInit>(0, Seed{}, false);
  auto r = std::make_shared<SimpleRounds>(0, 3, LeafTag::kn_rounds);
  auto empty = std::make_shared<SimpleRounds>(0, 0, LeafTag::kn_rounds);
  Sequence seq({a, empty, r});
  EXPECT_EQ(seq.length(), 8u);
  std::size_t local = 0;
  EXPECT_EQ(&seq.locate(1, local), a.get());
  EXPECT_EQ(local, 1u);
  EXPECT_EQ(&seq.locate(2, local), r.get());
  EXPECT_EQ(local, 0u);
  EXPECT_EQ(&seq.locate(7, local), r.get());
  EXPECT_EQ(local, 5u);

  Repeat rep(r, 4);
  EXPECT_EQ(rep.length(), 24u);
  rep.locate(13, local);
  EXPECT_EQ(local, 1u);

  auto b = std::make_shared<GreedyInit>(1, Seed{}, false);
  Interleave il(a, b);
  EXPECT_EQ(il.length(), 4u);
  EXPECT_EQ(&il.locate(0, local), a.get());
  EXPECT_EQ(&il.locate(3, local), b.get());
  EXPECT_EQ(local, 1u);
  EXPECT_THROW(Interleave(a, r), Error);
}

TEST(Leaves, SimpleRoundsFloodThenAcknowledge) {
  const SimpleRounds rounds(0, 1, LeafTag::kn_rounds);
  VertexMemory mem = Simulation::initial_memory(1, 4, true, false);
  mem.layers[0].live.erase(1);
  VertexView view{mem, 4, 5, {}, {}};
  Recorder flood;
  rounds.emit(0, view, flood);
  EXPECT_EQ(flood.sent.size(), 3u);
  rounds.receive(0, view, Incoming{2, PayloadKind::info, 0, -1, {}, {}});
  Recorder ack;
  rounds.emit(1, view, ack);
  ASSERT_EQ(ack.sent.size(), 1u);
  EXPECT_EQ(ack.sent[0].port, 2u);
  EXPECT_EQ(ack.sent[0].kind, PayloadKind::ack);
  EXPECT_TRUE(rounds.opens_unit(0));
  EXPECT_FALSE(rounds.opens_unit(1));
}

TEST(Leaves, UninformedVertexStaysSilent) {
  const SimpleRounds rounds(0, 1, LeafTag::kn_rounds);
  const GreedyInit greedy(0, Seed{}, false);
  VertexMemory mem = Simulation::initial_memory(1, 4, false, false);
  VertexView view{mem, 4, 5, {}, {}};
  Recorder out;
  rounds.emit(0, view, out);
  greedy.emit(0, view, out);
  greedy.emit(1, view, out);
  EXPECT_TRUE(out.sent.empty());
}

TEST(Leaves, HypercubeGreedySkipsHeardPorts) {
  const GreedyInit greedy(0, Seed{}, true);
  VertexMemory mem = Simulation::initial_memory(1, 3, false, false);
  VertexView view{mem, 3, 8, {}, {}};
  Recorder out;
  greedy.emit(0, view, out);
  Incoming in{1, PayloadKind::info, 0, -1, {}, {}};
  absorb(view, in, {0});
  greedy.receive(0, view, in);
  greedy.emit(1, view, out);
  ASSERT_EQ(out.sent.size(), 2u);
  EXPECT_EQ(out.sent[0].port, 0u);
  EXPECT_EQ(out.sent[1].port, 2u);
}

TEST(Leaves, IntersectionSeed) {
  LabelledVertex v(12, 0, 2);
  v.mem.layers[0].aware = true;
  v.mem.layers[0].inbox = {list({3, 7, 9}), list({3, 7})};
  const GreedyInit greedy(1, Seed{Seed::Kind::intersect_inbox, 0, 0}, false);
  Recorder out;
  greedy.emit(0, v.view, out);
  ASSERT_TRUE(v.mem.layers[1].aware);
  EXPECT_EQ(*v.mem.layers[1].payload, (std::vector<std::uint32_t>{3, 7}));
  EXPECT_EQ(out.sent.size(), 11u);
  EXPECT_EQ(out.sent[0].kind, PayloadKind::info_candidates);
}

TEST(Leaves, SeedOnlyAtOrigin) {
  LabelledVertex v(12, 4, 2);
  v.mem.layers[0].inbox = {list({3})};
  const GreedyInit greedy(1, Seed{Seed::Kind::intersect_inbox, 0, 0}, false);
  Recorder out;
  greedy.emit(0, v.view, out);
  EXPECT_FALSE(v.mem.layers[1].aware);
  EXPECT_TRUE(out.sent.empty());
}

TEST(Leaves, PairSweepOrder) {
  LabelledVertex v(10, 0, 2);
  become_aware(v.mem.layers[1], 9, list({4, 8}));
  const PairSweep sweep(1, 0, 9);
  std::vector<std::vector<std::uint32_t>> targets;
  for (std::size_t t = 0; t < 9; ++t) {
    Recorder out;
    sweep.emit(t, v.view, out);
    std::vector<std::uint32_t> step;
    for (const auto& s : out.sent) {
      EXPECT_EQ(s.kind, PayloadKind::info);
      step.push_back(v.target(s.port));
    }
    targets.push_back(step);
  }
  const std::vector<std::vector<std::uint32_t>> expected = {{4}, {4, 8}, {8, 4}, {8}, {}, {}, {}, {}, {}};
  EXPECT_EQ(targets, expected);
}

TEST(Leaves, MemberSweepTakesOneStepPerMember) {
  LabelledVertex v(16, 2, 2);
  become_aware(v.mem.layers[1], 15, list({1, 2, 5, 9, 11}));
  const MemberSweep sweep(1, 5);
  EXPECT_EQ(sweep.length(), 5u);
  std::vector<std::uint32_t> targets;
  for (std::size_t t = 0; t < 5; ++t) {
    Recorder out;
    sweep.emit(t, v.view, out);
    for (const auto& s : out.sent) targets.push_back(v.target(s.port));
  }
  EXPECT_EQ(targets, (std::vector<std::uint32_t>{1, 5, 9, 11}));
}

TEST(Leaves, CandidateReportRespectsThreshold) {
  LabelledVertex v(8, 3, 1);
  become_aware(v.mem.layers[0], 7, {});
  for (PortId p = 0; p < 5; ++p) v.mem.layers[0].live.erase(p);
  const CandidateReport big(0, 2), small(0, 1);
  Recorder none;
  small.emit(0, v.view, none);
  EXPECT_TRUE(none.sent.empty());
  Recorder out;
  big.emit(0, v.view, out);
  ASSERT_EQ(out.sent.size(), 2u);
  EXPECT_EQ(v.target(out.sent[0].port), 0u);
  EXPECT_EQ(v.target(out.sent[1].port), 1u);
  std::vector<std::uint32_t> expected = {v.target(5), v.target(6)};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(*out.sent[0].candidates, expected);
}

TEST(Absorb, MarksLayerChainAndLearnsIdentifier) {
  const Topology t = build_complete(6);
  const ChordalLabeling l = chordal_labels(t);
  VertexMemory mem = Simulation::initial_memory(3, 5, false, true);
  VertexView view{mem, 5, 6, l.labels_at(4), l.ports_at(4)};
  const PortId from2 = t.port_to(4, 2);
  Incoming in{from2, PayloadKind::info_candidates, 2, 2, {}, {list({1, 5}), list({0, 3})}};
  absorb(view, in, {0, 0, 1});
  EXPECT_EQ(mem.id, 4);
  for (LayerId layer : {0, 1, 2}) {
    EXPECT_TRUE(mem.layers[layer].aware);
    EXPECT_FALSE(mem.layers[layer].live.contains(from2));
    EXPECT_EQ(mem.layers[layer].live.size(), 4u);
  }
  EXPECT_EQ(*mem.layers[2].payload, (std::vector<std::uint32_t>{1, 5}));
  EXPECT_EQ(*mem.layers[1].payload, (std::vector<std::uint32_t>{0, 3}));
  EXPECT_FALSE(mem.layers[0].payload);
}
