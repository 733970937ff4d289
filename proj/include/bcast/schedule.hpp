// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "bcast/engine.hpp"
#include "bcast/types.hpp"

namespace bcast {

// Subset of a vertex's ports with O(1) insert/erase and dense iteration.
class PortSet {
 public:
  void reset(std::size_t degree, bool full);
  bool contains(PortId p) const { return p < pos_.size() && pos_[p] != kNone; }
  void insert(PortId p);
  void erase(PortId p);
  void clear();
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::span<const PortId> items() const { return items_; }
  bool allocated() const { return !pos_.empty(); }

 private:
  std::vector<PortId> items_;
  std::vector<std::uint32_t> pos_;
};

// What one vertex remembers about one broadcast payload. Layer 0 is the
// original information; other layers carry candidate sets and always carry
// their parent layer along.
struct LayerMemory {
  bool aware = false;
  PortSet live;  // ports not yet known to be passive
  CandidateList payload;
  std::vector<PortId> heard;  // ports heard from in the current step
  std::vector<CandidateList> inbox;
};

struct VertexMemory {
  std::int64_t id = -1;  // chordal identifier, once learned
  std::vector<LayerMemory> layers;
  PortSet sweep;  // ports swept in the current hyperactive-elimination iteration

  bool informed() const { return layers[0].aware; }
};

// A vertex's view of itself: its own memory and its own port labels.
struct VertexView {
  VertexMemory& mem;
  std::size_t degree = 0;
  std::size_t n = 0;
  std::span<const std::uint32_t> labels;  // empty without sense of direction
  std::span<const PortId> label_ports;

  bool has_labels() const { return !labels.empty(); }
  PortId port_towards(std::uint32_t target_id) const;
  std::uint32_t id_behind(PortId p) const;
};

struct Incoming {
  PortId port = 0;
  PayloadKind kind = PayloadKind::info;
  LayerId layer = 0;
  std::int32_t sender_id = -1;
  CandidateList candidates;
  std::array<CandidateList, 2> chain;
};

class Outbox {
 public:
  virtual ~Outbox() = default;
  virtual void send(PortId port, PayloadKind kind, LayerId layer, CandidateList candidates = {}) = 0;
};

enum class LeafTag {
  greedy,
  kn_rounds,
  qd_rounds,
  layer_rounds,
  sweep,
  candidate_report,
  pair_sweep,
  member_sweep,
};

class Leaf;

class Schedule {
 public:
  virtual ~Schedule() = default;
  virtual std::size_t length() const = 0;
  /// Leaf responsible for step t of this schedule, and the step within it.
  virtual const Leaf& locate(std::size_t t, std::size_t& local) const = 0;
};

using SchedulePtr = std::shared_ptr<const Schedule>;

class Leaf : public Schedule {
 public:
  const Leaf& locate(std::size_t t, std::size_t& local) const override {
    local = t;
    return *this;
  }
  virtual LeafTag tag() const = 0;
  virtual void emit(std::size_t local, VertexView& self, Outbox& out) const = 0;
  virtual void receive(std::size_t, VertexView&, const Incoming&) const {}
  /// True when `local` opens a unit that only ends with the following step.
  virtual bool opens_unit(std::size_t) const { return false; }
};

class Sequence : public Schedule {
 public:
  explicit Sequence(std::vector<SchedulePtr> parts);
  std::size_t length() const override { return total_; }
  const Leaf& locate(std::size_t t, std::size_t& local) const override;

 private:
  std::vector<SchedulePtr> parts_;
  std::vector<std::size_t> starts_;
  std::size_t total_ = 0;
};

class Repeat : public Schedule {
 public:
  Repeat(SchedulePtr body, std::size_t times) : body_(std::move(body)), times_(times) {}
  std::size_t length() const override { return body_->length() * times_; }
  const Leaf& locate(std::size_t t, std::size_t& local) const override {
    return body_->locate(t % body_->length(), local);
  }

 private:
  SchedulePtr body_;
  std::size_t times_;
};

// Two equally long schedules time-multiplexed: even steps run the first,
// odd steps the second.
class Interleave : public Schedule {
 public:
  Interleave(SchedulePtr even, SchedulePtr odd);
  std::size_t length() const override { return 2 * even_->length(); }
  const Leaf& locate(std::size_t t, std::size_t& local) const override {
    return (t % 2 == 0 ? even_ : odd_)->locate(t / 2, local);
  }

 private:
  SchedulePtr even_;
  SchedulePtr odd_;
};

// How an origin vertex comes to know a layer's payload when the layer starts.
struct Seed {
  enum class Kind { preset, intersect_inbox, copy_layer } kind = Kind::preset;
  std::uint32_t origin_id = 0;
  LayerId source = 0;  // inbox owner or copied layer
};

/// Two greedy flooding steps on `layer`; with `skip_heard` the second step
/// avoids the ports heard from in the first (the hypercube variant).
class GreedyInit : public Leaf {
 public:
  GreedyInit(LayerId layer, Seed seed, bool skip_heard)
      : layer_(layer), seed_(seed), skip_heard_(skip_heard) {}
  std::size_t length() const override { return 2; }
  LeafTag tag() const override { return LeafTag::greedy; }
  void emit(std::size_t local, VertexView& self, Outbox& out) const override;
  void receive(std::size_t local, VertexView& self, const Incoming& in) const override;
  LayerId layer() const { return layer_; }
  const Seed& seed() const { return seed_; }

 private:
  LayerId layer_;
  Seed seed_;
  bool skip_heard_;
};

/// `rounds` simple rounds: flood non-passive ports, then acknowledge every
/// port heard from.
class SimpleRounds : public Leaf {
 public:
  SimpleRounds(LayerId layer, std::size_t rounds, LeafTag tag)
      : layer_(layer), rounds_(rounds), tag_(tag) {}
  std::size_t length() const override { return 2 * rounds_; }
  LeafTag tag() const override { return tag_; }
  void emit(std::size_t local, VertexView& self, Outbox& out) const override;
  void receive(std::size_t local, VertexView& self, const Incoming& in) const override;
  bool opens_unit(std::size_t local) const override { return local % 2 == 0; }
  LayerId layer() const { return layer_; }

 private:
  LayerId layer_;
  std::size_t rounds_;
  LeafTag tag_;
};

/// One iteration of hyperactive-arc elimination: snapshot the non-passive
/// ports, then for `steps` steps send over the snapshot plus every port a
/// message arrived on during the iteration.
class HyperactiveSweep : public Leaf {
 public:
  explicit HyperactiveSweep(std::size_t steps) : steps_(steps) {}
  std::size_t length() const override { return steps_; }
  LeafTag tag() const override { return LeafTag::sweep; }
  void emit(std::size_t local, VertexView& self, Outbox& out) const override;
  void receive(std::size_t local, VertexView& self, const Incoming& in) const override;

 private:
  std::size_t steps_;
};

/// Vertices with at most `threshold` non-passive ports in `target` report the
/// identifiers behind those ports to vertices 0 and 1.
class CandidateReport : public Leaf {
 public:
  CandidateReport(LayerId target, std::size_t threshold) : target_(target), threshold_(threshold) {}
  std::size_t length() const override { return 1; }
  LeafTag tag() const override { return LeafTag::candidate_report; }
  void emit(std::size_t local, VertexView& self, Outbox& out) const override;
  void receive(std::size_t local, VertexView& self, const Incoming& in) const override;
  LayerId target() const { return target_; }
  std::size_t threshold() const { return threshold_; }

 private:
  LayerId target_;
  std::size_t threshold_;
};

/// Every vertex holding candidate set U (layer `holder`) walks the pairs of U
/// in lexicographic order, one pair per step, sending `target` to both.
class PairSweep : public Leaf {
 public:
  PairSweep(LayerId holder, LayerId target, std::size_t window)
      : holder_(holder), target_(target), window_(window) {}
  std::size_t length() const override { return window_; }
  LeafTag tag() const override { return LeafTag::pair_sweep; }
  void emit(std::size_t local, VertexView& self, Outbox& out) const override;

 private:
  LayerId holder_;
  LayerId target_;
  std::size_t window_;
};

/// Every vertex holding candidate set U sends the information to the i-th
/// member of U in step i.
class MemberSweep : public Leaf {
 public:
  MemberSweep(LayerId holder, std::size_t window) : holder_(holder), window_(window) {}
  std::size_t length() const override { return window_; }
  LeafTag tag() const override { return LeafTag::member_sweep; }
  void emit(std::size_t local, VertexView& self, Outbox& out) const override;

 private:
  LayerId holder_;
  std::size_t window_;
};

/// Makes a vertex aware of a layer with the given payload.
void become_aware(LayerMemory& layer, std::size_t degree, CandidateList payload);

}  // namespace bcast
