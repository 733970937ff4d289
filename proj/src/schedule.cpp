// SPDX-License-Identifier: Apache-2.0

#include "bcast/schedule.hpp"

#include <algorithm>
#include <numeric>

namespace bcast {

void PortSet::reset(std::size_t degree, bool full) {
  pos_.assign(degree, kNone);
  items_.clear();
  if (full) {
    items_.resize(degree);
    std::iota(items_.begin(), items_.end(), PortId{0});
    std::iota(pos_.begin(), pos_.end(), std::uint32_t{0});
  }
}

void PortSet::insert(PortId p) {
  if (pos_[p] != kNone) return;
  pos_[p] = static_cast<std::uint32_t>(items_.size());
  items_.push_back(p);
}

void PortSet::erase(PortId p) {
  const std::uint32_t at = pos_[p];
  if (at == kNone) return;
  const PortId last = items_.back();
  items_[at] = last;
  pos_[last] = at;
  items_.pop_back();
  pos_[p] = kNone;
}

void PortSet::clear() {
  for (PortId p : items_) pos_[p] = kNone;
  items_.clear();
}

PortId VertexView::port_towards(std::uint32_t target_id) const {
  const auto own = static_cast<std::uint32_t>(mem.id);
  const auto label = static_cast<std::uint32_t>((target_id + n - own) % n);
  return label_ports[label - 1];
}

std::uint32_t VertexView::id_behind(PortId p) const {
  return static_cast<std::uint32_t>((static_cast<std::size_t>(mem.id) + labels[p]) % n);
}

void become_aware(LayerMemory& layer, std::size_t degree, CandidateList payload) {
  if (!layer.aware) {
    layer.aware = true;
    if (!layer.live.allocated()) layer.live.reset(degree, true);
  }
  if (!layer.payload) layer.payload = std::move(payload);
}

Sequence::Sequence(std::vector<SchedulePtr> parts) {
  for (auto& p : parts) {
    if (p->length() == 0) continue;
    starts_.push_back(total_);
    total_ += p->length();
    parts_.push_back(std::move(p));
  }
}

const Leaf& Sequence::locate(std::size_t t, std::size_t& local) const {
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), t);
  const auto i = static_cast<std::size_t>(it - starts_.begin()) - 1;
  return parts_[i]->locate(t - starts_[i], local);
}

Interleave::Interleave(SchedulePtr even, SchedulePtr odd) : even_(std::move(even)), odd_(std::move(odd)) {
  if (even_->length() != odd_->length()) {
    throw Error(ErrorKind::invalid_parameter, "interleaved schedules must have equal length");
  }
}

namespace {

PayloadKind flood_kind(LayerId layer) {
  return layer == 0 ? PayloadKind::info : PayloadKind::info_candidates;
}

void apply_seed(const Seed& seed, LayerId layer, VertexView& self) {
  if (seed.kind == Seed::Kind::preset || self.mem.id != seed.origin_id) return;
  LayerMemory& mine = self.mem.layers[layer];
  if (mine.aware) return;
  const LayerMemory& source = self.mem.layers[seed.source];
  if (seed.kind == Seed::Kind::copy_layer) {
    if (source.aware && source.payload) become_aware(mine, self.degree, source.payload);
    return;
  }
  if (source.inbox.empty()) return;
  std::vector<std::uint32_t> common = *source.inbox.front();
  std::vector<std::uint32_t> next;
  for (std::size_t i = 1; i < source.inbox.size(); ++i) {
    next.clear();
    std::set_intersection(common.begin(), common.end(), source.inbox[i]->begin(),
                          source.inbox[i]->end(), std::back_inserter(next));
    common.swap(next);
  }
  become_aware(mine, self.degree, std::make_shared<const std::vector<std::uint32_t>>(std::move(common)));
}

}  // namespace

void GreedyInit::emit(std::size_t local, VertexView& self, Outbox& out) const {
  LayerMemory& mine = self.mem.layers[layer_];
  if (local == 0) {
    apply_seed(seed_, layer_, self);
    mine.heard.clear();
    if (!mine.aware) return;
    for (PortId p = 0; p < self.degree; ++p) out.send(p, flood_kind(layer_), layer_);
    return;
  }
  if (mine.aware) {
    for (PortId p = 0; p < self.degree; ++p) {
      if (skip_heard_ && std::find(mine.heard.begin(), mine.heard.end(), p) != mine.heard.end()) continue;
      out.send(p, flood_kind(layer_), layer_);
    }
  }
  mine.heard.clear();
}

void GreedyInit::receive(std::size_t local, VertexView& self, const Incoming& in) const {
  if (local == 0) self.mem.layers[layer_].heard.push_back(in.port);
}

void SimpleRounds::emit(std::size_t local, VertexView& self, Outbox& out) const {
  LayerMemory& mine = self.mem.layers[layer_];
  if (local % 2 == 0) {
    mine.heard.clear();
    if (!mine.aware) return;
    for (PortId p : mine.live.items()) out.send(p, flood_kind(layer_), layer_);
    return;
  }
  for (PortId p : mine.heard) out.send(p, PayloadKind::ack, layer_);
  mine.heard.clear();
}

void SimpleRounds::receive(std::size_t local, VertexView& self, const Incoming& in) const {
  if (local % 2 == 0) self.mem.layers[layer_].heard.push_back(in.port);
}

void HyperactiveSweep::emit(std::size_t local, VertexView& self, Outbox& out) const {
  VertexMemory& mem = self.mem;
  if (local == 0) {
    if (!mem.sweep.allocated()) mem.sweep.reset(self.degree, false);
    mem.sweep.clear();
    if (mem.informed()) {
      for (PortId p : mem.layers[0].live.items()) mem.sweep.insert(p);
    }
  }
  if (!mem.informed()) return;
  for (PortId p : mem.sweep.items()) out.send(p, PayloadKind::info, 0);
}

void HyperactiveSweep::receive(std::size_t, VertexView& self, const Incoming& in) const {
  if (!self.mem.sweep.allocated()) self.mem.sweep.reset(self.degree, false);
  self.mem.sweep.insert(in.port);
}

void CandidateReport::emit(std::size_t, VertexView& self, Outbox& out) const {
  LayerMemory& mine = self.mem.layers[target_];
  if (!self.has_labels() || self.mem.id < 0 || !mine.aware) return;
  if (mine.live.size() > threshold_) return;
  std::vector<std::uint32_t> ids;
  ids.reserve(mine.live.size());
  for (PortId p : mine.live.items()) ids.push_back(self.id_behind(p));
  std::sort(ids.begin(), ids.end());
  auto report = std::make_shared<const std::vector<std::uint32_t>>(std::move(ids));
  for (std::uint32_t origin : {0u, 1u}) {
    if (self.mem.id == origin) {
      mine.inbox.push_back(report);
    } else {
      out.send(self.port_towards(origin), PayloadKind::info_candidates, target_, report);
    }
  }
}

void CandidateReport::receive(std::size_t, VertexView& self, const Incoming& in) const {
  if (in.candidates) self.mem.layers[target_].inbox.push_back(in.candidates);
}

void PairSweep::emit(std::size_t local, VertexView& self, Outbox& out) const {
  const LayerMemory& holder = self.mem.layers[holder_];
  if (!self.has_labels() || !holder.aware || !holder.payload) return;
  const auto& u = *holder.payload;
  if (local >= u.size() * u.size()) return;
  const std::uint32_t first = u[local / u.size()];
  const std::uint32_t second = u[local % u.size()];
  if (first != self.mem.id) out.send(self.port_towards(first), flood_kind(target_), target_);
  if (second != first && second != self.mem.id) {
    out.send(self.port_towards(second), flood_kind(target_), target_);
  }
}

void MemberSweep::emit(std::size_t local, VertexView& self, Outbox& out) const {
  const LayerMemory& holder = self.mem.layers[holder_];
  if (!self.has_labels() || !holder.aware || !holder.payload) return;
  const auto& u = *holder.payload;
  if (local >= u.size() || u[local] == self.mem.id) return;
  out.send(self.port_towards(u[local]), PayloadKind::info, 0);
}

}  // namespace bcast
