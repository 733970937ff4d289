// SPDX-License-Identifier: Apache-2.0

#include "bcast/adversary.hpp"

#include <algorithm>
#include <numeric>

namespace bcast {

namespace {

// Appends up to `room` entries of `tier`, lowest arc id first.
void take_lowest_arcs(const SendBatch& batch, std::vector<std::uint32_t>& tier, std::size_t room,
                      std::vector<std::uint32_t>& kills) {
  std::sort(tier.begin(), tier.end(), [&](std::uint32_t a, std::uint32_t b) {
    return batch.messages[a].arc < batch.messages[b].arc;
  });
  tier.resize(std::min(tier.size(), room));
  kills.insert(kills.end(), tier.begin(), tier.end());
}

void random_fill(const SendBatch& batch, std::size_t budget, Rng& rng,
                 std::vector<std::uint32_t>& kills) {
  if (kills.size() >= budget) return;
  std::vector<std::uint8_t> taken(batch.size(), 0);
  for (auto i : kills) taken[i] = 1;
  std::vector<std::uint32_t> rest;
  rest.reserve(batch.size() - kills.size());
  for (std::uint32_t i = 0; i < batch.size(); ++i) {
    if (!taken[i]) rest.push_back(i);
  }
  sample_without_replacement(rest, budget - kills.size(), rng, kills);
}

}  // namespace

void sample_without_replacement(std::vector<std::uint32_t>& pool, std::size_t count, Rng& rng,
                                std::vector<std::uint32_t>& out) {
  if (count >= pool.size()) {
    out.insert(out.end(), pool.begin(), pool.end());
    return;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + uniform_below(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
}

std::vector<std::uint32_t> RandomAdversary::decide(const StepContext&, const SendBatch& batch,
                                                   std::size_t budget) {
  std::vector<std::uint32_t> kills;
  if (budget == 0 || batch.empty()) return kills;
  std::vector<std::uint32_t> pool(batch.size());
  std::iota(pool.begin(), pool.end(), 0u);
  sample_without_replacement(pool, budget, rng_, kills);
  return kills;
}

std::vector<std::uint32_t> VictimGuard::decide(const StepContext& ctx, const SendBatch& batch,
                                               std::size_t budget) {
  std::vector<std::uint32_t> kills;
  if (budget == 0 || batch.empty()) return kills;
  std::vector<std::uint32_t> to_victim;
  std::vector<std::uint32_t> acks;
  for (std::uint32_t i = 0; i < batch.size(); ++i) {
    const Message& m = batch.messages[i];
    if (ctx.topology.target(m.arc) == victim_) {
      to_victim.push_back(i);
    } else if (m.kind == PayloadKind::ack) {
      acks.push_back(i);
    }
  }
  take_lowest_arcs(batch, to_victim, budget, kills);
  take_lowest_arcs(batch, acks, budget - kills.size(), kills);
  random_fill(batch, budget, rng_, kills);
  return kills;
}

std::vector<std::uint32_t> AckSuppressor::decide(const StepContext& ctx, const SendBatch& batch,
                                                 std::size_t budget) {
  std::vector<std::uint32_t> kills;
  if (budget == 0 || batch.empty()) return kills;
  std::vector<std::uint32_t> acks;
  std::vector<std::uint32_t> fresh;
  for (std::uint32_t i = 0; i < batch.size(); ++i) {
    const Message& m = batch.messages[i];
    if (m.kind == PayloadKind::ack) {
      acks.push_back(i);
    } else if (!ctx.state.informed(ctx.topology.target(m.arc))) {
      fresh.push_back(i);
    }
  }
  take_lowest_arcs(batch, acks, budget, kills);
  if (kills.size() < budget) sample_without_replacement(fresh, budget - kills.size(), rng_, kills);
  random_fill(batch, budget, rng_, kills);
  return kills;
}

const std::vector<std::string>& adversary_ids() {
  static const std::vector<std::string> ids{"random", "victim_guard", "ack_suppressor"};
  return ids;
}

std::unique_ptr<AdversaryPolicy> make_adversary(const std::string& id, std::uint64_t seed,
                                                VertexId victim) {
  if (id == "random") return std::make_unique<RandomAdversary>(seed);
  if (id == "victim_guard") return std::make_unique<VictimGuard>(victim, seed);
  if (id == "ack_suppressor") return std::make_unique<AckSuppressor>(seed);
  if (id == "none") return std::make_unique<BenignAdversary>();
  throw Error(ErrorKind::config_error, "unknown adversary '" + id + "'");
}

}  // namespace bcast
