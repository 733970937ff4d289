// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bcast/engine.hpp"
#include "bcast/rng.hpp"

namespace bcast {

/// Destroys a uniform random subset of size min(m, budget).
class RandomAdversary : public AdversaryPolicy {
 public:
  explicit RandomAdversary(std::uint64_t seed) : rng_(seed) {}
  std::string id() const override { return "random"; }
  std::vector<std::uint32_t> decide(const StepContext& ctx, const SendBatch& batch,
                                    std::size_t budget) override;

 private:
  Rng rng_;
};

/// Starves one vertex: messages addressed to the victim go first, then
/// acknowledgements, then a random fill up to the budget.
class VictimGuard : public AdversaryPolicy {
 public:
  VictimGuard(VertexId victim, std::uint64_t seed) : victim_(victim), rng_(seed) {}
  std::string id() const override { return "victim_guard"; }
  std::vector<std::uint32_t> decide(const StepContext& ctx, const SendBatch& batch,
                                    std::size_t budget) override;

 private:
  VertexId victim_;
  Rng rng_;
};

/// Keeps arcs from turning passive: acknowledgements first, then a random pick
/// among messages to uninformed vertices, then a random fill.
class AckSuppressor : public AdversaryPolicy {
 public:
  explicit AckSuppressor(std::uint64_t seed) : rng_(seed) {}
  std::string id() const override { return "ack_suppressor"; }
  std::vector<std::uint32_t> decide(const StepContext& ctx, const SendBatch& batch,
                                    std::size_t budget) override;

 private:
  Rng rng_;
};

/// Never destroys anything.
class BenignAdversary : public AdversaryPolicy {
 public:
  std::string id() const override { return "none"; }
  std::vector<std::uint32_t> decide(const StepContext&, const SendBatch&, std::size_t) override {
    return {};
  }
};

/// Shipped heuristic strategies, in the order the harness runs them.
const std::vector<std::string>& adversary_ids();

/// Builds a policy from its CLI id; victim_guard starves `victim`.
std::unique_ptr<AdversaryPolicy> make_adversary(const std::string& id, std::uint64_t seed,
                                                VertexId victim);

/// Picks `count` entries of `pool` uniformly without replacement and appends them to `out`.
void sample_without_replacement(std::vector<std::uint32_t>& pool, std::size_t count, Rng& rng,
                                std::vector<std::uint32_t>& out);

}  // namespace bcast
