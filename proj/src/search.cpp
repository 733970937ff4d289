// SPDX-License-Identifier: Apache-2.0

#include "bcast/search.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

namespace bcast {

namespace {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

class Searcher {
 public:
  Searcher(const Topology& topo, const ProtocolParams& params, const SearchOptions& options, std::size_t horizon)
      : topo_(topo), alpha_(params.alpha), all_sizes_(options.all_sizes), horizon_(horizon) {
    const std::size_t n = topo.vertex_count();
    std::vector<VertexId> perm(n);
    std::iota(perm.begin(), perm.end(), VertexId{0});
    do {
      if (perm[params.initiator] == params.initiator && automorphism(perm)) perms_.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::size_t value(Simulation& sim) {
    if (sim.zero_step() != 0) return sim.zero_step() <= horizon_ ? sim.zero_step() : kNever;
    if (sim.finished() || sim.now() >= horizon_) return kNever;
    const std::string key = encode(sim);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;

    const SendBatch& batch = sim.prepare();
    const std::size_t m = batch.size();
    const std::size_t cap = std::min(m, fault_budget(m, topo_.edge_connectivity(), alpha_));
    std::size_t best = 0;
    std::vector<std::uint32_t> kills;
    for (std::size_t size = all_sizes_ ? 0 : cap; size <= cap && best != kNever; ++size) {
      kills.resize(size);
      std::iota(kills.begin(), kills.end(), std::uint32_t{0});
      while (true) {
        Simulation child = sim;
        child.commit(kills);
        best = std::max(best, value(child));
        if (best == kNever || !next_combination(kills, m)) break;
      }
    }
    memo_.emplace(key, best);
    return best;
  }

  std::size_t states() const { return memo_.size(); }

 private:
  bool automorphism(const std::vector<VertexId>& perm) const {
    for (VertexId u = 0; u < topo_.vertex_count(); ++u) {
      for (VertexId v : topo_.neighbors(u)) {
        if (topo_.port_to(perm[u], perm[v]) == kNone) return false;
      }
    }
    return true;
  }

  static bool next_combination(std::vector<std::uint32_t>& c, std::size_t m) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
      if (c[i] < m - k + i) {
        ++c[i];
        for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  // Memory of every vertex as sets of neighbours (not ports), minimized over
  // the automorphisms; port numbering does not influence these protocols.
  std::string encode(const Simulation& sim) const {
    const std::size_t n = topo_.vertex_count();
    std::string best;
    std::vector<std::uint32_t> words(n);
    for (const auto& perm : perms_) {
      for (VertexId v = 0; v < n; ++v) {
        const VertexMemory& mem = sim.memories()[v];
        const LayerMemory& main = mem.layers[0];
        std::uint32_t live = 0, heard = 0, sweep = 0;
        auto bit = [&](PortId p) { return std::uint32_t{1} << perm[topo_.neighbor(v, p)]; };
        for (PortId p : main.live.items()) live |= bit(p);
        for (PortId p : main.heard) heard |= bit(p);
        for (PortId p : mem.sweep.items()) sweep |= bit(p);
        words[perm[v]] = (main.aware ? 1u : 0u) | live << 1 | heard << (1 + n) | sweep << (1 + 2 * n);
      }
      std::string key(reinterpret_cast<const char*>(words.data()), words.size() * sizeof(std::uint32_t));
      if (best.empty() || key < best) best = std::move(key);
    }
    const std::size_t now = sim.now();
    best.append(reinterpret_cast<const char*>(&now), sizeof now);
    return best;
  }

  const Topology& topo_;
  double alpha_;
  bool all_sizes_;
  std::size_t horizon_;
  std::vector<std::vector<VertexId>> perms_;
  std::unordered_map<std::string, std::size_t> memo_;
};

}  // namespace

SearchResult worst_case_search(const Topology& topology, const ProtocolSpec& spec, const ProtocolParams& params,
                               const SearchOptions& options) {
  if (topology.vertex_count() > kSearchMaxVertices) {
    throw Error(ErrorKind::too_large, "search is limited to " + std::to_string(kSearchMaxVertices) + " vertices");
  }
  if (needs_labels(spec.kind)) {
    throw Error(ErrorKind::invalid_parameter, "search does not support protocols with a sense of direction");
  }
  const Plan plan = build_plan(spec, topology, params);
  const std::size_t horizon = options.horizon == 0 ? plan.schedule->length() : options.horizon;
  Simulation root(plan.schedule, plan.parents, topology, nullptr, params.alpha, params.initiator);
  Searcher searcher(topology, params, options, horizon);
  SearchResult result;
  result.horizon = horizon;
  const std::size_t v = searcher.value(root);
  result.exceeds_horizon = v == kNever;
  result.steps = result.exceeds_horizon ? 0 : v;
  result.states = searcher.states();
  return result;
}

}  // namespace bcast
