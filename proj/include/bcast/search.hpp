// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

#include "bcast/protocol.hpp"

namespace bcast {

struct SearchOptions {
  std::size_t horizon = 0;  // 0: the full schedule
  bool all_sizes = false;   // also try kill sets smaller than the budget
};

struct SearchResult {
  std::size_t steps = 0;  // worst-case completion step, valid unless exceeds_horizon
  bool exceeds_horizon = false;
  std::size_t horizon = 0;
  std::size_t states = 0;  // memoized positions
};

/// Exhaustive game search: the adversary picks a kill set every step and
/// maximizes the step at which the last vertex gets informed. A completion in
/// the first step of a simple round counts at the end of that round. Positions
/// are memoized modulo automorphisms that fix the initiator.
SearchResult worst_case_search(const Topology& topology, const ProtocolSpec& spec, const ProtocolParams& params,
                               const SearchOptions& options = {});

/// Largest instance the search accepts.
inline constexpr std::size_t kSearchMaxVertices = 5;

}  // namespace bcast
