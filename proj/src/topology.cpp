// SPDX-License-Identifier: Apache-2.0

#include "bcast/topology.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "bcast/rng.hpp"

namespace bcast {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::unsupported_topology: return "unsupported-topology";
    case ErrorKind::unsupported_alpha: return "unsupported-alpha";
    case ErrorKind::adversary_violation: return "adversary-violation";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::too_large: return "too-large";
    case ErrorKind::config_error: return "config-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

const char* to_string(TopologyKind kind) {
  return kind == TopologyKind::complete ? "complete" : "hypercube";
}

PortId Topology::port_to(VertexId u, VertexId v) const {
  if (u >= n_) return kNone;
  const auto nbrs = neighbors(u);
  for (PortId p = 0; p < nbrs.size(); ++p) {
    if (nbrs[p] == v) return p;
  }
  return kNone;
}

void Topology::link_opposites() {
  opposite_.assign(targets_.size(), kNone);
  if (kind_ == TopologyKind::complete) {
    // position of every neighbour in u's port list, for O(1) reverse lookups
    std::vector<PortId> where(n_ * n_, kNone);
    for (VertexId u = 0; u < n_; ++u) {
      for (PortId p = 0; p < degree_; ++p) where[u * n_ + neighbor(u, p)] = p;
    }
    for (ArcId a = 0; a < targets_.size(); ++a) {
      const VertexId u = source(a);
      const VertexId v = targets_[a];
      opposite_[a] = arc(v, where[v * n_ + u]);
    }
  } else {
    for (ArcId a = 0; a < targets_.size(); ++a) {
      // port i flips bit i in both directions
      opposite_[a] = arc(targets_[a], port(a));
    }
  }
}

Topology build_complete(std::size_t n, std::optional<std::uint64_t> port_seed) {
  if (n < 2) throw Error(ErrorKind::invalid_parameter, "complete graph needs n >= 2");
  if (n > 65536) throw Error(ErrorKind::invalid_parameter, "complete graph limited to 65536 vertices");
  Topology t;
  t.kind_ = TopologyKind::complete;
  t.n_ = n;
  t.degree_ = n - 1;
  t.targets_.resize(n * (n - 1));
  Rng rng(port_seed.value_or(0));
  std::vector<VertexId> order(n - 1);
  for (VertexId u = 0; u < n; ++u) {
    for (std::size_t p = 0; p + 1 < n; ++p) order[p] = static_cast<VertexId>((u + p + 1) % n);
    if (port_seed) seeded_shuffle(order.begin(), order.end(), rng);
    std::copy(order.begin(), order.end(), t.targets_.begin() + static_cast<std::ptrdiff_t>(u * (n - 1)));
  }
  t.link_opposites();
  return t;
}

Topology build_hypercube(std::size_t d) {
  if (d < 1) throw Error(ErrorKind::invalid_parameter, "hypercube needs d >= 1");
  if (d > 24) throw Error(ErrorKind::invalid_parameter, "hypercube limited to d <= 24");
  Topology t;
  t.kind_ = TopologyKind::hypercube;
  t.n_ = std::size_t{1} << d;
  t.d_ = d;
  t.degree_ = d;
  t.targets_.resize(t.n_ * d);
  for (VertexId u = 0; u < t.n_; ++u) {
    for (PortId i = 0; i < d; ++i) t.targets_[u * d + i] = u ^ (VertexId{1} << i);
  }
  t.link_opposites();
  return t;
}

ChordalLabeling chordal_labels(const Topology& t) {
  if (t.kind() != TopologyKind::complete) {
    throw Error(ErrorKind::unsupported_topology, "chordal labels need a complete graph");
  }
  const std::size_t n = t.vertex_count();
  ChordalLabeling c;
  c.n_ = n;
  c.labels_.resize(n * (n - 1));
  c.ports_.resize(n * (n - 1));
  for (VertexId u = 0; u < n; ++u) {
    for (PortId p = 0; p + 1 < n; ++p) {
      const auto label = static_cast<std::uint32_t>((t.neighbor(u, p) + n - u) % n);
      c.labels_[u * (n - 1) + p] = label;
      c.ports_[u * (n - 1) + label - 1] = p;
    }
  }
  return c;
}

std::size_t edge_boundary_mask(const Topology& t, std::span<const std::uint8_t> mask) {
  std::size_t crossing = 0;
  for (VertexId u = 0; u < t.vertex_count(); ++u) {
    if (!mask[u]) continue;
    for (VertexId v : t.neighbors(u)) crossing += mask[v] ? 0 : 1;
  }
  return crossing;
}

std::size_t edge_boundary(const Topology& t, std::span<const VertexId> members) {
  std::vector<std::uint8_t> mask(t.vertex_count(), 0);
  for (VertexId v : members) {
    if (v >= t.vertex_count()) throw Error(ErrorKind::invalid_parameter, "vertex out of range");
    mask[v] = 1;
  }
  return edge_boundary_mask(t, mask);
}

double iso_lower_bound(std::size_t k, std::size_t d) {
  if (d >= 63 || k < 1 || k > (std::size_t{1} << d)) {
    throw Error(ErrorKind::invalid_parameter, "iso_lower_bound needs 1 <= k <= 2^d");
  }
  const double kk = static_cast<double>(k);
  return kk * (static_cast<double>(d) - std::log2(kk));
}

}  // namespace bcast
