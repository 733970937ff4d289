// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bcast/types.hpp"

namespace bcast {

enum class TopologyKind { complete, hypercube };

const char* to_string(TopologyKind kind);

// Regular network graph with per-vertex port numbering. Arc ids are laid out
// as u * degree + port, so the out-arcs of u occupy one contiguous block.
class Topology {
 public:
  TopologyKind kind() const { return kind_; }
  std::size_t vertex_count() const { return n_; }
  std::size_t dimension() const { return d_; }
  std::size_t degree() const { return degree_; }
  std::size_t arc_count() const { return targets_.size(); }
  std::size_t edge_connectivity() const { return degree_; }

  ArcId arc(VertexId u, PortId port) const { return static_cast<ArcId>(u * degree_ + port); }
  VertexId source(ArcId a) const { return static_cast<VertexId>(a / degree_); }
  PortId port(ArcId a) const { return static_cast<PortId>(a % degree_); }
  VertexId target(ArcId a) const { return targets_[a]; }
  VertexId neighbor(VertexId u, PortId port) const { return targets_[arc(u, port)]; }
  ArcId opposite(ArcId a) const { return opposite_[a]; }

  /// Port of u leading to v, or kNone when u and v are not adjacent.
  PortId port_to(VertexId u, VertexId v) const;

  std::span<const VertexId> neighbors(VertexId u) const {
    return {targets_.data() + u * degree_, degree_};
  }

 private:
  friend Topology build_complete(std::size_t, std::optional<std::uint64_t>);
  friend Topology build_hypercube(std::size_t);

  TopologyKind kind_ = TopologyKind::complete;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::size_t degree_ = 0;
  std::vector<VertexId> targets_;
  std::vector<ArcId> opposite_;

  void link_opposites();
};

/// K_n. Without a seed, port p of u leads to (u + p + 1) mod n; with a seed,
/// each vertex gets an independent pseudo-random port permutation.
Topology build_complete(std::size_t n, std::optional<std::uint64_t> port_seed = std::nullopt);

/// Q_d on vertices 0..2^d-1; port i of u leads to u xor 2^i.
Topology build_hypercube(std::size_t d);

// Chordal sense of direction on K_n: the label of arc u->v is the clockwise
// distance (v - u) mod n along the cycle 0,1,...,n-1.
class ChordalLabeling {
 public:
  std::size_t vertex_count() const { return n_; }
  std::uint32_t label(VertexId u, PortId port) const { return labels_[u * (n_ - 1) + port]; }
  PortId port_with_label(VertexId u, std::uint32_t label) const {
    return ports_[u * (n_ - 1) + label - 1];
  }
  std::span<const std::uint32_t> labels_at(VertexId u) const {
    return {labels_.data() + u * (n_ - 1), n_ - 1};
  }
  std::span<const PortId> ports_at(VertexId u) const {
    return {ports_.data() + u * (n_ - 1), n_ - 1};
  }

  /// Destination identifier seen through `port` by a vertex whose identifier is `own`.
  std::uint32_t destination(std::uint32_t own, std::uint32_t label) const {
    return static_cast<std::uint32_t>((own + label) % n_);
  }

 private:
  friend ChordalLabeling chordal_labels(const Topology&);
  std::size_t n_ = 0;
  std::vector<std::uint32_t> labels_;
  std::vector<PortId> ports_;
};

ChordalLabeling chordal_labels(const Topology& t);

/// Number of undirected edges with exactly one endpoint in `members`.
std::size_t edge_boundary(const Topology& t, std::span<const VertexId> members);
std::size_t edge_boundary_mask(const Topology& t, std::span<const std::uint8_t> mask);

/// k (d - lg k): lower bound on the edge boundary of any k-subset of Q_d.
double iso_lower_bound(std::size_t k, std::size_t d);

}  // namespace bcast
