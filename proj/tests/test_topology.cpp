// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include "bcast/topology.hpp"

using namespace bcast;

TEST(CompleteGraph, PortsReachEveryOtherVertexOnce) {
  for (std::optional<std::uint64_t> seed : {std::optional<std::uint64_t>{}, std::optional<std::uint64_t>{9}}) {
    const Topology t = build_complete(7, seed);
    EXPECT_EQ(t.degree(), 6u);
    EXPECT_EQ(t.arc_count(), 42u);
    EXPECT_EQ(t.edge_connectivity(), 6u);
    for (VertexId u = 0; u < 7; ++u) {
      std::set<VertexId> seen(t.neighbors(u).begin(), t.neighbors(u).end());
      EXPECT_EQ(seen.size(), 6u);
      EXPECT_FALSE(seen.count(u));
    }
  }
}

TEST(CompleteGraph, OppositeArcsPair) {
  const Topology t = build_complete(9, 3);
  for (ArcId a = 0; a < t.arc_count(); ++a) {
    const ArcId b = t.opposite(a);
    EXPECT_EQ(t.source(b), t.target(a));
    EXPECT_EQ(t.target(b), t.source(a));
    EXPECT_EQ(t.opposite(b), a);
    EXPECT_EQ(t.port_to(t.source(a), t.target(a)), t.port(a));
  }
}

TEST(CompleteGraph, RejectsTinyGraphs) {
  try {
    build_complete(1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_parameter);
  }
}

TEST(CompleteGraph, ShuffledPortsDependOnSeed) {
  const Topology a = build_complete(12, 1), b = build_complete(12, 1), c = build_complete(12, 2);
  bool differs = false;
  for (ArcId x = 0; x < a.arc_count(); ++x) {
    EXPECT_EQ(a.target(x), b.target(x));
    differs = differs || a.target(x) != c.target(x);
  }
  EXPECT_TRUE(differs);
}

TEST(Hypercube, PortsFlipBits) {
  const Topology t = build_hypercube(4);
  EXPECT_EQ(t.vertex_count(), 16u);
  EXPECT_EQ(t.degree(), 4u);
  EXPECT_EQ(t.edge_connectivity(), 4u);
  for (VertexId u = 0; u < 16; ++u) {
    for (PortId p = 0; p < 4; ++p) EXPECT_EQ(t.neighbor(u, p), u ^ (1u << p));
  }
  EXPECT_EQ(t.port_to(0, 3), kNone);
}

TEST(Hypercube, DimensionLimits) {
  EXPECT_THROW(build_hypercube(0), Error);
  EXPECT_THROW(build_hypercube(25), Error);
  EXPECT_EQ(build_hypercube(1).vertex_count(), 2u);
}

TEST(ChordalLabels, LabelIsClockwiseDistance) {
  const Topology t = build_complete(8, 5);
  const ChordalLabeling l = chordal_labels(t);
  for (VertexId u = 0; u < 8; ++u) {
    for (PortId p = 0; p < 7; ++p) {
      const VertexId v = t.neighbor(u, p);
      EXPECT_EQ(l.label(u, p), (v + 8 - u) % 8);
      EXPECT_EQ(l.port_with_label(u, l.label(u, p)), p);
      EXPECT_EQ(l.destination(u, l.label(u, p)), v);
    }
  }
  // an arc and its opposite carry labels that sum to n
  for (ArcId a = 0; a < t.arc_count(); ++a) {
    const ArcId b = t.opposite(a);
    EXPECT_EQ(l.label(t.source(a), t.port(a)) + l.label(t.source(b), t.port(b)), 8u);
  }
}

TEST(ChordalLabels, HypercubeUnsupported) {
  try {
    chordal_labels(build_hypercube(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_topology);
  }
}

TEST(EdgeBoundary, SmallCases) {
  const Topology q3 = build_hypercube(3);
  const std::vector<VertexId> face = {0, 1, 2, 3};
  EXPECT_EQ(edge_boundary(q3, face), 4u);
  const std::vector<VertexId> single = {5};
  EXPECT_EQ(edge_boundary(q3, single), 3u);
  const Topology k5 = build_complete(5);
  const std::vector<VertexId> two = {0, 3};
  EXPECT_EQ(edge_boundary(k5, two), 6u);
  std::vector<std::uint8_t> mask(5, 0);
  mask[0] = mask[3] = 1;
  EXPECT_EQ(edge_boundary_mask(k5, mask), 6u);
}

TEST(EdgeBoundary, IsoperimetricBoundExhaustive) {
  for (std::size_t d = 1; d <= 4; ++d) {
    const Topology t = build_hypercube(d);
    const std::size_t n = t.vertex_count();
    std::vector<std::uint8_t> mask(n);
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      std::size_t k = 0;
      for (std::size_t v = 0; v < n; ++v) k += mask[v] = (s >> v) & 1;
      EXPECT_GE(static_cast<double>(edge_boundary_mask(t, mask)), iso_lower_bound(k, d) - 1e-9);
    }
  }
}

TEST(EdgeBoundary, IsoBoundIsTightOnSubcubes) {
  const Topology t = build_hypercube(5);
  for (std::size_t j = 0; j <= 5; ++j) {
    std::vector<VertexId> sub;
    for (VertexId v = 0; v < (1u << j); ++v) sub.push_back(v);
    EXPECT_DOUBLE_EQ(static_cast<double>(edge_boundary(t, sub)), iso_lower_bound(sub.size(), 5));
  }
  EXPECT_THROW(iso_lower_bound(0, 3), Error);
  EXPECT_THROW(iso_lower_bound(9, 3), Error);
}
