#pragma once

#include <vector>

#include "trilat/tbl_sim.hpp"
#include "trilat/topology.hpp"

namespace trilat::testing {

/// Six-node deployment exercising both reference walkthroughs: three
/// anchors (0, 3, 5) and three blind nodes (1, 2, 4). Geometry pins the
/// reachability structure:
///   - node 1 is 120 m from anchor 0 and far (>132 m) from everything else,
///     so it hears one localized sender at most and never localizes;
///   - node 2 is within 132 m of anchors 0 and 3 and 130 m from anchor 5,
///     but only 31.6 m from anchor 3 and 60 m from node 4;
///   - node 4 is within 132 m of all three anchors, 31.6 m from anchor 3
///     and 70 m from anchor 5.
inline Topology worked_example_topology() {
  Topology topo;
  topo.field_side = 400.0;
  topo.nodes = {
      {0, NodeKind::Anchor, 130.0, 220.0},
      {1, NodeKind::Blind, 130.0, 340.0},
      {2, NodeKind::Blind, 100.0, 100.0},
      {3, NodeKind::Anchor, 130.0, 110.0},
      {4, NodeKind::Blind, 160.0, 100.0},
      {5, NodeKind::Anchor, 230.0, 100.0},
  };
  return topo;
}

/// Everyone transmits at the full 132 m reach: two rounds localize nodes 2
/// and 4 with five messages.
inline std::vector<double> worked_example_uniform_ranges() {
  return std::vector<double>(6, 132.0);
}

/// Per-node reaches trimmed to what each transmission actually needs; same
/// coverage over three rounds at well under the uniform power.
inline std::vector<double> worked_example_trimmed_ranges() {
  return {132.0, 132.0, 132.0, 63.2, 83.4, 91.0};
}

/// Four nodes, three anchors, one blind node whose distance to every anchor
/// exceeds the mid-level reach (91.47 m) but not the max-level reach
/// (132.22 m): it localizes exactly when all three anchors transmit at max.
inline Topology only_max_reaches_topology() {
  Topology topo;
  topo.field_side = 200.0;
  topo.nodes = {
      {0, NodeKind::Anchor, 0.0, 0.0},
      {1, NodeKind::Anchor, 200.0, 0.0},
      {2, NodeKind::Anchor, 100.0, 170.0},
      {3, NodeKind::Blind, 100.0, 60.0},
  };
  return topo;
}

}  // namespace trilat::testing
