// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nocdl/graph.hpp"

namespace fixtures {

// Six channels and two sinks. Channels 0..2 form a routing cycle for
// destination 7 (2 -> 0 -> 1 -> 2) with delivery exits through channels
// 3..5; destination 6 is served by the chain 2 -> 0 -> 5. The graph is
// deadlocked: a worm on [0, 1] for destination 7 and a header in 2 for
// destination 6 block each other.
inline const char* kCycleWithExits =
    "channels 6\n"
    "sinks 2\n"
    "edge 0 5 6\n"
    "edge 0 4 7\n"
    "edge 0 1 7\n"
    "edge 1 2 7\n"
    "edge 2 0 6,7\n"
    "edge 2 3 7\n"
    "edge 3 7 7\n"
    "edge 4 7 7\n"
    "edge 5 6 6\n";

inline nocdl::RoutingGraph cycle_with_exits() {
  return nocdl::RoutingGraph::parse(kCycleWithExits);
}

// Three channels in a cycle for the single destination, no way out: every
// channel's only next hop is the next cycle channel, so all of them are
// header-blockable. The sink vertex exists but is unreachable.
inline nocdl::RoutingGraph ring3() {
  return nocdl::RoutingGraph::from_edges(3, 1,
                                         {{0, 1, {3}}, {1, 2, {3}}, {2, 0, {3}}});
}

// The same cycle, but every channel can also deliver straight to the sink,
// which makes the network deadlock-free.
inline nocdl::RoutingGraph ring3_escape() {
  return nocdl::RoutingGraph::from_edges(3, 1,
                                         {{0, 1, {3}},
                                          {1, 2, {3}},
                                          {2, 0, {3}},
                                          {0, 3, {3}},
                                          {1, 3, {3}},
                                          {2, 3, {3}}});
}

// Two channels in a cycle where channel 0 also exits to the sink. The
// marking reports a deadlock (witness paths [1] and [0, 1] overlap on
// channel 1), but no pairwise disjoint deadlock configuration exists: the
// only escape-free sets overlap, so this is a false deadlock.
inline nocdl::RoutingGraph two_cycle_escape() {
  return nocdl::RoutingGraph::from_edges(2, 1,
                                         {{0, 1, {2}}, {0, 2, {2}}, {1, 0, {2}}});
}

// Deterministic corpus over small channel counts, three densities and one
// to three sinks. reps controls how many seeds each shape contributes.
inline std::vector<nocdl::RoutingGraph> corpus(int max_channels, int reps) {
  std::vector<nocdl::RoutingGraph> graphs;
  const double densities[] = {0.2, 0.4, 0.7};
  std::uint64_t seed = 1;
  for (double density : densities)
    for (int channels = 1; channels <= max_channels; ++channels)
      for (int sinks = 1; sinks <= 3; ++sinks)
        for (int rep = 0; rep < reps; ++rep)
          graphs.push_back(nocdl::random_graph(channels, sinks, density, seed++));
  return graphs;
}

}  // namespace fixtures
