// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nocdl/graph.hpp"

// Deadlock witnesses: sets of d-paths in which no worm's head can escape.

namespace nocdl {

struct MarkStore;  // marking.hpp

struct WitnessSet {
  std::vector<DPath> paths;            // construction order
  std::vector<Channel> channel_union;  // ascending union of all path channels

  static WitnessSet from_paths(std::vector<DPath> paths);

  bool empty() const { return paths.empty(); }
  std::size_t size() const { return paths.size(); }

  friend bool operator==(const WitnessSet&, const WitnessSet&) = default;
};

/// Smallest element of xs not contained in ys; both lists ascending.
std::optional<Dest> find_member_not_in(const std::vector<Dest>& xs,
                                       const std::vector<Dest>& ys);

/// Ascending, deduplicated union of the channels of all paths.
std::vector<Channel> union_of(std::span<const DPath> paths);

/// Builds the deadlock certificate from a terminated marking: a singleton
/// path for every 3-marked channel (ascending), then the blocked path found
/// for every 4-marked channel (ascending). Throws std::logic_error when
/// called on an all-immune store or when a marking invariant is breached.
WitnessSet build_witness(const RoutingGraph& g, const MarkStore& store);

/// True iff the witness is non-empty and every (path, destination) entry is
/// a d-path whose head's next hops all fall inside the union of the witness
/// paths. Consults only the graph, never a mark store.
bool check_witness(const RoutingGraph& g, const WitnessSet& w);

/// One line per path: `path d=<dest> : <c0> <c1> ... <ck>`.
std::string serialize_witness(const WitnessSet& w);

}  // namespace nocdl
