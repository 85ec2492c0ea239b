// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nocdl/graph.hpp"
#include "nocdl/witness.hpp"

// Brute-force references for the marking engine. Both oracles work on the
// universe of occupiable simple d-paths, so they are meant for small graphs:
// the escape-free closure is linear in the (worst case exponential) number
// of simple paths, and the disjoint search is exponential on top of that.

namespace nocdl {

/// Hard stop for the enumeration caps. A truncated oracle result would be
/// worse than none, so exceeding a cap is an error, never a partial answer.
class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_paths = 1'000'000;    // enumerated simple d-paths
  std::size_t max_subsets = 5'000'000;  // visited nodes of the subset search
};

/// All simple d-paths, over every destination and start channel, whose head
/// has at least one next hop for the destination (a worm never occupies a
/// channel its destination routes nowhere out of). Ascending by destination,
/// then lexicographic by channel sequence.
std::vector<DPath> path_universe(const RoutingGraph& g,
                                 const OracleLimits& limits = {});

/// True when the worm's head has next hops and all of them lie inside the
/// worm itself, i.e. the path could only ever wait on its own tail.
bool self_blocked(const RoutingGraph& g, const DPath& p);

/// True when no path's head has a next hop outside the union of the set.
bool escape_free(const RoutingGraph& g, std::span<const DPath> paths);

/// Greatest fixpoint of deleting paths whose head can escape the union of
/// the survivors; the set union of closed sets is closed, so the result is
/// unique and deletion order cannot matter. Non-empty iff some escape-free
/// set of d-paths exists.
WitnessSet max_escape_free_set(const RoutingGraph& g,
                               const OracleLimits& limits = {});

bool exists_escape_free_set(const RoutingGraph& g,
                            const OracleLimits& limits = {});

/// First (in ascending lexicographic subset order) pairwise channel-disjoint
/// escape-free set of d-paths, self-blocked worms excluded; absent when no
/// such set exists. This is the exact deadlock condition, and deciding it
/// costs exponential time in general.
std::optional<WitnessSet> exists_disjoint_deadlock(
    const RoutingGraph& g, const OracleLimits& limits = {});

/// Every pairwise disjoint escape-free set, in search order. Intended for
/// tiny graphs (uniqueness checks).
std::vector<WitnessSet> all_disjoint_deadlocks(
    const RoutingGraph& g, const OracleLimits& limits = {},
    std::size_t max_results = std::size_t(-1));

struct OracleResult {
  bool escape_free_exists = false;
  WitnessSet max_closed_set;
  std::optional<WitnessSet> disjoint_deadlock;
};

OracleResult run_oracles(const RoutingGraph& g, const OracleLimits& limits = {});

}  // namespace nocdl
