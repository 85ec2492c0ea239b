// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <vector>

#include "nocdl/graph.hpp"
#include "nocdl/witness.hpp"

// Channel marking engine.
//
// The analysis computes the greatest fixpoint of the "suspect" channel set.
// Starting from all channels, each round keeps a channel when either
//   (3) some destination routes it exclusively into suspect channels, so a
//       header flit for that destination can be blocked forever, or
//   (4) a d-path leads from it to such a channel whose blocked destination
//       has no escape, so its tail flits can be blocked forever.
// Channels that leave the set are immune (mark 2). Starting from the top
// and shrinking matters: on cyclic graphs the all-immune labeling can also
// satisfy the local rules, and only the maximal suspect set is sound with
// respect to the escape-free-set semantics. On a non-empty fixpoint the
// witness module turns the marking into a checkable deadlock certificate.

namespace nocdl {

enum class Mark : std::uint8_t {
  unmarked = 0,
  immune = 2,            // no flit in the channel can be permanently blocked
  header_blockable = 3,  // a header flit for some destination can be blocked
  tail_blockable = 4,    // only tail flits can be permanently blocked
};

constexpr int mark_value(Mark m) { return static_cast<int>(m); }

/// Membership mask over channels 0..C-1.
using ChannelMask = std::vector<char>;

ChannelMask make_mask(int num_channels, std::initializer_list<Channel> members);
std::vector<Channel> mask_channels(const ChannelMask& mask);

/// Per-channel escape and dependency destination lists, ascending.
struct EscDeps {
  std::vector<std::vector<Dest>> escs;
  std::vector<std::vector<Dest>> deps;

  friend bool operator==(const EscDeps&, const EscDeps&) = default;
};

struct MarkStore {
  std::vector<Mark> marks;
  std::vector<std::vector<Dest>> escs;
  std::vector<std::vector<Dest>> deps;

  friend bool operator==(const MarkStore&, const MarkStore&) = default;
};

enum class Verdict { deadlock_free, deadlock };

struct AnalysisReport {
  Verdict verdict = Verdict::deadlock_free;
  MarkStore store;
  std::optional<WitnessSet> witness;  // present iff verdict == deadlock
  int rounds = 0;                     // outer fixpoint iterations, <= C + 1

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Channels for which some defined destination routes only into suspect
/// channels.
ChannelMask refine_three_set(const RoutingGraph& g, const ChannelMask& suspect);

/// escs/deps relative to a set of immune channels: d escapes c when some
/// next hop is a sink or immune, d is a dependency of c when some next hop
/// is a non-immune channel.
EscDeps compute_escs_deps(const RoutingGraph& g, const ChannelMask& two_set);

/// Deterministic search for a simple d-path from `start` to a 3-marked
/// channel whose destination is a dependency without an escape: smallest
/// such destination first, then BFS over d-labeled channel edges with
/// ascending expansion, so the returned path is the shortest for that
/// destination. The singleton path qualifies when `start` itself does.
std::optional<DPath> find_d_path_to_blocked(
    const RoutingGraph& g, Channel start, const ChannelMask& three_set,
    const std::vector<std::vector<Dest>>& escs,
    const std::vector<std::vector<Dest>>& deps);

/// Runs the marking to its fixpoint. On a deadlock verdict the witness is
/// attached and has already passed check_witness.
AnalysisReport run_algorithm(const RoutingGraph& g);

/// Every 3-marked channel keeps a dependency destination with no escape.
bool check_invariant_3marks(const RoutingGraph& g, const MarkStore& store);

/// Every 4-marked channel reaches some 3-marked channel via a simple d-path.
bool check_invariant_4marks(const RoutingGraph& g, const MarkStore& store);

}  // namespace nocdl
