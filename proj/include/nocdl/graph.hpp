// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Destination-labeled channel dependency graphs for wormhole-switched
// networks.
//
// Vertices 0..C-1 are channels, C..C+S-1 are sinks. An edge (u, v) labeled
// d means that a message occupying channel u and destined for sink d is
// routed towards v. Sinks consume messages and have no outgoing edges.
// Graphs are immutable once constructed and safe for concurrent reads.

namespace nocdl {

using Vertex = int;
using Channel = int;
using Dest = int;

/// Syntax error in the graph file format; carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Structural invariant violation (self-loop, sink with an out-edge, label
/// that is not a sink, ...). The message names the offending entity.
class graph_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simple path of channels traversable by a message destined for `dest`:
/// consecutive channels are joined by an edge carrying the `dest` label.
/// The header flit of the worm sits in the last channel.
struct DPath {
  std::vector<Channel> channels;
  Dest dest = -1;

  Channel head() const { return channels.back(); }

  friend bool operator==(const DPath&, const DPath&) = default;
  friend auto operator<=>(const DPath&, const DPath&) = default;
};

class RoutingGraph {
 public:
  struct Edge {
    Vertex src = 0;
    Vertex dst = 0;
    std::vector<Dest> labels;  // ascending, non-empty

    friend bool operator==(const Edge&, const Edge&) = default;
  };

  RoutingGraph() = default;

  /// Validates and indexes an edge list. Duplicate (src, dst) entries and
  /// duplicate labels are merged. Throws graph_error on any invariant
  /// violation.
  static RoutingGraph from_edges(int num_channels, int num_sinks,
                                 std::vector<Edge> edges);

  /// Parses the line-oriented graph format (see serialize()). Throws
  /// parse_error for syntax problems, graph_error for semantic ones.
  static RoutingGraph parse(std::string_view text);

  /// Canonical text form: header lines, then edges sorted by (src, dst)
  /// with ascending labels. parse(serialize(g)) == g.
  std::string serialize() const;

  int num_channels() const noexcept { return num_channels_; }
  int num_sinks() const noexcept { return num_sinks_; }
  int num_vertices() const noexcept { return num_channels_ + num_sinks_; }

  bool is_channel(Vertex v) const noexcept {
    return v >= 0 && v < num_channels_;
  }
  bool is_sink(Vertex v) const noexcept {
    return v >= num_channels_ && v < num_vertices();
  }

  /// Canonical edge list, sorted by (src, dst).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Next hops for a message in channel c destined for d, ascending. Empty
  /// when the routing is undefined for (c, d). Throws std::out_of_range
  /// when c is not a channel or d is not a sink.
  const std::vector<Vertex>& neighbors(Channel c, Dest d) const;

  /// Ascending destinations d with neighbors(c, d) non-empty.
  const std::vector<Dest>& defined_destinations(Channel c) const;

  /// Channels u with a d-labeled edge into channel v, ascending.
  const std::vector<Channel>& predecessors(Channel v, Dest d) const;

  /// True iff p is a non-empty sequence of distinct channels whose
  /// consecutive elements are joined by d-labeled edges. Malformed input
  /// (sinks, duplicates, an invalid destination) yields false.
  bool is_d_path(std::span<const Channel> p, Dest d) const;

  /// All simple d-paths starting at `start` with at most max_len channels,
  /// in lexicographic order of the channel sequences.
  std::vector<DPath> simple_d_paths(Dest d, Channel start, int max_len) const;

  /// Visitor form of simple_d_paths; the callback may return false to stop
  /// the walk early.
  void for_each_simple_d_path(
      Dest d, Channel start, int max_len,
      const std::function<bool(std::span<const Channel>)>& visit) const;

  friend bool operator==(const RoutingGraph& a, const RoutingGraph& b) {
    return a.num_channels_ == b.num_channels_ &&
           a.num_sinks_ == b.num_sinks_ && a.edges_ == b.edges_;
  }

 private:
  void check_channel(Channel c) const;
  void check_dest(Dest d) const;

  int num_channels_ = 0;
  int num_sinks_ = 0;
  std::vector<Edge> edges_;  // canonical
  // out_[c]: (destination, ascending targets), sorted by destination
  std::vector<std::vector<std::pair<Dest, std::vector<Vertex>>>> out_;
  std::vector<std::vector<Dest>> defined_;
  // rev_[d - C][v]: channels with a d-labeled edge into channel v
  std::vector<std::vector<std::vector<Channel>>> rev_;
};

/// Seed-deterministic random graph: every channel gets at least one labeled
/// outgoing edge and all structural invariants hold by construction. Throws
/// std::invalid_argument for degenerate parameters.
RoutingGraph random_graph(int num_channels, int num_sinks, double edge_density,
                          std::uint64_t seed);

/// Graphviz export: channels as circles, sinks as doublecircles, edge labels
/// comma-joined. When `marks` (one value per channel) is given, each channel
/// label carries its mark.
std::string to_dot(const RoutingGraph& g, std::span<const int> marks = {});

}  // namespace nocdl
