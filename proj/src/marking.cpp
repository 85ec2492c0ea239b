// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "nocdl/marking.hpp"

#include <algorithm>
#include <stdexcept>

namespace nocdl {

namespace {

bool contains(const std::vector<Dest>& sorted, Dest d) {
  return std::binary_search(sorted.begin(), sorted.end(), d);
}

// Channels with a d-path (for some d) into a 3-marked channel whose d is a
// dependency without an escape. Existence only, so one backward BFS per
// destination from all qualifying targets covers every start channel.
ChannelMask blocked_path_sources(const RoutingGraph& g,
                                 const ChannelMask& three,
                                 const EscDeps& ed) {
  const int num_channels = g.num_channels();
  ChannelMask reached(num_channels, 0);
  std::vector<Channel> queue;
  std::vector<char> visited(num_channels);
  for (Dest d = g.num_channels(); d < g.num_vertices(); ++d) {
    std::fill(visited.begin(), visited.end(), 0);
    queue.clear();
    for (Channel e = 0; e < num_channels; ++e)
      if (three[e] && contains(ed.deps[e], d) && !contains(ed.escs[e], d)) {
        visited[e] = 1;
        queue.push_back(e);
      }
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (Channel u : g.predecessors(queue[i], d))
        if (!visited[u]) {
          visited[u] = 1;
          queue.push_back(u);
        }
    for (Channel c = 0; c < num_channels; ++c)
      if (visited[c]) reached[c] = 1;
  }
  return reached;
}

}  // namespace

ChannelMask make_mask(int num_channels,
                      std::initializer_list<Channel> members) {
  ChannelMask mask(num_channels, 0);
  for (Channel c : members) mask.at(c) = 1;
  return mask;
}

std::vector<Channel> mask_channels(const ChannelMask& mask) {
  std::vector<Channel> out;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (mask[c]) out.push_back(static_cast<Channel>(c));
  return out;
}

ChannelMask refine_three_set(const RoutingGraph& g,
                             const ChannelMask& suspect) {
  const int num_channels = g.num_channels();
  ChannelMask three(num_channels, 0);
  for (Channel c = 0; c < num_channels; ++c) {
    for (Dest d : g.defined_destinations(c)) {
      bool all_suspect = true;
      for (Vertex v : g.neighbors(c, d))
        if (!g.is_channel(v) || !suspect[v]) {
          all_suspect = false;
          break;
        }
      if (all_suspect) {
        three[c] = 1;
        break;
      }
    }
  }
  return three;
}

EscDeps compute_escs_deps(const RoutingGraph& g, const ChannelMask& two_set) {
  const int num_channels = g.num_channels();
  EscDeps ed;
  ed.escs.resize(num_channels);
  ed.deps.resize(num_channels);
  for (Channel c = 0; c < num_channels; ++c) {
    for (Dest d : g.defined_destinations(c)) {
      bool esc = false, dep = false;
      for (Vertex v : g.neighbors(c, d)) {
        if (g.is_sink(v) || two_set[v])
          esc = true;
        else
          dep = true;
      }
      if (esc) ed.escs[c].push_back(d);
      if (dep) ed.deps[c].push_back(d);
    }
  }
  return ed;
}

std::optional<DPath> find_d_path_to_blocked(
    const RoutingGraph& g, Channel start, const ChannelMask& three_set,
    const std::vector<std::vector<Dest>>& escs,
    const std::vector<std::vector<Dest>>& deps) {
  if (!g.is_channel(start))
    throw std::out_of_range("channel " + std::to_string(start) +
                            " out of range");
  const int num_channels = g.num_channels();
  std::vector<Channel> parent(num_channels);
  std::vector<char> visited(num_channels);
  std::vector<Channel> queue;
  for (Dest d : g.defined_destinations(start)) {
    auto qualifies = [&](Channel v) {
      return three_set[v] && contains(deps[v], d) && !contains(escs[v], d);
    };
    std::fill(visited.begin(), visited.end(), 0);
    queue.assign(1, start);
    visited[start] = 1;
    parent[start] = -1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      Channel v = queue[i];
      if (qualifies(v)) {
        std::vector<Channel> chain;
        for (Channel x = v; x != -1; x = parent[x]) chain.push_back(x);
        std::reverse(chain.begin(), chain.end());
        return DPath{std::move(chain), d};
      }
      for (Vertex t : g.neighbors(v, d))
        if (g.is_channel(t) && !visited[t]) {
          visited[t] = 1;
          parent[t] = v;
          queue.push_back(t);
        }
    }
  }
  return std::nullopt;
}

AnalysisReport run_algorithm(const RoutingGraph& g) {
  const int num_channels = g.num_channels();
  ChannelMask suspect(num_channels, 1);
  ChannelMask three(num_channels, 0), four(num_channels, 0);
  EscDeps ed;
  int rounds = 0;
  for (;;) {
    ++rounds;
    three = refine_three_set(g, suspect);
    ChannelMask two(num_channels);
    for (Channel c = 0; c < num_channels; ++c) two[c] = !suspect[c];
    ed = compute_escs_deps(g, two);
    ChannelMask reached = blocked_path_sources(g, three, ed);
    ChannelMask next(num_channels);
    for (Channel c = 0; c < num_channels; ++c) {
      four[c] = reached[c] && !three[c];
      next[c] = three[c] || four[c];
    }
    if (next == suspect) break;
    suspect = std::move(next);
  }

  AnalysisReport report;
  report.rounds = rounds;
  report.store.marks.resize(num_channels);
  bool any_suspect = false;
  for (Channel c = 0; c < num_channels; ++c) {
    report.store.marks[c] = three[c]  ? Mark::header_blockable
                            : four[c] ? Mark::tail_blockable
                                      : Mark::immune;
    any_suspect = any_suspect || suspect[c];
  }
  report.store.escs = std::move(ed.escs);
  report.store.deps = std::move(ed.deps);
  report.verdict = any_suspect ? Verdict::deadlock : Verdict::deadlock_free;
  if (any_suspect) {
    report.witness = build_witness(g, report.store);
    if (!check_witness(g, *report.witness))
      throw std::logic_error("constructed witness failed its own check");
  }
  return report;
}

bool check_invariant_3marks(const RoutingGraph&, const MarkStore& store) {
  for (std::size_t c = 0; c < store.marks.size(); ++c) {
    if (store.marks[c] != Mark::header_blockable) continue;
    // deps(c) must not be a subset of escs(c)
    if (std::includes(store.escs[c].begin(), store.escs[c].end(),
                      store.deps[c].begin(), store.deps[c].end()))
      return false;
  }
  return true;
}

bool check_invariant_4marks(const RoutingGraph& g, const MarkStore& store) {
  const int num_channels = g.num_channels();
  std::vector<char> visited(num_channels);
  std::vector<Channel> queue;
  for (Channel c = 0; c < num_channels; ++c) {
    if (store.marks[c] != Mark::tail_blockable) continue;
    bool found = false;
    for (Dest d : g.defined_destinations(c)) {
      std::fill(visited.begin(), visited.end(), 0);
      queue.assign(1, c);
      visited[c] = 1;
      for (std::size_t i = 0; i < queue.size() && !found; ++i) {
        Channel v = queue[i];
        if (store.marks[v] == Mark::header_blockable) {
          found = true;
          break;
        }
        for (Vertex t : g.neighbors(v, d))
          if (g.is_channel(t) && !visited[t]) {
            visited[t] = 1;
            queue.push_back(t);
          }
      }
      if (found) break;
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace nocdl
