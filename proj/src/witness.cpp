// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "nocdl/witness.hpp"

#include <algorithm>
#include <stdexcept>

#include "nocdl/marking.hpp"

namespace nocdl {

WitnessSet WitnessSet::from_paths(std::vector<DPath> paths) {
  WitnessSet w;
  w.channel_union = union_of(paths);
  w.paths = std::move(paths);
  return w;
}

std::optional<Dest> find_member_not_in(const std::vector<Dest>& xs,
                                       const std::vector<Dest>& ys) {
  for (Dest x : xs)
    if (!std::binary_search(ys.begin(), ys.end(), x)) return x;
  return std::nullopt;
}

std::vector<Channel> union_of(std::span<const DPath> paths) {
  std::vector<Channel> all;
  for (const DPath& p : paths)
    all.insert(all.end(), p.channels.begin(), p.channels.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

WitnessSet build_witness(const RoutingGraph& g, const MarkStore& store) {
  const int num_channels = g.num_channels();
  if (static_cast<int>(store.marks.size()) != num_channels)
    throw std::logic_error("mark store does not match the graph");

  ChannelMask three(num_channels, 0);
  bool any_blockable = false;
  for (Channel c = 0; c < num_channels; ++c) {
    three[c] = store.marks[c] == Mark::header_blockable;
    any_blockable = any_blockable || three[c] ||
                    store.marks[c] == Mark::tail_blockable;
  }
  if (!any_blockable)
    throw std::logic_error("witness requested for an all-immune marking");

  std::vector<DPath> paths;
  for (Channel c = 0; c < num_channels; ++c) {
    if (!three[c]) continue;
    auto d = find_member_not_in(store.deps[c], store.escs[c]);
    if (!d)
      throw std::logic_error("3-marked channel " + std::to_string(c) +
                             " has an escape for every dependency");
    paths.push_back(DPath{{c}, *d});
  }
  for (Channel c = 0; c < num_channels; ++c) {
    if (store.marks[c] != Mark::tail_blockable) continue;
    auto p = find_d_path_to_blocked(g, c, three, store.escs, store.deps);
    if (!p)
      throw std::logic_error("4-marked channel " + std::to_string(c) +
                             " has no path to a blocked channel");
    paths.push_back(std::move(*p));
  }
  return WitnessSet::from_paths(std::move(paths));
}

bool check_witness(const RoutingGraph& g, const WitnessSet& w) {
  if (w.paths.empty()) return false;
  const std::vector<Channel> covered = union_of(w.paths);
  for (const DPath& p : w.paths) {
    if (!g.is_d_path(p.channels, p.dest)) return false;
    for (Vertex v : g.neighbors(p.head(), p.dest))
      if (!std::binary_search(covered.begin(), covered.end(), v))
        return false;
  }
  return true;
}

std::string serialize_witness(const WitnessSet& w) {
  std::string out;
  for (const DPath& p : w.paths) {
    out += "path d=" + std::to_string(p.dest) + " :";
    for (Channel c : p.channels) out += " " + std::to_string(c);
    out += "\n";
  }
  return out;
}

}  // namespace nocdl
