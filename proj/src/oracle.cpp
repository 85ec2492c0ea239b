// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "nocdl/oracle.hpp"

#include <algorithm>
#include <cstdint>

namespace nocdl {

namespace {

// Upper bound on channels for the subset-existence dynamic program below;
// beyond it the search falls back to the capped depth-first enumeration.
constexpr int kDpMaxChannels = 14;

// Deletes any path whose head has a next hop that is a sink or a channel
// covered by no surviving path, cascading until stable. The union of closed
// sets is closed, so the surviving set is the unique greatest fixpoint and
// deletion order is irrelevant.
std::vector<char> prune_to_closure(const RoutingGraph& g,
                                   const std::vector<DPath>& paths) {
  const int num_channels = g.num_channels();
  const std::size_t n = paths.size();
  std::vector<char> alive(n, 1);
  std::vector<int> cover(num_channels, 0);
  for (const DPath& p : paths)
    for (Channel c : p.channels) ++cover[c];

  // watchers[v]: paths whose head hops include channel v
  std::vector<std::vector<std::size_t>> watchers(num_channels);
  std::vector<std::size_t> doomed;
  for (std::size_t i = 0; i < n; ++i) {
    bool bad = false;
    for (Vertex v : g.neighbors(paths[i].head(), paths[i].dest)) {
      if (g.is_sink(v)) {
        bad = true;
      } else {
        watchers[v].push_back(i);
        if (cover[v] == 0) bad = true;
      }
    }
    if (bad) doomed.push_back(i);
  }

  while (!doomed.empty()) {
    std::size_t i = doomed.back();
    doomed.pop_back();
    if (!alive[i]) continue;
    alive[i] = 0;
    for (Channel c : paths[i].channels)
      if (--cover[c] == 0)
        for (std::size_t j : watchers[c])
          if (alive[j]) doomed.push_back(j);
  }
  return alive;
}

using MaskWord = std::uint64_t;

struct PathBits {
  std::vector<MaskWord> channels;
  std::vector<MaskWord> hops;
};

std::vector<MaskWord> to_mask(std::span<const Channel> xs, int words) {
  std::vector<MaskWord> m(words, 0);
  for (Channel c : xs) m[c >> 6] |= MaskWord(1) << (c & 63);
  return m;
}

bool intersects(const std::vector<MaskWord>& a, const std::vector<MaskWord>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & b[i]) return true;
  return false;
}

// Candidate paths for the disjoint search: the closure survivors of the
// universe with self-blocked worms removed. Any pairwise disjoint
// escape-free set is a closed set over that universe, hence a subset of its
// greatest fixpoint.
struct DisjointSearch {
  const RoutingGraph& g;
  std::vector<DPath> candidates;
  std::vector<PathBits> bits;
  int words = 1;

  DisjointSearch(const RoutingGraph& graph, const OracleLimits& limits)
      : g(graph) {
    std::vector<DPath> universe = path_universe(g, limits);
    std::vector<DPath> eligible;
    for (DPath& p : universe)
      if (!self_blocked(g, p)) eligible.push_back(std::move(p));
    std::vector<char> alive = prune_to_closure(g, eligible);
    for (std::size_t i = 0; i < eligible.size(); ++i)
      if (alive[i]) candidates.push_back(std::move(eligible[i]));

    words = std::max(1, (g.num_channels() + 63) / 64);
    bits.reserve(candidates.size());
    for (const DPath& p : candidates) {
      PathBits b;
      b.channels = to_mask(p.channels, words);
      // survivors' head hops are channels covered by the candidate set
      b.hops = to_mask(g.neighbors(p.head(), p.dest), words);
      bits.push_back(std::move(b));
    }
  }

  // Exact existence check: scan candidates once, folding every reachable
  // (union, uncovered-hops) state; a state is a deadlock when its union is
  // non-empty and no hop is uncovered. Disjointness means no candidate can
  // enter a state twice, so in-place expansion is safe.
  bool exists() const {
    const int num_channels = g.num_channels();
    if (candidates.empty()) return false;
    std::vector<std::vector<std::uint16_t>> buckets(std::size_t(1)
                                                    << num_channels);
    buckets[0].push_back(0);
    auto insert_minimal = [](std::vector<std::uint16_t>& bucket,
                             std::uint16_t d) {
      for (std::uint16_t have : bucket)
        if ((have & ~d) == 0) return;  // an easier state already exists
      std::erase_if(bucket, [d](std::uint16_t have) {
        return (d & ~have) == 0;  // drop dominated states
      });
      bucket.push_back(d);
    };
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto m = static_cast<std::uint32_t>(bits[i].channels[0]);
      const auto h = static_cast<std::uint32_t>(bits[i].hops[0]);
      for (std::uint32_t u = 0; u < buckets.size(); ++u) {
        if ((u & m) || buckets[u].empty()) continue;
        const std::uint32_t u2 = u | m;
        for (std::size_t k = 0; k < buckets[u].size(); ++k) {
          const std::uint32_t d2 = (buckets[u][k] | h) & ~u2;
          if (d2 == 0) return true;
          insert_minimal(buckets[u2], static_cast<std::uint16_t>(d2));
        }
      }
    }
    return false;
  }

  // Visits pairwise disjoint subsets in ascending lexicographic order of
  // their candidate index tuples and reports every closed one; the emit
  // callback returns false to stop. Throws past limits.max_subsets nodes.
  void enumerate(const OracleLimits& limits,
                 const std::function<bool(const std::vector<std::size_t>&)>&
                     emit) const {
    std::vector<std::size_t> chosen;
    std::vector<MaskWord> covered(words, 0);
    std::size_t visited = 0;
    auto closed = [&] {
      for (std::size_t j : chosen)
        for (int w = 0; w < words; ++w)
          if (bits[j].hops[w] & ~covered[w]) return false;
      return true;
    };
    auto walk = [&](auto&& self, std::size_t first) -> bool {
      for (std::size_t i = first; i < candidates.size(); ++i) {
        if (++visited > limits.max_subsets)
          throw resource_limit_error(
              "disjoint search exceeded max_subsets = " +
              std::to_string(limits.max_subsets));
        if (intersects(bits[i].channels, covered)) continue;
        chosen.push_back(i);
        for (int w = 0; w < words; ++w) covered[w] |= bits[i].channels[w];
        bool keep_going = !closed() || emit(chosen);
        if (keep_going) keep_going = self(self, i + 1);
        for (int w = 0; w < words; ++w) covered[w] &= ~bits[i].channels[w];
        chosen.pop_back();
        if (!keep_going) return false;
      }
      return true;
    };
    walk(walk, 0);
  }

  WitnessSet collect(const std::vector<std::size_t>& indices) const {
    std::vector<DPath> paths;
    for (std::size_t i : indices) paths.push_back(candidates[i]);
    return WitnessSet::from_paths(std::move(paths));
  }
};

}  // namespace

std::vector<DPath> path_universe(const RoutingGraph& g,
                                 const OracleLimits& limits) {
  std::vector<DPath> out;
  std::size_t enumerated = 0;
  const int num_channels = g.num_channels();
  for (Dest d = num_channels; d < g.num_vertices(); ++d)
    for (Channel start = 0; start < num_channels; ++start)
      g.for_each_simple_d_path(
          d, start, num_channels, [&](std::span<const Channel> p) {
            if (++enumerated > limits.max_paths)
              throw resource_limit_error(
                  "simple d-path enumeration exceeded max_paths = " +
                  std::to_string(limits.max_paths));
            if (!g.neighbors(p.back(), d).empty())
              out.push_back(
                  DPath{std::vector<Channel>(p.begin(), p.end()), d});
            return true;
          });
  return out;
}

bool self_blocked(const RoutingGraph& g, const DPath& p) {
  const auto& hops = g.neighbors(p.head(), p.dest);
  if (hops.empty()) return false;
  for (Vertex v : hops)
    if (std::find(p.channels.begin(), p.channels.end(), v) ==
        p.channels.end())
      return false;
  return true;
}

bool escape_free(const RoutingGraph& g, std::span<const DPath> paths) {
  const std::vector<Channel> covered = union_of(paths);
  for (const DPath& p : paths)
    for (Vertex v : g.neighbors(p.head(), p.dest))
      if (!std::binary_search(covered.begin(), covered.end(), v))
        return false;
  return true;
}

WitnessSet max_escape_free_set(const RoutingGraph& g,
                               const OracleLimits& limits) {
  std::vector<DPath> universe = path_universe(g, limits);
  std::vector<char> alive = prune_to_closure(g, universe);
  std::vector<DPath> survivors;
  for (std::size_t i = 0; i < universe.size(); ++i)
    if (alive[i]) survivors.push_back(std::move(universe[i]));
  return WitnessSet::from_paths(std::move(survivors));
}

bool exists_escape_free_set(const RoutingGraph& g,
                            const OracleLimits& limits) {
  return !max_escape_free_set(g, limits).empty();
}

std::optional<WitnessSet> exists_disjoint_deadlock(const RoutingGraph& g,
                                                   const OracleLimits& limits) {
  DisjointSearch search(g, limits);
  if (search.candidates.empty()) return std::nullopt;
  if (g.num_channels() <= kDpMaxChannels && !search.exists())
    return std::nullopt;
  std::optional<WitnessSet> found;
  search.enumerate(limits, [&](const std::vector<std::size_t>& indices) {
    found = search.collect(indices);
    return false;
  });
  return found;
}

std::vector<WitnessSet> all_disjoint_deadlocks(const RoutingGraph& g,
                                               const OracleLimits& limits,
                                               std::size_t max_results) {
  DisjointSearch search(g, limits);
  std::vector<WitnessSet> found;
  if (search.candidates.empty() || max_results == 0) return found;
  search.enumerate(limits, [&](const std::vector<std::size_t>& indices) {
    found.push_back(search.collect(indices));
    return found.size() < max_results;
  });
  return found;
}

OracleResult run_oracles(const RoutingGraph& g, const OracleLimits& limits) {
  OracleResult result;
  result.max_closed_set = max_escape_free_set(g, limits);
  result.escape_free_exists = !result.max_closed_set.empty();
  result.disjoint_deadlock = exists_disjoint_deadlock(g, limits);
  return result;
}

}  // namespace nocdl
