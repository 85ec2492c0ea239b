// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "nocdl/marking.hpp"
#include "nocdl/oracle.hpp"

using namespace nocdl;

namespace {

std::set<DPath> path_set(const WitnessSet& w) {
  return {w.paths.begin(), w.paths.end()};
}

// Reference pruning that deletes one violating path at a time in a shuffled
// scan order and rescans from scratch.
std::set<DPath> shuffled_prune(const RoutingGraph& g, std::vector<DPath> paths,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> alive(paths.size(), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Channel> covered;
    for (std::size_t i = 0; i < paths.size(); ++i)
      if (alive[i])
        covered.insert(covered.end(), paths[i].channels.begin(),
                       paths[i].channels.end());
    std::sort(covered.begin(), covered.end());
    for (std::size_t i : order) {
      if (!alive[i]) continue;
      bool escapes = false;
      for (Vertex v : g.neighbors(paths[i].head(), paths[i].dest))
        if (!std::binary_search(covered.begin(), covered.end(), v)) {
          escapes = true;
          break;
        }
      if (escapes) {
        alive[i] = 0;
        changed = true;
        break;  // restart with the reduced union
      }
    }
  }
  std::set<DPath> survivors;
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (alive[i]) survivors.insert(paths[i]);
  return survivors;
}

}  // namespace

TEST_CASE("path universe excludes heads without routing") {
  RoutingGraph g = fixtures::cycle_with_exits();
  std::vector<DPath> universe = path_universe(g);
  CHECK(universe.size() == 23);
  // channel 1 never carries a 6-message, so no 6-path may stay there
  for (const DPath& p : universe)
    CHECK_FALSE((p.dest == 6 && p.head() == 1));
  // but the delivery channel 3 does carry 7-messages
  CHECK(std::count_if(universe.begin(), universe.end(), [](const DPath& p) {
          return p == DPath{{0, 1, 2, 3}, 7};
        }) == 1);
}

TEST_CASE("self_blocked") {
  RoutingGraph g = fixtures::cycle_with_exits();
  CHECK(self_blocked(g, DPath{{2, 0, 1}, 7}));   // only hop is channel 2
  CHECK_FALSE(self_blocked(g, DPath{{0, 1}, 7}));
  CHECK_FALSE(self_blocked(g, DPath{{1}, 6}));   // no hops at all
  CHECK_FALSE(self_blocked(g, DPath{{0, 1, 2, 3}, 7}));  // sink hop
}

TEST_CASE("max escape-free set on the cycle fixture") {
  RoutingGraph g = fixtures::cycle_with_exits();
  WitnessSet max = max_escape_free_set(g);
  REQUIRE(max.size() == 4);
  CHECK(max.paths[0] == DPath{{2}, 6});
  CHECK(max.paths[1] == DPath{{0, 1}, 7});
  CHECK(max.paths[2] == DPath{{1}, 7});
  CHECK(max.paths[3] == DPath{{2, 0, 1}, 7});
  CHECK(max.channel_union == std::vector<Channel>{0, 1, 2});
  CHECK(exists_escape_free_set(g));
  CHECK(check_witness(g, max));
}

TEST_CASE("max escape-free set on fixtures without deadlocks") {
  CHECK(max_escape_free_set(fixtures::ring3_escape()).empty());
  CHECK_FALSE(exists_escape_free_set(fixtures::ring3_escape()));

  RoutingGraph to_sink = RoutingGraph::from_edges(1, 1, {{0, 1, {1}}});
  CHECK(max_escape_free_set(to_sink).empty());

  RoutingGraph empty = RoutingGraph::parse("channels 0\nsinks 1\n");
  CHECK_FALSE(exists_escape_free_set(empty));
}

TEST_CASE("max escape-free set on the blocked ring keeps every path") {
  RoutingGraph g = fixtures::ring3();
  WitnessSet max = max_escape_free_set(g);
  CHECK(max.size() == 9);  // every occupiable simple path survives
  CHECK(check_witness(g, max));
}

TEST_CASE("pruning is deletion-order independent") {
  std::vector<RoutingGraph> graphs = {fixtures::cycle_with_exits(),
                                      random_graph(6, 2, 0.4, 11),
                                      random_graph(5, 1, 0.7, 12)};
  for (const RoutingGraph& g : graphs) {
    std::set<DPath> expected = path_set(max_escape_free_set(g));
    for (std::uint64_t seed = 1; seed <= 50; ++seed)
      CHECK(shuffled_prune(g, path_universe(g), seed) == expected);
  }
}

TEST_CASE("disjoint deadlock on the cycle fixture is unique") {
  RoutingGraph g = fixtures::cycle_with_exits();
  auto first = exists_disjoint_deadlock(g);
  REQUIRE(first.has_value());
  CHECK(path_set(*first) ==
        std::set<DPath>{DPath{{0, 1}, 7}, DPath{{2}, 6}});
  CHECK(check_witness(g, *first));

  std::vector<WitnessSet> all = all_disjoint_deadlocks(g);
  REQUIRE(all.size() == 1);
  CHECK(all[0] == *first);
}

TEST_CASE("disjoint deadlock on the rings") {
  auto ring = exists_disjoint_deadlock(fixtures::ring3());
  REQUIRE(ring.has_value());
  REQUIRE(ring->size() == 3);
  CHECK(ring->paths[0] == DPath{{0}, 3});
  CHECK(ring->paths[1] == DPath{{1}, 3});
  CHECK(ring->paths[2] == DPath{{2}, 3});

  CHECK_FALSE(exists_disjoint_deadlock(fixtures::ring3_escape()).has_value());
}

TEST_CASE("overlapping-only deadlock has no disjoint configuration") {
  RoutingGraph g = fixtures::two_cycle_escape();
  CHECK(run_algorithm(g).verdict == Verdict::deadlock);

  WitnessSet max = max_escape_free_set(g);
  REQUIRE(max.size() == 2);
  CHECK(max.paths[0] == DPath{{0, 1}, 2});
  CHECK(max.paths[1] == DPath{{1}, 2});

  CHECK_FALSE(exists_disjoint_deadlock(g).has_value());  // a false deadlock
}

TEST_CASE("oracle agreement with the marking on a random corpus") {
  int deadlocks = 0, false_deadlocks = 0;
  for (const RoutingGraph& g : fixtures::corpus(6, 2)) {
    AnalysisReport report = run_algorithm(g);
    OracleResult oracles = run_oracles(g);

    bool deadlock = report.verdict == Verdict::deadlock;
    CHECK(deadlock == oracles.escape_free_exists);
    CHECK(oracles.escape_free_exists == !oracles.max_closed_set.empty());
    if (!oracles.max_closed_set.empty())
      CHECK(check_witness(g, oracles.max_closed_set));

    if (oracles.disjoint_deadlock) {
      CHECK(deadlock);
      CHECK(check_witness(g, *oracles.disjoint_deadlock));
      // pairwise channel-disjoint
      std::vector<Channel> all;
      std::size_t total = 0;
      for (const DPath& p : oracles.disjoint_deadlock->paths) {
        total += p.channels.size();
        all.insert(all.end(), p.channels.begin(), p.channels.end());
      }
      std::sort(all.begin(), all.end());
      all.erase(std::unique(all.begin(), all.end()), all.end());
      CHECK(all.size() == total);
    }
    if (deadlock) {
      ++deadlocks;
      if (!oracles.disjoint_deadlock) ++false_deadlocks;
    }

    // the existence decision agrees with the exhaustive enumeration
    CHECK(exists_disjoint_deadlock(g).has_value() ==
          !all_disjoint_deadlocks(g, {}, 1).empty());
  }
  CHECK(deadlocks > 10);
  INFO("false deadlocks: ", false_deadlocks);
}

TEST_CASE("resource caps are hard errors") {
  RoutingGraph g = fixtures::cycle_with_exits();
  OracleLimits tiny_paths;
  tiny_paths.max_paths = 5;
  CHECK_THROWS_AS(max_escape_free_set(g, tiny_paths), resource_limit_error);
  CHECK_THROWS_AS(path_universe(g, tiny_paths), resource_limit_error);

  OracleLimits tiny_subsets;
  tiny_subsets.max_subsets = 1;
  CHECK_THROWS_AS(all_disjoint_deadlocks(fixtures::ring3(), tiny_subsets),
                  resource_limit_error);
  CHECK_THROWS_AS(exists_disjoint_deadlock(fixtures::ring3(), tiny_subsets),
                  resource_limit_error);
}
