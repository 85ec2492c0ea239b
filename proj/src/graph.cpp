// Copyright (c) nocdl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "nocdl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <utility>

namespace nocdl {

namespace {

const std::vector<Vertex> kNoVertices{};
const std::vector<Dest> kNoDests{};

std::string edge_name(Vertex src, Vertex dst) {
  return "(" + std::to_string(src) + " -> " + std::to_string(dst) + ")";
}

std::string join_ints(const std::vector<int>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(xs[i]);
  }
  return s;
}

}  // namespace

RoutingGraph RoutingGraph::from_edges(int num_channels, int num_sinks,
                                      std::vector<Edge> edges) {
  if (num_channels < 0) throw graph_error("negative channel count");
  if (num_sinks < 0) throw graph_error("negative sink count");

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  std::vector<Edge> merged;
  for (Edge& e : edges) {
    if (!merged.empty() && merged.back().src == e.src &&
        merged.back().dst == e.dst) {
      auto& labels = merged.back().labels;
      labels.insert(labels.end(), e.labels.begin(), e.labels.end());
    } else {
      merged.push_back(std::move(e));
    }
  }
  for (Edge& e : merged) {
    std::sort(e.labels.begin(), e.labels.end());
    e.labels.erase(std::unique(e.labels.begin(), e.labels.end()),
                   e.labels.end());
  }

  const int num_vertices = num_channels + num_sinks;
  for (const Edge& e : merged) {
    if (e.src < 0 || e.src >= num_vertices)
      throw graph_error("edge source " + std::to_string(e.src) +
                        " out of range");
    if (e.src >= num_channels)
      throw graph_error("sink " + std::to_string(e.src) +
                        " has an outgoing edge " + edge_name(e.src, e.dst));
    if (e.dst < 0 || e.dst >= num_vertices)
      throw graph_error("edge target out of range on edge " +
                        edge_name(e.src, e.dst));
    if (e.src == e.dst)
      throw graph_error("self-loop on vertex " + std::to_string(e.src));
    if (e.labels.empty())
      throw graph_error("edge " + edge_name(e.src, e.dst) +
                        " has no destination labels");
    for (Dest d : e.labels)
      if (d < num_channels || d >= num_vertices)
        throw graph_error("label " + std::to_string(d) + " on edge " +
                          edge_name(e.src, e.dst) + " is not a sink");
  }

  RoutingGraph g;
  g.num_channels_ = num_channels;
  g.num_sinks_ = num_sinks;
  g.edges_ = std::move(merged);

  std::vector<std::map<Dest, std::vector<Vertex>>> out(num_channels);
  for (const Edge& e : g.edges_)
    for (Dest d : e.labels) out[e.src][d].push_back(e.dst);

  g.out_.resize(num_channels);
  g.defined_.resize(num_channels);
  g.rev_.assign(num_sinks,
                std::vector<std::vector<Channel>>(num_channels));
  for (Channel c = 0; c < num_channels; ++c) {
    for (auto& [d, targets] : out[c]) {
      // targets arrive ascending: edges_ is sorted by (src, dst)
      g.defined_[c].push_back(d);
      for (Vertex v : targets)
        if (v < num_channels) g.rev_[d - num_channels][v].push_back(c);
      g.out_[c].emplace_back(d, std::move(targets));
    }
  }
  return g;
}

void RoutingGraph::check_channel(Channel c) const {
  if (!is_channel(c))
    throw std::out_of_range("channel " + std::to_string(c) + " out of range");
}

void RoutingGraph::check_dest(Dest d) const {
  if (!is_sink(d))
    throw std::out_of_range("destination " + std::to_string(d) +
                            " is not a sink");
}

const std::vector<Vertex>& RoutingGraph::neighbors(Channel c, Dest d) const {
  check_channel(c);
  check_dest(d);
  const auto& row = out_[c];
  auto it = std::lower_bound(
      row.begin(), row.end(), d,
      [](const auto& entry, Dest key) { return entry.first < key; });
  if (it == row.end() || it->first != d) return kNoVertices;
  return it->second;
}

const std::vector<Dest>& RoutingGraph::defined_destinations(Channel c) const {
  check_channel(c);
  return defined_[c];
}

const std::vector<Channel>& RoutingGraph::predecessors(Channel v,
                                                       Dest d) const {
  check_channel(v);
  check_dest(d);
  return rev_[d - num_channels_][v];
}

bool RoutingGraph::is_d_path(std::span<const Channel> p, Dest d) const {
  if (!is_sink(d) || p.empty()) return false;
  for (Channel c : p)
    if (!is_channel(c)) return false;
  std::vector<Channel> sorted(p.begin(), p.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const auto& next = neighbors(p[i], d);
    if (!std::binary_search(next.begin(), next.end(), p[i + 1])) return false;
  }
  return true;
}

void RoutingGraph::for_each_simple_d_path(
    Dest d, Channel start, int max_len,
    const std::function<bool(std::span<const Channel>)>& visit) const {
  check_channel(start);
  check_dest(d);
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");

  std::vector<char> on_path(num_channels_, 0);
  std::vector<Channel> path;
  // Pre-order DFS with ascending neighbor expansion emits the paths in
  // lexicographic order.
  auto walk = [&](auto&& self, Channel v) -> bool {
    path.push_back(v);
    on_path[v] = 1;
    bool keep_going = visit(path);
    if (keep_going && static_cast<int>(path.size()) < max_len) {
      for (Vertex t : neighbors(v, d)) {
        if (!is_channel(t) || on_path[t]) continue;
        if (!(keep_going = self(self, t))) break;
      }
    }
    on_path[v] = 0;
    path.pop_back();
    return keep_going;
  };
  walk(walk, start);
}

std::vector<DPath> RoutingGraph::simple_d_paths(Dest d, Channel start,
                                                int max_len) const {
  std::vector<DPath> out;
  for_each_simple_d_path(d, start, max_len,
                         [&](std::span<const Channel> p) {
                           out.push_back(DPath{
                               std::vector<Channel>(p.begin(), p.end()), d});
                           return true;
                         });
  return out;
}

RoutingGraph RoutingGraph::parse(std::string_view text) {
  int line_no = 0;
  std::optional<int> channels, sinks;
  std::vector<Edge> edges;

  auto parse_int = [&](std::string_view token, const char* what) -> int {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.begin(), token.end(), value);
    if (ec != std::errc() || ptr != token.end() || value < 0)
      throw parse_error(line_no, std::string("invalid ") + what + " '" +
                                     std::string(token) + "'");
    return value;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                 line[i] == '\r'))
        ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' &&
             line[j] != '\r')
        ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    if (tokens[0] == "channels") {
      if (channels) throw parse_error(line_no, "duplicate 'channels' line");
      if (sinks || !edges.empty())
        throw parse_error(line_no, "'channels' must be the first entry");
      if (tokens.size() != 2)
        throw parse_error(line_no, "expected 'channels <count>'");
      channels = parse_int(tokens[1], "channel count");
    } else if (tokens[0] == "sinks") {
      if (!channels)
        throw parse_error(line_no, "'sinks' must follow 'channels'");
      if (sinks) throw parse_error(line_no, "duplicate 'sinks' line");
      if (!edges.empty())
        throw parse_error(line_no, "'sinks' must precede edges");
      if (tokens.size() != 2)
        throw parse_error(line_no, "expected 'sinks <count>'");
      sinks = parse_int(tokens[1], "sink count");
    } else if (tokens[0] == "edge") {
      if (!channels || !sinks)
        throw parse_error(line_no, "edge before 'channels'/'sinks' header");
      if (tokens.size() != 4)
        throw parse_error(line_no, "expected 'edge <src> <dst> <labels>'");
      Edge e;
      e.src = parse_int(tokens[1], "edge source");
      e.dst = parse_int(tokens[2], "edge target");
      std::string_view labels = tokens[3];
      std::size_t start = 0;
      while (start <= labels.size()) {
        std::size_t comma = labels.find(',', start);
        if (comma == std::string_view::npos) comma = labels.size();
        std::string_view item = labels.substr(start, comma - start);
        if (item.empty())
          throw parse_error(line_no, "invalid label list '" +
                                         std::string(labels) + "'");
        e.labels.push_back(parse_int(item, "label"));
        start = comma + 1;
      }
      edges.push_back(std::move(e));
    } else {
      throw parse_error(line_no,
                        "unknown directive '" + std::string(tokens[0]) + "'");
    }
    if (pos > text.size()) break;
  }

  if (!channels) throw parse_error(std::max(line_no, 1), "missing 'channels' line");
  if (!sinks) throw parse_error(std::max(line_no, 1), "missing 'sinks' line");
  return from_edges(*channels, *sinks, std::move(edges));
}

std::string RoutingGraph::serialize() const {
  std::string s = "channels " + std::to_string(num_channels_) + "\n" +
                  "sinks " + std::to_string(num_sinks_) + "\n";
  for (const Edge& e : edges_) {
    s += "edge " + std::to_string(e.src) + " " + std::to_string(e.dst) + " " +
         join_ints(e.labels, ',') + "\n";
  }
  return s;
}

RoutingGraph random_graph(int num_channels, int num_sinks, double edge_density,
                          std::uint64_t seed) {
  if (num_channels < 1)
    throw std::invalid_argument("num_channels must be >= 1");
  if (num_sinks < 1) throw std::invalid_argument("num_sinks must be >= 1");
  if (!(edge_density > 0.0) || edge_density > 1.0)
    throw std::invalid_argument("edge_density must be in (0, 1]");

  std::mt19937_64 rng(seed);
  // Raw generator output only; the standard distributions are not
  // reproducible across library implementations.
  auto next_unit = [&] { return double(rng() >> 11) * 0x1.0p-53; };
  auto next_index = [&](int n) {
    return static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  };

  const int num_vertices = num_channels + num_sinks;
  std::vector<RoutingGraph::Edge> edges;
  for (Channel c = 0; c < num_channels; ++c) {
    bool has_edge = false;
    for (Vertex v = 0; v < num_vertices; ++v) {
      if (v == c) continue;
      if (next_unit() >= edge_density) continue;
      std::vector<Dest> labels;
      for (Dest d = num_channels; d < num_vertices; ++d)
        if (next_unit() < 0.5) labels.push_back(d);
      if (labels.empty()) labels.push_back(num_channels + next_index(num_sinks));
      edges.push_back({c, v, std::move(labels)});
      has_edge = true;
    }
    if (!has_edge) {
      int pick = next_index(num_vertices - 1);
      Vertex v = pick >= c ? pick + 1 : pick;
      edges.push_back({c, v, {num_channels + next_index(num_sinks)}});
    }
  }
  return RoutingGraph::from_edges(num_channels, num_sinks, std::move(edges));
}

std::string to_dot(const RoutingGraph& g, std::span<const int> marks) {
  if (!marks.empty() &&
      static_cast<int>(marks.size()) != g.num_channels())
    throw std::invalid_argument("marks size must equal the channel count");

  std::string s = "digraph dependencies {\n";
  for (Channel c = 0; c < g.num_channels(); ++c) {
    std::string label = std::to_string(c);
    if (!marks.empty()) label += " m=" + std::to_string(marks[c]);
    s += "  " + std::to_string(c) + " [shape=circle label=\"" + label +
         "\"];\n";
  }
  for (Vertex v = g.num_channels(); v < g.num_vertices(); ++v)
    s += "  " + std::to_string(v) + " [shape=doublecircle label=\"" +
         std::to_string(v) + "\"];\n";
  for (const RoutingGraph::Edge& e : g.edges())
    s += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
         " [label=\"" + join_ints(e.labels, ',') + "\"];\n";
  s += "}\n";
  return s;
}

}  // namespace nocdl
