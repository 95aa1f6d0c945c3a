#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include "mapper/graph.hpp"

namespace testing {

using mapper::Edge;
using mapper::Graph;
using mapper::NodeId;

inline Graph make_graph(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v});
  return Graph::from_edges(n, edges);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  return Graph::from_edges(n, edges);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Graph::from_edges(n, edges);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::from_edges(n, edges);
}

/// Hub 0 joined to leaves 1..leaves.
inline Graph star(std::size_t leaves) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= leaves; ++v) edges.push_back({0, v});
  return Graph::from_edges(leaves + 1, edges);
}

/// Triangles {0,1,2} and {3,4,5}, optionally bridged by 2-3.
inline Graph two_triangles(bool bridged) {
  if (bridged) return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

}  // namespace testing
