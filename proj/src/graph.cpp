#include "mapper/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "mapper/errors.hpp"

namespace mapper {

Graph Graph::from_edges(std::size_t num_nodes, std::span<const Edge> edges,
                        std::size_t* duplicates) {
  Graph g;
  g.neighbors_.resize(num_nodes);
  g.neighbor_weights_.resize(num_nodes);
  g.self_loop_weight_.assign(num_nodes, 0.0);

  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= num_nodes || e.v >= num_nodes) {
      throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                            ") references a node outside 0.." +
                            std::to_string(num_nodes == 0 ? 0 : num_nodes - 1));
    }
    canon.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  // Stable so that the first occurrence of a duplicate keeps its weight.
  std::stable_sort(canon.begin(), canon.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::size_t dropped = 0;
  for (const Edge& e : canon) {
    if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v) {
      ++dropped;
      continue;
    }
    g.edges_.push_back(e);
  }
  if (duplicates != nullptr) *duplicates = dropped;

  for (const Edge& e : g.edges_) {
    if (e.weight != 1.0) g.weighted_ = true;
    if (e.u == e.v) {
      g.self_loop_weight_[e.u] = e.weight;
      continue;
    }
    g.neighbors_[e.u].push_back(e.v);
    g.neighbor_weights_[e.u].push_back(e.weight);
    g.neighbors_[e.v].push_back(e.u);
    g.neighbor_weights_[e.v].push_back(e.weight);
  }
  // Edges are sorted by (u, v), so every u-list is already ascending; v-lists
  // receive smaller ids first, also ascending. Nothing to sort.
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u == v) return has_self_loop(u);
  const auto& nb = neighbors_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::with_features(Eigen::MatrixXd features) const {
  if (static_cast<std::size_t>(features.rows()) != num_nodes()) {
    throw ValidationError("feature matrix has " + std::to_string(features.rows()) +
                          " rows, graph has " + std::to_string(num_nodes()) + " nodes");
  }
  Graph out = *this;
  out.features_ = std::move(features);
  return out;
}

Graph Graph::with_labels(std::vector<int> labels) const {
  if (labels.size() != num_nodes()) {
    throw ValidationError("label vector has " + std::to_string(labels.size()) +
                          " entries, graph has " + std::to_string(num_nodes()) + " nodes");
  }
  Graph out = *this;
  out.labels_ = std::move(labels);
  return out;
}

bool Graph::all_self_loops() const {
  return std::all_of(self_loop_weight_.begin(), self_loop_weight_.end(),
                     [](double w) { return w != 0.0; });
}

Graph Graph::with_self_loops() const {
  std::vector<Edge> edges = edges_;
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (!has_self_loop(v)) edges.push_back({v, v, 1.0});
  }
  Graph out = from_edges(num_nodes(), edges);
  out.features_ = features_;
  out.labels_ = labels_;
  return out;
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  const auto n = static_cast<Eigen::Index>(num_nodes());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges_) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    a(u, v) = e.weight;
    a(v, u) = e.weight;
  }
  return a;
}

Eigen::SparseMatrix<double> Graph::adjacency_sparse() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * edges_.size());
  for (const Edge& e : edges_) {
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    trips.emplace_back(u, v, e.weight);
    if (u != v) trips.emplace_back(v, u, e.weight);
  }
  const auto n = static_cast<Eigen::Index>(num_nodes());
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.num_nodes() != b.num_nodes() || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const Edge& x = a.edges_[i];
    const Edge& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
  }
  if (a.features_.has_value() != b.features_.has_value()) return false;
  if (a.features_ && *a.features_ != *b.features_) return false;
  return a.labels_ == b.labels_;
}

NodePartition connected_components(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<bool> seen(n, false);
  NodePartition out;
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<NodeId> block;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      block.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(block.begin(), block.end());
    out.blocks.push_back(std::move(block));
  }
  return out;
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  const std::size_t n = g.num_nodes();
  std::vector<NodeId> keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (!keep.empty() && keep.back() >= n) {
    throw ValidationError("induced_subgraph: unknown node id " + std::to_string(keep.back()));
  }

  constexpr NodeId kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> local(n, kAbsent);
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = i;

  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (local[e.u] != kAbsent && local[e.v] != kAbsent) {
      edges.push_back({local[e.u], local[e.v], e.weight});
    }
  }
  InducedSubgraph out{Graph::from_edges(keep.size(), edges), std::move(keep)};
  if (g.features()) {
    const Eigen::MatrixXd& x = *g.features();
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(out.to_parent.size()), x.cols());
    for (std::size_t i = 0; i < out.to_parent.size(); ++i) {
      sub.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(out.to_parent[i]));
    }
    out.graph = out.graph.with_features(std::move(sub));
  }
  if (g.labels()) {
    std::vector<int> sub;
    sub.reserve(out.to_parent.size());
    for (NodeId p : out.to_parent) sub.push_back((*g.labels())[p]);
    out.graph = out.graph.with_labels(std::move(sub));
  }
  return out;
}

namespace {

void check_permutation(std::span<const NodeId> perm, std::size_t n) {
  if (perm.size() != n) {
    throw ValidationError("permutation has " + std::to_string(perm.size()) +
                          " entries, expected " + std::to_string(n));
  }
  std::vector<bool> hit(n, false);
  for (NodeId p : perm) {
    if (p >= n || hit[p]) throw ValidationError("permutation is not a bijection on 0..N-1");
    hit[p] = true;
  }
}

}  // namespace

std::vector<NodeId> invert_permutation(std::span<const NodeId> perm) {
  check_permutation(perm, perm.size());
  std::vector<NodeId> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

Graph apply_permutation(const Graph& g, std::span<const NodeId> perm) {
  const std::size_t n = g.num_nodes();
  check_permutation(perm, n);
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.weight});
  Graph out = Graph::from_edges(n, edges);
  if (g.features()) {
    const Eigen::MatrixXd& x = *g.features();
    Eigen::MatrixXd px(x.rows(), x.cols());
    for (std::size_t i = 0; i < n; ++i) {
      px.row(static_cast<Eigen::Index>(perm[i])) = x.row(static_cast<Eigen::Index>(i));
    }
    out = out.with_features(std::move(px));
  }
  if (g.labels()) {
    std::vector<int> pl(n);
    for (std::size_t i = 0; i < n; ++i) pl[perm[i]] = (*g.labels())[i];
    out = out.with_labels(std::move(pl));
  }
  return out;
}

Eigen::MatrixXd laplacian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    const auto u = static_cast<Eigen::Index>(e.u);
    const auto v = static_cast<Eigen::Index>(e.v);
    lap(u, v) -= e.weight;
    lap(v, u) -= e.weight;
    lap(u, u) += e.weight;
    lap(v, v) += e.weight;
  }
  return lap;
}

std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.num_nodes(), kInf);
  std::queue<NodeId> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    for (NodeId w : g.neighbors(v)) {
      if (dist[w] == kInf) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  return g.num_nodes() > 0 && connected_components(g).blocks.size() == 1;
}

}  // namespace mapper
