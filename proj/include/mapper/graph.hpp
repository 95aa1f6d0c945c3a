#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace mapper {

using NodeId = std::size_t;

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
};

/// Undirected graph over dense node ids 0..N-1.
///
/// Edges are stored canonically (u <= v), sorted and deduplicated. Self-loops
/// are kept in the edge list but never appear in `neighbors()`; they only show
/// up on the diagonal of the adjacency matrices. The object is immutable once
/// built; the `with_*` helpers return modified copies.
class Graph {
 public:
  Graph() = default;

  /// Duplicate edges (in either orientation) are collapsed, keeping the first
  /// weight seen. `duplicates`, when given, receives the number dropped.
  static Graph from_edges(std::size_t num_nodes, std::span<const Edge> edges,
                          std::size_t* duplicates = nullptr);

  std::size_t num_nodes() const noexcept { return neighbors_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Sorted neighbour ids, self excluded.
  std::span<const NodeId> neighbors(NodeId v) const { return neighbors_[v]; }
  std::span<const double> neighbor_weights(NodeId v) const { return neighbor_weights_[v]; }
  std::size_t degree(NodeId v) const { return neighbors_[v].size(); }
  bool has_self_loop(NodeId v) const { return self_loop_weight_[v] != 0.0; }
  double self_loop_weight(NodeId v) const { return self_loop_weight_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  bool weighted() const noexcept { return weighted_; }

  const std::optional<Eigen::MatrixXd>& features() const noexcept { return features_; }
  const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }

  Graph with_features(Eigen::MatrixXd features) const;
  Graph with_labels(std::vector<int> labels) const;
  /// Adds a weight-1 self-loop to every node that lacks one.
  Graph with_self_loops() const;
  bool all_self_loops() const;

  /// Dense symmetric adjacency; self-loops on the diagonal.
  Eigen::MatrixXd adjacency_matrix() const;
  Eigen::SparseMatrix<double> adjacency_sparse() const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<std::vector<double>> neighbor_weights_;
  std::vector<double> self_loop_weight_;
  bool weighted_ = false;
  std::optional<Eigen::MatrixXd> features_;
  std::optional<std::vector<int>> labels_;
};

/// Disjoint nonempty node sets.
struct NodePartition {
  std::vector<std::vector<NodeId>> blocks;
};

/// Blocks ordered by smallest member; members ascending. Self-loops never
/// connect anything.
NodePartition connected_components(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  /// Local id -> id in the parent graph, ascending.
  std::vector<NodeId> to_parent;
};

/// `nodes` may be unsorted and contain repeats; the result is ordered by
/// ascending parent id. Features and labels are carried over.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// `perm[i]` is the new id of node i: edge (u,v) becomes (perm[u], perm[v])
/// and feature/label row i moves to row perm[i].
Graph apply_permutation(const Graph& g, std::span<const NodeId> perm);

std::vector<NodeId> invert_permutation(std::span<const NodeId> perm);

/// Combinatorial Laplacian D - A. Self-loops are ignored; edge weights are
/// used when the graph is weighted.
Eigen::MatrixXd laplacian(const Graph& g);

/// Unweighted hop distances from `source`; unreachable nodes get SIZE_MAX.
std::vector<std::size_t> bfs_distances(const Graph& g, NodeId source);

bool is_connected(const Graph& g);

}  // namespace mapper
