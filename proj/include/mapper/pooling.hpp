#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "mapper/cover.hpp"
#include "mapper/graph.hpp"
#include "mapper/lens.hpp"

namespace mapper {

/// N x K soft cluster assignment. Rows are nonnegative and sum to one;
/// `provenance[k]` is the cover set that produced column k.
struct AssignmentMatrix {
  Eigen::MatrixXd s;
  std::vector<std::size_t> provenance;

  std::size_t num_nodes() const noexcept { return static_cast<std::size_t>(s.rows()); }
  std::size_t num_clusters() const noexcept { return static_cast<std::size_t>(s.cols()); }
};

/// S_ij = 1/m_i when node i lies in set j, m_i the number of sets holding i.
/// Nodes in no set get a zero row.
AssignmentMatrix assignment_from_sets(std::size_t num_nodes,
                                      std::span<const std::vector<NodeId>> sets,
                                      std::vector<std::size_t> provenance);

/// Drops all-zero columns, keeping provenance aligned.
AssignmentMatrix drop_empty_clusters(const AssignmentMatrix& s);

/// Uniform split over the covering intervals of a normalised 1-D lens; empty
/// intervals are dropped.
AssignmentMatrix mpr_assignment(const Graph& g, const LensVector& lens, const Cover& cover);

/// S^T A S, symmetrised exactly.
Eigen::MatrixXd pool_adjacency(const Eigen::SparseMatrix<double>& a, const Eigen::MatrixXd& s);
Eigen::MatrixXd pool_adjacency(const Eigen::MatrixXd& a, const Eigen::MatrixXd& s);

/// S^T X: each cluster gets the membership-weighted sum of member features.
Eigen::MatrixXd pool_features(const Eigen::MatrixXd& x, const Eigen::MatrixXd& s);

struct MprOptions {
  std::size_t n = 5;
  double overlap = 0.2;
  PageRankOptions pagerank;
};

struct PooledGraph {
  Eigen::MatrixXd adjacency;
  Eigen::MatrixXd features;
  AssignmentMatrix assignment;
  bool self_loops_added = false;
};

/// PageRank lens -> interval cover of [0,1] -> assignment -> pooled graph.
/// Missing self-loops are added before pooling. Requires node features.
PooledGraph mpr_pool(const Graph& g, const MprOptions& opts);

}  // namespace mapper
