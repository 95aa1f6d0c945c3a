#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "mapper/graph.hpp"

namespace mapper {

/// Per-node lens values, one row per node and 1 to 3 columns.
struct LensVector {
  Eigen::MatrixXd values;
  bool normalized = false;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(values.cols()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values.rows()); }
  Eigen::VectorXd row(NodeId v) const { return values.row(static_cast<Eigen::Index>(v)); }
};

/// Per-column min-max scaling to [0,1]. A column whose spread is below
/// 1e-12 relative to its magnitude is treated as constant and mapped to 0.5.
Eigen::MatrixXd minmax_normalize(const Eigen::MatrixXd& values);

struct PageRankOptions {
  double alpha = 0.85;
  double tol = 1e-10;  ///< L1 change between iterates
  std::size_t max_iter = 1000;
};

/// Raw PageRank scores by power iteration on the Google matrix
/// alpha*M + (1-alpha)/N * E, M the column-stochastic random-walk matrix.
/// Dangling nodes teleport uniformly. Self-loops are ignored; edge weights are
/// honoured. The result sums to 1.
Eigen::VectorXd pagerank_scores(const Graph& g, const PageRankOptions& opts = {});

/// Min-max normalised PageRank, d = 1.
LensVector pagerank_lens(const Graph& g, const PageRankOptions& opts = {});

struct FiedlerResult {
  Eigen::VectorXd vector;  ///< unit norm, orthogonal to the all-ones vector
  double eigenvalue = 0.0;
};

/// Second-smallest Laplacian eigenpair. Sign is fixed so that the first node
/// with a nonzero entry is positive. Throws DomainError unless g is connected
/// with at least two nodes.
FiedlerResult fiedler_vector(const Graph& g);

/// Unnormalised Fiedler lens, d = 1.
LensVector fiedler_lens(const Graph& g);

/// f(v) = sum_u exp(-d(u,v)/delta) over hop distances d, u = v included.
Eigen::VectorXd density_scores(const Graph& g, double delta);

/// Min-max normalised density lens, d = 1.
LensVector density_lens(const Graph& g, double delta);

/// Wraps externally produced lens values (e.g. classifier outputs).
LensVector external_lens(const Graph& g, Eigen::MatrixXd values, bool normalize);

}  // namespace mapper
