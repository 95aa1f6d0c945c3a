#pragma once

// Reference implementations used only by the tests. Each one takes a
// different route from the library code it checks.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mapper/graph.hpp"

namespace oracle {

using mapper::Graph;
using mapper::NodeId;

/// Union-find over the edge list.
inline std::vector<std::vector<NodeId>> components(const Graph& g) {
  std::vector<NodeId> parent(g.num_nodes());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  std::function<NodeId(NodeId)> find = [&](NodeId x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : g.edges()) parent[find(e.u)] = find(e.v);
  std::vector<std::vector<NodeId>> by_root(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<NodeId>> out;
  for (auto& b : by_root) {
    if (!b.empty()) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Principal eigenvector of the dense Google matrix, scaled to sum 1.
/// Self-loops are ignored and dangling columns are uniform.
inline Eigen::VectorXd pagerank_dense(const Graph& g, double alpha) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd a = g.adjacency_matrix();
  a.diagonal().setZero();
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = a.col(j).sum();
    if (s > 0) {
      m.col(j) = a.col(j) / s;
    } else {
      m.col(j).setConstant(1.0 / static_cast<double>(n));
    }
  }
  const Eigen::MatrixXd google =
      alpha * m + Eigen::MatrixXd::Constant(n, n, (1.0 - alpha) / static_cast<double>(n));
  Eigen::EigenSolver<Eigen::MatrixXd> es(google);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (es.eigenvalues()[i].real() > es.eigenvalues()[best].real()) best = i;
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  return v / v.sum();
}

/// Ascending Laplacian spectrum (self-loops ignored).
inline Eigen::VectorXd laplacian_spectrum(const Graph& g) {
  Eigen::MatrixXd a = g.adjacency_matrix();
  a.diagonal().setZero();
  Eigen::MatrixXd lap = -a;
  lap.diagonal() = a.rowwise().sum();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lap, Eigen::EigenvaluesOnly).eigenvalues();
}

/// All-pairs hop distances by Floyd-Warshall.
inline std::vector<std::vector<double>> hop_distances(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) {
    if (e.u != e.v) d[e.u][e.v] = d[e.v][e.u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  return d;
}

/// Pairwise intersection test over member lists.
inline std::vector<std::pair<std::size_t, std::size_t>> nerve_edges(
    const std::vector<std::vector<NodeId>>& clusters) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < clusters.size(); ++a) {
    for (std::size_t b = a + 1; b < clusters.size(); ++b) {
      const std::set<NodeId> sa(clusters[a].begin(), clusters[a].end());
      const bool meet = std::any_of(clusters[b].begin(), clusters[b].end(),
                                    [&](NodeId v) { return sa.count(v) > 0; });
      if (meet) out.emplace_back(a, b);
    }
  }
  return out;
}

/// Edge set of g as (min, max) pairs with self-loops removed.
inline std::set<std::pair<NodeId, NodeId>> edge_set(const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& e : g.edges()) {
    if (e.u != e.v) out.emplace(e.u, e.v);
  }
  return out;
}

}  // namespace oracle
