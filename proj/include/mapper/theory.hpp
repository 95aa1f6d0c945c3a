#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "mapper/graph.hpp"
#include "mapper/pooling.hpp"

// Executable checks of the structural results behind Mapper pooling: the
// nerve of a 1-hop-expanded assignment on the expanded graph matches the
// support of S^T A S, the Fiedler lens with a +-eps cover yields the spectral
// bipartition, and MPR pooling ignores node order.

namespace mapper {

/// Every node of the original graph is replaced by a clique, one clique node
/// per external edge, and each external edge joins two clique nodes that have
/// no other outside neighbour. Isolated nodes become an edge. Every expanded
/// node carries a self-loop.
struct ExpandedGraph {
  Graph graph;
  std::vector<std::vector<NodeId>> clique_of;  ///< original -> expanded ids
  std::vector<NodeId> origin_of;               ///< expanded -> original id
};

/// External edges of v are taken in neighbour order and matched to the clique
/// nodes of v in order.
ExpandedGraph expand_graph(const Graph& g);

/// Each expanded node inherits the row of its origin.
AssignmentMatrix expand_assignment(const AssignmentMatrix& s, const ExpandedGraph& eg);

/// Row-normalised A S. Throws ValidationError if a row of A S vanishes.
AssignmentMatrix one_hop_expansion(const Eigen::SparseMatrix<double>& a, const AssignmentMatrix& s);

using ClusterEdge = std::pair<std::size_t, std::size_t>;

struct EquivalenceReport {
  bool holds = false;
  std::size_t clusters = 0;                ///< after dropping empty columns
  std::vector<ClusterEdge> nerve_edges;    ///< expanded-graph route
  std::vector<ClusterEdge> pooled_support; ///< off-diagonal support of S^T A S
};

/// Compares both routes under identity cluster labelling. Self-loops are
/// added to g when missing; empty columns of s are dropped first.
EquivalenceReport verify_soft_cluster_equivalence(const Graph& g, const AssignmentMatrix& s);

struct BipartitionReport {
  bool holds = false;
  bool skipped = false;
  std::string reason;
  double epsilon = 0.0;
  double residual = 0.0;  ///< ||L l - lambda l||, lambda the Rayleigh quotient
  std::vector<std::vector<NodeId>> mapper_partition;
  std::vector<std::vector<NodeId>> sign_partition;  ///< {negative, positive}
};

/// Skips (holds = false, skipped = true) when some Fiedler entry is within
/// 1e-9 of zero.
BipartitionReport verify_spectral_bipartition(const Graph& g);

struct PermutationReport {
  bool holds = true;
  std::size_t trials = 0;
  double max_deviation = 0.0;
  std::vector<std::vector<NodeId>> violations;
};

/// Pools g and `trials` random relabellings of it, comparing A_MG and X_MG
/// entrywise within 1e-9. Trial 0 uses the identity permutation.
PermutationReport verify_permutation_invariance(const Graph& g, std::size_t trials,
                                                std::uint64_t seed, const MprOptions& opts = {});

/// Aggregate over randomly generated instances.
struct BatchReport {
  std::string property;
  std::size_t instances = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  double seconds = 0.0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return instances > 0 && passed == instances; }
};

/// Random graphs with 1..max_n nodes and self-loops, soft/hard S with
/// 1..max_k columns.
BatchReport batch_soft_cluster_equivalence(std::size_t instances, std::size_t max_n,
                                           std::size_t max_k, std::uint64_t seed);

/// Random connected graphs with 2..max_n nodes; graphs with a vanishing
/// Fiedler entry are redrawn and counted in `skipped`.
BatchReport batch_spectral_bipartition(std::size_t instances, std::size_t max_n,
                                       std::uint64_t seed);

/// Random featured graphs with 1..max_n nodes, `perms` relabellings each.
BatchReport batch_permutation_invariance(std::size_t instances, std::size_t max_n,
                                         std::size_t perms, std::uint64_t seed);

}  // namespace mapper
