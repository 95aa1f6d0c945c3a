#include "mapper/pooling.hpp"

#include <string>

#include "mapper/errors.hpp"
#include "mapper/mapper.hpp"

namespace mapper {

AssignmentMatrix assignment_from_sets(std::size_t num_nodes,
                                      std::span<const std::vector<NodeId>> sets,
                                      std::vector<std::size_t> provenance) {
  if (provenance.size() != sets.size()) {
    throw ValidationError("assignment: provenance must have one entry per set");
  }
  std::vector<std::size_t> multiplicity(num_nodes, 0);
  for (const auto& set : sets) {
    for (NodeId v : set) {
      if (v >= num_nodes) throw ValidationError("assignment: unknown node " + std::to_string(v));
      ++multiplicity[v];
    }
  }
  AssignmentMatrix out;
  out.s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(num_nodes),
                                static_cast<Eigen::Index>(sets.size()));
  for (std::size_t j = 0; j < sets.size(); ++j) {
    for (NodeId v : sets[j]) {
      out.s(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) =
          1.0 / static_cast<double>(multiplicity[v]);
    }
  }
  out.provenance = std::move(provenance);
  return out;
}

AssignmentMatrix drop_empty_clusters(const AssignmentMatrix& s) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < s.s.cols(); ++j) {
    if ((s.s.col(j).array() != 0.0).any()) keep.push_back(j);
  }
  AssignmentMatrix out;
  out.s.resize(s.s.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.s.col(static_cast<Eigen::Index>(k)) = s.s.col(keep[k]);
    out.provenance.push_back(s.provenance.empty() ? static_cast<std::size_t>(keep[k])
                                                  : s.provenance[static_cast<std::size_t>(keep[k])]);
  }
  return out;
}

AssignmentMatrix mpr_assignment(const Graph& g, const LensVector& lens, const Cover& cover) {
  if (lens.dim() != 1 || !lens.normalized) {
    throw ValidationError("mpr_assignment needs a normalised one-dimensional lens");
  }
  if (cover.kind() != CoverKind::intervals) {
    throw ValidationError("mpr_assignment needs an interval cover");
  }
  // No refinement: each nonempty preimage is one cluster.
  const PullBackCover pb = pull_back(g, lens, cover);
  std::vector<std::vector<NodeId>> sets;
  std::vector<std::size_t> provenance;
  for (const PullBackSet& set : pb.sets) {
    sets.push_back(set.nodes);
    provenance.push_back(set.cover_set);
  }
  return assignment_from_sets(g.num_nodes(), sets, std::move(provenance));
}

namespace {

Eigen::MatrixXd symmetrised(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = avg;
      out(j, i) = avg;
    }
  }
  return out;
}

void check_shapes(Eigen::Index a_rows, Eigen::Index a_cols, const Eigen::MatrixXd& s) {
  if (a_rows != a_cols) throw ValidationError("pool_adjacency: adjacency must be square");
  if (s.rows() != a_rows) {
    throw ValidationError("pool_adjacency: assignment has " + std::to_string(s.rows()) +
                          " rows, adjacency has " + std::to_string(a_rows));
  }
}

}  // namespace

Eigen::MatrixXd pool_adjacency(const Eigen::SparseMatrix<double>& a, const Eigen::MatrixXd& s) {
  check_shapes(a.rows(), a.cols(), s);
  const Eigen::MatrixXd as = a * s;
  return symmetrised(s.transpose() * as);
}

Eigen::MatrixXd pool_adjacency(const Eigen::MatrixXd& a, const Eigen::MatrixXd& s) {
  check_shapes(a.rows(), a.cols(), s);
  return symmetrised(s.transpose() * (a * s));
}

Eigen::MatrixXd pool_features(const Eigen::MatrixXd& x, const Eigen::MatrixXd& s) {
  if (x.rows() != s.rows()) {
    throw ValidationError("pool_features: features have " + std::to_string(x.rows()) +
                          " rows, assignment has " + std::to_string(s.rows()));
  }
  return s.transpose() * x;
}

PooledGraph mpr_pool(const Graph& g, const MprOptions& opts) {
  if (!g.features()) throw ValidationError("mpr_pool: graph has no node features");
  PooledGraph out;
  out.self_loops_added = !g.all_self_loops();
  const Graph looped = out.self_loops_added ? g.with_self_loops() : g;

  const LensVector lens = pagerank_lens(looped, opts.pagerank);
  const Cover cover = interval_cover(opts.n, opts.overlap, 0.0, 1.0);
  out.assignment = mpr_assignment(looped, lens, cover);
  out.adjacency = pool_adjacency(looped.adjacency_sparse(), out.assignment.s);
  out.features = pool_features(*looped.features(), out.assignment.s);
  return out;
}

}  // namespace mapper
