#include "mapper/theory.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mapper/cover.hpp"
#include "mapper/errors.hpp"
#include "mapper/lens.hpp"
#include "mapper/mapper.hpp"
#include "mapper/random_graphs.hpp"

namespace mapper {

ExpandedGraph expand_graph(const Graph& g) {
  const std::size_t n = g.num_nodes();
  ExpandedGraph eg;
  eg.clique_of.resize(n);
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t size = g.degree(v) == 0 ? 2 : g.degree(v);
    for (std::size_t i = 0; i < size; ++i) {
      eg.clique_of[v].push_back(next++);
      eg.origin_of.push_back(v);
    }
  }

  std::vector<Edge> edges;
  for (NodeId v = 0; v < n; ++v) {
    const auto& clique = eg.clique_of[v];
    for (std::size_t i = 0; i < clique.size(); ++i) {
      edges.push_back({clique[i], clique[i]});
      for (std::size_t j = i + 1; j < clique.size(); ++j) edges.push_back({clique[i], clique[j]});
    }
  }
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    const auto nu = g.neighbors(e.u);
    const auto nv = g.neighbors(e.v);
    const auto slot_u = static_cast<std::size_t>(std::lower_bound(nu.begin(), nu.end(), e.v) - nu.begin());
    const auto slot_v = static_cast<std::size_t>(std::lower_bound(nv.begin(), nv.end(), e.u) - nv.begin());
    edges.push_back({eg.clique_of[e.u][slot_u], eg.clique_of[e.v][slot_v]});
  }
  eg.graph = Graph::from_edges(next, edges);
  return eg;
}

AssignmentMatrix expand_assignment(const AssignmentMatrix& s, const ExpandedGraph& eg) {
  if (s.num_nodes() != eg.clique_of.size()) {
    throw ValidationError("expand_assignment: assignment rows do not match the original graph");
  }
  AssignmentMatrix out;
  out.s.resize(static_cast<Eigen::Index>(eg.origin_of.size()), s.s.cols());
  for (std::size_t i = 0; i < eg.origin_of.size(); ++i) {
    out.s.row(static_cast<Eigen::Index>(i)) = s.s.row(static_cast<Eigen::Index>(eg.origin_of[i]));
  }
  out.provenance = s.provenance;
  return out;
}

AssignmentMatrix one_hop_expansion(const Eigen::SparseMatrix<double>& a, const AssignmentMatrix& s) {
  if (a.rows() != a.cols() || a.rows() != s.s.rows()) {
    throw ValidationError("one_hop_expansion: adjacency and assignment shapes disagree");
  }
  AssignmentMatrix out;
  out.s = a * s.s;
  for (Eigen::Index i = 0; i < out.s.rows(); ++i) {
    const double total = out.s.row(i).sum();
    if (!(total > 0.0)) {
      throw ValidationError("one_hop_expansion: row " + std::to_string(i) +
                            " of A S is zero (missing self-loop?)");
    }
    out.s.row(i) /= total;
  }
  out.provenance = s.provenance;
  return out;
}

EquivalenceReport verify_soft_cluster_equivalence(const Graph& g, const AssignmentMatrix& s) {
  if (s.num_nodes() != g.num_nodes()) {
    throw ValidationError("verify_soft_cluster_equivalence: assignment rows do not match graph");
  }
  const Graph looped = g.with_self_loops();
  const AssignmentMatrix kept = drop_empty_clusters(s);
  const std::size_t k = kept.num_clusters();

  EquivalenceReport report;
  report.clusters = k;

  const Eigen::MatrixXd pooled = pool_adjacency(looped.adjacency_sparse(), kept.s);
  for (Eigen::Index i = 0; i < pooled.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < pooled.cols(); ++j) {
      if (pooled(i, j) != 0.0) {
        report.pooled_support.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }
    }
  }

  // Clusters are identified by simplex-cover index, i.e. by column of S.
  const ExpandedGraph eg = expand_graph(looped);
  const AssignmentMatrix hop =
      one_hop_expansion(eg.graph.adjacency_sparse(), expand_assignment(kept, eg));
  const RefinedCover rc = refine(eg.graph, pull_back(eg.graph, hop.s, simplex_cover(k)),
                                 Clustering::none);
  const SummaryGraph sg = nerve(rc);
  for (const SummaryEdge& e : sg.edges) {
    std::size_t a = rc.clusters[e.u].cover_set;
    std::size_t b = rc.clusters[e.v].cover_set;
    if (a > b) std::swap(a, b);
    report.nerve_edges.emplace_back(a, b);
  }
  std::sort(report.nerve_edges.begin(), report.nerve_edges.end());

  report.holds = report.nerve_edges == report.pooled_support;
  return report;
}

BipartitionReport verify_spectral_bipartition(const Graph& g) {
  BipartitionReport report;
  const FiedlerResult fiedler = fiedler_vector(g);
  const Eigen::VectorXd& l2 = fiedler.vector;

  const double min_abs = l2.cwiseAbs().minCoeff();
  if (!(min_abs > 1e-9)) {
    report.skipped = true;
    report.reason = "Fiedler vector has an entry within 1e-9 of zero";
    return report;
  }

  const Eigen::MatrixXd lap = laplacian(g);
  const Eigen::VectorXd lx = lap * l2;
  const double rayleigh = l2.dot(lx) / l2.squaredNorm();
  report.residual = (lx - rayleigh * l2).norm();

  constexpr double kInf = std::numeric_limits<double>::infinity();
  report.epsilon = 0.5 * min_abs;
  const Cover cover = custom_interval_cover({
      {-kInf, report.epsilon, true, true},
      {-report.epsilon, kInf, true, true},
  });
  const RefinedCover rc =
      refine(g, pull_back(g, LensVector{l2, false}, cover), Clustering::none);
  for (const Cluster& c : rc.clusters) report.mapper_partition.push_back(c.members);

  report.sign_partition.resize(2);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    report.sign_partition[l2[static_cast<Eigen::Index>(v)] < 0.0 ? 0 : 1].push_back(v);
  }

  report.holds = report.mapper_partition == report.sign_partition && report.residual <= 1e-6;
  return report;
}

PermutationReport verify_permutation_invariance(const Graph& g, std::size_t trials,
                                                std::uint64_t seed, const MprOptions& opts) {
  PermutationReport report;
  report.trials = trials;
  Rng rng(seed);
  const PooledGraph base = mpr_pool(g, opts);

  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<NodeId> perm(g.num_nodes());
    std::iota(perm.begin(), perm.end(), NodeId{0});
    if (t > 0) perm = random_permutation(g.num_nodes(), rng);

    const PooledGraph other = mpr_pool(apply_permutation(g, perm), opts);
    double deviation = std::numeric_limits<double>::infinity();
    if (other.adjacency.rows() == base.adjacency.rows() &&
        other.features.rows() == base.features.rows() &&
        other.assignment.provenance == base.assignment.provenance) {
      deviation = std::max((other.adjacency - base.adjacency).cwiseAbs().maxCoeff(),
                           (other.features - base.features).cwiseAbs().maxCoeff());
    }
    report.max_deviation = std::max(report.max_deviation, deviation);
    if (!(deviation <= 1e-9)) {
      report.holds = false;
      report.violations.push_back(std::move(perm));
    }
  }
  return report;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

BatchReport batch_soft_cluster_equivalence(std::size_t instances, std::size_t max_n,
                                           std::size_t max_k, std::uint64_t seed) {
  if (max_n == 0 || max_k == 0) throw ValidationError("batch: max_n and max_k must be positive");
  BatchReport report{"soft-cluster-equivalence", instances, 0, 0, 0.0, {}};
  const auto start = Clock::now();
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(1, max_n);
  std::uniform_int_distribution<std::size_t> pick_k(1, max_k);
  std::uniform_real_distribution<double> pick_p(0.1, 0.6);

  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = pick_n(rng);
    const Graph g = erdos_renyi(n, pick_p(rng), rng).with_self_loops();
    const std::size_t k = pick_k(rng);
    const AssignmentMatrix s{random_soft_assignment(n, k, rng), {}};
    const EquivalenceReport r = verify_soft_cluster_equivalence(g, s);
    if (r.holds) {
      ++report.passed;
    } else {
      report.failures.push_back("instance " + std::to_string(i) + ": N=" + std::to_string(n) +
                                " K=" + std::to_string(k) + " nerve edges " +
                                std::to_string(r.nerve_edges.size()) + " vs pooled support " +
                                std::to_string(r.pooled_support.size()));
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

BatchReport batch_spectral_bipartition(std::size_t instances, std::size_t max_n,
                                       std::uint64_t seed) {
  if (max_n < 2) throw ValidationError("batch: max_n must be at least 2");
  BatchReport report{"spectral-bipartition", instances, 0, 0, 0.0, {}};
  const auto start = Clock::now();
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(2, max_n);
  std::uniform_real_distribution<double> pick_p(0.02, 0.4);

  std::size_t accepted = 0;
  const std::size_t max_attempts = 50 * instances + 50;
  for (std::size_t attempt = 0; accepted < instances && attempt < max_attempts; ++attempt) {
    const Graph g = random_connected_graph(pick_n(rng), pick_p(rng), rng);
    const BipartitionReport r = verify_spectral_bipartition(g);
    if (r.skipped) {
      ++report.skipped;
      continue;
    }
    ++accepted;
    if (r.holds) {
      ++report.passed;
    } else {
      report.failures.push_back("instance " + std::to_string(accepted - 1) + ": N=" +
                                std::to_string(g.num_nodes()) + " residual " +
                                std::to_string(r.residual));
    }
  }
  if (accepted < instances) {
    report.failures.push_back("only " + std::to_string(accepted) +
                              " graphs with nonvanishing Fiedler entries were found");
  }
  report.seconds = seconds_since(start);
  return report;
}

BatchReport batch_permutation_invariance(std::size_t instances, std::size_t max_n,
                                         std::size_t perms, std::uint64_t seed) {
  if (max_n == 0) throw ValidationError("batch: max_n must be positive");
  BatchReport report{"permutation-invariance", instances * perms, 0, 0, 0.0, {}};
  const auto start = Clock::now();
  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(1, max_n);
  std::uniform_int_distribution<std::size_t> pick_cover_n(1, 8);
  std::uniform_real_distribution<double> pick_p(0.05, 0.5);
  const double overlaps[] = {0.0, 0.1, 0.2, 0.25, 0.4};
  std::uniform_int_distribution<std::size_t> pick_overlap(0, std::size(overlaps) - 1);

  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = pick_n(rng);
    const Graph g = erdos_renyi(n, pick_p(rng), rng).with_features(random_features(n, 3, rng));
    MprOptions opts;
    opts.n = pick_cover_n(rng);
    opts.overlap = overlaps[pick_overlap(rng)];
    // Trial 0 of the report is the identity; ask for perms + 1 and skip it.
    const PermutationReport r = verify_permutation_invariance(g, perms + 1, rng(), opts);
    const std::size_t bad = r.violations.size();
    report.passed += perms - std::min(bad, perms);
    if (bad > 0) {
      report.failures.push_back("graph " + std::to_string(i) + ": N=" + std::to_string(n) + ", " +
                                std::to_string(bad) + " permutation(s) differ by " +
                                std::to_string(r.max_deviation));
    }
  }
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace mapper
