#include "mapper/random_graphs.hpp"

#include <algorithm>
#include <numeric>

namespace mapper {

Graph erdos_renyi(std::size_t n, double p, Rng& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph random_connected_graph(std::size_t n, double p, Rng& rng) {
  std::vector<Edge> edges;
  const std::vector<NodeId> order = random_permutation(n, rng);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    edges.push_back({order[i], order[pick(rng)]});
  }
  std::bernoulli_distribution coin(p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges);
}

Graph stochastic_block_model(const std::vector<std::size_t>& sizes, double p_in, double p_out,
                             Rng& rng) {
  std::vector<int> block;
  for (std::size_t b = 0; b < sizes.size(); ++b) block.insert(block.end(), sizes[b], static_cast<int>(b));
  const std::size_t n = block.size();
  std::bernoulli_distribution in(p_in);
  std::bernoulli_distribution out(p_out);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (block[u] == block[v] ? in(rng) : out(rng)) edges.push_back({u, v});
    }
  }
  return Graph::from_edges(n, edges).with_labels(std::move(block));
}

std::vector<NodeId> random_permutation(std::size_t n, Rng& rng) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

Eigen::MatrixXd random_features(std::size_t n, std::size_t f, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(f));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = normal(rng);
  }
  return x;
}

Eigen::MatrixXd random_soft_assignment(std::size_t n, std::size_t k, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_int_distribution<std::size_t> column(0, k - 1);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  for (Eigen::Index i = 0; i < s.rows(); ++i) {
    const double regime = unit(rng);
    if (regime < 0.3) {
      s(i, static_cast<Eigen::Index>(column(rng))) = 1.0;
      continue;
    }
    // Normalised exponentials are uniform on the simplex (or on a face).
    std::vector<bool> support(k, true);
    if (regime >= 0.65) {
      std::bernoulli_distribution keep(0.5);
      std::size_t kept = 0;
      for (std::size_t j = 0; j < k; ++j) kept += (support[j] = keep(rng)) ? 1 : 0;
      if (kept == 0) support[column(rng)] = true;
    }
    double total = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!support[j]) continue;
      const double e = expo(rng);
      s(i, static_cast<Eigen::Index>(j)) = e;
      total += e;
    }
    s.row(i) /= total;
  }
  return s;
}

}  // namespace mapper
