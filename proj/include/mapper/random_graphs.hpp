#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mapper/graph.hpp"

namespace mapper {

using Rng = std::mt19937_64;

Graph erdos_renyi(std::size_t n, double p, Rng& rng);

/// Random spanning tree plus G(n, p) edges; always connected.
Graph random_connected_graph(std::size_t n, double p, Rng& rng);

/// Planted partition; node labels hold the block index.
Graph stochastic_block_model(const std::vector<std::size_t>& sizes, double p_in, double p_out,
                             Rng& rng);

std::vector<NodeId> random_permutation(std::size_t n, Rng& rng);

Eigen::MatrixXd random_features(std::size_t n, std::size_t f, Rng& rng);

/// Row-stochastic N x K matrix mixing three regimes: 30% one-hot rows, the
/// rest uniform on either the full simplex or a random face of it.
Eigen::MatrixXd random_soft_assignment(std::size_t n, std::size_t k, Rng& rng);

}  // namespace mapper
