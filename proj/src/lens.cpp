#include "mapper/lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "mapper/errors.hpp"

namespace mapper {

namespace {

constexpr std::size_t kDenseEigenLimit = 2000;

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0) v = -v;
      return;
    }
  }
}

// Power iteration on c*I - L restricted to the complement of the all-ones
// vector. c bounds the spectrum of L (Gershgorin), so the dominant vector of
// the shifted operator is the Fiedler vector.
FiedlerResult fiedler_power(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  double max_wdeg = 0.0;
  Eigen::VectorXd wdeg(n);
  for (Eigen::Index v = 0; v < n; ++v) {
    double d = 0.0;
    for (double w : g.neighbor_weights(static_cast<NodeId>(v))) d += w;
    wdeg[v] = d;
    max_wdeg = std::max(max_wdeg, d);
  }
  const double shift = 2.0 * max_wdeg;
  auto apply_laplacian = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y(n);
    for (Eigen::Index v = 0; v < n; ++v) {
      const auto nb = g.neighbors(static_cast<NodeId>(v));
      const auto wt = g.neighbor_weights(static_cast<NodeId>(v));
      double acc = wdeg[v] * x[v];
      for (std::size_t k = 0; k < nb.size(); ++k) acc -= wt[k] * x[static_cast<Eigen::Index>(nb[k])];
      y[v] = acc;
    }
    return y;
  };

  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = std::sin(1.0 + static_cast<double>(i));
  x.array() -= x.mean();
  x.normalize();
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < 200000; ++it) {
    Eigen::VectorXd y = shift * x - apply_laplacian(x);
    y.array() -= y.mean();
    y.normalize();
    const Eigen::VectorXd lx = apply_laplacian(y);
    const double lambda = y.dot(lx);
    residual = (lx - lambda * y).norm();
    x = std::move(y);
    if (residual < 1e-9 * std::max(1.0, shift)) {
      fix_sign(x);
      return {x, lambda};
    }
  }
  throw ConvergenceError("Fiedler power iteration did not converge", residual);
}

}  // namespace

Eigen::MatrixXd minmax_normalize(const Eigen::MatrixXd& values) {
  Eigen::MatrixXd out(values.rows(), values.cols());
  for (Eigen::Index c = 0; c < values.cols(); ++c) {
    if (values.rows() == 0) break;
    const double lo = values.col(c).minCoeff();
    const double hi = values.col(c).maxCoeff();
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (hi - lo <= 1e-12 * scale) {
      out.col(c).setConstant(0.5);
      continue;
    }
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
      // Pin the extremes so that every column attains exactly 0 and 1.
      const double x = values(r, c);
      out(r, c) = x == lo ? 0.0 : x == hi ? 1.0 : (x - lo) / (hi - lo);
    }
  }
  return out;
}

Eigen::VectorXd pagerank_scores(const Graph& g, const PageRankOptions& opts) {
  const std::size_t n = g.num_nodes();
  if (n == 0) throw ValidationError("pagerank: graph is empty");
  if (!(opts.alpha >= 0.0 && opts.alpha <= 1.0)) {
    throw ValidationError("pagerank: alpha must lie in [0, 1]");
  }
  if (!(opts.tol > 0.0)) throw ValidationError("pagerank: tol must be positive");

  std::vector<double> out_weight(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    for (double w : g.neighbor_weights(v)) out_weight[v] += w;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), inv_n);
  Eigen::VectorXd next(static_cast<Eigen::Index>(n));
  double residual = std::numeric_limits<double>::infinity();

  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    double dangling = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (out_weight[v] == 0.0) dangling += x[static_cast<Eigen::Index>(v)];
    }
    const double base = (1.0 - opts.alpha) * inv_n + opts.alpha * dangling * inv_n;
    for (NodeId v = 0; v < n; ++v) {
      const auto nb = g.neighbors(v);
      const auto wt = g.neighbor_weights(v);
      double acc = 0.0;
      for (std::size_t k = 0; k < nb.size(); ++k) {
        acc += x[static_cast<Eigen::Index>(nb[k])] * wt[k] / out_weight[nb[k]];
      }
      next[static_cast<Eigen::Index>(v)] = base + opts.alpha * acc;
    }
    residual = (next - x).lpNorm<1>();
    x.swap(next);
    if (residual < opts.tol) {
      x /= x.sum();
      return x;
    }
  }
  throw ConvergenceError("pagerank did not converge in " + std::to_string(opts.max_iter) +
                             " iterations",
                         residual);
}

LensVector pagerank_lens(const Graph& g, const PageRankOptions& opts) {
  const Eigen::VectorXd scores = pagerank_scores(g, opts);
  return {minmax_normalize(scores), true};
}

FiedlerResult fiedler_vector(const Graph& g) {
  if (g.num_nodes() < 2) throw DomainError("Fiedler vector needs at least two nodes");
  if (!is_connected(g)) throw DomainError("Fiedler vector requires a connected graph");
  if (g.num_nodes() > kDenseEigenLimit) return fiedler_power(g);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian(g));
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver failed on the Laplacian",
                           std::numeric_limits<double>::quiet_NaN());
  }
  // Eigenvalues come back ascending; column 0 spans the constants.
  Eigen::VectorXd v = solver.eigenvectors().col(1);
  // The solver's vector is orthogonal to its own null vector, which only
  // approximates 1/sqrt(N); re-project to be exact.
  v.array() -= v.mean();
  v.normalize();
  fix_sign(v);
  return {v, solver.eigenvalues()[1]};
}

LensVector fiedler_lens(const Graph& g) {
  return {fiedler_vector(g).vector, false};
}

Eigen::VectorXd density_scores(const Graph& g, double delta) {
  if (!(delta > 0.0)) throw ValidationError("density lens: delta must be positive");
  if (!is_connected(g)) throw DomainError("density lens requires a connected graph");
  const std::size_t n = g.num_nodes();
  Eigen::VectorXd f(static_cast<Eigen::Index>(n));
  for (NodeId v = 0; v < n; ++v) {
    // Accumulated per hop count.
    std::vector<std::size_t> count;
    for (std::size_t d : bfs_distances(g, v)) {
      if (d >= count.size()) count.resize(d + 1, 0);
      ++count[d];
    }
    double acc = 0.0;
    for (std::size_t d = 0; d < count.size(); ++d) {
      acc += static_cast<double>(count[d]) * std::exp(-static_cast<double>(d) / delta);
    }
    f[static_cast<Eigen::Index>(v)] = acc;
  }
  return f;
}

LensVector density_lens(const Graph& g, double delta) {
  return {minmax_normalize(density_scores(g, delta)), true};
}

LensVector external_lens(const Graph& g, Eigen::MatrixXd values, bool normalize) {
  if (static_cast<std::size_t>(values.rows()) != g.num_nodes()) {
    throw ValidationError("lens has " + std::to_string(values.rows()) + " rows, graph has " +
                          std::to_string(g.num_nodes()) + " nodes");
  }
  if (values.cols() < 1 || values.cols() > 3) {
    throw ValidationError("lens dimension must be 1, 2 or 3 (got " +
                          std::to_string(values.cols()) + ")");
  }
  if (!values.allFinite()) throw ValidationError("lens contains non-finite values");
  if (normalize) return {minmax_normalize(values), true};
  return {std::move(values), false};
}

}  // namespace mapper
