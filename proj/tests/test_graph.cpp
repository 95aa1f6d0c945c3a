#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "mapper/errors.hpp"
#include "mapper/graph.hpp"
#include "mapper/random_graphs.hpp"
#include "oracles.hpp"

using namespace mapper;
using testing::make_graph;

TEST_SUITE_BEGIN("graph-core");

TEST_CASE("construction canonicalises edges") {
  std::size_t dups = 0;
  const std::vector<Edge> edges{{1, 0}, {0, 1}, {2, 2}, {1, 2}};
  const Graph g = Graph::from_edges(3, edges, &dups);
  CHECK(dups == 1);
  CHECK(g.num_edges() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(g.has_self_loop(2));
  CHECK_FALSE(g.has_self_loop(0));
  CHECK(g.degree(2) == 1);  // self-loop is not a neighbour
  CHECK(std::ranges::equal(g.neighbors(1), std::vector<NodeId>{0, 2}));

  CHECK_THROWS_AS(Graph::from_edges(2, std::vector<Edge>{{0, 2}}), ValidationError);
  CHECK_THROWS_AS(g.with_features(Eigen::MatrixXd::Zero(2, 1)), ValidationError);
}

TEST_CASE("connected_components") {
  SUBCASE("path is one block") {
    const auto parts = connected_components(testing::path(4));
    REQUIRE(parts.blocks.size() == 1);
    CHECK(parts.blocks[0] == std::vector<NodeId>{0, 1, 2, 3});
  }
  SUBCASE("isolated node") {
    const auto parts = connected_components(make_graph(3, {{0, 1}}));
    CHECK(parts.blocks == std::vector<std::vector<NodeId>>{{0, 1}, {2}});
  }
  SUBCASE("two triangles") {
    const Graph g = testing::two_triangles(false);
    CHECK(connected_components(g).blocks == oracle::components(g));
    CHECK(connected_components(g).blocks.size() == 2);
  }
  SUBCASE("self-loops never connect") {
    const std::vector<Edge> edges{{0, 0}, {1, 1}};
    CHECK(connected_components(Graph::from_edges(2, edges)).blocks.size() == 2);
  }
  SUBCASE("empty graph") { CHECK(connected_components(Graph{}).blocks.empty()); }
  SUBCASE("random graphs agree with union-find") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const Graph g = erdos_renyi(1 + rng() % 40, 0.06, rng);
      const auto blocks = connected_components(g).blocks;
      CHECK(blocks == oracle::components(g));
      std::size_t total = 0;
      for (const auto& b : blocks) total += b.size();
      CHECK(total == g.num_nodes());
    }
  }
}

TEST_CASE("induced_subgraph") {
  SUBCASE("path restricted to {0,1,3}") {
    const auto sub = induced_subgraph(testing::path(4), std::vector<NodeId>{3, 0, 1});
    CHECK(sub.to_parent == std::vector<NodeId>{0, 1, 3});
    CHECK(sub.graph.num_edges() == 1);
    CHECK(sub.graph.has_edge(0, 1));
    CHECK(sub.graph.degree(2) == 0);
  }
  SUBCASE("whole vertex set gives a copy") {
    const Graph g = testing::two_triangles(true);
    const auto sub = induced_subgraph(g, std::vector<NodeId>{0, 1, 2, 3, 4, 5});
    CHECK(sub.graph == g);
  }
  SUBCASE("triangle restricted to {0,2}") {
    const auto sub = induced_subgraph(testing::complete(3), std::vector<NodeId>{0, 2});
    CHECK(sub.graph.num_edges() == 1);
  }
  SUBCASE("unknown id") {
    CHECK_THROWS_AS(induced_subgraph(testing::path(3), std::vector<NodeId>{0, 7}), ValidationError);
  }
  SUBCASE("edge count matches a direct filter") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const Graph g = erdos_renyi(20, 0.3, rng);
      std::vector<NodeId> keep;
      for (NodeId v = 0; v < 20; ++v) {
        if (rng() % 2) keep.push_back(v);
      }
      std::size_t expected = 0;
      for (const auto& e : g.edges()) {
        const bool in_u = std::ranges::find(keep, e.u) != keep.end();
        const bool in_v = std::ranges::find(keep, e.v) != keep.end();
        expected += in_u && in_v ? 1 : 0;
      }
      CHECK(induced_subgraph(g, keep).graph.num_edges() == expected);
    }
  }
}

TEST_CASE("apply_permutation") {
  SUBCASE("identity") {
    const Graph g = testing::two_triangles(true);
    CHECK(apply_permutation(g, std::vector<NodeId>{0, 1, 2, 3, 4, 5}) == g);
  }
  SUBCASE("path reversal keeps the edge set") {
    const Graph g = testing::path(3);
    CHECK(apply_permutation(g, std::vector<NodeId>{2, 1, 0}) == g);
  }
  SUBCASE("features follow their node") {
    Eigen::MatrixXd x(3, 1);
    x << 10, 20, 30;
    const Graph g = testing::path(3).with_features(x);
    const Graph p = apply_permutation(g, std::vector<NodeId>{1, 2, 0});
    CHECK((*p.features())(1, 0) == 10);
    CHECK((*p.features())(2, 0) == 20);
    CHECK((*p.features())(0, 0) == 30);
  }
  SUBCASE("non-bijection rejected") {
    CHECK_THROWS_AS(apply_permutation(testing::path(3), std::vector<NodeId>{0, 0, 1}), ValidationError);
    CHECK_THROWS_AS(apply_permutation(testing::path(3), std::vector<NodeId>{0, 1}), ValidationError);
  }
  SUBCASE("round trip and invariants") {
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 2 + rng() % 40;
      const Graph g = erdos_renyi(n, 0.15, rng).with_features(random_features(n, 2, rng));
      const auto perm = random_permutation(n, rng);
      const Graph p = apply_permutation(g, perm);
      CHECK(apply_permutation(p, invert_permutation(perm)) == g);

      std::vector<std::size_t> dg, dp;
      for (NodeId v = 0; v < n; ++v) {
        dg.push_back(g.degree(v));
        dp.push_back(p.degree(v));
      }
      std::ranges::sort(dg);
      std::ranges::sort(dp);
      CHECK(dg == dp);
      CHECK(connected_components(g).blocks.size() == connected_components(p).blocks.size());
      const Eigen::VectorXd sg = oracle::laplacian_spectrum(g);
      const Eigen::VectorXd sp = oracle::laplacian_spectrum(p);
      CHECK((sg - sp).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
}

TEST_CASE("laplacian") {
  SUBCASE("single edge") {
    Eigen::Matrix2d expected;
    expected << 1, -1, -1, 1;
    CHECK(laplacian(testing::path(2)).isApprox(expected));
  }
  SUBCASE("triangle") {
    const Eigen::MatrixXd lap = laplacian(testing::complete(3));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(lap(i, j) == (i == j ? 2.0 : -1.0));
    }
  }
  SUBCASE("self-loops are ignored") {
    CHECK(laplacian(testing::path(3).with_self_loops()) == laplacian(testing::path(3)));
  }
  SUBCASE("rows sum to zero, smallest eigenvalue 0 on ones") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 2 + rng() % 30;
      const Graph g = erdos_renyi(n, 0.2, rng);
      const Eigen::MatrixXd lap = laplacian(g);
      CHECK((lap * Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n))).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(lap.isApprox(lap.transpose()));
      CHECK(std::abs(oracle::laplacian_spectrum(g)[0]) <= 1e-9);
    }
  }
}

TEST_SUITE_END();
