// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mapper/cli.hpp"
#include "mapper/cover.hpp"
#include "mapper/lens.hpp"
#include "mapper/mapper.hpp"
#include "mapper/pooling.hpp"
#include "mapper/random_graphs.hpp"
#include "mapper/theory.hpp"
#include "oracles.hpp"

using namespace mapper;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string batch_detail(const BatchReport& b, double secs) {
  std::string s = std::to_string(b.passed) + "/" + std::to_string(b.instances) + " in " + fmt(secs) + " s";
  if (b.skipped > 0) s += ", " + std::to_string(b.skipped) + " redrawn";
  if (!b.failures.empty()) s += ", first failure: " + b.failures.front();
  return s;
}

void soft_cluster_equivalence() {
  const auto t0 = Clock::now();
  const BatchReport b = batch_soft_cluster_equivalence(200, 8, 4, 0);
  const double secs = seconds_since(t0);
  report("soft-cluster equivalence (200 instances, N<=8, K<=4, < 30 s)",
         b.instances == 200 && b.passed == 200 && secs < 30.0, batch_detail(b, secs));
}

void spectral_bipartition() {
  const auto t0 = Clock::now();
  const BatchReport b = batch_spectral_bipartition(50, 60, 0);
  const double secs = seconds_since(t0);
  report("spectral bipartition (50 connected graphs, N<=60, < 60 s)",
         b.instances == 50 && b.passed == 50 && secs < 60.0, batch_detail(b, secs));
}

void permutation_invariance() {
  const auto t0 = Clock::now();
  const BatchReport b = batch_permutation_invariance(100, 30, 5, 0);
  const double secs = seconds_since(t0);
  report("permutation invariance (100 graphs x 5 permutations, 1e-9)",
         b.instances == 500 && b.passed == 500, batch_detail(b, secs));
}

void pagerank_numerics() {
  Rng rng(1);
  double worst_l1 = 0.0, worst_sum = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 200;
    std::uniform_real_distribution<double> pick_p(0.0, 0.1);
    const Graph g = erdos_renyi(n, pick_p(rng), rng);
    const Eigen::VectorXd pr = pagerank_scores(g);
    worst_l1 = std::max(worst_l1, (pr - oracle::pagerank_dense(g, 0.85)).lpNorm<1>());
    worst_sum = std::max(worst_sum, std::abs(pr.sum() - 1.0));
  }
  std::vector<Edge> path{{0, 1}, {1, 2}};
  const Eigen::VectorXd p3 = pagerank_scores(Graph::from_edges(3, path));
  const double closed = std::max({std::abs(p3[0] - 0.2568), std::abs(p3[1] - 0.4865), std::abs(p3[2] - 0.2568)});
  report("PageRank numerics (50 graphs N<=200: L1 <= 1e-6, sum 1 +- 1e-9, path +- 1e-3)",
         worst_l1 <= 1e-6 && worst_sum <= 1e-9 && closed <= 1e-3,
         "max L1 " + fmt(worst_l1) + ", max |sum-1| " + fmt(worst_sum) + ", path deviation " + fmt(closed));
}

void cover_algebra() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  bool ok = true;
  double worst_overlap = 0.0;
  std::size_t uncovered = 0, combos = 0;
  for (std::size_t n = 1; n <= 20; ++n) {
    for (double g : {0.0, 0.1, 0.2, 0.25, 0.4}) {
      ++combos;
      const Cover c = interval_cover(n, g, 0.0, 1.0);
      const auto& iv = c.axes()[0];
      ok = ok && c.size() == n && iv.size() == n;
      for (std::size_t i = 0; i + 1 < iv.size(); ++i) {
        const double frac = (iv[i].hi - iv[i + 1].lo) / iv[i].length();
        worst_overlap = std::max(worst_overlap, std::abs(frac - g));
      }
      std::vector<double> xs{0.0, 1.0};
      for (int s = 0; s < 10000; ++s) xs.push_back(unit(rng));
      for (double x : xs) {
        if (membership(c, std::span<const double>(&x, 1)).sets.empty()) ++uncovered;
      }
    }
  }
  ok = ok && worst_overlap <= 1e-9 && uncovered == 0;
  report("cover algebra (n in 1..20 x 5 overlaps: count, overlap +- 1e-9, 10^4 samples + endpoints)", ok,
         std::to_string(combos) + " covers, max overlap error " + fmt(worst_overlap) + ", " +
             std::to_string(uncovered) + " uncovered points");
}

void mass_conservation() {
  Rng rng(3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 60;
    std::uniform_real_distribution<double> pick_p(0.02, 0.4);
    const Graph g = erdos_renyi(n, pick_p(rng), rng).with_features(random_features(n, 2, rng));
    MprOptions opts;
    opts.n = 1 + rng() % 10;
    opts.overlap = std::array{0.0, 0.1, 0.2, 0.25, 0.4}[rng() % 5];
    const PooledGraph p = mpr_pool(g, opts);
    const double total = g.with_self_loops().adjacency_matrix().sum();
    worst = std::max(worst, std::abs(p.adjacency.sum() - total));
  }
  report("mass conservation (100 pooling instances, 1e-9)", worst <= 1e-9, "max |sum A_MG - sum A| " + fmt(worst));
}

void sdgm_monotonicity() {
  Rng rng(4);
  bool monotone = true, complete = true;
  std::size_t total_positive = 0;
  for (int i = 0; i < 20; ++i) {
    const Graph g = random_connected_graph(20 + rng() % 80, 0.05, rng);
    const LensVector lens = pagerank_lens(g);
    const RefinedCover rc =
        refine(g, pull_back(g, lens, interval_cover(10, 0.3, 0.0, 1.0)), Clustering::components);

    // Positive off-diagonal support of S^T A S, by explicit summation.
    const Eigen::MatrixXd a = g.with_self_loops().adjacency_matrix();
    std::vector<std::vector<double>> s(g.num_nodes(), std::vector<double>(rc.clusters.size(), 0.0));
    for (std::size_t k = 0; k < rc.clusters.size(); ++k) {
      for (NodeId v : rc.clusters[k].members) s[v][k] = 1.0;
    }
    for (auto& row : s) {
      double m = 0.0;
      for (double x : row) m += x;
      for (double& x : row) x = m > 0 ? x / m : 0.0;
    }
    std::set<std::pair<std::size_t, std::size_t>> positive;
    for (std::size_t p = 0; p < rc.clusters.size(); ++p) {
      for (std::size_t q = p + 1; q < rc.clusters.size(); ++q) {
        double w = 0.0;
        for (NodeId u = 0; u < g.num_nodes(); ++u) {
          for (NodeId v = 0; v < g.num_nodes(); ++v) {
            w += s[u][p] * a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) * s[v][q];
          }
        }
        if (w > 0) positive.emplace(p, q);
      }
    }
    total_positive += positive.size();

    std::set<std::pair<std::size_t, std::size_t>> kept;
    for (const auto& e : sdgm(g, rc, 0.0).edges) kept.emplace(e.u, e.v);
    complete = complete && kept == positive;

    std::size_t prev = kept.size();
    for (double eps : {0.01, 0.05, 0.10}) {
      const std::size_t count = sdgm(g, rc, eps).edges.size();
      monotone = monotone && count <= prev;
      prev = count;
    }
  }
  report("SDGM monotonicity (20 graphs, eps in {0.01, 0.05, 0.10}; eps=0 keeps all positive edges)",
         monotone && complete,
         std::string(monotone ? "non-increasing" : "NOT non-increasing") + ", eps=0 " +
             (complete ? "matches" : "differs from") + " the " + std::to_string(total_positive) +
             " positive-weight pairs");
}

void multi_resolution() {
  Rng graph_rng(5);
  const Graph g = stochastic_block_model({100, 100, 100}, 0.08, 0.004, graph_rng);
  const std::vector<int>& block = *g.labels();
  const std::array<std::size_t, 3> ns{5, 10, 20};
  const std::array<double, 2> gs{0.2, 0.4};
  bool ok = true;
  std::string detail;
  for (double gap : gs) {
    std::vector<double> medians;
    for (std::size_t n : ns) {
      std::vector<std::size_t> counts;
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng noise_rng(100 + seed);
        std::normal_distribution<double> noise(0.0, 0.15);
        Eigen::MatrixXd values(300, 1);
        for (Eigen::Index v = 0; v < 300; ++v) values(v, 0) = block[static_cast<std::size_t>(v)] / 2.0 + noise(noise_rng);
        const LensVector lens = external_lens(g, values, true);
        counts.push_back(run_mapper(g, lens, interval_cover(n, gap, 0.0, 1.0)).nodes.size());
      }
      std::ranges::sort(counts);
      medians.push_back(0.5 * static_cast<double>(counts[4] + counts[5]));
    }
    ok = ok && std::ranges::is_sorted(medians);
    detail += "g=" + fmt(gap) + ": " + fmt(medians[0]) + " <= " + fmt(medians[1]) + " <= " + fmt(medians[2]) + "; ";
  }
  detail.resize(detail.size() - 2);
  report("multi-resolution (300-node 3-community graph, (n,g) in {5,10,20}x{0.2,0.4}, median of 10 seeds)", ok,
         "median node counts " + detail);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void golden_files() {
  const fs::path data = MAPPER_DATA_DIR;
  const fs::path golden = MAPPER_GOLDEN_DIR;
  const fs::path out = fs::temp_directory_path() / "mapper_acceptance";
  fs::create_directories(out);
  std::ostringstream sink;

  const int mapper_code =
      run_cli({"mapper", "--lens", "pagerank", "--cover-n", "5", "--cover-overlap", "0.2",
               (data / "sample.edges").string(), "--labels", (data / "sample.labels").string(), "--seed", "0",
               "--out-prefix", (out / "sample_mapper").string()},
              sink, sink);
  const int pool_code = run_cli({"pool", (data / "sample.edges").string(), "--features",
                                 (data / "sample.features").string(), "--n", "5", "--overlap", "0.2", "--seed",
                                 "0", "--out-prefix", (out / "sample_pool").string()},
                                sink, sink);

  std::vector<std::string> mismatched;
  for (const char* name : {"sample_mapper.summary.json", "sample_mapper.dot", "sample_pool.adjacency.txt",
                           "sample_pool.features.txt", "sample_pool.assignment.smat"}) {
    const std::string expected = slurp(golden / name);
    if (expected.empty() || slurp(out / name) != expected) mismatched.emplace_back(name);
  }
  std::string detail = "exit codes " + std::to_string(mapper_code) + "/" + std::to_string(pool_code) + ", ";
  if (mismatched.empty()) {
    detail += "5/5 files byte-identical";
  } else {
    detail += "differs:";
    for (const auto& m : mismatched) detail += " " + m;
  }
  report("golden files (mapper and pool on the sample graph)",
         mapper_code == 0 && pool_code == 0 && mismatched.empty(), detail);
}

}  // namespace

int main() {
  soft_cluster_equivalence();
  spectral_bipartition();
  permutation_invariance();
  pagerank_numerics();
  cover_algebra();
  mass_conservation();
  sdgm_monotonicity();
  multi_resolution();
  golden_files();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
