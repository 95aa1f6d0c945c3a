#include "mapper/mapper.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mapper/errors.hpp"
#include "mapper/pooling.hpp"

namespace mapper {

PullBackCover pull_back(const Graph& g, const Eigen::MatrixXd& points, const Cover& cover) {
  if (static_cast<std::size_t>(points.rows()) != g.num_nodes()) {
    throw ValidationError("pull_back: " + std::to_string(points.rows()) + " lens rows for " +
                          std::to_string(g.num_nodes()) + " nodes");
  }
  if (static_cast<std::size_t>(points.cols()) != cover.dim()) {
    throw ValidationError("pull_back: lens dimension " + std::to_string(points.cols()) +
                          " does not match cover dimension " + std::to_string(cover.dim()));
  }

  std::vector<std::vector<NodeId>> preimage(cover.size());
  std::vector<NodeId> offending;
  std::vector<double> x(static_cast<std::size_t>(points.cols()));
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (std::size_t c = 0; c < x.size(); ++c) {
      x[c] = points(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(c));
    }
    const Membership m = membership(cover, x);
    if (m.out_of_range || m.sets.empty()) {
      offending.push_back(v);
      continue;
    }
    for (std::size_t s : m.sets) preimage[s].push_back(v);
  }

  if (!offending.empty()) {
    std::string msg = "pull_back: " + std::to_string(offending.size()) +
                      " node(s) fall outside the cover (normalize the lens or widen the range):";
    for (std::size_t i = 0; i < offending.size() && i < 10; ++i) {
      msg += " " + std::to_string(offending[i]);
    }
    if (offending.size() > 10) msg += " ...";
    throw ValidationError(msg);
  }

  PullBackCover pb;
  for (std::size_t s = 0; s < preimage.size(); ++s) {
    if (!preimage[s].empty()) pb.sets.push_back({s, std::move(preimage[s])});
  }
  return pb;
}

PullBackCover pull_back(const Graph& g, const LensVector& lens, const Cover& cover) {
  return pull_back(g, lens.values, cover);
}

RefinedCover refine(const Graph& g, const PullBackCover& pb, Clustering clustering) {
  RefinedCover rc;
  for (const PullBackSet& set : pb.sets) {
    if (clustering == Clustering::none) {
      rc.clusters.push_back({set.cover_set, 0, set.nodes});
      continue;
    }
    const InducedSubgraph sub = induced_subgraph(g, set.nodes);
    const NodePartition parts = connected_components(sub.graph);
    std::size_t component = 0;
    for (const auto& block : parts.blocks) {
      Cluster c{set.cover_set, component++, {}};
      c.members.reserve(block.size());
      for (NodeId local : block) c.members.push_back(sub.to_parent[local]);
      rc.clusters.push_back(std::move(c));
    }
  }
  return rc;
}

namespace {

SummaryGraph nodes_only(const RefinedCover& rc, SummaryMode mode) {
  SummaryGraph sg;
  sg.mode = mode;
  sg.nodes.reserve(rc.clusters.size());
  for (std::size_t j = 0; j < rc.clusters.size(); ++j) {
    SummaryNode node;
    node.id = j;
    node.cover_set = rc.clusters[j].cover_set;
    node.members = rc.clusters[j].members;
    node.size = node.members.size();
    sg.nodes.push_back(std::move(node));
  }
  return sg;
}

}  // namespace

SummaryGraph nerve(const RefinedCover& rc) {
  SummaryGraph sg = nodes_only(rc, SummaryMode::dgm);

  // Node -> clusters holding it; every pair among those gains one shared member.
  std::map<NodeId, std::vector<std::size_t>> holders;
  for (std::size_t j = 0; j < rc.clusters.size(); ++j) {
    for (NodeId v : rc.clusters[j].members) holders[v].push_back(j);
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> shared;
  for (const auto& [v, js] : holders) {
    for (std::size_t a = 0; a < js.size(); ++a) {
      for (std::size_t b = a + 1; b < js.size(); ++b) ++shared[{js[a], js[b]}];
    }
  }
  for (const auto& [pair, count] : shared) {
    sg.edges.push_back({pair.first, pair.second, static_cast<double>(count)});
  }
  return sg;
}

SummaryGraph decorate(SummaryGraph sg, const LensVector& lens,
                      std::optional<std::span<const int>> labels) {
  bool binary = true;
  if (labels) {
    if (labels->size() != lens.size()) {
      throw ValidationError("decorate: label count does not match node count");
    }
    for (int y : *labels) {
      if (y < 0) throw ValidationError("decorate: class ids must be non-negative");
      if (y > 1) binary = false;
    }
  }

  for (SummaryNode& node : sg.nodes) {
    node.size = node.members.size();
    node.position.assign(lens.dim(), 0.0);
    for (NodeId v : node.members) {
      for (std::size_t c = 0; c < lens.dim(); ++c) {
        node.position[c] += lens.values(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(c));
      }
    }
    if (node.size > 0) {
      for (double& p : node.position) p /= static_cast<double>(node.size);
    }

    if (!labels) {
      node.colour = {ColourKind::mean_lens, node.position};
    } else if (binary) {
      std::size_t positive = 0;
      for (NodeId v : node.members) positive += (*labels)[v] == 1 ? 1 : 0;
      const double frac =
          node.size > 0 ? static_cast<double>(positive) / static_cast<double>(node.size) : 0.0;
      node.colour = {ColourKind::positive_fraction, {frac}};
    } else {
      std::map<int, std::size_t> counts;
      for (NodeId v : node.members) ++counts[(*labels)[v]];
      int best = 0;
      std::size_t best_count = 0;
      // Ascending class order: the first maximum wins ties.
      for (const auto& [cls, count] : counts) {
        if (count > best_count) {
          best = cls;
          best_count = count;
        }
      }
      node.colour = {ColourKind::majority_class, {static_cast<double>(best)}};
    }
  }
  return sg;
}

SummaryGraph sdgm(const Graph& g, const RefinedCover& rc, double epsilon) {
  if (rc.clusters.empty()) throw ValidationError("sdgm: refined cover is empty");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw ValidationError("sdgm: epsilon must lie in [0, 1]");
  }
  SummaryGraph sg = nodes_only(rc, SummaryMode::sdgm);

  std::vector<std::vector<NodeId>> sets;
  std::vector<std::size_t> provenance;
  for (const Cluster& c : rc.clusters) {
    sets.push_back(c.members);
    provenance.push_back(c.cover_set);
  }
  const AssignmentMatrix s = assignment_from_sets(g.num_nodes(), sets, std::move(provenance));
  Eigen::MatrixXd w = pool_adjacency(g.with_self_loops().adjacency_sparse(), s.s);
  w.diagonal().setZero();
  const double max_w = w.maxCoeff();
  if (!(max_w > 0.0)) return sg;
  w /= max_w;

  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < w.cols(); ++j) {
      const double weight = w(i, j);
      if (weight > 0.0 && weight >= epsilon) {
        sg.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), weight});
      }
    }
  }
  return sg;
}

SummaryGraph run_mapper(const Graph& g, const LensVector& lens, const Cover& cover,
                        const MapperOptions& opts) {
  const RefinedCover rc = refine(g, pull_back(g, lens, cover), opts.clustering);
  SummaryGraph sg = opts.mode == SummaryMode::dgm ? nerve(rc) : sdgm(g, rc, opts.epsilon);
  if (g.labels()) return decorate(std::move(sg), lens, std::span<const int>(*g.labels()));
  return decorate(std::move(sg), lens);
}

std::string to_string(SummaryMode mode) { return mode == SummaryMode::dgm ? "dgm" : "sdgm"; }

std::string to_string(ColourKind kind) {
  switch (kind) {
    case ColourKind::none: return "none";
    case ColourKind::mean_lens: return "mean_lens";
    case ColourKind::positive_fraction: return "positive_fraction";
    case ColourKind::majority_class: return "majority_class";
  }
  return "none";
}

SummaryMode summary_mode_from_string(const std::string& s) {
  if (s == "dgm") return SummaryMode::dgm;
  if (s == "sdgm") return SummaryMode::sdgm;
  throw ValidationError("unknown summary mode '" + s + "'");
}

ColourKind colour_kind_from_string(const std::string& s) {
  for (ColourKind k : {ColourKind::none, ColourKind::mean_lens, ColourKind::positive_fraction,
                       ColourKind::majority_class}) {
    if (to_string(k) == s) return k;
  }
  throw ValidationError("unknown colour kind '" + s + "'");
}

}  // namespace mapper
