#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mapper/cover.hpp"
#include "mapper/graph.hpp"
#include "mapper/lens.hpp"

namespace mapper {

struct PullBackSet {
  std::size_t cover_set = 0;
  std::vector<NodeId> nodes;  ///< ascending
};

/// Preimages of the cover sets, in cover-set order, empty ones dropped.
struct PullBackCover {
  std::vector<PullBackSet> sets;
};

struct Cluster {
  std::size_t cover_set = 0;
  std::size_t component = 0;  ///< index within its cover set
  std::vector<NodeId> members;
};

/// Ordered by (cover set, smallest member).
struct RefinedCover {
  std::vector<Cluster> clusters;
};

enum class Clustering { components, none };
enum class SummaryMode { dgm, sdgm };

enum class ColourKind { none, mean_lens, positive_fraction, majority_class };

struct Colour {
  ColourKind kind = ColourKind::none;
  std::vector<double> value;
};

struct SummaryNode {
  std::size_t id = 0;
  std::size_t cover_set = 0;
  std::vector<NodeId> members;
  std::size_t size = 0;
  Colour colour;
  /// Mean lens value of the members: where the node sits in lens space.
  std::vector<double> position;
};

struct SummaryEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

/// Mapper output. DGM edges carry the member-overlap count; SDGM edges carry
/// the max-normalised cross-cluster weight of S^T A S.
struct SummaryGraph {
  SummaryMode mode = SummaryMode::dgm;
  std::vector<SummaryNode> nodes;
  std::vector<SummaryEdge> edges;  ///< u < v, lexicographic
};

/// Rows of `points` are looked up in `cover`. Throws ValidationError naming
/// the nodes that fall outside every set.
PullBackCover pull_back(const Graph& g, const Eigen::MatrixXd& points, const Cover& cover);
PullBackCover pull_back(const Graph& g, const LensVector& lens, const Cover& cover);

RefinedCover refine(const Graph& g, const PullBackCover& pb, Clustering clustering);

/// 1-skeleton of the nerve, weight = |intersection|.
SummaryGraph nerve(const RefinedCover& rc);

/// Fills size, position and colour. With binary labels the colour is the
/// positive fraction, with other labels the majority class (ties to the
/// smallest id), and without labels the mean lens value.
SummaryGraph decorate(SummaryGraph sg, const LensVector& lens,
                      std::optional<std::span<const int>> labels = std::nullopt);

/// Structural summary: W = S^T A S over the clusters (A with self-loops),
/// diagonal dropped, off-diagonals divided by their maximum, edges with
/// 0 < w and w >= epsilon kept.
SummaryGraph sdgm(const Graph& g, const RefinedCover& rc, double epsilon);

struct MapperOptions {
  Clustering clustering = Clustering::components;
  SummaryMode mode = SummaryMode::dgm;
  double epsilon = 0.0;
};

/// Full pipeline; labels are taken from g when present.
SummaryGraph run_mapper(const Graph& g, const LensVector& lens, const Cover& cover,
                        const MapperOptions& opts = {});

std::string to_string(SummaryMode mode);
std::string to_string(ColourKind kind);
SummaryMode summary_mode_from_string(const std::string& s);
ColourKind colour_kind_from_string(const std::string& s);

}  // namespace mapper
