#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "mapper/graph.hpp"
#include "mapper/mapper.hpp"

namespace mapper {

/// Original node names, indexed by dense id (first-appearance order).
struct NodeIndex {
  std::vector<std::string> names;
  std::unordered_map<std::string, NodeId> ids;

  NodeId add(const std::string& name);
  /// Throws ParseError at `line` for unknown names.
  NodeId resolve(const std::string& name, std::size_t line) const;
  std::size_t size() const noexcept { return names.size(); }
};

struct LoadedGraph {
  Graph graph;
  NodeIndex index;
  std::size_t duplicate_edges = 0;
};

/// Edge list: `u v [weight]` per line, `#` starts a comment.
LoadedGraph parse_edge_list(std::istream& in);
LoadedGraph load_graph(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g, const NodeIndex& index);

/// `node class` lines; every node of the index must receive a label.
std::vector<int> parse_labels(std::istream& in, const NodeIndex& index);
std::vector<int> load_labels(const std::filesystem::path& path, const NodeIndex& index);

/// Lens file: header `d N`, then N lines `node v1 [v2 [v3]]`.
struct LensFile {
  std::size_t dim = 0;
  std::vector<std::pair<std::string, std::vector<double>>> rows;
};

LensFile parse_lens_file(std::istream& in);
LensFile load_lens_file(const std::filesystem::path& path);
/// Rows reordered to dense ids; every node must appear exactly once.
Eigen::MatrixXd align_lens(const LensFile& lens, const NodeIndex& index);
void write_lens(std::ostream& out, const Eigen::MatrixXd& values, const NodeIndex& index);

/// `path` as given if it exists, otherwise the first hit in the
/// colon-separated MAPPER_LENS_PATH directories.
std::filesystem::path resolve_lens_path(const std::filesystem::path& path);

/// Feature rows `node f1 ... fF`; every node must appear exactly once.
Eigen::MatrixXd parse_features(std::istream& in, const NodeIndex& index);
Eigen::MatrixXd load_features(const std::filesystem::path& path, const NodeIndex& index);

/// Dense text: header `rows cols`, then one whitespace-separated row per line.
void write_dense_matrix(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_dense_matrix(std::istream& in);

/// Sparse triplets: header `rows cols nnz`, then `i j value` per nonzero,
/// row-major.
void write_triplets(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_triplets(std::istream& in);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

nlohmann::ordered_json summary_to_json(const SummaryGraph& sg);
SummaryGraph summary_from_json(const nlohmann::ordered_json& j);
std::string dump_summary(const SummaryGraph& sg);

enum class Colormap { automatic, viridis, bivariate, classes };

Colormap colormap_from_string(const std::string& s);

struct Rgb {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

Rgb viridis(double t);
/// Bilinear blend of four corner colours over [0,1]^2.
Rgb bivariate(double x, double y);
Rgb class_colour(long cls);
std::string to_hex(const Rgb& c);

/// Graphviz document: node area proportional to cluster size (width =
/// 1.5 * sqrt(size / max size)), penwidth mapped affinely from edge weight
/// onto [1, 8], fill colour from the node's colour payload.
std::string export_dot(const SummaryGraph& sg, Colormap cmap = Colormap::automatic);

}  // namespace mapper
