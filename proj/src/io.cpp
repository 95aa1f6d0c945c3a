#include "mapper/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mapper/errors.hpp"

namespace mapper {

namespace fs = std::filesystem;

NodeId NodeIndex::add(const std::string& name) {
  auto [it, inserted] = ids.emplace(name, names.size());
  if (inserted) names.push_back(name);
  return it->second;
}

NodeId NodeIndex::resolve(const std::string& name, std::size_t line) const {
  const auto it = ids.find(name);
  if (it == ids.end()) throw ParseError("unknown node '" + name + "'", line);
  return it->second;
}

namespace {

std::vector<std::string> tokens(const std::string& line) {
  const std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(std::move(tok));
  return out;
}

double parse_double(const std::string& tok, std::size_t line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("expected a finite number, got '" + tok + "'", line);
  }
  return value;
}

long parse_long(const std::string& tok, std::size_t line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return value;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  const long v = parse_long(tok, line);
  if (v < 0) throw ParseError("expected a non-negative count, got '" + tok + "'", line);
  return static_cast<std::size_t>(v);
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "' for reading");
  return in;
}

// Reads `node v1 ... vk` rows into a matrix aligned with the index.
Eigen::MatrixXd parse_node_rows(std::istream& in, const NodeIndex& index, const char* what) {
  std::vector<std::vector<double>> rows(index.size());
  std::vector<bool> seen(index.size(), false);
  std::size_t width = 0;
  bool have_width = false;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() < 2) throw ParseError(std::string(what) + ": expected a node and values", lineno);
    if (!have_width) {
      width = tok.size() - 1;
      have_width = true;
    } else if (tok.size() - 1 != width) {
      throw ParseError(std::string(what) + ": inconsistent row width", lineno);
    }
    const NodeId v = index.resolve(tok[0], lineno);
    if (seen[v]) throw ParseError(std::string(what) + ": node '" + tok[0] + "' repeated", lineno);
    seen[v] = true;
    for (std::size_t k = 1; k < tok.size(); ++k) rows[v].push_back(parse_double(tok[k], lineno));
  }
  for (NodeId v = 0; v < index.size(); ++v) {
    if (!seen[v]) {
      throw ValidationError(std::string(what) + ": no row for node '" + index.names[v] + "'");
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(width));
  for (NodeId v = 0; v < index.size(); ++v) {
    for (std::size_t k = 0; k < width; ++k) {
      m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(k)) = rows[v][k];
    }
  }
  return m;
}

}  // namespace

LoadedGraph parse_edge_list(std::istream& in) {
  LoadedGraph out;
  std::vector<Edge> edges;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() == 1) {
      // A lone name declares an isolated node.
      out.index.add(tok[0]);
      continue;
    }
    if (tok.size() > 3) throw ParseError("expected 'u v [weight]'", lineno);
    const double weight = tok.size() == 3 ? parse_double(tok[2], lineno) : 1.0;
    if (!(weight > 0.0)) throw ParseError("edge weights must be positive", lineno);
    const NodeId u = out.index.add(tok[0]);
    const NodeId v = out.index.add(tok[1]);
    edges.push_back({u, v, weight});
  }
  out.graph = Graph::from_edges(out.index.size(), edges, &out.duplicate_edges);
  return out;
}

LoadedGraph load_graph(const fs::path& path) {
  auto in = open_input(path);
  return parse_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, const NodeIndex& index) {
  // Lone node lines only where edge order alone would not reproduce the ids.
  NodeId next = 0;
  auto declare_up_to = [&](NodeId last) {
    for (; next <= last; ++next) out << index.names[next] << '\n';
  };
  for (const Edge& e : g.edges()) {
    NodeId seen = next;
    bool in_order = true;
    for (NodeId x : {e.u, e.v}) {
      if (x == seen) {
        ++seen;
      } else if (x > seen) {
        in_order = false;
      }
    }
    if (in_order) {
      next = seen;
    } else {
      declare_up_to(std::max(e.u, e.v));
    }
    out << index.names[e.u] << ' ' << index.names[e.v];
    if (g.weighted()) out << ' ' << format_double(e.weight);
    out << '\n';
  }
  if (g.num_nodes() > 0) declare_up_to(g.num_nodes() - 1);
}

std::vector<int> parse_labels(std::istream& in, const NodeIndex& index) {
  std::vector<int> labels(index.size(), -1);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError("expected 'node class'", lineno);
    const NodeId v = index.resolve(tok[0], lineno);
    const long cls = parse_long(tok[1], lineno);
    if (cls < 0 || cls > 1'000'000'000) throw ParseError("class ids must be non-negative", lineno);
    labels[v] = static_cast<int>(cls);
  }
  for (NodeId v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0) throw ValidationError("labels: node '" + index.names[v] + "' has no class");
  }
  return labels;
}

std::vector<int> load_labels(const fs::path& path, const NodeIndex& index) {
  auto in = open_input(path);
  return parse_labels(in, index);
}

LensFile parse_lens_file(std::istream& in) {
  LensFile lens;
  std::size_t expected = 0;
  bool header = false;
  std::string line;
  std::size_t lineno = 1;
  for (; std::getline(in, line); ++lineno) {
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!header) {
      if (tok.size() != 2) throw ParseError("lens header must be 'd N'", lineno);
      lens.dim = parse_count(tok[0], lineno);
      expected = parse_count(tok[1], lineno);
      if (lens.dim < 1 || lens.dim > 3) throw ParseError("lens dimension must be 1, 2 or 3", lineno);
      header = true;
      continue;
    }
    if (tok.size() != lens.dim + 1) {
      throw ParseError("expected a node and " + std::to_string(lens.dim) + " value(s)", lineno);
    }
    std::vector<double> values;
    for (std::size_t k = 1; k < tok.size(); ++k) values.push_back(parse_double(tok[k], lineno));
    lens.rows.emplace_back(tok[0], std::move(values));
  }
  if (!header) throw ParseError("lens file is empty", lineno);
  if (lens.rows.size() != expected) {
    throw ParseError("lens header announces " + std::to_string(expected) + " rows, found " +
                         std::to_string(lens.rows.size()),
                     lineno);
  }
  return lens;
}

LensFile load_lens_file(const fs::path& path) {
  auto in = open_input(path);
  return parse_lens_file(in);
}

Eigen::MatrixXd align_lens(const LensFile& lens, const NodeIndex& index) {
  if (lens.rows.size() != index.size()) {
    throw ValidationError("lens has " + std::to_string(lens.rows.size()) + " rows, graph has " +
                          std::to_string(index.size()) + " nodes");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(index.size()), static_cast<Eigen::Index>(lens.dim));
  std::vector<bool> seen(index.size(), false);
  for (std::size_t r = 0; r < lens.rows.size(); ++r) {
    const auto& [name, values] = lens.rows[r];
    const auto it = index.ids.find(name);
    if (it == index.ids.end()) throw ValidationError("lens names unknown node '" + name + "'");
    if (seen[it->second]) throw ValidationError("lens repeats node '" + name + "'");
    seen[it->second] = true;
    for (std::size_t k = 0; k < lens.dim; ++k) {
      m(static_cast<Eigen::Index>(it->second), static_cast<Eigen::Index>(k)) = values[k];
    }
  }
  return m;
}

void write_lens(std::ostream& out, const Eigen::MatrixXd& values, const NodeIndex& index) {
  if (static_cast<std::size_t>(values.rows()) != index.size()) {
    throw ValidationError("write_lens: row count does not match the node index");
  }
  out << values.cols() << ' ' << values.rows() << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    out << index.names[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << ' ' << format_double(values(r, c));
    out << '\n';
  }
}

fs::path resolve_lens_path(const fs::path& path) {
  if (fs::exists(path) || path.is_absolute()) return path;
  if (const char* env = std::getenv("MAPPER_LENS_PATH")) {
    std::stringstream dirs(env);
    for (std::string dir; std::getline(dirs, dir, ':');) {
      if (dir.empty()) continue;
      const fs::path candidate = fs::path(dir) / path;
      if (fs::exists(candidate)) return candidate;
    }
  }
  return path;
}

Eigen::MatrixXd parse_features(std::istream& in, const NodeIndex& index) {
  return parse_node_rows(in, index, "features");
}

Eigen::MatrixXd load_features(const fs::path& path, const NodeIndex& index) {
  auto in = open_input(path);
  return parse_features(in, index);
}

void write_dense_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd parse_dense_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = tokens(line);
  }
  if (header.size() != 2) throw ParseError("matrix header must be 'rows cols'", lineno);
  const std::size_t rows = parse_count(header[0], lineno);
  const std::size_t cols = parse_count(header[1], lineno);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t r = 0;
  while (r < rows && std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != cols) throw ParseError("expected " + std::to_string(cols) + " values", lineno);
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_double(tok[c], lineno);
    }
    ++r;
  }
  if (r != rows) throw ParseError("matrix ended after " + std::to_string(r) + " rows", lineno);
  return m;
}

void write_triplets(std::ostream& out, const Eigen::MatrixXd& m) {
  const auto nnz = (m.array() != 0.0).count();
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0.0) out << r << ' ' << c << ' ' << format_double(m(r, c)) << '\n';
    }
  }
}

Eigen::MatrixXd parse_triplets(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    header = tokens(line);
  }
  if (header.size() != 3) throw ParseError("triplet header must be 'rows cols nnz'", lineno);
  const std::size_t rows = parse_count(header[0], lineno);
  const std::size_t cols = parse_count(header[1], lineno);
  const std::size_t nnz = parse_count(header[2], lineno);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ParseError("expected 'i j value'", lineno);
    const std::size_t i = parse_count(tok[0], lineno);
    const std::size_t j = parse_count(tok[1], lineno);
    if (i >= rows || j >= cols) throw ParseError("triplet index out of range", lineno);
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = parse_double(tok[2], lineno);
    ++seen;
  }
  if (seen != nnz) {
    throw ParseError("header announces " + std::to_string(nnz) + " triplets, found " +
                         std::to_string(seen),
                     lineno);
  }
  return m;
}

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) return std::to_string(x);
  return std::string(buf.data(), ptr);
}

// ---------------------------------------------------------------------------
// Summary JSON

namespace {

nlohmann::ordered_json colour_value(const std::vector<double>& v) {
  if (v.size() == 1) return v.front();
  return v;
}

std::vector<double> read_values(const nlohmann::ordered_json& j) {
  if (j.is_number()) return {j.get<double>()};
  return j.get<std::vector<double>>();
}

}  // namespace

nlohmann::ordered_json summary_to_json(const SummaryGraph& sg) {
  nlohmann::ordered_json j;
  j["mode"] = to_string(sg.mode);
  j["nodes"] = nlohmann::ordered_json::array();
  for (const SummaryNode& node : sg.nodes) {
    nlohmann::ordered_json n;
    n["id"] = node.id;
    n["cover_set"] = node.cover_set;
    n["members"] = node.members;
    n["size"] = node.size;
    n["colour"] = {{"kind", to_string(node.colour.kind)},
                   {"value", colour_value(node.colour.value)}};
    n["position"] = node.position;
    j["nodes"].push_back(std::move(n));
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (const SummaryEdge& e : sg.edges) {
    j["edges"].push_back({{"u", e.u}, {"v", e.v}, {"weight", e.weight}});
  }
  return j;
}

SummaryGraph summary_from_json(const nlohmann::ordered_json& j) {
  try {
    SummaryGraph sg;
    sg.mode = summary_mode_from_string(j.at("mode").get<std::string>());
    for (const auto& n : j.at("nodes")) {
      SummaryNode node;
      node.id = n.at("id").get<std::size_t>();
      node.cover_set = n.value("cover_set", std::size_t{0});
      node.members = n.at("members").get<std::vector<NodeId>>();
      node.size = n.at("size").get<std::size_t>();
      const auto& colour = n.at("colour");
      node.colour.kind = colour_kind_from_string(colour.at("kind").get<std::string>());
      node.colour.value = read_values(colour.at("value"));
      if (n.contains("position")) node.position = n.at("position").get<std::vector<double>>();
      sg.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      sg.edges.push_back({e.at("u").get<std::size_t>(), e.at("v").get<std::size_t>(),
                          e.at("weight").get<double>()});
    }
    return sg;
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("malformed summary JSON: ") + ex.what());
  }
}

std::string dump_summary(const SummaryGraph& sg) { return summary_to_json(sg).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Colours and DOT

Colormap colormap_from_string(const std::string& s) {
  if (s == "auto") return Colormap::automatic;
  if (s == "viridis") return Colormap::viridis;
  if (s == "bivariate") return Colormap::bivariate;
  if (s == "classes") return Colormap::classes;
  throw ValidationError("unknown colormap '" + s + "' (auto, viridis, bivariate, classes)");
}

namespace {

Rgb hex(unsigned v) {
  return {static_cast<double>((v >> 16) & 0xff) / 255.0, static_cast<double>((v >> 8) & 0xff) / 255.0,
          static_cast<double>(v & 0xff) / 255.0};
}

Rgb mix(const Rgb& a, const Rgb& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

double clamp01(double t) { return std::isfinite(t) ? std::clamp(t, 0.0, 1.0) : 0.5; }

}  // namespace

Rgb viridis(double t) {
  static const std::array<unsigned, 10> anchors = {0x440154, 0x482878, 0x3e4989, 0x31688e, 0x26828e,
                                                   0x1f9e89, 0x35b779, 0x6ece58, 0xb5de2b, 0xfde725};
  t = clamp01(t) * static_cast<double>(anchors.size() - 1);
  const auto lo = std::min(static_cast<std::size_t>(t), anchors.size() - 2);
  return mix(hex(anchors[lo]), hex(anchors[lo + 1]), t - static_cast<double>(lo));
}

Rgb bivariate(double x, double y) {
  // Corners: (0,0) light grey, (1,0) red, (0,1) teal, (1,1) dark plum.
  const Rgb c00 = hex(0xe8e8e8);
  const Rgb c10 = hex(0xc85a5a);
  const Rgb c01 = hex(0x64acbe);
  const Rgb c11 = hex(0x574249);
  x = clamp01(x);
  y = clamp01(y);
  return mix(mix(c00, c10, x), mix(c01, c11, x), y);
}

Rgb class_colour(long cls) {
  static const std::array<unsigned, 10> palette = {0x1f77b4, 0xff7f0e, 0x2ca02c, 0xd62728, 0x9467bd,
                                                   0x8c564b, 0xe377c2, 0x7f7f7f, 0xbcbd22, 0x17becf};
  const auto n = static_cast<long>(palette.size());
  return hex(palette[static_cast<std::size_t>(((cls % n) + n) % n)]);
}

std::string to_hex(const Rgb& c) {
  auto byte = [](double v) { return static_cast<unsigned>(std::lround(clamp01(v) * 255.0)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", byte(c.r), byte(c.g), byte(c.b));
  return buf;
}

namespace {

std::string fixed(double x, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << x;
  return ss.str();
}

// Per-component [min, max] of the colour payloads, used to stretch mean-lens
// colours over the full colormap.
std::vector<std::pair<double, double>> colour_ranges(const SummaryGraph& sg) {
  std::vector<std::pair<double, double>> ranges;
  for (const SummaryNode& node : sg.nodes) {
    const auto& v = node.colour.value;
    if (ranges.size() < v.size()) ranges.resize(v.size(), {INFINITY, -INFINITY});
    for (std::size_t k = 0; k < v.size(); ++k) {
      ranges[k].first = std::min(ranges[k].first, v[k]);
      ranges[k].second = std::max(ranges[k].second, v[k]);
    }
  }
  return ranges;
}

double stretch(double x, const std::pair<double, double>& range) {
  const double span = range.second - range.first;
  return span > 0.0 ? (x - range.first) / span : 0.5;
}

}  // namespace

std::string export_dot(const SummaryGraph& sg, Colormap cmap) {
  std::ostringstream out;
  out << "graph summary {\n";
  out << "  graph [comment=\"" << to_string(sg.mode) << "\", overlap=false, outputorder=edgesfirst];\n";
  out << "  node [shape=circle, style=filled, fixedsize=true, label=\"\"];\n";

  std::size_t max_size = 0;
  for (const SummaryNode& node : sg.nodes) max_size = std::max(max_size, node.size);
  const auto ranges = colour_ranges(sg);

  for (const SummaryNode& node : sg.nodes) {
    const double width =
        max_size > 0 ? 1.5 * std::sqrt(static_cast<double>(node.size) / static_cast<double>(max_size))
                     : 1.5;
    const auto& v = node.colour.value;
    Colormap use = cmap;
    if (use == Colormap::automatic) {
      use = node.colour.kind == ColourKind::majority_class ? Colormap::classes
            : v.size() >= 2                                ? Colormap::bivariate
                                                           : Colormap::viridis;
    }
    const bool stretched = node.colour.kind == ColourKind::mean_lens;
    auto component = [&](std::size_t k) {
      if (k >= v.size()) return 0.5;
      return stretched ? stretch(v[k], ranges[k]) : v[k];
    };
    Rgb fill = hex(0xbdbdbd);
    if (!v.empty()) {
      switch (use) {
        case Colormap::classes: fill = class_colour(std::lround(v[0])); break;
        case Colormap::bivariate: fill = bivariate(component(0), component(1)); break;
        default: fill = viridis(component(0)); break;
      }
    }
    out << "  n" << node.id << " [width=" << fixed(width, 6) << ", fillcolor=\"" << to_hex(fill)
        << "\", tooltip=\"size=" << node.size << "\"];\n";
  }

  double wmin = INFINITY;
  double wmax = -INFINITY;
  for (const SummaryEdge& e : sg.edges) {
    wmin = std::min(wmin, e.weight);
    wmax = std::max(wmax, e.weight);
  }
  for (const SummaryEdge& e : sg.edges) {
    const double pen = wmax > wmin ? 1.0 + 7.0 * (e.weight - wmin) / (wmax - wmin) : 1.0;
    out << "  n" << e.u << " -- n" << e.v << " [penwidth=" << fixed(pen, 4) << ", tooltip=\"w="
        << format_double(e.weight) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace mapper
