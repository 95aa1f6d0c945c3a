#include "mapper/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mapper/cover.hpp"
#include "mapper/errors.hpp"
#include "mapper/io.hpp"
#include "mapper/lens.hpp"
#include "mapper/mapper.hpp"
#include "mapper/pooling.hpp"
#include "mapper/theory.hpp"

namespace mapper {

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitVerifyFailed = 2;

struct LensOptions {
  std::string kind = "pagerank";
  std::string file;
  bool normalize = false;
  double alpha = 0.85;
  double delta = 1.0;
};

struct CoverOptions {
  std::vector<std::size_t> n{5};
  std::vector<double> overlap{0.2};
  std::vector<std::string> range;
};

struct MapperCommand {
  std::string graph;
  std::string labels;
  std::string out_prefix;
  std::string clustering = "components";
  std::string colormap = "auto";
  double epsilon = 0.01;
  std::uint64_t seed = 0;
  LensOptions lens;
  CoverOptions cover;
};

struct LensCommand {
  std::string graph;
  std::string out;
  std::string check;
  bool raw = false;
  std::uint64_t seed = 0;
  LensOptions lens;
};

struct PoolCommand {
  std::string graph;
  std::string features;
  std::string out_prefix;
  std::size_t n = 5;
  double overlap = 0.2;
  double alpha = 0.85;
  std::uint64_t seed = 0;
};

struct VerifyCommand {
  std::string prop;
  std::optional<std::size_t> instances;
  std::optional<std::size_t> max_n;
  std::size_t max_k = 4;
  std::size_t perms = 5;
  std::uint64_t seed = 0;
  std::string out;
};

void add_lens_options(CLI::App* cmd, LensOptions& o) {
  cmd->add_option("--lens", o.kind, "Lens: pagerank, fiedler, density or file")
      ->check(CLI::IsMember({"pagerank", "fiedler", "density", "file"}));
  cmd->add_option("--lens-file", o.file, "Lens file (searched in MAPPER_LENS_PATH)");
  cmd->add_flag("--normalize", o.normalize, "Min-max normalise a file lens to [0,1]");
  cmd->add_option("--alpha", o.alpha, "PageRank continuation probability");
  cmd->add_option("--delta", o.delta, "Density lens bandwidth");
}

void add_cover_options(CLI::App* cmd, CoverOptions& o) {
  // One value per occurrence; the flag is repeated for further axes.
  cmd->add_option("--cover-n", o.n, "Intervals per axis (repeat per axis)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cmd->add_option("--cover-overlap", o.overlap, "Overlap fraction per axis (repeat per axis)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cmd->add_option("--cover-range", o.range, "Axis range lo:hi (repeat per axis)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

LensVector build_lens(const LoadedGraph& lg, const LensOptions& o) {
  if (o.kind == "pagerank") {
    PageRankOptions pr;
    pr.alpha = o.alpha;
    return pagerank_lens(lg.graph, pr);
  }
  if (o.kind == "fiedler") return fiedler_lens(lg.graph);
  if (o.kind == "density") return density_lens(lg.graph, o.delta);
  if (o.file.empty()) throw ValidationError("--lens file requires --lens-file");
  const LensFile file = load_lens_file(resolve_lens_path(o.file));
  return external_lens(lg.graph, align_lens(file, lg.index), o.normalize);
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ValidationError("cover range must be lo:hi, got '" + s + "'");
  try {
    std::size_t used = 0;
    const double lo = std::stod(s.substr(0, colon), &used);
    const double hi = std::stod(s.substr(colon + 1));
    return {lo, hi};
  } catch (const std::exception&) {
    throw ValidationError("cover range must be lo:hi, got '" + s + "'");
  }
}

template <typename T>
std::vector<T> broadcast(const std::vector<T>& values, std::size_t dim, const char* flag) {
  if (values.size() == dim) return values;
  if (values.size() == 1) return std::vector<T>(dim, values.front());
  throw ValidationError(std::string(flag) + " given " + std::to_string(values.size()) +
                        " times for a " + std::to_string(dim) + "-dimensional lens");
}

Cover build_cover(const LensVector& lens, const CoverOptions& o, std::ostream& err) {
  const std::size_t dim = lens.dim();
  const auto n = broadcast(o.n, dim, "--cover-n");
  const auto g = broadcast(o.overlap, dim, "--cover-overlap");
  std::vector<std::pair<double, double>> ranges;
  if (!o.range.empty()) {
    for (const auto& r : broadcast(o.range, dim, "--cover-range")) ranges.push_back(parse_range(r));
  } else {
    for (std::size_t c = 0; c < dim; ++c) {
      if (lens.normalized) {
        ranges.emplace_back(0.0, 1.0);
        continue;
      }
      const auto col = lens.values.col(static_cast<Eigen::Index>(c));
      double lo = col.minCoeff();
      double hi = col.maxCoeff();
      if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
      }
      ranges.emplace_back(lo, hi);
    }
  }
  Cover cover = dim == 1 ? interval_cover(n[0], g[0], ranges[0].first, ranges[0].second)
                         : grid_cover(n, g, ranges);
  if (cover.high_overlap()) {
    err << "warning: overlap >= 0.5 creates triple overlaps and a much denser nerve\n";
  }
  return cover;
}

LoadedGraph load_input_graph(const std::string& path, std::ostream& err) {
  LoadedGraph lg = load_graph(path);
  if (lg.duplicate_edges > 0) {
    err << "warning: collapsed " << lg.duplicate_edges << " duplicate edge(s) in " << path << "\n";
  }
  return lg;
}

std::string default_prefix(const std::string& graph) {
  fs::path p(graph);
  return (p.parent_path() / p.stem()).string();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path.string() + "' for writing");
  f << content;
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream ss;
  fn(ss);
  return ss.str();
}

int run_mapper_command(const MapperCommand& c, SummaryMode mode, std::ostream& out,
                       std::ostream& err) {
  LoadedGraph lg = load_input_graph(c.graph, err);
  if (!c.labels.empty()) lg.graph = lg.graph.with_labels(load_labels(c.labels, lg.index));

  const LensVector lens = build_lens(lg, c.lens);
  const Cover cover = build_cover(lens, c.cover, err);
  MapperOptions opts;
  opts.clustering = c.clustering == "none" ? Clustering::none : Clustering::components;
  opts.mode = mode;
  opts.epsilon = c.epsilon;
  const SummaryGraph sg = run_mapper(lg.graph, lens, cover, opts);

  const std::string prefix = c.out_prefix.empty() ? default_prefix(c.graph) : c.out_prefix;
  write_file(prefix + ".summary.json", dump_summary(sg));
  write_file(prefix + ".dot", export_dot(sg, colormap_from_string(c.colormap)));
  out << prefix << ".summary.json\n" << prefix << ".dot\n";
  return kExitOk;
}

int run_lens_command(const LensCommand& c, std::ostream& out, std::ostream& err) {
  if (!c.check.empty()) {
    const LensFile file = load_lens_file(resolve_lens_path(c.check));
    if (!c.graph.empty()) {
      const LoadedGraph lg = load_input_graph(c.graph, err);
      external_lens(lg.graph, align_lens(file, lg.index), false);
    }
    out << "ok: " << file.rows.size() << " rows, d=" << file.dim << "\n";
    return kExitOk;
  }
  if (c.graph.empty()) throw ValidationError("lens: a graph file is required");
  const LoadedGraph lg = load_input_graph(c.graph, err);

  Eigen::MatrixXd values;
  if (c.raw && c.lens.kind == "pagerank") {
    PageRankOptions pr;
    pr.alpha = c.lens.alpha;
    values = pagerank_scores(lg.graph, pr);
  } else if (c.raw && c.lens.kind == "density") {
    values = density_scores(lg.graph, c.lens.delta);
  } else {
    values = build_lens(lg, c.lens).values;
  }
  const std::string text = render([&](std::ostream& s) { write_lens(s, values, lg.index); });
  if (c.out.empty()) {
    out << text;
  } else {
    write_file(c.out, text);
    out << c.out << "\n";
  }
  return kExitOk;
}

int run_pool_command(const PoolCommand& c, std::ostream& out, std::ostream& err) {
  LoadedGraph lg = load_input_graph(c.graph, err);
  if (!c.features.empty()) {
    lg.graph = lg.graph.with_features(load_features(c.features, lg.index));
  } else {
    err << "warning: no --features given; using a constant feature column\n";
    lg.graph = lg.graph.with_features(
        Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(lg.graph.num_nodes()), 1));
  }
  MprOptions opts;
  opts.n = c.n;
  opts.overlap = c.overlap;
  opts.pagerank.alpha = c.alpha;
  const PooledGraph pooled = mpr_pool(lg.graph, opts);
  if (pooled.self_loops_added) err << "warning: added missing self-loops before pooling\n";

  const std::string prefix = c.out_prefix.empty() ? default_prefix(c.graph) : c.out_prefix;
  write_file(prefix + ".adjacency.txt",
             render([&](std::ostream& s) { write_dense_matrix(s, pooled.adjacency); }));
  write_file(prefix + ".features.txt",
             render([&](std::ostream& s) { write_dense_matrix(s, pooled.features); }));
  write_file(prefix + ".assignment.smat",
             render([&](std::ostream& s) { write_triplets(s, pooled.assignment.s); }));
  out << prefix << ".adjacency.txt\n" << prefix << ".features.txt\n" << prefix << ".assignment.smat\n";
  return kExitOk;
}

int run_verify_command(const VerifyCommand& c, std::ostream& out) {
  BatchReport report;
  if (c.prop == "4.1" || c.prop == "spectral-bipartition") {
    report = batch_spectral_bipartition(c.instances.value_or(50), c.max_n.value_or(60), c.seed);
  } else if (c.prop == "4.2" || c.prop == "soft-cluster") {
    report = batch_soft_cluster_equivalence(c.instances.value_or(200), c.max_n.value_or(8),
                                            c.max_k, c.seed);
  } else {
    report = batch_permutation_invariance(c.instances.value_or(100), c.max_n.value_or(30), c.perms,
                                          c.seed);
  }

  nlohmann::ordered_json j;
  j["property"] = report.property;
  j["seed"] = c.seed;
  j["instances"] = report.instances;
  j["passed"] = report.passed;
  j["skipped"] = report.skipped;
  j["holds"] = report.ok();
  j["failures"] = report.failures;
  const std::string text = j.dump(2) + "\n";
  if (!c.out.empty()) write_file(c.out, text);
  out << text;
  return report.ok() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mapper graph summaries, MPR pooling and property checks", "graph-mapper"};
  app.require_subcommand(1);

  MapperCommand mapper_cmd;
  MapperCommand sdgm_cmd;
  for (auto [name, cmd, help] :
       {std::tuple{"mapper", &mapper_cmd, "Overlap-weighted Mapper summary (JSON + DOT)"},
        std::tuple{"sdgm", &sdgm_cmd, "Structural summary with epsilon-filtered edges"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("graph", cmd->graph, "Edge list")->required();
    add_lens_options(sub, cmd->lens);
    add_cover_options(sub, cmd->cover);
    sub->add_option("--clustering", cmd->clustering, "components or none")
        ->check(CLI::IsMember({"components", "none"}));
    sub->add_option("--labels", cmd->labels, "Node class file");
    sub->add_option("--colormap", cmd->colormap, "auto, viridis, bivariate or classes")
        ->check(CLI::IsMember({"auto", "viridis", "bivariate", "classes"}));
    sub->add_option("--out-prefix", cmd->out_prefix, "Output path prefix");
    sub->add_option("--seed", cmd->seed, "Random seed");
    if (cmd == &sdgm_cmd) sub->add_option("--epsilon", cmd->epsilon, "Edge filtration threshold");
  }

  LensCommand lens_cmd;
  CLI::App* lens_sub = app.add_subcommand("lens", "Compute a lens file, or validate one");
  lens_sub->add_option("graph", lens_cmd.graph, "Edge list");
  lens_sub->add_option("--kind", lens_cmd.lens.kind, "pagerank, fiedler or density")
      ->check(CLI::IsMember({"pagerank", "fiedler", "density"}));
  lens_sub->add_option("--alpha", lens_cmd.lens.alpha, "PageRank continuation probability");
  lens_sub->add_option("--delta", lens_cmd.lens.delta, "Density lens bandwidth");
  lens_sub->add_flag("--raw", lens_cmd.raw, "Skip min-max normalisation");
  lens_sub->add_option("--out", lens_cmd.out, "Output file (default stdout)");
  lens_sub->add_option("--check", lens_cmd.check, "Validate a lens file (against graph if given)");
  lens_sub->add_option("--seed", lens_cmd.seed, "Random seed");

  PoolCommand pool_cmd;
  CLI::App* pool_sub = app.add_subcommand("pool", "MPR pooling: A_MG, X_MG and S");
  pool_sub->add_option("graph", pool_cmd.graph, "Edge list")->required();
  pool_sub->add_option("--features", pool_cmd.features, "Node feature rows");
  pool_sub->add_option("--n", pool_cmd.n, "Number of intervals");
  pool_sub->add_option("--overlap", pool_cmd.overlap, "Interval overlap fraction");
  pool_sub->add_option("--alpha", pool_cmd.alpha, "PageRank continuation probability");
  pool_sub->add_option("--out-prefix", pool_cmd.out_prefix, "Output path prefix");
  pool_sub->add_option("--seed", pool_cmd.seed, "Random seed");

  VerifyCommand verify_cmd;
  CLI::App* verify_sub = app.add_subcommand("verify", "Check structural properties on random instances");
  verify_sub->add_option("--prop", verify_cmd.prop, "4.1 (spectral bipartition), 4.2 (soft-cluster "
                                                    "equivalence) or 4.3 (permutation invariance)")
      ->required()
      ->check(CLI::IsMember({"4.1", "4.2", "4.3", "spectral-bipartition", "soft-cluster",
                             "permutation"}));
  verify_sub->add_option("--instances", verify_cmd.instances, "Number of random instances");
  verify_sub->add_option("--max-n", verify_cmd.max_n, "Largest graph size");
  verify_sub->add_option("--max-k", verify_cmd.max_k, "Largest cluster count (4.2)");
  verify_sub->add_option("--perms", verify_cmd.perms, "Permutations per graph (4.3)");
  verify_sub->add_option("--seed", verify_cmd.seed, "Random seed");
  verify_sub->add_option("--out", verify_cmd.out, "Also write the JSON report here");

  if (args.empty()) {
    err << app.help();
    return kExitInvalid;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (app.got_subcommand("mapper")) return run_mapper_command(mapper_cmd, SummaryMode::dgm, out, err);
    if (app.got_subcommand("sdgm")) return run_mapper_command(sdgm_cmd, SummaryMode::sdgm, out, err);
    if (app.got_subcommand("lens")) return run_lens_command(lens_cmd, out, err);
    if (app.got_subcommand("pool")) return run_pool_command(pool_cmd, out, err);
    return run_verify_command(verify_cmd, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mapper
