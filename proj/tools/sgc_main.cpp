#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "sgc/augment.hpp"
#include "sgc/bench.hpp"
#include "sgc/components.hpp"
#include "sgc/eigensolver.hpp"
#include "sgc/error.hpp"
#include "sgc/laplacian.hpp"
#include "sgc/metrics.hpp"
#include "sgc/registry.hpp"
#include "sgc/spectral.hpp"
#include "sgc/stats.hpp"

#ifndef SGC_DEFAULT_DATA_DIR
#define SGC_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace sgc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMethod = 3;
constexpr int kExitData = 4;

struct Globals {
  MethodParams params;
  std::string out_dir = ".";
  std::string format = "json";
  std::string data_dir;
  std::string input_format = "snap";
};

struct DatasetPaths {
  std::string name;
  std::string edges;
  std::optional<std::string> labels;
};

// A dataset argument is a file path, or a name under the data directory laid
// out as <name>/edges.txt with optional <name>/labels.txt.
DatasetPaths resolve_dataset(const std::string& arg, const Globals& g) {
  if (fs::is_regular_file(arg)) return {fs::path(arg).stem().string(), arg, std::nullopt};
  const fs::path dir = fs::path(g.data_dir) / arg;
  if (fs::is_regular_file(dir / "edges.txt")) {
    DatasetPaths d{arg, (dir / "edges.txt").string(), std::nullopt};
    if (fs::is_regular_file(dir / "labels.txt")) d.labels = (dir / "labels.txt").string();
    return d;
  }
  throw DataError("dataset '" + arg + "' is neither a file nor present under " + g.data_dir +
                  " (see tools/fetch_fixtures.sh)");
}

void ensure_dir(const std::string& d) {
  std::error_code ec;
  fs::create_directories(d, ec);
  if (ec) throw DataError("cannot create output directory " + d);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

int cmd_stats(const Globals& g, const std::string& dataset, bool gcc) {
  const auto paths = resolve_dataset(dataset, g);
  auto graph = load_edge_list(paths.edges, parse_edge_format(g.input_format));
  if (gcc) graph = greatest_connected_component(graph).graph;
  const auto s = compute_stats(graph);
  if (g.format == "csv") {
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    std::cout << "dataset,vertices,edges,density,pct_positive,degree_avg,degree_median,degree_max,triangles,bal3\n"
              << paths.name << ',' << s.vertices << ',' << s.edges << ',' << format_real(s.density) << ','
              << format_real(s.pct_positive) << ',' << format_real(s.degree_avg) << ','
              << format_real(s.degree_median) << ',' << format_real(s.degree_max) << ',' << s.triangles << ','
              << opt(s.bal3) << '\n';
  } else {
    std::cout << stats_to_json(s) << '\n';
  }
  return kExitOk;
}

int cmd_cluster(const Globals& g, const std::string& dataset, const std::string& method, std::optional<std::size_t> k,
                std::optional<std::string> labels_path, bool whole_graph, std::optional<std::string> status_out) {
  const auto& info = find_method(method);
  const auto paths = resolve_dataset(dataset, g);
  if (!labels_path) labels_path = paths.labels;
  auto graph = load_edge_list(paths.edges, parse_edge_format(g.input_format));
  std::optional<Labeling> truth;
  if (labels_path) {
    if (!fs::is_regular_file(*labels_path)) throw InvalidArgument("label file not found: " + *labels_path);
    truth = load_labels(*labels_path, graph);
  }
  if (!whole_graph) {
    auto view = greatest_connected_component(graph);
    if (truth) {
      Labeling sub(view.new_to_old.size());
      for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = (*truth)[view.new_to_old[i]];
      truth = canonical_labels(sub);
    }
    graph = std::move(view.graph);
  }
  if (!k) {
    if (!truth) throw InvalidArgument("--k is required without ground-truth labels");
    k = num_clusters(*truth);
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto out = info.run(graph, *k, g.params);
  const auto t1 = std::chrono::steady_clock::now();

  auto report = evaluate(graph, out.labels, truth);
  report.method = method;
  report.dataset = paths.name;
  report.runtime_seconds = std::chrono::duration<double>(t1 - t0).count();

  ensure_dir(g.out_dir);
  const std::string stem = paths.name + "_" + method;
  {
    auto f = open_out(fs::path(g.out_dir) / (stem + "_labels.csv"));
    write_labels(graph, out.labels, f);
  }
  {
    const bool csv = g.format == "csv";
    auto f = open_out(fs::path(g.out_dir) / (stem + (csv ? "_report.csv" : "_report.json")));
    if (csv) {
      f << report_csv_header() << '\n' << report_to_csv_row(report) << '\n';
    } else {
      f << report_to_json(report) << '\n';
    }
  }
  if (status_out) {
    if (!out.status_influence) throw InvalidArgument("--status-out is only available for graphB_km");
    auto f = open_out(*status_out);
    f << "vertex,status,influence\n";
    for (Vertex v = 0; v < graph.num_vertices(); ++v) {
      f << graph.original_id(v) << ',' << format_real(out.status_influence->status[v]) << ','
        << format_real(out.status_influence->influence[v]) << '\n';
    }
  }
  std::cout << report_to_json(report) << '\n';
  return kExitOk;
}

int cmd_augment(const Globals& g, const std::string& dataset, const std::string& labels_path, double ratio,
                std::optional<std::string> out_path) {
  if (!fs::is_regular_file(labels_path)) throw InvalidArgument("label file not found: " + labels_path);
  const auto paths = resolve_dataset(dataset, g);
  const auto format = parse_edge_format(g.input_format);
  const auto graph = load_edge_list(paths.edges, format);
  const auto labels = load_labels(labels_path, graph);
  const auto augmented = augment_negative_edges(graph, labels, ratio, g.params.seed);
  if (!out_path) {
    ensure_dir(g.out_dir);
    out_path = (fs::path(g.out_dir) / (paths.name + "_augmented.txt")).string();
  }
  std::size_t added = 0;
  {
    auto f = open_out(*out_path);
    write_edge_list(graph, f, format);
    f << "# augmented negative edges\n";
    std::vector<Edge> neg;
    for (const auto& e : augmented.edges()) {
      if (e.sign == Sign::negative) neg.push_back(e);
    }
    added = neg.size();
    SignedGraph only_neg(augmented.num_vertices(), neg, augmented.original_ids());
    write_edge_list(only_neg, f, format);
  }
  nlohmann::json prov{{"source", paths.edges},
                      {"labels", labels_path},
                      {"seed", g.params.seed},
                      {"ratio", ratio},
                      {"positive_edges", graph.num_positive()},
                      {"negative_edges_added", added}};
  auto f = open_out(*out_path + ".provenance.json");
  f << prov.dump(2) << '\n';
  std::cout << prov.dump(2) << '\n';
  return kExitOk;
}

int cmd_eig_dump(const Globals& g, const std::string& dataset, const std::string& matrix, std::size_t k,
                 std::optional<std::string> mtx_path, bool whole_graph) {
  const auto paths = resolve_dataset(dataset, g);
  auto graph = load_edge_list(paths.edges, parse_edge_format(g.input_format));
  if (!whole_graph) graph = greatest_connected_component(graph).graph;
  Pencil pencil;
  if (matrix == "SPONGE_none" || matrix == "SPONGE_sym") {
    pencil = sponge_pencil(graph, SpongeConfig{g.params.tau_plus, g.params.tau_minus, matrix == "SPONGE_sym"});
  } else if (matrix == "BNC_none" || matrix == "BNC_sym") {
    pencil = bnc_pencil(graph, matrix == "BNC_sym");
  } else {
    pencil = laplacian_pencil(graph, parse_laplacian_kind(matrix));
  }
  EigenOptions opt;
  opt.tol = g.params.tol;
  opt.seed = g.params.seed;
  const auto pairs = pencil.standard ? smallest_k_eigenpairs(pencil.a, k, opt)
                                     : generalized_smallest_k(pencil.a, pencil.b, k, opt);
  if (mtx_path) {
    auto f = open_out(*mtx_path);
    write_coordinate(pencil.a, f);
    if (!pencil.standard) {
      auto fb = open_out(*mtx_path + ".b.mtx");
      write_coordinate(pencil.b, fb);
    }
  }
  if (g.format == "csv") {
    std::cout << "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < pairs.values.size(); ++i) std::cout << i << ',' << format_real(pairs.values(i)) << '\n';
  } else {
    nlohmann::json j{{"matrix", matrix},
                     {"k", k},
                     {"iterations", pairs.iterations},
                     {"max_residual", pairs.max_residual},
                     {"dense", pairs.dense},
                     {"eigenvalues", std::vector<double>(pairs.values.data(), pairs.values.data() + pairs.values.size())}};
    std::cout << j.dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_bench(const Globals& g, const std::string& spec_path, bool out_dir_given, bool workers_given) {
  auto spec = load_benchmark_spec(spec_path);
  if (out_dir_given) spec.outputs = g.out_dir;
  if (workers_given) spec.workers = g.params.workers;
  const auto result = run_benchmark(spec);
  std::size_t failed = 0;
  for (const auto& c : result.cells) {
    if (!c.ok) {
      ++failed;
      std::cerr << "failed: " << c.dataset << " " << c.method << " seed " << c.seed << ": " << c.error << '\n';
    }
  }
  std::cout << result.cells.size() << " cells, " << failed << " failed, outputs in " << spec.outputs << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed graph clustering toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("SGC_DATA_DIR")) {
    g.data_dir = env;
  } else {
    g.data_dir = SGC_DEFAULT_DATA_DIR;
  }
  app.add_option("--seed", g.params.seed, "Random seed");
  app.add_option("--restarts", g.params.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  app.add_option("--tol", g.params.tol, "Eigensolver tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tau-pos", g.params.tau_plus, "SPONGE tau+")->check(CLI::NonNegativeNumber);
  app.add_option("--tau-neg", g.params.tau_minus, "SPONGE tau-")->check(CLI::NonNegativeNumber);
  app.add_option("--walk-len", g.params.walk_len, "FCSG walk length")->check(CLI::PositiveNumber);
  app.add_option("--trees", g.params.trees, "graphB spanning tree samples")->check(CLI::PositiveNumber);
  auto* workers_opt = app.add_option("--workers", g.params.workers, "Worker cap (0: hardware)");
  auto* out_dir_opt = app.add_option("--out-dir", g.out_dir, "Output directory");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--data-dir", g.data_dir, "Fixture directory (default $SGC_DATA_DIR)");
  app.add_option("--input-format", g.input_format, "Edge list format")->check(CLI::IsMember({"snap", "csv"}));

  std::string dataset, method, labels_path, spec_path, matrix = "signed_sym";
  std::optional<std::size_t> k;
  std::optional<std::string> cluster_labels, status_out, aug_out, mtx_path;
  double ratio = 0.2;
  bool gcc = false, whole_graph = false;
  std::size_t eig_k = 10;

  auto* stats = app.add_subcommand("stats", "Dataset attributes as JSON or CSV");
  stats->add_option("dataset", dataset, "Edge list path or fixture name")->required();
  stats->add_flag("--gcc", gcc, "Restrict to the greatest connected component");

  auto* cluster = app.add_subcommand("cluster", "Run one method, write labels and a report");
  cluster->add_option("dataset", dataset, "Edge list path or fixture name")->required();
  cluster->add_option("method", method, "Method name (" + method_names_joined() + ")")->required();
  cluster->add_option("--k", k, "Number of clusters (default: ground-truth count)");
  cluster->add_option("--labels", cluster_labels, "Ground-truth labels");
  cluster->add_flag("--whole-graph", whole_graph, "Skip restriction to the greatest component");
  cluster->add_option("--status-out", status_out, "graphB_km status/influence CSV");

  auto* augment = app.add_subcommand("augment", "Add negative edges between labeled communities");
  augment->add_option("dataset", dataset, "Positive edge list path or fixture name")->required();
  augment->add_option("--labels", labels_path, "Community labels")->required();
  augment->add_option("--ratio", ratio, "Negative edges per positive edge")->check(CLI::NonNegativeNumber);
  augment->add_option("--out", aug_out, "Output edge list");

  auto* bench = app.add_subcommand("bench", "Run a benchmark spec");
  bench->add_option("spec", spec_path, "Benchmark spec JSON")->required();

  auto* eig = app.add_subcommand("eig-dump", "Smallest eigenvalues of a Laplacian or pencil");
  eig->add_option("dataset", dataset, "Edge list path or fixture name")->required();
  eig->add_option("--matrix", matrix, "Laplacian kind, BNC_none/BNC_sym or SPONGE_none/SPONGE_sym");
  eig->add_option("--k", eig_k, "Number of eigenvalues")->check(CLI::PositiveNumber);
  eig->add_option("--mtx", mtx_path, "Also write the matrix (MatrixMarket)");
  eig->add_flag("--whole-graph", whole_graph, "Skip restriction to the greatest component");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*stats) return cmd_stats(g, dataset, gcc);
    if (*cluster) return cmd_cluster(g, dataset, method, k, cluster_labels, whole_graph, status_out);
    if (*augment) return cmd_augment(g, dataset, labels_path, ratio, aug_out);
    if (*bench) return cmd_bench(g, spec_path, out_dir_opt->count() > 0, workers_opt->count() > 0);
    if (*eig) return cmd_eig_dump(g, dataset, matrix, eig_k, mtx_path, whole_graph);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MethodError& e) {
    std::cerr << "method error: " << e.what() << '\n';
    return kExitMethod;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
