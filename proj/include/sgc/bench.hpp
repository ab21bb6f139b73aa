#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgc/generators.hpp"
#include "sgc/graph.hpp"
#include "sgc/io.hpp"
#include "sgc/registry.hpp"

namespace sgc {

struct DatasetSpec {
  std::string name;
  std::string edges;                   // path; empty when generated
  std::optional<std::string> labels;   // ground-truth path
  EdgeFormat format = EdgeFormat::snap;
  std::optional<PowerLawConfig> powerlaw;  // generated instead of loaded
  std::optional<PlantedConfig> planted;    // generated, factions as ground truth
  std::uint64_t generator_seed = 0;
};

enum class KPolicy { ground_truth_k, fixed };

struct BenchmarkSpec {
  std::vector<DatasetSpec> datasets;
  std::vector<std::string> methods;
  KPolicy k_policy = KPolicy::ground_truth_k;
  std::size_t k = 0;  // used with KPolicy::fixed
  std::vector<std::uint64_t> seeds{0};
  std::size_t restarts = 20;
  std::string outputs = "bench_out";
  bool gcc = true;           // restrict every dataset to its greatest component
  bool timing = true;        // cells run one at a time, median of timing_runs
  std::size_t timing_runs = 3;
  std::size_t workers = 0;   // cell parallelism when timing is off; 0: hardware
  std::size_t blockmodel_max_vertices = 2000;
  MethodParams params;       // seed and restarts overridden per cell
};

// Throws InvalidArgument for unknown methods, missing labels under the
// ground-truth k policy, or malformed JSON.
BenchmarkSpec parse_benchmark_spec(const std::string& json_text, const std::string& base_dir = "");
BenchmarkSpec load_benchmark_spec(const std::string& path);
std::string benchmark_spec_to_json(const BenchmarkSpec& spec);

struct Dataset {
  std::string name;
  SignedGraph graph;
  std::optional<Labeling> truth;
};

// Loads or generates, then restricts to the greatest component when asked.
Dataset load_dataset(const DatasetSpec& spec, bool gcc);

struct CellResult {
  std::string dataset;
  std::string method;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  bool ok = false;
  std::string error;
  Labeling labels;
  std::vector<double> run_seconds;
  std::optional<long> peak_rss_kb;
  std::optional<double> pos_in;
  std::optional<double> neg_out;
  std::optional<double> ari_vs_ground;
  std::vector<std::size_t> sizes_ascending;
  double largest_fraction = 0.0;
  bool collapsed = false;  // largest community above 95% of vertices

  double median_seconds() const;
};

struct BenchResult {
  std::vector<CellResult> cells;
  std::vector<std::string> files;  // written outputs, relative to the output directory
};

// Runs every (dataset, method, seed) cell and writes:
//   ari_<dataset>_s<seed>.csv      mutual ARI, ground truth first when present
//   edge_agreement.csv             per cell metrics, failed cells included
//   timing.csv                     per cell run times and median
//   community_sizes.csv            per cell sizes in ascending order
//   blockmodel_<dataset>_<method>_s<seed>.pgm
//   labels/<dataset>_<method>_s<seed>.csv
BenchResult run_benchmark(const BenchmarkSpec& spec);

// Adjacency rows and columns ordered by (label, vertex), unassigned last.
// Gray levels: positive 0, negative 128, absent 255.
void write_blockmodel_pgm(const SignedGraph& g, const Labeling& labels, std::ostream& out);

// Linux peak resident set size of this process, in KiB.
std::optional<long> peak_rss_kb();
// Best effort reset of the peak counter; false if the platform refuses.
bool reset_peak_rss();

}  // namespace sgc
