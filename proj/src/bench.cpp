#include "sgc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "sgc/components.hpp"
#include "sgc/error.hpp"
#include "sgc/metrics.hpp"

namespace sgc {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string opt_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::string resolve(const std::string& base, const std::string& path) {
  if (path.empty() || base.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base) / path).string();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) && !j[key].is_null() ? j[key].get<T>() : fallback;
}

DatasetSpec parse_dataset(const json& j, const std::string& base) {
  DatasetSpec d;
  if (!j.contains("name")) throw InvalidArgument("dataset entry without a name");
  d.name = j["name"].get<std::string>();
  d.format = parse_edge_format(get_or<std::string>(j, "format", "snap"));
  if (j.contains("generator")) {
    const auto& gj = j["generator"];
    const auto type = get_or<std::string>(gj, "type", "");
    d.generator_seed = get_or<std::uint64_t>(gj, "seed", 0);
    if (type == "powerlaw") {
      PowerLawConfig c;
      c.vertices = get_or(gj, "vertices", c.vertices);
      c.edges = get_or(gj, "edges", c.edges);
      c.exponent = get_or(gj, "exponent", c.exponent);
      c.positive_fraction = get_or(gj, "positive_fraction", c.positive_fraction);
      c.factions = get_or(gj, "factions", c.factions);
      d.powerlaw = c;
    } else if (type == "planted") {
      PlantedConfig c;
      c.sizes = get_or(gj, "sizes", c.sizes);
      c.p_in = get_or(gj, "p_in", c.p_in);
      c.p_out = get_or(gj, "p_out", c.p_out);
      c.flip = get_or(gj, "flip", c.flip);
      d.planted = c;
    } else {
      throw InvalidArgument("dataset '" + d.name + "': unknown generator type '" + type + "'");
    }
  } else {
    if (!j.contains("edges")) throw InvalidArgument("dataset '" + d.name + "' has neither edges nor generator");
    d.edges = resolve(base, j["edges"].get<std::string>());
  }
  if (j.contains("labels") && !j["labels"].is_null()) d.labels = resolve(base, j["labels"].get<std::string>());
  return d;
}

bool has_truth(const DatasetSpec& d) {
  return d.labels.has_value() || d.planted.has_value() || (d.powerlaw && d.powerlaw->factions > 0);
}

CellResult run_cell(const Dataset& ds, const std::string& method, std::uint64_t seed, std::size_t k,
                    const BenchmarkSpec& spec, std::size_t runs) {
  CellResult c;
  c.dataset = ds.name;
  c.method = method;
  c.seed = seed;
  c.k = k;
  MethodParams p = spec.params;
  p.seed = seed;
  p.restarts = spec.restarts;
  try {
    const auto& info = find_method(method);
    if (runs > 0) reset_peak_rss();
    for (std::size_t r = 0; r < std::max<std::size_t>(runs, 1); ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      auto out = info.run(ds.graph, k, p);
      const auto t1 = std::chrono::steady_clock::now();
      if (runs > 0) c.run_seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
      if (r == 0) c.labels = std::move(out.labels);
    }
    if (runs > 0) c.peak_rss_kb = peak_rss_kb();
    const auto agreement = edge_agreement(ds.graph, c.labels);
    c.pos_in = agreement.pos_in;
    c.neg_out = agreement.neg_out;
    if (ds.truth) {
      try {
        c.ari_vs_ground = adjusted_rand_index(c.labels, *ds.truth);
      } catch (const InvalidArgument&) {
      }
    }
    auto sizes = cluster_sizes(with_outcast_cluster(c.labels));
    c.largest_fraction = sizes.empty() ? 0.0 : static_cast<double>(sizes.front()) / ds.graph.num_vertices();
    c.collapsed = c.largest_fraction > 0.95;
    std::reverse(sizes.begin(), sizes.end());
    c.sizes_ascending = std::move(sizes);
    c.ok = true;
  } catch (const std::exception& e) {
    c.ok = false;
    c.error = e.what();
    c.labels.clear();
  }
  return c;
}

std::size_t resolve_k(const BenchmarkSpec& spec, const Dataset& ds) {
  if (spec.k_policy == KPolicy::fixed) return spec.k;
  return num_clusters(*ds.truth);
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  return out;
}

}  // namespace

double CellResult::median_seconds() const {
  if (run_seconds.empty()) return std::nan("");
  auto v = run_seconds;
  std::sort(v.begin(), v.end());
  const auto m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

BenchmarkSpec parse_benchmark_spec(const std::string& json_text, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("benchmark spec is not valid JSON: ") + e.what());
  }
  BenchmarkSpec s;
  try {
    for (const auto& d : j.at("datasets")) s.datasets.push_back(parse_dataset(d, base_dir));
    s.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("k_policy")) {
      const auto& kp = j["k_policy"];
      const auto type = kp.is_string() ? kp.get<std::string>() : get_or<std::string>(kp, "type", "");
      if (type == "ground_truth_k") {
        s.k_policy = KPolicy::ground_truth_k;
      } else if (type == "fixed") {
        s.k_policy = KPolicy::fixed;
        s.k = kp.at("k").get<std::size_t>();
      } else {
        throw InvalidArgument("unknown k_policy '" + type + "'");
      }
    }
    s.seeds = get_or(j, "seeds", s.seeds);
    s.restarts = get_or(j, "restarts", s.restarts);
    s.outputs = resolve(base_dir, get_or(j, "outputs", s.outputs));
    s.gcc = get_or(j, "gcc", s.gcc);
    s.timing = get_or(j, "timing", s.timing);
    s.timing_runs = get_or(j, "timing_runs", s.timing_runs);
    s.workers = get_or(j, "workers", s.workers);
    s.blockmodel_max_vertices = get_or(j, "blockmodel_max_vertices", s.blockmodel_max_vertices);
    if (j.contains("params")) {
      const auto& pj = j["params"];
      s.params.tol = get_or(pj, "tol", s.params.tol);
      s.params.tau_plus = get_or(pj, "tau_plus", s.params.tau_plus);
      s.params.tau_minus = get_or(pj, "tau_minus", s.params.tau_minus);
      s.params.walk_len = get_or(pj, "walk_len", s.params.walk_len);
      s.params.trees = get_or(pj, "trees", s.params.trees);
      s.params.workers = get_or(pj, "workers", s.params.workers);
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed benchmark spec: ") + e.what());
  }
  if (s.datasets.empty()) throw InvalidArgument("benchmark spec lists no datasets");
  if (s.methods.empty()) throw InvalidArgument("benchmark spec lists no methods");
  if (s.seeds.empty()) throw InvalidArgument("benchmark spec lists no seeds");
  for (const auto& m : s.methods) find_method(m);
  for (std::size_t i = 0; i < s.datasets.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (s.datasets[i].name == s.datasets[j].name) throw InvalidArgument("duplicate dataset name '" + s.datasets[i].name + "'");
    }
  }
  if (s.k_policy == KPolicy::fixed && s.k < 2) throw InvalidArgument("fixed k must be at least 2");
  if (s.k_policy == KPolicy::ground_truth_k) {
    for (const auto& d : s.datasets) {
      if (!has_truth(d)) throw InvalidArgument("dataset '" + d.name + "' needs labels for the ground_truth_k policy");
    }
  }
  if (s.timing && s.timing_runs == 0) throw InvalidArgument("timing_runs must be positive");
  return s;
}

BenchmarkSpec load_benchmark_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open benchmark spec " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_benchmark_spec(buf.str(), fs::path(path).parent_path().string());
}

std::string benchmark_spec_to_json(const BenchmarkSpec& s) {
  json j;
  for (const auto& d : s.datasets) {
    json dj{{"name", d.name}, {"format", d.format == EdgeFormat::csv ? "csv" : "snap"}};
    if (!d.edges.empty()) dj["edges"] = d.edges;
    if (d.labels) dj["labels"] = *d.labels;
    if (d.powerlaw) {
      dj["generator"] = {{"type", "powerlaw"},
                         {"vertices", d.powerlaw->vertices},
                         {"edges", d.powerlaw->edges},
                         {"exponent", d.powerlaw->exponent},
                         {"positive_fraction", d.powerlaw->positive_fraction},
                         {"factions", d.powerlaw->factions},
                         {"seed", d.generator_seed}};
    }
    if (d.planted) {
      dj["generator"] = {{"type", "planted"},
                         {"sizes", d.planted->sizes},
                         {"p_in", d.planted->p_in},
                         {"p_out", d.planted->p_out},
                         {"flip", d.planted->flip},
                         {"seed", d.generator_seed}};
    }
    j["datasets"].push_back(dj);
  }
  j["methods"] = s.methods;
  j["k_policy"] = s.k_policy == KPolicy::fixed ? json{{"type", "fixed"}, {"k", s.k}} : json{{"type", "ground_truth_k"}};
  j["seeds"] = s.seeds;
  j["restarts"] = s.restarts;
  j["outputs"] = s.outputs;
  j["gcc"] = s.gcc;
  j["timing"] = s.timing;
  j["timing_runs"] = s.timing_runs;
  j["workers"] = s.workers;
  j["blockmodel_max_vertices"] = s.blockmodel_max_vertices;
  j["params"] = {{"tol", s.params.tol},           {"tau_plus", s.params.tau_plus}, {"tau_minus", s.params.tau_minus},
                 {"walk_len", s.params.walk_len}, {"trees", s.params.trees},       {"workers", s.params.workers}};
  return j.dump(2);
}

Dataset load_dataset(const DatasetSpec& spec, bool gcc) {
  std::optional<SignedGraph> g;
  std::optional<Labeling> truth;
  if (spec.powerlaw || spec.planted) {
    auto gen = spec.powerlaw ? powerlaw_signed(*spec.powerlaw, spec.generator_seed)
                             : planted_factions(*spec.planted, spec.generator_seed);
    g.emplace(std::move(gen.graph));
    if (!gen.factions.empty()) truth = std::move(gen.factions);
  } else {
    g.emplace(load_edge_list(spec.edges, spec.format));
    if (spec.labels) truth = load_labels(*spec.labels, *g);
  }
  if (!gcc) return Dataset{spec.name, std::move(*g), std::move(truth)};
  auto view = greatest_connected_component(*g);
  if (truth) {
    Labeling sub(view.new_to_old.size());
    for (std::size_t i = 0; i < sub.size(); ++i) sub[i] = (*truth)[view.new_to_old[i]];
    truth = canonical_labels(sub);
  }
  return Dataset{spec.name, std::move(view.graph), std::move(truth)};
}

void write_blockmodel_pgm(const SignedGraph& g, const Labeling& labels, std::ostream& out) {
  const auto n = g.num_vertices();
  if (labels.size() != n) throw InvalidArgument("labeling length does not match graph");
  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  auto key = [&](Vertex v) {
    return labels[v] == kUnassigned ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(labels[v]);
  };
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return key(a) < key(b); });
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<unsigned char> pixels(n * n, 255);
  for (const auto& e : g.edges()) {
    const unsigned char level = e.sign == Sign::positive ? 0 : 128;
    pixels[pos[e.u] * n + pos[e.v]] = level;
    pixels[pos[e.v] * n + pos[e.u]] = level;
  }
  out << "P5\n" << n << ' ' << n << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

std::optional<long> peak_rss_kb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stol(line.substr(6));
  }
  return std::nullopt;
}

bool reset_peak_rss() {
  std::ofstream out("/proc/self/clear_refs");
  if (!out) return false;
  out << "5";
  return static_cast<bool>(out.flush());
}

BenchResult run_benchmark(const BenchmarkSpec& spec) {
  const fs::path dir(spec.outputs);
  fs::create_directories(dir / "labels");
  BenchResult result;

  std::vector<Dataset> datasets;
  for (const auto& d : spec.datasets) datasets.push_back(load_dataset(d, spec.gcc));

  struct Job {
    std::size_t dataset;
    std::string method;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (const auto& m : spec.methods) {
      for (auto s : spec.seeds) jobs.push_back({d, m, s});
    }
  }
  std::vector<CellResult> cells(jobs.size());
  auto run_job = [&](std::size_t i) {
    const auto& ds = datasets[jobs[i].dataset];
    std::size_t k = 0;
    try {
      k = resolve_k(spec, ds);
    } catch (const std::exception& e) {
      cells[i].dataset = ds.name;
      cells[i].method = jobs[i].method;
      cells[i].seed = jobs[i].seed;
      cells[i].error = e.what();
      return;
    }
    cells[i] = run_cell(ds, jobs[i].method, jobs[i].seed, k, spec, spec.timing ? spec.timing_runs : 0);
  };
  if (spec.timing) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::size_t workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, jobs.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) run_job(i);
      }));
    }
    for (auto& f : pool) f.get();
  }

  auto record = [&](const std::string& name) { result.files.push_back(name); };

  // Per-cell labels and blockmodels.
  for (const auto& c : cells) {
    if (!c.ok) continue;
    const auto& ds = *std::find_if(datasets.begin(), datasets.end(), [&](const Dataset& d) { return d.name == c.dataset; });
    const std::string stem = c.dataset + "_" + c.method + "_s" + std::to_string(c.seed);
    {
      auto out = open_out(dir / "labels" / (stem + ".csv"));
      write_labels(ds.graph, c.labels, out);
      record("labels/" + stem + ".csv");
    }
    if (ds.graph.num_vertices() <= spec.blockmodel_max_vertices) {
      auto out = open_out(dir / ("blockmodel_" + stem + ".pgm"));
      write_blockmodel_pgm(ds.graph, c.labels, out);
      record("blockmodel_" + stem + ".pgm");
    }
  }
  for (const auto& ds : datasets) {
    if (!ds.truth || ds.graph.num_vertices() > spec.blockmodel_max_vertices) continue;
    auto out = open_out(dir / ("blockmodel_" + ds.name + "_ground.pgm"));
    write_blockmodel_pgm(ds.graph, *ds.truth, out);
    record("blockmodel_" + ds.name + "_ground.pgm");
  }

  // Mutual ARI, one matrix per dataset and seed.
  for (const auto& ds : datasets) {
    for (auto seed : spec.seeds) {
      AriMatrix m;
      std::vector<const Labeling*> ls;
      if (ds.truth) {
        m.names.push_back("ground");
        ls.push_back(&*ds.truth);
      }
      for (const auto& c : cells) {
        if (c.dataset != ds.name || c.seed != seed) continue;
        m.names.push_back(c.method);
        ls.push_back(c.ok ? &c.labels : nullptr);
      }
      const auto k = static_cast<Eigen::Index>(ls.size());
      m.values = Eigen::MatrixXd::Constant(k, k, std::nan(""));
      for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = i; j < k; ++j) {
          if (!ls[i] || !ls[j]) continue;
          try {
            m.values(i, j) = m.values(j, i) = i == j ? 1.0 : adjusted_rand_index(*ls[i], *ls[j]);
          } catch (const InvalidArgument&) {
          }
        }
      }
      const std::string name = "ari_" + ds.name + "_s" + std::to_string(seed) + ".csv";
      auto out = open_out(dir / name);
      write_ari_csv(m, out);
      record(name);
    }
  }

  {
    auto out = open_out(dir / "edge_agreement.csv");
    out << "dataset,method,seed,k,status,pos_in,neg_out,ari_vs_ground,clusters,largest_fraction,collapsed,error\n";
    for (const auto& ds : datasets) {
      if (!ds.truth) continue;
      const auto a = edge_agreement(ds.graph, *ds.truth);
      const auto sizes = cluster_sizes(with_outcast_cluster(*ds.truth));
      const double largest = static_cast<double>(sizes.front()) / ds.graph.num_vertices();
      out << ds.name << ",ground,," << num_clusters(*ds.truth) << ",ok," << opt_real(a.pos_in) << ','
          << opt_real(a.neg_out) << ",1," << sizes.size() << ',' << format_real(largest) << ','
          << (largest > 0.95 ? 1 : 0) << ",\n";
    }
    for (const auto& c : cells) {
      out << c.dataset << ',' << c.method << ',' << c.seed << ',' << c.k << ',' << (c.ok ? "ok" : "failed") << ','
          << opt_real(c.pos_in) << ',' << opt_real(c.neg_out) << ',' << opt_real(c.ari_vs_ground) << ','
          << (c.ok ? std::to_string(c.sizes_ascending.size()) : "") << ','
          << (c.ok ? format_real(c.largest_fraction) : "") << ',' << (c.ok ? (c.collapsed ? "1" : "0") : "") << ','
          << csv_field(c.error) << '\n';
    }
    record("edge_agreement.csv");
  }
  if (spec.timing) {
    auto out = open_out(dir / "timing.csv");
    out << "dataset,method,seed,status,median_seconds";
    for (std::size_t r = 0; r < spec.timing_runs; ++r) out << ",run" << r + 1;
    out << ",peak_rss_kb\n";
    for (const auto& c : cells) {
      out << c.dataset << ',' << c.method << ',' << c.seed << ',' << (c.ok ? "ok" : "failed") << ','
          << (c.ok ? format_real(c.median_seconds()) : "");
      for (std::size_t r = 0; r < spec.timing_runs; ++r) {
        out << ',' << (r < c.run_seconds.size() ? format_real(c.run_seconds[r]) : "");
      }
      out << ',' << (c.peak_rss_kb ? std::to_string(*c.peak_rss_kb) : "") << '\n';
    }
    record("timing.csv");
  }
  {
    auto out = open_out(dir / "community_sizes.csv");
    out << "dataset,method,seed,rank,size\n";
    for (const auto& c : cells) {
      for (std::size_t r = 0; r < c.sizes_ascending.size(); ++r) {
        out << c.dataset << ',' << c.method << ',' << c.seed << ',' << r << ',' << c.sizes_ascending[r] << '\n';
      }
    }
    record("community_sizes.csv");
  }
  result.cells = std::move(cells);
  return result;
}

}  // namespace sgc
