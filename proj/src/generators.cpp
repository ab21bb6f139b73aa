#include "sgc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {

GeneratedGraph powerlaw_signed(const PowerLawConfig& cfg, std::uint64_t seed) {
  const std::size_t n = cfg.vertices;
  if (n < 2) throw InvalidArgument("need at least two vertices");
  if (cfg.edges > n * (n - 1) / 4) throw InvalidArgument("edge target too dense for a Chung-Lu graph");
  if (!(cfg.exponent > 2.0)) throw InvalidArgument("exponent must exceed 2");
  if (cfg.positive_fraction < 0.0 || cfg.positive_fraction > 1.0) throw InvalidArgument("positive fraction out of range");
  Rng rng = make_rng(seed, 0x9017);

  // w_i proportional to (i + 1)^(-1 / (exponent - 1)).
  std::vector<double> cum(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::pow(static_cast<double>(i + 1), -1.0 / (cfg.exponent - 1.0));
    cum[i] = total;
  }
  auto draw = [&]() {
    const double r = uniform01(rng) * total;
    return static_cast<Vertex>(std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
  };
  // Shuffle ids so degree does not follow vertex order.
  std::vector<Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  for (std::size_t i = n - 1; i > 0; --i) std::swap(ids[i], ids[uniform_index(rng, i + 1)]);

  std::set<std::pair<Vertex, Vertex>> seen;
  std::vector<Edge> edges;
  edges.reserve(cfg.edges);
  while (edges.size() < cfg.edges) {
    Vertex u = ids[std::min<Vertex>(draw(), static_cast<Vertex>(n - 1))];
    Vertex v = ids[std::min<Vertex>(draw(), static_cast<Vertex>(n - 1))];
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (!seen.emplace(u, v).second) continue;
    edges.push_back({u, v, Sign::positive, 1.0});
  }

  GeneratedGraph out;
  std::vector<std::size_t> pool;
  if (cfg.factions > 0) {
    out.factions.resize(n);
    for (auto& f : out.factions) f = static_cast<ClusterId>(uniform_index(rng, cfg.factions));
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (out.factions[edges[i].u] != out.factions[edges[i].v]) pool.push_back(i);
  } else {
    pool.resize(edges.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  }
  const auto negatives = static_cast<std::size_t>(std::llround((1.0 - cfg.positive_fraction) * static_cast<double>(edges.size())));
  if (negatives > pool.size()) throw InvalidArgument("not enough cross-faction edges for the negative quota");
  for (std::size_t i = 0; i < negatives; ++i) {
    std::swap(pool[i], pool[i + uniform_index(rng, pool.size() - i)]);
    edges[pool[i]].sign = Sign::negative;
  }
  out.graph = SignedGraph(n, std::move(edges));
  return out;
}

GeneratedGraph planted_factions(const PlantedConfig& cfg, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0x91a7);
  GeneratedGraph out;
  for (std::size_t c = 0; c < cfg.sizes.size(); ++c)
    out.factions.insert(out.factions.end(), cfg.sizes[c], static_cast<ClusterId>(c));
  const auto n = static_cast<Vertex>(out.factions.size());
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const bool same = out.factions[u] == out.factions[v];
      if (uniform01(rng) >= (same ? cfg.p_in : cfg.p_out)) continue;
      bool positive = same;
      if (uniform01(rng) < cfg.flip) positive = !positive;
      edges.push_back({u, v, positive ? Sign::positive : Sign::negative, 1.0});
    }
  }
  out.graph = SignedGraph(n, std::move(edges));
  return out;
}

Eigen::MatrixXd gaussian_blobs(const Eigen::MatrixXd& centers, std::size_t per_center, double stddev,
                               std::uint64_t seed, Labeling* truth) {
  Rng rng = make_rng(seed, 0xb10b);
  const auto k = centers.rows();
  Eigen::MatrixXd x(k * static_cast<Eigen::Index>(per_center), centers.cols());
  if (truth) truth->clear();
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < per_center; ++i, ++row) {
      for (Eigen::Index j = 0; j < centers.cols(); ++j) x(row, j) = centers(c, j) + stddev * standard_normal(rng);
      if (truth) truth->push_back(static_cast<ClusterId>(c));
    }
  }
  return x;
}

}  // namespace sgc
