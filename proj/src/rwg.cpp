#include "sgc/rwg.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include "sgc/components.hpp"
#include "sgc/error.hpp"
#include "sgc/log.hpp"

namespace sgc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;

// sum_{k=1..L} theta^k with theta = D^-1 W
MatrixXd cumulative_walks(const MatrixXd& w, std::size_t steps) {
  MatrixXd theta = w;
  for (Index i = 0; i < theta.rows(); ++i) {
    const double d = theta.row(i).sum();
    if (d > 0.0) theta.row(i) /= d;
  }
  MatrixXd power = theta, total = theta;
  for (std::size_t k = 2; k <= steps; ++k) {
    power = power * theta;
    total += power;
  }
  return total;
}

}  // namespace

std::size_t positive_diameter(const SignedGraph& g) {
  if (!is_connected(g, ComponentMode::positive_only)) {
    throw DataError("positive subgraph is not connected; restrict to the positive GCC first");
  }
  std::int64_t diam = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto d = bfs_distances(g, v, ComponentMode::positive_only);
    diam = std::max(diam, *std::max_element(d.begin(), d.end()));
  }
  return static_cast<std::size_t>(diam);
}

MatrixXd rwg_matrix(const SignedGraph& g, const RwgConfig& cfg) {
  if (cfg.walk_len < 1) throw InvalidArgument("walk length must be at least 1");
  const std::size_t diam = positive_diameter(g);
  if (cfg.walk_len < diam) {
    throw MethodError("walk length " + std::to_string(cfg.walk_len) + " is below the positive diameter " +
                      std::to_string(diam) + "; every pair must be reachable by a positive walk of at most L steps");
  }
  if (cfg.walk_len >= 10) warn("walk length " + std::to_string(cfg.walk_len) + " >= 10; random-walk-gap quality degrades");

  const auto n = static_cast<Index>(g.num_vertices());
  MatrixXd wp = MatrixXd::Zero(n, n), wa = MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) {
    wa(e.u, e.v) = wa(e.v, e.u) = e.weight;
    if (e.sign == Sign::positive) wp(e.u, e.v) = wp(e.v, e.u) = e.weight;
  }
  MatrixXd hp = cumulative_walks(wp, cfg.walk_len);
  MatrixXd ha = cumulative_walks(wa, cfg.walk_len);
  hp = 0.5 * (hp + hp.transpose()).eval();
  ha = 0.5 * (ha + ha.transpose()).eval();

  MatrixXd gap = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      if (hp(i, j) > 0.0) gap(i, j) = std::max(0.0, (ha(i, j) - hp(i, j)) / hp(i, j));
  const double lo = gap.minCoeff(), hi = gap.maxCoeff();
  MatrixXd h = MatrixXd::Ones(n, n);
  if (hi > lo) h.array() -= (gap.array() - lo) / (hi - lo);
  return h;
}

FcsgResult fcsg_partition(const SignedGraph& g, const RwgConfig& cfg) {
  FcsgResult r;
  r.labels.assign(g.num_vertices(), kUnassigned);
  if (g.num_vertices() == 0) return r;
  const ComponentView view = greatest_connected_component(g, ComponentMode::positive_only);
  const SignedGraph& sub = view.graph;
  r.gcc_vertices = view.new_to_old;
  r.h = rwg_matrix(sub, cfg);
  const std::size_t n = sub.num_vertices();

  std::vector<std::map<Vertex, double>> adj(n);
  for (const auto& e : sub.edges()) {
    const double w = e.sign == Sign::positive ? e.weight * r.h(e.u, e.v) : -e.weight;
    adj[e.u][e.v] = w;
    adj[e.v][e.u] = w;
  }
  std::vector<bool> alive(n, true);
  std::vector<std::vector<Vertex>> members(n);
  for (Vertex v = 0; v < n; ++v) members[v] = {v};

  while (true) {
    Vertex bi = 0, bj = 0;
    double best = 0.0;
    bool found = false;
    // Scan in (i, j) order so the first maximum is the lexicographic lowest.
    for (Vertex i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (auto it = adj[i].upper_bound(i); it != adj[i].end(); ++it) {
        if (it->second > 0.0 && (!found || it->second > best)) {
          best = it->second;
          bi = i;
          bj = it->first;
          found = true;
        }
      }
    }
    if (!found) break;
    // Fuse bj into bi.
    adj[bi].erase(bj);
    adj[bj].erase(bi);
    for (const auto& [x, w] : adj[bj]) {
      adj[bi][x] += w;
      adj[x].erase(bj);
      adj[x][bi] = adj[bi][x];
    }
    adj[bj].clear();
    alive[bj] = false;
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    members[bj].clear();
  }

  ClusterId next = 0;
  for (Vertex i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    for (auto v : members[i]) r.labels[view.new_to_old[v]] = next;
    ++next;
  }
  return r;
}

Labeling fcsg_cluster(const SignedGraph& g, const RwgConfig& cfg) { return fcsg_partition(g, cfg).labels; }

}  // namespace sgc
