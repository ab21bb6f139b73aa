#include "sgc/balance.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <queue>
#include <string>
#include <thread>

#include "sgc/components.hpp"
#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

void require_connected(const SignedGraph& g, const char* what) {
  if (g.num_vertices() == 0) throw DataError(std::string(what) + " needs a nonempty graph");
  if (!is_connected(g)) throw DataError(std::string(what) + " needs a connected graph; take the GCC first");
}

// Signs from a tree given as adjacency lists, rooted at vertex 0.
std::vector<std::int8_t> propagate(const std::vector<std::vector<Neighbor>>& tree, std::vector<Vertex>* parent = nullptr,
                                   std::vector<std::size_t>* depth = nullptr) {
  const std::size_t n = tree.size();
  std::vector<std::int8_t> sigma(n, 0);
  if (parent) parent->assign(n, 0);
  if (depth) depth->assign(n, 0);
  std::queue<Vertex> q;
  sigma[0] = 1;
  q.push(0);
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (const auto& nb : tree[u]) {
      if (sigma[nb.v] != 0) continue;
      sigma[nb.v] = static_cast<std::int8_t>(nb.w > 0 ? sigma[u] : -sigma[u]);
      if (parent) (*parent)[nb.v] = u;
      if (depth) (*depth)[nb.v] = (*depth)[u] + 1;
      q.push(nb.v);
    }
  }
  return sigma;
}

}  // namespace

HararyResult harary_bipartition(const SignedGraph& g) {
  require_connected(g, "Harary bipartition");
  const std::size_t n = g.num_vertices();
  // BFS tree over all edges.
  std::vector<std::vector<Neighbor>> tree(n);
  {
    std::vector<bool> seen(n, false);
    std::queue<Vertex> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (const auto& nb : g.neighbors(u)) {
        if (seen[nb.v]) continue;
        seen[nb.v] = true;
        tree[u].push_back(nb);
        tree[nb.v].push_back({u, nb.w});
        q.push(nb.v);
      }
    }
  }
  std::vector<Vertex> parent;
  std::vector<std::size_t> depth;
  const auto sigma = propagate(tree, &parent, &depth);
  HararyResult r;
  for (const auto& e : g.edges()) {
    if (sign_value(e.sign) == sigma[e.u] * sigma[e.v]) continue;
    // Tree path u -> lca -> v closed by the violating edge.
    std::vector<Vertex> left{e.u}, right{e.v};
    Vertex a = e.u, b = e.v;
    while (depth[a] > depth[b]) left.push_back(a = parent[a]);
    while (depth[b] > depth[a]) right.push_back(b = parent[b]);
    while (a != b) {
      left.push_back(a = parent[a]);
      right.push_back(b = parent[b]);
    }
    right.pop_back();
    r.witness_cycle = left;
    r.witness_cycle.insert(r.witness_cycle.end(), right.rbegin(), right.rend());
    return r;
  }
  r.balanced = true;
  r.parts.resize(n);
  for (Vertex v = 0; v < n; ++v) r.parts[v] = sigma[v] > 0 ? 0 : 1;
  return r;
}

Labeling harary_cluster(const SignedGraph& g, std::size_t k_inner, std::uint64_t seed, const SpectralOptions& opt) {
  if (k_inner < 1) throw InvalidArgument("k_inner must be at least 1");
  const HararyResult h = harary_bipartition(g);
  if (!h.balanced) {
    throw MethodError("graph is not balanced (witness cycle of length " + std::to_string(h.witness_cycle.size()) +
                      "); use graphB_km or a spectral method instead");
  }
  Labeling out(g.num_vertices(), kUnassigned);
  ClusterId next = 0;
  for (ClusterId side = 0; side < 2; ++side) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (h.parts[v] == side) members.push_back(v);
    if (members.empty()) continue;
    const std::size_t k = std::min(k_inner, members.size());
    if (k == 1) {
      for (auto v : members) out[v] = next;
      ++next;
      continue;
    }
    const SignedGraph sub = g.induced_subgraph(members).positive_part();
    const Labeling inner = canonical_labels(spectral_cluster(sub, LaplacianKind::unsigned_plain, k, seed, opt));
    for (std::size_t i = 0; i < members.size(); ++i) out[members[i]] = next + inner[i];
    next += static_cast<ClusterId>(num_clusters(inner));
  }
  return out;
}

WeakBalanceResult weak_balance_partition(const SignedGraph& g) {
  if (!g.is_complete()) throw InvalidArgument("weak balance is defined for complete graphs only");
  DisjointSets ds(g.num_vertices());
  for (const auto& e : g.edges())
    if (e.sign == Sign::positive) ds.unite(e.u, e.v);
  WeakBalanceResult r;
  for (const auto& e : g.edges()) {
    if (e.sign == Sign::negative && ds.find(e.u) == ds.find(e.v)) {
      r.witness = e;
      return r;
    }
  }
  r.weakly_balanced = true;
  Labeling raw(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) raw[v] = static_cast<ClusterId>(ds.find(v));
  r.labels = canonical_labels(raw);
  return r;
}

Labeling weak_balance_cluster(const SignedGraph& g) {
  auto r = weak_balance_partition(g);
  if (!r.weakly_balanced) {
    throw MethodError("graph is not weakly balanced: negative edge (" + std::to_string(g.original_id(r.witness->u)) +
                      ", " + std::to_string(g.original_id(r.witness->v)) + ") lies inside a positive component");
  }
  return r.labels;
}

std::size_t frustration_of(const SignedGraph& g, const std::vector<std::int8_t>& signs) {
  std::size_t bad = 0;
  for (const auto& e : g.edges())
    if (sign_value(e.sign) != signs[e.u] * signs[e.v]) ++bad;
  return bad;
}

std::vector<BalancedState> sample_balanced_states(const SignedGraph& g, std::size_t trees, std::uint64_t seed,
                                                  std::size_t workers) {
  if (trees < 1) throw InvalidArgument("need at least one tree");
  require_connected(g, "balanced-state sampling");
  const std::size_t n = g.num_vertices();
  std::vector<BalancedState> states(trees);
  auto one = [&](std::size_t t) {
    Rng rng = make_rng(seed, t + 1);
    std::vector<std::pair<double, std::size_t>> order(g.num_edges());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = {uniform01(rng), i};
    std::sort(order.begin(), order.end());
    DisjointSets ds(n);
    std::vector<std::vector<Neighbor>> tree(n);
    BalancedState& s = states[t];
    s.source_tree.reserve(n - 1);
    for (const auto& [w, i] : order) {
      const Edge& e = g.edges()[i];
      if (!ds.unite(e.u, e.v)) continue;
      tree[e.u].push_back({e.v, e.signed_weight()});
      tree[e.v].push_back({e.u, e.signed_weight()});
      s.source_tree.emplace_back(e.u, e.v);
      if (s.source_tree.size() + 1 == n) break;
    }
    s.vertex_signs = propagate(tree);
    s.frustration = frustration_of(g, s.vertex_signs);
  };
  std::size_t w = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  w = std::min(w, trees);
  if (w <= 1) {
    for (std::size_t t = 0; t < trees; ++t) one(t);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t j = 0; j < w; ++j)
      jobs.push_back(std::async(std::launch::async, [&, j] {
        for (std::size_t t = j; t < trees; t += w) one(t);
      }));
    for (auto& f : jobs) f.get();
  }
  return states;
}

StatusInfluence status_influence(const SignedGraph& g, const std::vector<BalancedState>& states) {
  if (states.empty()) throw InvalidArgument("need at least one balanced state");
  const std::size_t n = g.num_vertices();
  StatusInfluence r;
  r.status.assign(n, 0.0);
  r.influence.assign(n, 0.0);
  r.samples = states.size();
  std::vector<double> agree(n);
  for (const auto& s : states) {
    if (s.vertex_signs.size() != n) throw InvalidArgument("state does not match graph");
    std::size_t plus = 0;
    for (auto x : s.vertex_signs) plus += x > 0;
    // Ties go to the side holding vertex 0.
    std::int8_t major = plus * 2 > n ? 1 : (plus * 2 < n ? -1 : s.vertex_signs[0]);
    std::fill(agree.begin(), agree.end(), 0.0);
    for (const auto& e : g.edges()) {
      if (s.vertex_signs[e.u] == major && s.vertex_signs[e.v] == major) {
        agree[e.u] += 1.0;
        agree[e.v] += 1.0;
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (s.vertex_signs[v] != major) continue;
      r.status[v] += 1.0;
      if (g.degree(v)) r.influence[v] += agree[v] / static_cast<double>(g.degree(v));
    }
  }
  const double m = static_cast<double>(states.size());
  for (Vertex v = 0; v < n; ++v) {
    r.status[v] /= m;
    r.influence[v] /= m;
  }
  return r;
}

Labeling graphb_km_cluster(const SignedGraph& g, std::size_t k, std::size_t trees, std::uint64_t seed,
                           const KMeansOptions& kopt, StatusInfluence* out) {
  const auto states = sample_balanced_states(g, trees, seed, kopt.workers);
  StatusInfluence si = status_influence(g, states);
  Embedding x(static_cast<Eigen::Index>(g.num_vertices()), 2);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    x(v, 0) = si.status[v];
    x(v, 1) = si.influence[v];
  }
  KMeansOptions ko = kopt;
  ko.seed = seed;
  Labeling labels = kmeans_pp(x, k, ko).labels;
  if (out) *out = std::move(si);
  return labels;
}

Eigen::MatrixXd complete_signs(const SignedGraph& g, std::size_t k) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  if (k < 1 || k > g.num_vertices()) throw InvalidArgument("completion rank out of range");
  if (g.num_vertices() > 4096) throw InvalidArgument("matrix completion is dense; graph too large");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = e.signed_weight();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const auto kk = static_cast<Eigen::Index>(k);
  const Eigen::MatrixXd v = es.eigenvectors().rightCols(kk);
  const Eigen::MatrixXd low = v * es.eigenvalues().tail(kk).asDiagonal() * v.transpose();
  Eigen::MatrixXd c = a;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (a(i, j) == 0.0) c(i, j) = c(j, i) = low(i, j) > 0.0 ? 1.0 : (low(i, j) < 0.0 ? -1.0 : 0.0);
  return c;
}

Labeling matrix_completion_cluster(const SignedGraph& g, std::size_t k, std::uint64_t seed, const KMeansOptions& kopt) {
  if (k < 2) throw InvalidArgument("matrix completion clustering needs k >= 2");
  const Eigen::MatrixXd c = complete_signs(g, k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  const Embedding x = es.eigenvectors().rightCols(static_cast<Eigen::Index>(k));
  KMeansOptions ko = kopt;
  ko.seed = seed;
  return kmeans_pp(x, k, ko).labels;
}

}  // namespace sgc
