#include "sgc/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "sgc/error.hpp"

namespace sgc {

SignedGraph::SignedGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::int64_t> original_ids)
    : n_(n), edges_(std::move(edges)), original_ids_(std::move(original_ids)) {
  if (original_ids_.empty()) {
    original_ids_.resize(n_);
    std::iota(original_ids_.begin(), original_ids_.end(), std::int64_t{0});
  } else if (original_ids_.size() != n_) {
    throw InvalidArgument("original id count does not match vertex count");
  }
  for (auto& e : edges_) {
    if (e.u >= n_ || e.v >= n_) throw InvalidArgument("edge endpoint out of range");
    if (e.u == e.v) throw InvalidArgument("self-loop on vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0)) throw InvalidArgument("edge weight must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw InvalidArgument("duplicate edge (" + std::to_string(edges_[i].u) + ", " +
                            std::to_string(edges_[i].v) + ")");
    }
  }

  std::vector<std::size_t> deg(n_, 0);
  pos_deg_.assign(n_, 0.0);
  neg_deg_.assign(n_, 0.0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
    auto& side = e.sign == Sign::positive ? pos_deg_ : neg_deg_;
    side[e.u] += e.weight;
    side[e.v] += e.weight;
    if (e.sign == Sign::positive) ++num_positive_;
  }
  offsets_.assign(n_ + 1, 0);
  for (std::size_t v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adj_.resize(offsets_[n_]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adj_[fill[e.u]++] = {e.v, e.signed_weight()};
    adj_[fill[e.v]++] = {e.u, e.signed_weight()};
  }
  for (std::size_t v = 0; v < n_; ++v) {
    std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.v < b.v; });
  }
}

double SignedGraph::weight(Vertex u, Vertex v) const {
  auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& nb, Vertex x) { return nb.v < x; });
  return it != row.end() && it->v == v ? it->w : 0.0;
}

bool SignedGraph::has_edge(Vertex u, Vertex v) const { return weight(u, v) != 0.0; }

SignedGraph SignedGraph::induced_subgraph(std::span<const Vertex> vertices) const {
  std::vector<std::int64_t> map(n_, -1);
  std::vector<std::int64_t> ids;
  ids.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= n_) throw InvalidArgument("vertex out of range");
    if (map[vertices[i]] >= 0) throw InvalidArgument("repeated vertex in subgraph selection");
    map[vertices[i]] = static_cast<std::int64_t>(i);
    ids.push_back(original_ids_[vertices[i]]);
  }
  std::vector<Edge> sub;
  for (const auto& e : edges_) {
    if (map[e.u] >= 0 && map[e.v] >= 0) {
      sub.push_back({static_cast<Vertex>(map[e.u]), static_cast<Vertex>(map[e.v]), e.sign, e.weight});
    }
  }
  return SignedGraph(vertices.size(), std::move(sub), std::move(ids));
}

SignedGraph SignedGraph::positive_part() const {
  std::vector<Edge> pos;
  for (const auto& e : edges_) {
    if (e.sign == Sign::positive) pos.push_back(e);
  }
  return SignedGraph(n_, std::move(pos), original_ids_);
}

SignedGraph SignedGraph::unsigned_view() const {
  std::vector<Edge> all = edges_;
  for (auto& e : all) e.sign = Sign::positive;
  return SignedGraph(n_, std::move(all), original_ids_);
}

Labeling canonical_labels(const Labeling& labels) {
  std::unordered_map<ClusterId, ClusterId> remap;
  Labeling out(labels.size(), kUnassigned);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == kUnassigned) continue;
    auto [it, inserted] = remap.try_emplace(labels[i], static_cast<ClusterId>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

std::size_t num_clusters(const Labeling& labels) {
  std::vector<ClusterId> ids;
  for (auto c : labels) {
    if (c != kUnassigned) ids.push_back(c);
  }
  std::sort(ids.begin(), ids.end());
  return static_cast<std::size_t>(std::unique(ids.begin(), ids.end()) - ids.begin());
}

Labeling with_outcast_cluster(const Labeling& labels) {
  Labeling out = canonical_labels(labels);
  const auto outcast = static_cast<ClusterId>(num_clusters(out));
  for (auto& c : out) {
    if (c == kUnassigned) c = outcast;
  }
  return out;
}

std::vector<std::size_t> cluster_sizes(const Labeling& labels) {
  std::unordered_map<ClusterId, std::size_t> count;
  for (auto c : labels) {
    if (c != kUnassigned) ++count[c];
  }
  std::vector<std::size_t> sizes;
  for (const auto& [c, s] : count) sizes.push_back(s);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace sgc
