#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sgc {

using Vertex = std::uint32_t;
using ClusterId = std::int32_t;
inline constexpr ClusterId kUnassigned = -1;

enum class Sign : std::int8_t { negative = -1, positive = 1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }

struct Edge {
  Vertex u;  // u < v
  Vertex v;
  Sign sign;
  double weight = 1.0;

  double signed_weight() const { return sign_value(sign) * weight; }
};

struct Neighbor {
  Vertex v;
  double w;  // signed weight
};

// Undirected simple graph with +/-1 edge signs and positive magnitudes.
// Adjacency rows are sorted by neighbor id.
class SignedGraph {
 public:
  SignedGraph() = default;
  // Edges must be simple: no self-loops, no duplicate pairs. Endpoints are
  // reordered so u < v. original_ids defaults to the identity.
  SignedGraph(std::size_t n, std::vector<Edge> edges, std::vector<std::int64_t> original_ids = {});

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t num_positive() const { return num_positive_; }
  std::size_t num_negative() const { return edges_.size() - num_positive_; }

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  // Weighted degrees: sum of positive weights, of negative magnitudes, of |w|.
  double positive_degree(Vertex v) const { return pos_deg_[v]; }
  double negative_degree(Vertex v) const { return neg_deg_[v]; }
  double absolute_degree(Vertex v) const { return pos_deg_[v] + neg_deg_[v]; }

  // Signed weight of (u, v), 0 when absent.
  double weight(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  std::int64_t original_id(Vertex v) const { return original_ids_[v]; }
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

  bool is_complete() const { return n_ < 2 || edges_.size() == n_ * (n_ - 1) / 2; }

  // Subgraph on the listed vertices (in that order); original ids carried over.
  SignedGraph induced_subgraph(std::span<const Vertex> vertices) const;
  // Same vertex set, positive edges only.
  SignedGraph positive_part() const;
  // Same vertex set, every edge flipped to positive.
  SignedGraph unsigned_view() const;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adj_;
  std::vector<double> pos_deg_;
  std::vector<double> neg_deg_;
  std::vector<std::int64_t> original_ids_;
  std::size_t num_positive_ = 0;
};

// A cluster id per vertex; kUnassigned marks vertices a method declined to place.
using Labeling = std::vector<ClusterId>;

// Relabels clusters to 0..k-1 in order of first appearance; kUnassigned kept.
Labeling canonical_labels(const Labeling& labels);
std::size_t num_clusters(const Labeling& labels);
// Moves every unassigned vertex into one extra cluster.
Labeling with_outcast_cluster(const Labeling& labels);
// Cluster sizes in descending order (unassigned ignored).
std::vector<std::size_t> cluster_sizes(const Labeling& labels);

}  // namespace sgc
