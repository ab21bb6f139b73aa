#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sgc/graph.hpp"
#include "sgc/spectral.hpp"

namespace sgc {

struct HararyResult {
  bool balanced = false;
  Labeling parts;                     // two sides (0 holds vertex 0) when balanced
  std::vector<Vertex> witness_cycle;  // closed walk order, negative sign product
};

// Sign propagation along a BFS tree from vertex 0. Requires a connected graph.
HararyResult harary_bipartition(const SignedGraph& g);

// Harary bipartition, then unsigned spectral clustering of each side's
// positive subgraph into k_inner clusters.
Labeling harary_cluster(const SignedGraph& g, std::size_t k_inner, std::uint64_t seed, const SpectralOptions& opt = {});

struct WeakBalanceResult {
  bool weakly_balanced = false;
  Labeling labels;
  std::optional<Edge> witness;  // negative edge inside a positive component
};

// Components of the positive subgraph; requires a complete graph.
WeakBalanceResult weak_balance_partition(const SignedGraph& g);
// Throws MethodError with the witness edge when not weakly balanced.
Labeling weak_balance_cluster(const SignedGraph& g);

struct BalancedState {
  std::vector<std::int8_t> vertex_signs;
  std::size_t frustration = 0;
  std::vector<std::pair<Vertex, Vertex>> source_tree;
};

// Edges with s != sigma_u * sigma_v.
std::size_t frustration_of(const SignedGraph& g, const std::vector<std::int8_t>& signs);

// Random-weight minimum spanning trees, signs propagated from vertex 0.
std::vector<BalancedState> sample_balanced_states(const SignedGraph& g, std::size_t trees, std::uint64_t seed,
                                                  std::size_t workers = 0);

struct StatusInfluence {
  std::vector<double> status;
  std::vector<double> influence;
  std::size_t samples = 0;
};

StatusInfluence status_influence(const SignedGraph& g, const std::vector<BalancedState>& states);

// k-means on the (status, influence) plane.
Labeling graphb_km_cluster(const SignedGraph& g, std::size_t k, std::size_t trees, std::uint64_t seed,
                           const KMeansOptions& kopt = {}, StatusInfluence* out = nullptr);

// Rank-k sign completion of A, then k-means on the top-k eigenvectors of the
// completed matrix.
Labeling matrix_completion_cluster(const SignedGraph& g, std::size_t k, std::uint64_t seed, const KMeansOptions& kopt = {});
// The completed dense adjacency (exposed for tests).
Eigen::MatrixXd complete_signs(const SignedGraph& g, std::size_t k);

}  // namespace sgc
