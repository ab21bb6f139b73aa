#pragma once

#include <Eigen/Dense>

#include "sgc/graph.hpp"

namespace sgc {

struct RwgConfig {
  std::size_t walk_len = 5;
};

// Random-walk-gap similarity on a graph whose positive part is connected.
// Cumulative walk probabilities over 1..L steps are computed for the positive
// graph and the unsigned graph, symmetrized as (H + H^T) / 2, and turned into
// the gap (H'' - H') / H'. Negative gaps clamp to 0, the rest is min-max
// scaled, and H = 1 - D*.
Eigen::MatrixXd rwg_matrix(const SignedGraph& g, const RwgConfig& cfg = {});

// Longest shortest path in the positive subgraph (throws if disconnected).
std::size_t positive_diameter(const SignedGraph& g);

struct FcsgResult {
  Labeling labels;  // kUnassigned outside the positive GCC
  std::vector<Vertex> gcc_vertices;
  Eigen::MatrixXd h;  // similarity over gcc_vertices
};

// Greedy contraction of the heaviest positive edge (ties: lowest (i, j)),
// summing weights of merged parallel edges, until no positive edge is left.
// Positive edges weigh w * h, negative ones -w.
FcsgResult fcsg_partition(const SignedGraph& g, const RwgConfig& cfg = {});
Labeling fcsg_cluster(const SignedGraph& g, const RwgConfig& cfg = {});

}  // namespace sgc
