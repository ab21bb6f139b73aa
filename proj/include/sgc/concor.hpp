#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

struct ConcorOptions {
  std::size_t depth = 1;
  double eps = 1e-10;  // stop once no correlation entry moves this far
  std::size_t max_iter = 1000;
};

struct ConcorResult {
  std::vector<Labeling> levels;  // levels[d] after d + 1 rounds of splitting
  const Labeling& leaves() const { return levels.back(); }
};

// Iterated column correlations of m, split by the sign of the first row and
// recursed per block. Zero-variance columns correlate 0 with everything and
// join the block of the first usable column.
ConcorResult concor(const Eigen::MatrixXd& m, const ConcorOptions& opt = {});

// Adjacency matrix input, depth ceil(log2 k).
Labeling concor_cluster(const SignedGraph& g, std::size_t k, const ConcorOptions& opt = {});

}  // namespace sgc
