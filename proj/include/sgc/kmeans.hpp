#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "sgc/graph.hpp"
#include "sgc/sparse.hpp"

namespace sgc {

// Rows are points.
using Embedding = Eigen::MatrixXd;

struct KMeansOptions {
  std::size_t restarts = 20;
  double limit = 1e-6;  // stop once no centroid moves this far
  std::size_t max_iter = 300;
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // 0: hardware concurrency
};

struct KMeansResult {
  Labeling labels;
  Eigen::MatrixXd centroids;  // k x dim
  double inertia = 0.0;
  std::size_t iterations = 0;
  std::vector<double> inertia_history;  // after each Lloyd iteration of the kept run
};

// Best-inertia result over restarts of D^2-seeded Lloyd iterations.
// Empty clusters take the point farthest from its current centroid.
KMeansResult kmeans_pp(const Embedding& x, std::size_t k, const KMeansOptions& opt = {});

// Lloyd iterations from a given assignment instead of seeding.
KMeansResult lloyd_from_labels(const Embedding& x, const Labeling& init, std::size_t k, const KMeansOptions& opt = {});

// Unit-length rows (zero rows left as is).
Embedding row_normalized(const Embedding& x);

struct KernelKMeansResult {
  Labeling labels;
  std::size_t iterations = 0;
  bool converged = false;
  double shift = 0.0;  // diagonal shift applied to reach definiteness
};

// Batch weighted kernel k-means. Without init, points are seeded by D^2
// sampling in feature space under seed.
KernelKMeansResult weighted_kernel_kmeans(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& weights, std::size_t k,
                                          const std::optional<Labeling>& init = std::nullopt, std::size_t t_max = 100,
                                          std::uint64_t seed = 0);
KernelKMeansResult weighted_kernel_kmeans(const SparseSymOperator& kernel, const Eigen::VectorXd& weights, std::size_t k,
                                          const std::optional<Labeling>& init = std::nullopt, std::size_t t_max = 100,
                                          std::uint64_t seed = 0);

}  // namespace sgc
