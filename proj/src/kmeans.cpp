#include "sgc/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void validate(const Embedding& x, std::size_t k, const KMeansOptions& opt) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (k > n) throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " + std::to_string(n) + " points");
  if (!(opt.limit > 0.0)) throw InvalidArgument("limit must be positive");
  if (!x.allFinite()) throw InvalidArgument("embedding has non-finite entries");
}

// Nearest centroid per row (ties to the lower index) and squared distances.
void assign(const Embedding& x, const MatrixXd& c, Labeling& labels, VectorXd& dist) {
  const Index n = x.rows(), k = c.rows();
  const VectorXd cn = c.rowwise().squaredNorm();
  const MatrixXd cross = x * c.transpose();
  const VectorXd xn = x.rowwise().squaredNorm();
  labels.resize(static_cast<std::size_t>(n));
  dist.resize(n);
  for (Index i = 0; i < n; ++i) {
    Index best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < k; ++j) {
      const double d = cn(j) - 2.0 * cross(i, j);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    labels[static_cast<std::size_t>(i)] = static_cast<ClusterId>(best);
    dist(i) = std::max(0.0, xn(i) + bd);
  }
}

// Exact squared distances of each point to its own centroid.
double exact_inertia(const Embedding& x, const MatrixXd& c, const Labeling& labels, VectorXd* per_point = nullptr) {
  double total = 0.0;
  if (per_point) per_point->resize(x.rows());
  for (Index i = 0; i < x.rows(); ++i) {
    const double d = (x.row(i) - c.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
    if (per_point) (*per_point)(i) = d;
    total += d;
  }
  return total;
}

MatrixXd means(const Embedding& x, const Labeling& labels, std::size_t k, std::vector<std::size_t>& counts) {
  MatrixXd c = MatrixXd::Zero(static_cast<Index>(k), x.cols());
  counts.assign(k, 0);
  for (Index i = 0; i < x.rows(); ++i) {
    const auto l = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    c.row(static_cast<Index>(l)) += x.row(i);
    ++counts[l];
  }
  for (std::size_t j = 0; j < k; ++j)
    if (counts[j]) c.row(static_cast<Index>(j)) /= static_cast<double>(counts[j]);
  return c;
}

// Gives each empty cluster the point farthest from its centroid.
void repair_empty(const Embedding& x, Labeling& labels, MatrixXd& c, std::size_t k, std::vector<std::size_t>& counts) {
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j]) continue;
    VectorXd d;
    exact_inertia(x, c, labels, &d);
    Index far = -1;
    double best = -1.0;
    for (Index i = 0; i < x.rows(); ++i) {
      if (counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] > 1 && d(i) > best) {
        best = d(i);
        far = i;
      }
    }
    if (far < 0) throw MethodError("cannot repair empty cluster");
    --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
    labels[static_cast<std::size_t>(far)] = static_cast<ClusterId>(j);
    counts[j] = 1;
    c = means(x, labels, k, counts);
  }
}

KMeansResult lloyd(const Embedding& x, Labeling labels, std::size_t k, const KMeansOptions& opt) {
  KMeansResult r;
  std::vector<std::size_t> counts;
  MatrixXd c = means(x, labels, k, counts);
  repair_empty(x, labels, c, k, counts);
  VectorXd dist;
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    assign(x, c, labels, dist);
    MatrixXd next = means(x, labels, k, counts);
    for (std::size_t j = 0; j < k; ++j)
      if (!counts[j]) next.row(static_cast<Index>(j)) = c.row(static_cast<Index>(j));
    repair_empty(x, labels, next, k, counts);
    const double moved = (next - c).rowwise().norm().maxCoeff();
    c = std::move(next);
    r.inertia_history.push_back(exact_inertia(x, c, labels));
    r.iterations = it;
    if (moved < opt.limit) {
      // Only stop at a fixed point of the assignment.
      Labeling check;
      assign(x, c, check, dist);
      if (check == labels) break;
    }
  }
  r.labels = std::move(labels);
  r.centroids = std::move(c);
  r.inertia = r.inertia_history.empty() ? exact_inertia(x, r.centroids, r.labels) : r.inertia_history.back();
  return r;
}

Labeling seed_pp(const Embedding& x, std::size_t k, Rng& rng) {
  const Index n = x.rows();
  std::vector<Index> centers{static_cast<Index>(uniform_index(rng, static_cast<std::size_t>(n)))};
  VectorXd d2 = (x.rowwise() - x.row(centers[0])).rowwise().squaredNorm();
  while (centers.size() < k) {
    const double total = d2.sum();
    Index pick = -1;
    if (total > 0.0) {
      double r = uniform01(rng) * total;
      for (Index i = 0; i < n; ++i) {
        r -= d2(i);
        if (r < 0.0 && d2(i) > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Index i = n - 1; i >= 0 && pick < 0; --i)
          if (d2(i) > 0.0) pick = i;
      }
    } else {
      // Fewer distinct points than k: take any unused index.
      std::vector<Index> unused;
      for (Index i = 0; i < n; ++i)
        if (std::find(centers.begin(), centers.end(), i) == centers.end()) unused.push_back(i);
      pick = unused[uniform_index(rng, unused.size())];
    }
    centers.push_back(pick);
    d2 = d2.cwiseMin((x.rowwise() - x.row(pick)).rowwise().squaredNorm());
  }
  MatrixXd c(static_cast<Index>(k), x.cols());
  for (std::size_t j = 0; j < k; ++j) c.row(static_cast<Index>(j)) = x.row(centers[j]);
  Labeling labels;
  VectorXd dist;
  assign(x, c, labels, dist);
  // Each seed owns at least its own point.
  for (std::size_t j = 0; j < k; ++j) labels[static_cast<std::size_t>(centers[j])] = static_cast<ClusterId>(j);
  return labels;
}

}  // namespace

KMeansResult kmeans_pp(const Embedding& x, std::size_t k, const KMeansOptions& opt) {
  validate(x, k, opt);
  const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
  std::vector<KMeansResult> runs(restarts);
  auto run = [&](std::size_t r) {
    Rng rng = make_rng(opt.seed, r + 1);
    runs[r] = lloyd(x, seed_pp(x, k, rng), k, opt);
  };
  std::size_t workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, restarts);
  if (workers <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) run(r);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t r = w; r < restarts; r += workers) run(r);
      }));
    }
    for (auto& j : jobs) j.get();
  }
  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (runs[r].inertia < runs[best].inertia) best = r;
  return std::move(runs[best]);
}

KMeansResult lloyd_from_labels(const Embedding& x, const Labeling& init, std::size_t k, const KMeansOptions& opt) {
  validate(x, k, opt);
  if (init.size() != static_cast<std::size_t>(x.rows())) throw InvalidArgument("init labeling length mismatch");
  for (auto c : init)
    if (c < 0 || static_cast<std::size_t>(c) >= k) throw InvalidArgument("init label out of range");
  return lloyd(x, init, k, opt);
}

Embedding row_normalized(const Embedding& x) {
  Embedding y = x;
  for (Index i = 0; i < y.rows(); ++i) {
    const double nrm = y.row(i).norm();
    if (nrm > 0.0) y.row(i) /= nrm;
  }
  return y;
}

KernelKMeansResult weighted_kernel_kmeans(const MatrixXd& kernel, const VectorXd& weights, std::size_t k,
                                          const std::optional<Labeling>& init, std::size_t t_max, std::uint64_t seed) {
  const Index n = kernel.rows();
  if (kernel.cols() != n) throw InvalidArgument("kernel must be square");
  if (weights.size() != n) throw InvalidArgument("weight count does not match kernel");
  if ((weights.array() <= 0.0).any()) throw InvalidArgument("weights must be positive");
  if (k < 1 || k > static_cast<std::size_t>(n)) throw InvalidArgument("k out of range for kernel k-means");
  if (!kernel.isApprox(kernel.transpose(), 1e-12)) throw InvalidArgument("kernel must be symmetric");

  KernelKMeansResult res;
  MatrixXd kk = kernel;
  const double lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(kk, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (lmin <= 0.0) {
    // K + s W^-1 shifts the objective by a constant, so the optimum is unchanged.
    res.shift = -lmin * weights.maxCoeff() + 1e-10 * std::max(1.0, kk.cwiseAbs().maxCoeff());
    kk.diagonal() += res.shift * weights.cwiseInverse();
  }

  Labeling labels;
  if (init) {
    labels = *init;
    if (labels.size() != static_cast<std::size_t>(n)) throw InvalidArgument("init labeling length mismatch");
    for (auto c : labels)
      if (c < 0 || static_cast<std::size_t>(c) >= k) throw InvalidArgument("init label out of range");
  } else {
    Rng rng = make_rng(seed, 0x4e72);
    std::vector<Index> centers{static_cast<Index>(uniform_index(rng, static_cast<std::size_t>(n)))};
    auto fdist = [&](Index i, Index c) { return std::max(0.0, kk(i, i) + kk(c, c) - 2.0 * kk(i, c)); };
    VectorXd d2(n);
    for (Index i = 0; i < n; ++i) d2(i) = fdist(i, centers[0]);
    while (centers.size() < k) {
      double r = uniform01(rng) * d2.sum();
      Index pick = n - 1;
      for (Index i = 0; i < n; ++i) {
        r -= d2(i);
        if (r < 0.0) {
          pick = i;
          break;
        }
      }
      centers.push_back(pick);
      for (Index i = 0; i < n; ++i) d2(i) = std::min(d2(i), fdist(i, pick));
    }
    labels.assign(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double d = fdist(i, centers[c]);
        if (d < best) {
          best = d;
          labels[static_cast<std::size_t>(i)] = static_cast<ClusterId>(c);
        }
      }
    }
    for (std::size_t c = 0; c < k; ++c) labels[static_cast<std::size_t>(centers[c])] = static_cast<ClusterId>(c);
  }
  if (k > 1 && num_clusters(labels) == 1) throw MethodError("degenerate init: every point in one cluster");

  for (std::size_t t = 1; t <= t_max; ++t) {
    MatrixXd z = MatrixXd::Zero(n, static_cast<Index>(k));
    for (Index i = 0; i < n; ++i) z(i, labels[static_cast<std::size_t>(i)]) = weights(i);
    const VectorXd s = z.colwise().sum().transpose();
    const MatrixXd kz = kk * z;
    const VectorXd self = (z.transpose() * kz).diagonal();
    Labeling next(labels.size());
    std::size_t changed = 0;
    for (Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      ClusterId arg = labels[static_cast<std::size_t>(i)];
      for (Index c = 0; c < static_cast<Index>(k); ++c) {
        if (s(c) <= 0.0) continue;
        const double d = kk(i, i) - 2.0 * kz(i, c) / s(c) + self(c) / (s(c) * s(c));
        if (d < best) {
          best = d;
          arg = static_cast<ClusterId>(c);
        }
      }
      next[static_cast<std::size_t>(i)] = arg;
      if (arg != labels[static_cast<std::size_t>(i)]) ++changed;
    }
    labels = std::move(next);
    res.iterations = t;
    if (changed == 0) {
      res.converged = true;
      break;
    }
  }
  res.labels = std::move(labels);
  return res;
}

KernelKMeansResult weighted_kernel_kmeans(const SparseSymOperator& kernel, const VectorXd& weights, std::size_t k,
                                          const std::optional<Labeling>& init, std::size_t t_max, std::uint64_t seed) {
  return weighted_kernel_kmeans(kernel.to_dense(), weights, k, init, t_max, seed);
}

}  // namespace sgc
