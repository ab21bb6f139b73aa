#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sgc/eigensolver.hpp"
#include "sgc/error.hpp"
#include "sgc/rng.hpp"

using namespace sgc;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

EigenOptions sparse_path(std::uint64_t seed = 1) {
  EigenOptions o;
  o.dense_threshold = 0;
  o.seed = seed;
  return o;
}

// Sparse random symmetric matrix with a few nonzeros per row.
SparseSymOperator random_sparse(std::size_t n, double density, std::uint64_t seed, double diag_boost = 0.0) {
  Rng rng = make_rng(seed, 3);
  std::vector<SymEntry> entries;
  for (std::size_t i = 0; i < n; ++i) {
    entries.push_back({i, i, standard_normal(rng) + diag_boost});
    for (std::size_t j = i + 1; j < n; ++j)
      if (uniform01(rng) < density) entries.push_back({i, j, standard_normal(rng)});
  }
  return SparseSymOperator::from_entries(n, entries);
}

MatrixXd random_pd(std::size_t n, std::uint64_t seed) {
  Rng rng = make_rng(seed, 8);
  MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = standard_normal(rng);
  return g * g.transpose() + static_cast<double>(n) * MatrixXd::Identity(n, n) * 0.1;
}

MatrixXd laplacian_path(std::size_t n) {
  MatrixXd l = MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    l(i, i) += 1;
    l(i + 1, i + 1) += 1;
    l(i, i + 1) = l(i + 1, i) = -1;
  }
  return l;
}

void expect_pairs_valid(const SparseSymOperator& m, const EigenPairs& p, double tol) {
  const double bound = tol * std::max(1.0, m.frobenius_norm());
  for (Eigen::Index j = 0; j < p.values.size(); ++j) {
    const VectorXd r = m.apply(p.vectors.col(j)) - p.values(j) * p.vectors.col(j);
    EXPECT_LE(r.norm(), bound * (1 + 1e-9));
    if (j > 0) EXPECT_LE(p.values(j - 1), p.values(j));
  }
  const MatrixXd g = p.vectors.transpose() * p.vectors;
  EXPECT_LE((g - MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff(), 1e-8);
}

}  // namespace

TEST(SparseSymOperator, StoresUpperAndMirrors) {
  auto m = SparseSymOperator::from_entries(3, {{0, 1, 2.0}, {1, 0, 0.5}, {2, 2, 4.0}});
  MatrixXd d = m.to_dense();
  EXPECT_DOUBLE_EQ(d(0, 1), 2.5);
  EXPECT_DOUBLE_EQ(d(1, 0), 2.5);
  EXPECT_DOUBLE_EQ(d(2, 2), 4.0);
  EXPECT_TRUE(d.isApprox(d.transpose()));
  MatrixXd x = MatrixXd::Random(3, 2);
  EXPECT_TRUE(m.apply(x).isApprox(d * x));
  auto s = m.with_shift(1.5);
  EXPECT_TRUE(s.to_dense().isApprox(d + 1.5 * MatrixXd::Identity(3, 3)));
  EXPECT_TRUE(MatrixXd(s.full()).isApprox(s.to_dense()));
  EXPECT_NEAR(s.frobenius_norm(), s.to_dense().norm(), 1e-12);
  EXPECT_EQ(s.entries().size(), 4u);
  EXPECT_THROW(SparseSymOperator::from_entries(2, {{0, 0, std::nan("")}}), InvalidArgument);
  EXPECT_THROW(SparseSymOperator::from_entries(2, {{0, 2, 1.0}}), InvalidArgument);
}

TEST(SparseSymOperator, CombineScalePermute) {
  auto a = random_sparse(6, 0.5, 1);
  auto b = random_sparse(6, 0.5, 2).with_shift(0.3);
  EXPECT_TRUE(SparseSymOperator::combine(2.0, a, -1.0, b).to_dense().isApprox(2 * a.to_dense() - b.to_dense()));
  VectorXd d = VectorXd::LinSpaced(6, 1, 2);
  EXPECT_TRUE(b.scaled(d).to_dense().isApprox(d.asDiagonal() * b.to_dense() * d.asDiagonal()));
  std::vector<std::size_t> perm{3, 1, 5, 0, 4, 2};
  MatrixXd p = MatrixXd::Zero(6, 6);
  for (std::size_t i = 0; i < 6; ++i) p(perm[i], i) = 1;
  EXPECT_TRUE(a.permuted(perm).to_dense().isApprox(p.transpose() * a.to_dense() * p));
  std::ostringstream out;
  write_coordinate(SparseSymOperator::from_entries(2, {{0, 1, -1.0}, {0, 0, 1.0}}), out);
  EXPECT_EQ(out.str(), "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 1\n2 1 -1\n");
}

TEST(Eigen, SinglePositiveEdge) {
  auto m = SparseSymOperator::from_dense((MatrixXd(2, 2) << 1, -1, -1, 1).finished());
  auto p = smallest_k_eigenpairs(m, 2);
  EXPECT_NEAR(p.values(0), 0.0, 1e-12);
  EXPECT_NEAR(p.values(1), 2.0, 1e-12);
}

TEST(Eigen, PathP3BothPaths) {
  auto m = SparseSymOperator::from_dense(laplacian_path(3));
  for (const auto& opt : {EigenOptions{}, sparse_path()}) {
    auto p = smallest_k_eigenpairs(m, 3, opt);
    EXPECT_NEAR(p.values(0), 0.0, 1e-9);
    EXPECT_NEAR(p.values(1), 1.0, 1e-9);
    EXPECT_NEAR(p.values(2), 3.0, 1e-9);
  }
}

TEST(Eigen, IdentityDegenerate) {
  for (const auto& opt : {EigenOptions{}, sparse_path()}) {
    auto p = smallest_k_eigenpairs(SparseSymOperator::identity(5), 2, opt);
    EXPECT_NEAR(p.values(0), 1.0, 1e-12);
    EXPECT_NEAR(p.values(1), 1.0, 1e-12);
    expect_pairs_valid(SparseSymOperator::identity(5), p, 1e-8);
  }
}

TEST(Eigen, KOutOfRange) {
  auto m = SparseSymOperator::identity(4);
  EXPECT_THROW(smallest_k_eigenpairs(m, 0), InvalidArgument);
  EXPECT_THROW(smallest_k_eigenpairs(m, 5), InvalidArgument);
}

TEST(Eigen, SparseMatchesDenseOracle) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 20 + 15 * seed;  // up to 185
    auto m = random_sparse(n, 4.0 / static_cast<double>(n), seed, 0.0);
    const std::size_t k = 1 + seed % 7;
    Eigen::SelfAdjointEigenSolver<MatrixXd> oracle(m.to_dense());
    auto p = smallest_k_eigenpairs(m, k, sparse_path(seed));
    ASSERT_FALSE(p.dense);
    expect_pairs_valid(m, p, 1e-8);
    for (std::size_t j = 0; j < k; ++j) EXPECT_NEAR(p.values(j), oracle.eigenvalues()(j), 1e-8) << seed;
    // The invariant subspace matches the oracle's wherever the gap after k is clear.
    const double gap = oracle.eigenvalues()(k) - oracle.eigenvalues()(k - 1);
    if (gap > 1e-3) {
      const MatrixXd q = oracle.eigenvectors().leftCols(k);
      const MatrixXd proj = p.vectors - q * (q.transpose() * p.vectors);
      EXPECT_LE(proj.norm(), 1e-6 / std::min(1.0, gap));
    }
  }
}

TEST(Eigen, DeterministicUnderSeed) {
  auto m = random_sparse(80, 0.05, 9);
  auto a = smallest_k_eigenpairs(m, 4, sparse_path(5));
  auto b = smallest_k_eigenpairs(m, 4, sparse_path(5));
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(Eigen, PermutationInvariance) {
  auto m = random_sparse(60, 0.08, 21);
  std::vector<std::size_t> perm(60);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng = make_rng(4);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (const auto& opt : {EigenOptions{}, sparse_path(3)}) {
    auto a = smallest_k_eigenpairs(m, 5, opt);
    auto b = smallest_k_eigenpairs(m.permuted(perm), 5, opt);
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(a.values(j), b.values(j), 1e-8);
  }
}

TEST(Eigen, NonConvergenceReportsBestResidual) {
  auto m = random_sparse(150, 0.05, 2);
  EigenOptions opt = sparse_path();
  opt.max_iter = 2;
  opt.tol = 1e-14;
  try {
    smallest_k_eigenpairs(m, 5, opt);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.best_residual(), 0.0);
  }
}

TEST(Generalized, IdentityReducesToStandard) {
  auto a = random_sparse(40, 0.1, 3);
  auto id = SparseSymOperator::identity(40);
  for (const auto& opt : {EigenOptions{}, sparse_path(2)}) {
    auto g = generalized_smallest_k(a, id, 4, opt);
    auto s = smallest_k_eigenpairs(a, 4, opt);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(g.values(j), s.values(j), 1e-8);
  }
}

TEST(Generalized, ScaledPencilAllTwo) {
  auto b = SparseSymOperator::from_dense(random_pd(15, 4));
  auto a = SparseSymOperator::combine(2.0, b, 0.0, b);
  for (const auto& opt : {EigenOptions{}, sparse_path(2)}) {
    auto p = generalized_smallest_k(a, b, 5, opt);
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(p.values(j), 2.0, 1e-8);
  }
}

TEST(Generalized, RandomPdPairMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    MatrixXd ad = random_pd(20, 100 + seed) - 8.0 * MatrixXd::Identity(20, 20);
    MatrixXd bd = random_pd(20, 200 + seed);
    auto a = SparseSymOperator::from_dense(ad);
    auto b = SparseSymOperator::from_dense(bd);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> oracle(ad, bd);
    for (const auto& opt : {EigenOptions{}, sparse_path(seed)}) {
      auto p = generalized_smallest_k(a, b, 4, opt);
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(p.values(j), oracle.eigenvalues()(j), 1e-8);
      const MatrixXd g = p.vectors.transpose() * bd * p.vectors;
      EXPECT_LE((g - MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Generalized, DiagonalRightHandSideUsesCongruence) {
  auto a = random_sparse(100, 0.05, 31);
  VectorXd d = VectorXd::LinSpaced(100, 0.5, 3.0);
  auto b = SparseSymOperator::diagonal(d);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> oracle(a.to_dense(), b.to_dense());
  auto p = generalized_smallest_k(a, b, 3, sparse_path(1));
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(p.values(j), oracle.eigenvalues()(j), 1e-8);
  const MatrixXd g = p.vectors.transpose() * b.to_dense() * p.vectors;
  EXPECT_LE((g - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Generalized, RejectsIndefiniteRightHandSide) {
  auto a = SparseSymOperator::identity(3);
  auto semi = SparseSymOperator::from_dense((MatrixXd(3, 3) << 1, -1, 0, -1, 1, 0, 0, 0, 1).finished());
  EXPECT_THROW(generalized_smallest_k(a, semi, 1), DefinitenessError);
  auto neg = SparseSymOperator::diagonal((VectorXd(3) << 1, -1, 1).finished());
  EXPECT_THROW(generalized_smallest_k(a, neg, 1), DefinitenessError);
  EXPECT_THROW(generalized_smallest_k(a, neg, 1, sparse_path()), DefinitenessError);
}

TEST(Eigengap, Examples) {
  EXPECT_EQ(eigengap_suggest_k({0, 0.01, 0.02, 5.0, 5.1}, 4), 3u);
  EXPECT_EQ(eigengap_suggest_k({0, 1, 2, 3, 4}, 4), 1u);
  EXPECT_EQ(eigengap_suggest_k({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, 5), 1u);
  EXPECT_EQ(eigengap_suggest_k({0, 1, 5, 100}, 2), 2u);
  EXPECT_THROW(eigengap_suggest_k({1.0}, 3), InvalidArgument);
}
