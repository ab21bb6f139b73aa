#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sgc/sparse.hpp"

namespace sgc {

enum class Preconditioner { none, jacobi };

struct EigenOptions {
  double tol = 1e-8;
  std::size_t max_iter = 0;  // 0 means 10 * dim
  std::uint64_t seed = 0;
  std::size_t dense_threshold = 512;  // dense solver when dim <= threshold
  Preconditioner preconditioner = Preconditioner::jacobi;
  std::size_t guard_vectors = 0;  // extra block columns; 0 picks max(5, k/5)
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // dim x k, unit norm (b-orthonormal for pencils)
  std::size_t iterations = 0;
  double max_residual = 0.0;
  bool dense = false;
};

// k smallest eigenpairs with residual ||Mv - lv|| <= tol * max(1, ||M||_F).
EigenPairs smallest_k_eigenpairs(const SparseSymOperator& m, std::size_t k, const EigenOptions& opt = {});

// k smallest pairs of a x = l b x. b must be positive definite.
// Residual ||a v - l b v|| <= tol * max(1, ||a||_F + |l| ||b||_F).
EigenPairs generalized_smallest_k(const SparseSymOperator& a, const SparseSymOperator& b, std::size_t k,
                                  const EigenOptions& opt = {});

// argmax_i (l[i+1] - l[i]) + 1 over i < k_max; ties go to the first gap.
std::size_t eigengap_suggest_k(const std::vector<double>& values, std::size_t k_max);

// Throws DefinitenessError unless b admits a numerically sound Cholesky factor.
void require_positive_definite(const SparseSymOperator& b, const char* what);

}  // namespace sgc
