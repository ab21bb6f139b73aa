#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace sgc {

struct SymEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

// Symmetric sparse matrix kept as its upper triangle, mirrored on apply.
class SparseSymOperator {
 public:
  using Upper = Eigen::SparseMatrix<double>;

  SparseSymOperator() = default;
  explicit SparseSymOperator(std::size_t dim);

  // Each entry (i, j, v) adds v at (i, j) and (j, i); repeated entries sum.
  static SparseSymOperator from_entries(std::size_t dim, const std::vector<SymEntry>& entries);
  // Reads the upper triangle of a dense matrix.
  static SparseSymOperator from_dense(const Eigen::MatrixXd& m);
  static SparseSymOperator identity(std::size_t dim);
  static SparseSymOperator diagonal(const Eigen::VectorXd& d);

  std::size_t dim() const { return dim_; }
  double shift() const { return shift_; }
  // Same entries with shift added along the diagonal.
  SparseSymOperator with_shift(double shift) const;

  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  Eigen::VectorXd diagonal_values() const;
  Eigen::MatrixXd to_dense() const;
  double frobenius_norm() const;
  bool is_diagonal() const;
  // Upper-triangle entries including the shift, row-major order.
  std::vector<SymEntry> entries() const;

  // alpha * a + beta * b
  static SparseSymOperator combine(double alpha, const SparseSymOperator& a, double beta, const SparseSymOperator& b);
  // diag(d) * M * diag(d)
  SparseSymOperator scaled(const Eigen::VectorXd& d) const;
  // P^T M P where row i of the result is row perm[i] of M.
  SparseSymOperator permuted(const std::vector<std::size_t>& perm) const;

  // Full symmetric matrix (both triangles, shift folded in).
  Eigen::SparseMatrix<double> full() const;

 private:
  std::size_t dim_ = 0;
  Upper upper_;
  double shift_ = 0.0;
};

// "i j value" lines (1-based, upper triangle) after a MatrixMarket header.
void write_coordinate(const SparseSymOperator& m, std::ostream& out);

}  // namespace sgc
