#include "sgc/sparse.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

SparseSymOperator::SparseSymOperator(std::size_t dim) : dim_(dim), upper_(static_cast<std::ptrdiff_t>(dim), static_cast<std::ptrdiff_t>(dim)) {}

SparseSymOperator SparseSymOperator::from_entries(std::size_t dim, const std::vector<SymEntry>& entries) {
  SparseSymOperator m(dim);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) throw InvalidArgument("matrix entry out of range");
    if (!std::isfinite(e.value)) throw InvalidArgument("non-finite matrix entry");
    const auto r = static_cast<int>(std::min(e.row, e.col));
    const auto c = static_cast<int>(std::max(e.row, e.col));
    trips.emplace_back(r, c, e.value);
  }
  m.upper_.setFromTriplets(trips.begin(), trips.end());
  m.upper_.prune(0.0);
  m.upper_.makeCompressed();
  return m;
}

SparseSymOperator SparseSymOperator::from_dense(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) throw InvalidArgument("matrix must be square");
  std::vector<SymEntry> entries;
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      if (d(i, j) != 0.0) entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), d(i, j)});
    }
  }
  return from_entries(static_cast<std::size_t>(d.rows()), entries);
}

SparseSymOperator SparseSymOperator::identity(std::size_t dim) { return diagonal(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim))); }

SparseSymOperator SparseSymOperator::diagonal(const Eigen::VectorXd& d) {
  std::vector<SymEntry> entries;
  for (Eigen::Index i = 0; i < d.size(); ++i) entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i), d(i)});
  return from_entries(static_cast<std::size_t>(d.size()), entries);
}

SparseSymOperator SparseSymOperator::with_shift(double shift) const {
  if (!std::isfinite(shift)) throw InvalidArgument("non-finite diagonal shift");
  SparseSymOperator m = *this;
  m.shift_ += shift;
  return m;
}

Eigen::MatrixXd SparseSymOperator::apply(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != dim_) throw InvalidArgument("dimension mismatch in apply");
  Eigen::MatrixXd y = upper_.selfadjointView<Eigen::Upper>() * x;
  if (shift_ != 0.0) y += shift_ * x;
  return y;
}

Eigen::VectorXd SparseSymOperator::diagonal_values() const {
  Eigen::VectorXd d = upper_.diagonal();
  return d.array() + shift_;
}

Eigen::MatrixXd SparseSymOperator::to_dense() const {
  Eigen::MatrixXd d = Eigen::MatrixXd(upper_);
  d.triangularView<Eigen::StrictlyLower>() = d.transpose();
  d.diagonal().array() += shift_;
  return d;
}

double SparseSymOperator::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& e : entries()) sum += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  return std::sqrt(sum);
}

bool SparseSymOperator::is_diagonal() const {
  for (Eigen::Index j = 0; j < upper_.outerSize(); ++j) {
    for (Upper::InnerIterator it(upper_, j); it; ++it) {
      if (it.row() != it.col() && it.value() != 0.0) return false;
    }
  }
  return true;
}

std::vector<SymEntry> SparseSymOperator::entries() const {
  std::vector<SymEntry> out;
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows = upper_;
  std::vector<bool> has_diag(dim_, false);
  for (Eigen::Index i = 0; i < rows.outerSize(); ++i) {
    for (decltype(rows)::InnerIterator it(rows, i); it; ++it) {
      double v = it.value();
      if (it.row() == it.col()) {
        v += shift_;
        has_diag[static_cast<std::size_t>(i)] = true;
      }
      if (v != 0.0) out.push_back({static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), v});
    }
    if (!has_diag[static_cast<std::size_t>(i)] && shift_ != 0.0) {
      // Keep row-major order: the diagonal is the first upper entry of the row.
      auto pos = out.end();
      while (pos != out.begin() && (pos - 1)->row == static_cast<std::size_t>(i)) --pos;
      out.insert(pos, {static_cast<std::size_t>(i), static_cast<std::size_t>(i), shift_});
    }
  }
  return out;
}

SparseSymOperator SparseSymOperator::combine(double alpha, const SparseSymOperator& a, double beta, const SparseSymOperator& b) {
  if (a.dim_ != b.dim_) throw InvalidArgument("dimension mismatch in combine");
  SparseSymOperator m(a.dim_);
  m.upper_ = alpha * a.upper_ + beta * b.upper_;
  m.upper_.prune(0.0);
  m.upper_.makeCompressed();
  m.shift_ = alpha * a.shift_ + beta * b.shift_;
  return m;
}

SparseSymOperator SparseSymOperator::scaled(const Eigen::VectorXd& d) const {
  if (static_cast<std::size_t>(d.size()) != dim_) throw InvalidArgument("dimension mismatch in scaled");
  std::vector<SymEntry> out = entries();
  for (auto& e : out) e.value *= d(static_cast<Eigen::Index>(e.row)) * d(static_cast<Eigen::Index>(e.col));
  return from_entries(dim_, out);
}

SparseSymOperator SparseSymOperator::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != dim_) throw InvalidArgument("permutation length mismatch");
  std::vector<std::size_t> inv(dim_);
  for (std::size_t i = 0; i < dim_; ++i) inv[perm[i]] = i;
  std::vector<SymEntry> out = entries();
  for (auto& e : out) {
    e.row = inv[e.row];
    e.col = inv[e.col];
  }
  return from_entries(dim_, out);
}

Eigen::SparseMatrix<double> SparseSymOperator::full() const {
  Eigen::SparseMatrix<double> m(upper_.rows(), upper_.cols());
  m = upper_.selfadjointView<Eigen::Upper>();
  if (shift_ != 0.0) {
    Eigen::SparseMatrix<double> id(m.rows(), m.cols());
    id.setIdentity();
    m += shift_ * id;
  }
  return m;
}

void write_coordinate(const SparseSymOperator& m, std::ostream& out) {
  const auto entries = m.entries();
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.dim() << ' ' << m.dim() << ' ' << entries.size() << '\n';
  out.precision(17);
  // MatrixMarket symmetric storage lists the lower triangle.
  for (const auto& e : entries) out << e.col + 1 << ' ' << e.row + 1 << ' ' << e.value << '\n';
}

}  // namespace sgc
