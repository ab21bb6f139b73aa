#include "sgc/eigensolver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPivotFloor = 1e-13;

MatrixXd apply_or_identity(const SparseSymOperator* b, const MatrixXd& x) { return b ? b->apply(x) : x; }

void check_k(std::size_t k, std::size_t dim) {
  if (k < 1 || k > dim) {
    throw InvalidArgument("k must be in [1, " + std::to_string(dim) + "], got " + std::to_string(k));
  }
}

double residual_bound(double tol, double norm_a, double norm_b, double lambda) {
  return tol * std::max(1.0, norm_a + std::abs(lambda) * norm_b);
}

// Max residual over the pairs, or -1 if any pair misses its bound.
double residuals(const SparseSymOperator& a, const SparseSymOperator* b, const VectorXd& values, const MatrixXd& vectors,
                 VectorXd& out) {
  MatrixXd r = a.apply(vectors) - apply_or_identity(b, vectors) * values.asDiagonal();
  out = r.colwise().norm().transpose();
  return out.size() ? out.maxCoeff() : 0.0;
}

// SVQB: makes the columns of v b-orthonormal, dropping near-dependent directions.
void svqb(const SparseSymOperator* b, MatrixXd& v) {
  if (v.cols() == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const MatrixXd bv = apply_or_identity(b, v);
    MatrixXd g = v.transpose() * bv;
    g = 0.5 * (g + g.transpose());
    VectorXd d = g.diagonal();
    const double dmax = d.maxCoeff();
    std::vector<Index> keep_cols;
    for (Index j = 0; j < d.size(); ++j) {
      if (d(j) > dmax * 1e-28 && d(j) > std::numeric_limits<double>::min()) keep_cols.push_back(j);
    }
    if (keep_cols.size() < static_cast<std::size_t>(v.cols())) {
      MatrixXd vk(v.rows(), static_cast<Index>(keep_cols.size()));
      for (std::size_t j = 0; j < keep_cols.size(); ++j) vk.col(static_cast<Index>(j)) = v.col(keep_cols[j]);
      v = std::move(vk);
      if (v.cols() == 0) return;
      continue;  // recompute the Gram matrix on the kept columns
    }
    const VectorXd s = d.array().rsqrt();
    const MatrixXd gs = s.asDiagonal() * g * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(gs);
    const VectorXd& sig = es.eigenvalues();
    const double smax = sig.maxCoeff();
    Index first = 0;
    while (first < sig.size() && sig(first) <= smax * 1e-12) ++first;
    const Index r = sig.size() - first;
    MatrixXd z = s.asDiagonal() * es.eigenvectors().rightCols(r) *
                 sig.tail(r).array().rsqrt().matrix().asDiagonal();
    v = v * z;
  }
}

// Removes the span of the b-orthonormal basis u (with bu = b u) from v, twice.
void project_out(const MatrixXd& u, const MatrixXd& bu, MatrixXd& v) {
  if (u.cols() == 0 || v.cols() == 0) return;
  for (int pass = 0; pass < 2; ++pass) v -= u * (bu.transpose() * v);
}

EigenPairs lobpcg(const SparseSymOperator& a, const SparseSymOperator* b, std::size_t k, const EigenOptions& opt) {
  const auto n = static_cast<Index>(a.dim());
  const std::size_t guard = opt.guard_vectors ? opt.guard_vectors : std::max<std::size_t>(5, k / 5);
  const Index m = static_cast<Index>(std::min<std::size_t>(a.dim(), k + guard));
  const std::size_t max_iter = opt.max_iter ? opt.max_iter : 10 * a.dim();
  const double norm_a = a.frobenius_norm();
  const double norm_b = b ? b->frobenius_norm() : 0.0;

  // Jacobi scaling needs a non-negative diagonal; indefinite diagonals run unpreconditioned.
  VectorXd precond = VectorXd::Ones(n);
  if (opt.preconditioner == Preconditioner::jacobi) {
    const VectorXd d = a.diagonal_values();
    if (d.minCoeff() >= 0.0 && d.maxCoeff() > 0.0) {
      const double fill = d.sum() / static_cast<double>((d.array() > 0.0).count());
      for (Index i = 0; i < n; ++i) precond(i) = 1.0 / (d(i) > 0.0 ? d(i) : fill);
    }
  }

  Rng rng = make_rng(opt.seed, 0xe16e);
  MatrixXd x(n, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < n; ++i) x(i, j) = standard_normal(rng);
  svqb(b, x);
  if (x.cols() < m) throw MethodError("random start block is rank deficient");

  auto rayleigh_ritz = [&](const MatrixXd& s, MatrixXd& as, VectorXd& theta, MatrixXd& y) {
    as = a.apply(s);
    MatrixXd g = s.transpose() * as;
    g = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g);
    theta = es.eigenvalues();
    y = es.eigenvectors();
  };

  MatrixXd ax, y;
  VectorXd theta;
  rayleigh_ritz(x, ax, theta, y);
  x = x * y;
  ax = ax * y;
  VectorXd lambda = theta;
  MatrixXd bx = apply_or_identity(b, x);
  MatrixXd p(n, 0);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t iter = 1; iter <= max_iter; ++iter) {
    const MatrixXd r = ax - bx * lambda.asDiagonal();
    std::vector<Index> active;
    bool done = true;
    double worst = 0.0;
    for (Index j = 0; j < m; ++j) {
      const double rn = r.col(j).norm();
      const bool ok = rn <= residual_bound(opt.tol, norm_a, norm_b, lambda(j));
      if (j < static_cast<Index>(k)) {
        worst = std::max(worst, rn);
        done = done && ok;
      }
      if (!ok) active.push_back(j);
    }
    best = std::min(best, worst);
    if (done) {
      EigenPairs out;
      out.values = lambda.head(static_cast<Index>(k));
      out.vectors = x.leftCols(static_cast<Index>(k));
      out.iterations = iter - 1;
      out.max_residual = worst;
      return out;
    }

    MatrixXd w(n, static_cast<Index>(active.size()));
    for (std::size_t j = 0; j < active.size(); ++j) w.col(static_cast<Index>(j)) = precond.cwiseProduct(r.col(active[j]));
    project_out(x, bx, w);
    svqb(b, w);
    MatrixXd bw = apply_or_identity(b, w);
    project_out(x, bx, p);
    project_out(w, bw, p);
    svqb(b, p);

    MatrixXd s(n, x.cols() + w.cols() + p.cols());
    s << x, w, p;
    MatrixXd as;
    rayleigh_ritz(s, as, theta, y);
    if (theta.size() < m) throw MethodError("search subspace collapsed");
    const MatrixXd yx = y.leftCols(m);
    const Index rest = s.cols() - m;
    p = s.rightCols(rest) * yx.bottomRows(rest);
    x = s * yx;
    ax = as * yx;
    bx = apply_or_identity(b, x);
    lambda = theta.head(m);
  }
  throw ConvergenceError("eigensolver did not converge in " + std::to_string(max_iter) + " iterations", best);
}

EigenPairs finish_dense(const SparseSymOperator& a, const SparseSymOperator* b, const VectorXd& values,
                        const MatrixXd& vectors, std::size_t k) {
  EigenPairs out;
  out.values = values.head(static_cast<Index>(k));
  out.vectors = vectors.leftCols(static_cast<Index>(k));
  VectorXd res;
  out.max_residual = residuals(a, b, out.values, out.vectors, res);
  out.dense = true;
  return out;
}

}  // namespace

void require_positive_definite(const SparseSymOperator& b, const char* what) {
  VectorXd diag_l;
  if (b.dim() <= 2048) {
    Eigen::LLT<MatrixXd> llt(b.to_dense());
    if (llt.info() != Eigen::Success) throw DefinitenessError(std::string(what) + " is not positive definite");
    diag_l = llt.matrixLLT().diagonal();
  } else {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(b.full());
    if (llt.info() != Eigen::Success) throw DefinitenessError(std::string(what) + " is not positive definite");
    diag_l = VectorXd(llt.matrixL().nestedExpression().diagonal());
  }
  const VectorXd piv = diag_l.array().square();
  if (piv.size() && piv.minCoeff() <= kPivotFloor * piv.maxCoeff()) {
    throw DefinitenessError(std::string(what) + " is numerically singular");
  }
}

EigenPairs smallest_k_eigenpairs(const SparseSymOperator& m, std::size_t k, const EigenOptions& opt) {
  check_k(k, m.dim());
  if (m.dim() <= opt.dense_threshold) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m.to_dense());
    if (es.info() != Eigen::Success) throw MethodError("dense eigensolver failed");
    return finish_dense(m, nullptr, es.eigenvalues(), es.eigenvectors(), k);
  }
  return lobpcg(m, nullptr, k, opt);
}

EigenPairs generalized_smallest_k(const SparseSymOperator& a, const SparseSymOperator& b, std::size_t k,
                                  const EigenOptions& opt) {
  if (a.dim() != b.dim()) throw InvalidArgument("pencil dimension mismatch");
  check_k(k, a.dim());
  require_positive_definite(b, "right-hand matrix of the pencil");
  if (a.dim() <= opt.dense_threshold) {
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(a.to_dense(), b.to_dense(),
                                                          Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (es.info() != Eigen::Success) throw MethodError("dense generalized eigensolver failed");
    return finish_dense(a, &b, es.eigenvalues(), es.eigenvectors(), k);
  }
  if (b.is_diagonal()) {
    // Congruence with b^(-1/2) turns the pencil into a standard problem.
    const VectorXd s = b.diagonal_values().array().rsqrt();
    EigenPairs std_pairs = lobpcg(a.scaled(s), nullptr, k, opt);
    std_pairs.vectors = s.asDiagonal() * std_pairs.vectors;
    VectorXd res;
    std_pairs.max_residual = residuals(a, &b, std_pairs.values, std_pairs.vectors, res);
    return std_pairs;
  }
  return lobpcg(a, &b, k, opt);
}

std::size_t eigengap_suggest_k(const std::vector<double>& values, std::size_t k_max) {
  if (values.size() < 2) throw InvalidArgument("eigengap needs at least two values");
  const std::size_t limit = std::min(k_max, values.size() - 1);
  if (limit == 0) return 1;
  std::size_t best = 0;
  double best_gap = values[1] - values[0];
  for (std::size_t i = 1; i < limit; ++i) {
    const double gap = values[i + 1] - values[i];
    if (gap > best_gap + 1e-12 * std::max(1.0, std::abs(best_gap))) {
      best_gap = gap;
      best = i;
    }
  }
  return best + 1;
}

}  // namespace sgc
