#include "sgc/concor.hpp"

#include <cmath>
#include <string>

#include "sgc/error.hpp"

namespace sgc {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;

constexpr double kFlat = 1e-12;

bool flat(const Eigen::VectorXd& col) {
  const double mean = col.mean();
  return (col.array() - mean).abs().maxCoeff() <= kFlat * std::max(1.0, col.cwiseAbs().maxCoeff());
}

// Pearson correlation between columns; zero-variance columns get 0 off the diagonal.
MatrixXd column_correlation(const MatrixXd& x) {
  MatrixXd z = x.rowwise() - x.colwise().mean();
  std::vector<bool> live(static_cast<std::size_t>(x.cols()));
  for (Index j = 0; j < z.cols(); ++j) {
    const double nrm = z.col(j).norm();
    live[static_cast<std::size_t>(j)] = !flat(x.col(j)) && nrm > 0.0;
    if (live[static_cast<std::size_t>(j)]) {
      z.col(j) /= nrm;
    } else {
      z.col(j).setZero();
    }
  }
  MatrixXd c = z.transpose() * z;
  for (Index j = 0; j < c.rows(); ++j) c(j, j) = 1.0;
  return c.cwiseMax(-1.0).cwiseMin(1.0);
}

struct Splitter {
  const MatrixXd& m;
  const ConcorOptions& opt;
  std::vector<Labeling>& levels;

  // Splits cols; both halves land in levels[level] with ids base and base + 1.
  void split(const std::vector<Index>& cols, std::size_t level) {
    if (level >= opt.depth) return;
    std::vector<Index> usable, degenerate;
    for (auto j : cols) (flat(m.col(j)) ? degenerate : usable).push_back(j);
    std::vector<Index> a, b;
    if (usable.size() < 2) {
      a = cols;
    } else {
      MatrixXd sub(m.rows(), static_cast<Index>(usable.size()));
      for (std::size_t i = 0; i < usable.size(); ++i) sub.col(static_cast<Index>(i)) = m.col(usable[i]);
      MatrixXd c = column_correlation(sub);
      // Iterating a 2x2 correlation matrix always ends at -1, so two columns
      // split only when they are negatively correlated.
      double delta = usable.size() == 2 ? 0.0 : (1.0 - c.array().abs()).maxCoeff();
      std::size_t it = 0;
      while (delta >= opt.eps) {
        if (++it > opt.max_iter) {
          throw ConvergenceError("CONCOR did not converge in " + std::to_string(opt.max_iter) + " iterations", delta);
        }
        MatrixXd next = column_correlation(c);
        delta = (next - c).cwiseAbs().maxCoeff();
        c = std::move(next);
      }
      for (std::size_t i = 0; i < usable.size(); ++i) (c(0, static_cast<Index>(i)) > 0.0 ? a : b).push_back(usable[i]);
      a.insert(a.end(), degenerate.begin(), degenerate.end());
    }
    const ClusterId id_a = next_id(level), id_b = b.empty() ? id_a : id_a + 1;
    for (auto j : a) mark(j, level, id_a);
    for (auto j : b) mark(j, level, id_b);
    split(a, level + 1);
    if (!b.empty()) split(b, level + 1);
  }

  ClusterId next_id(std::size_t level) {
    ClusterId top = -1;
    for (auto c : levels[level]) top = std::max(top, c);
    return top + 1;
  }

  void mark(Index j, std::size_t from, ClusterId id) {
    // Unsplit blocks keep their label on deeper levels until split again.
    for (std::size_t l = from; l < levels.size(); ++l) levels[l][static_cast<std::size_t>(j)] = id;
  }
};

}  // namespace

ConcorResult concor(const MatrixXd& m, const ConcorOptions& opt) {
  if (m.cols() < 2) throw InvalidArgument("CONCOR needs at least two columns");
  if (opt.depth < 1) throw InvalidArgument("CONCOR depth must be at least 1");
  if (!m.allFinite()) throw InvalidArgument("CONCOR input has non-finite entries");
  ConcorResult r;
  r.levels.assign(opt.depth, Labeling(static_cast<std::size_t>(m.cols()), kUnassigned));
  std::vector<Index> all(static_cast<std::size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j) all[static_cast<std::size_t>(j)] = j;
  Splitter s{m, opt, r.levels};
  s.split(all, 0);
  for (auto& l : r.levels) l = canonical_labels(l);
  return r;
}

Labeling concor_cluster(const SignedGraph& g, std::size_t k, const ConcorOptions& opt) {
  if (k < 2) throw InvalidArgument("CONCOR clustering needs k >= 2");
  const auto n = static_cast<Index>(g.num_vertices());
  MatrixXd a = MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) a(e.u, e.v) = a(e.v, e.u) = e.signed_weight();
  ConcorOptions o = opt;
  o.depth = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(k))));
  return concor(a, o).leaves();
}

}  // namespace sgc
