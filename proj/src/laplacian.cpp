#include "sgc/laplacian.hpp"

#include <vector>

#include "sgc/error.hpp"

namespace sgc {

LaplacianKind parse_laplacian_kind(const std::string& name) {
  if (name == "unsigned") return LaplacianKind::unsigned_plain;
  if (name == "unsigned_sym") return LaplacianKind::unsigned_sym;
  if (name == "unsigned_rw") return LaplacianKind::unsigned_rw;
  if (name == "signed") return LaplacianKind::signed_plain;
  if (name == "signed_sym") return LaplacianKind::signed_sym;
  if (name == "signed_rw") return LaplacianKind::signed_rw;
  if (name == "signed_sym_separated") return LaplacianKind::signed_sym_separated;
  throw InvalidArgument("unknown laplacian kind '" + name + "'");
}

std::string to_string(LaplacianKind kind) {
  switch (kind) {
    case LaplacianKind::unsigned_plain: return "unsigned";
    case LaplacianKind::unsigned_sym: return "unsigned_sym";
    case LaplacianKind::unsigned_rw: return "unsigned_rw";
    case LaplacianKind::signed_plain: return "signed";
    case LaplacianKind::signed_sym: return "signed_sym";
    case LaplacianKind::signed_rw: return "signed_rw";
    case LaplacianKind::signed_sym_separated: return "signed_sym_separated";
  }
  return "?";
}

bool is_normalized(LaplacianKind kind) {
  return kind != LaplacianKind::unsigned_plain && kind != LaplacianKind::signed_plain;
}

SignedMatrices signed_matrices(const SignedGraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<SymEntry> all, abs, pos, neg;
  for (const auto& e : g.edges()) {
    all.push_back({e.u, e.v, e.signed_weight()});
    abs.push_back({e.u, e.v, e.weight});
    (e.sign == Sign::positive ? pos : neg).push_back({e.u, e.v, e.weight});
  }
  SignedMatrices m{SparseSymOperator::from_entries(n, all), SparseSymOperator::from_entries(n, abs),
                   SparseSymOperator::from_entries(n, pos), SparseSymOperator::from_entries(n, neg),
                   Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (Vertex v = 0; v < n; ++v) {
    m.d_pos(v) = g.positive_degree(v);
    m.d_neg(v) = g.negative_degree(v);
    m.d_bar(v) = g.absolute_degree(v);
  }
  return m;
}

Eigen::VectorXd inv_sqrt_or_zero(const Eigen::VectorXd& d) {
  Eigen::VectorXd s(d.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) s(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 0.0;
  return s;
}

SparseSymOperator degree_minus(const Eigen::VectorXd& d, const SparseSymOperator& m) {
  return SparseSymOperator::combine(1.0, SparseSymOperator::diagonal(d), -1.0, m);
}

SparseSymOperator normalized_laplacian(const Eigen::VectorXd& d, const SparseSymOperator& m) {
  return degree_minus(d, m).scaled(inv_sqrt_or_zero(d));
}

void require_no_isolated(const SignedGraph& g, const char* what) {
  std::vector<Vertex> isolated;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) isolated.push_back(v);
  }
  if (isolated.empty()) return;
  std::string list;
  for (std::size_t i = 0; i < isolated.size() && i < 20; ++i) {
    if (i) list += ", ";
    list += std::to_string(g.original_id(isolated[i]));
  }
  if (isolated.size() > 20) list += ", ...";
  throw DataError(std::string(what) + " needs every vertex to have an edge; isolated: " + list);
}

SparseSymOperator build_laplacian(const SignedGraph& g, LaplacianKind kind) {
  if (is_normalized(kind)) require_no_isolated(g, to_string(kind).c_str());
  const SignedMatrices m = signed_matrices(g);
  switch (kind) {
    case LaplacianKind::unsigned_plain: return degree_minus(m.d_bar, m.a_abs);
    case LaplacianKind::unsigned_sym:
    case LaplacianKind::unsigned_rw: return normalized_laplacian(m.d_bar, m.a_abs);
    case LaplacianKind::signed_plain: return degree_minus(m.d_bar, m.a);
    case LaplacianKind::signed_sym:
    case LaplacianKind::signed_rw: return normalized_laplacian(m.d_bar, m.a);
    case LaplacianKind::signed_sym_separated: {
      // L+_sym + Q-_sym with Q- = D- + A-, each side scaled by its own degrees.
      const auto lpos = normalized_laplacian(m.d_pos, m.a_pos);
      const auto qneg = SparseSymOperator::combine(1.0, SparseSymOperator::diagonal(m.d_neg), 1.0, m.a_neg)
                            .scaled(inv_sqrt_or_zero(m.d_neg));
      return SparseSymOperator::combine(1.0, lpos, 1.0, qneg);
    }
  }
  throw InvalidArgument("unhandled laplacian kind");
}

Pencil laplacian_pencil(const SignedGraph& g, LaplacianKind kind) {
  if (kind == LaplacianKind::unsigned_rw || kind == LaplacianKind::signed_rw) {
    require_no_isolated(g, to_string(kind).c_str());
    const SignedMatrices m = signed_matrices(g);
    const auto& adj = kind == LaplacianKind::unsigned_rw ? m.a_abs : m.a;
    return {degree_minus(m.d_bar, adj), SparseSymOperator::diagonal(m.d_bar), false};
  }
  auto a = build_laplacian(g, kind);
  const std::size_t n = a.dim();
  return {std::move(a), SparseSymOperator::identity(n), true};
}

}  // namespace sgc
