#include "sgc/cuts.hpp"

#include <array>
#include <vector>

#include "sgc/error.hpp"

namespace sgc {
namespace {

constexpr std::array<std::pair<CutKind, const char*>, 14> kNames{{
    {CutKind::cut, "cut"},
    {CutKind::rcut, "rcut"},
    {CutKind::ncut, "ncut"},
    {CutKind::scut, "scut"},
    {CutKind::signed_rcut, "signed_rcut"},
    {CutKind::signed_ncut, "signed_ncut"},
    {CutKind::pos_ratio_assoc, "pos_ratio_assoc"},
    {CutKind::neg_ratio_assoc, "neg_ratio_assoc"},
    {CutKind::pos_ratio_cut, "pos_ratio_cut"},
    {CutKind::neg_ratio_cut, "neg_ratio_cut"},
    {CutKind::balance_ratio_cut, "balance_ratio_cut"},
    {CutKind::balance_ratio_assoc, "balance_ratio_assoc"},
    {CutKind::balance_ncut, "balance_ncut"},
    {CutKind::balance_nassoc, "balance_nassoc"},
}};

// Per-cluster sums collected in one pass over the edges.
struct ClusterTotals {
  std::vector<double> size, vol_abs, vol_pos, vol_neg;
  std::vector<double> pos_in, neg_in;    // internal weight, each edge once
  std::vector<double> pos_out, neg_out;  // weight leaving the cluster
};

ClusterTotals totals(const SignedGraph& g, const Labeling& labels, std::size_t k) {
  ClusterTotals t;
  for (auto* v : {&t.size, &t.vol_abs, &t.vol_pos, &t.vol_neg, &t.pos_in, &t.neg_in, &t.pos_out, &t.neg_out})
    v->assign(k, 0.0);
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const auto c = static_cast<std::size_t>(labels[v]);
    t.size[c] += 1.0;
    t.vol_abs[c] += g.absolute_degree(v);
    t.vol_pos[c] += g.positive_degree(v);
    t.vol_neg[c] += g.negative_degree(v);
  }
  for (const auto& e : g.edges()) {
    const auto a = static_cast<std::size_t>(labels[e.u]), b = static_cast<std::size_t>(labels[e.v]);
    const bool pos = e.sign == Sign::positive;
    if (a == b) {
      (pos ? t.pos_in : t.neg_in)[a] += e.weight;
    } else {
      auto& out = pos ? t.pos_out : t.neg_out;
      out[a] += e.weight;
      out[b] += e.weight;
    }
  }
  return t;
}

}  // namespace

CutKind parse_cut_kind(const std::string& name) {
  for (const auto& [kind, label] : kNames)
    if (name == label) return kind;
  throw InvalidArgument("unknown cut kind '" + name + "'");
}

std::string to_string(CutKind kind) {
  for (const auto& [k, label] : kNames)
    if (k == kind) return label;
  return "?";
}

double evaluate_cut(const SignedGraph& g, const Labeling& labels, CutKind kind) {
  if (labels.size() != g.num_vertices()) throw InvalidArgument("labeling length does not match graph");
  ClusterId kmax = -1;
  for (auto c : labels) {
    if (c == kUnassigned) throw InvalidArgument("cut objectives need every vertex labeled");
    kmax = std::max(kmax, c);
  }
  const auto k = static_cast<std::size_t>(kmax + 1);
  const ClusterTotals t = totals(g, labels, k);
  for (std::size_t c = 0; c < k; ++c)
    if (t.size[c] == 0.0) throw InvalidArgument("cluster " + std::to_string(c) + " is empty");

  auto need_volume = [&](const std::vector<double>& vol) {
    for (std::size_t c = 0; c < k; ++c)
      if (vol[c] <= 0.0) throw DataError("cluster " + std::to_string(c) + " has zero volume");
  };
  auto sum_over = [&](auto&& term, const std::vector<double>& denom) {
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += term(c) / denom[c];
    return s;
  };
  // Quadratic forms x^T M x for a 0/1 indicator x of cluster c.
  auto q_pos_adj = [&](std::size_t c) { return 2.0 * t.pos_in[c]; };
  auto q_neg_adj = [&](std::size_t c) { return 2.0 * t.neg_in[c]; };
  auto q_signed_adj = [&](std::size_t c) { return q_pos_adj(c) - q_neg_adj(c); };
  auto q_pos_lap = [&](std::size_t c) { return t.pos_out[c]; };   // D+ - A+
  auto q_neg_lap = [&](std::size_t c) { return t.neg_out[c]; };   // D- - A-
  auto q_signed_lap = [&](std::size_t c) { return t.vol_abs[c] - q_signed_adj(c); };  // Dbar - A
  auto q_bal_cut = [&](std::size_t c) { return t.vol_pos[c] - q_signed_adj(c); };     // D+ - A
  auto q_bal_assoc = [&](std::size_t c) { return t.vol_neg[c] + q_signed_adj(c); };   // D- + A

  double cross_pos = 0.0, cross_abs = 0.0, neg_internal = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    cross_pos += t.pos_out[c];
    cross_abs += t.pos_out[c] + t.neg_out[c];
    neg_internal += 2.0 * t.neg_in[c];
  }
  cross_pos *= 0.5;
  cross_abs *= 0.5;
  const double scut = 2.0 * cross_pos + neg_internal;

  switch (kind) {
    case CutKind::cut: return cross_abs;
    case CutKind::rcut: return sum_over([&](std::size_t c) { return t.pos_out[c] + t.neg_out[c]; }, t.size);
    case CutKind::ncut:
      need_volume(t.vol_abs);
      return sum_over([&](std::size_t c) { return t.pos_out[c] + t.neg_out[c]; }, t.vol_abs);
    case CutKind::scut: return scut;
    case CutKind::signed_rcut:
      if (k == 2) return scut * (1.0 / t.size[0] + 1.0 / t.size[1]);
      return sum_over(q_signed_lap, t.size);
    case CutKind::signed_ncut:
      need_volume(t.vol_abs);
      if (k == 2) return scut * (1.0 / t.vol_abs[0] + 1.0 / t.vol_abs[1]);
      return sum_over(q_signed_lap, t.vol_abs);
    case CutKind::pos_ratio_assoc: return sum_over(q_pos_adj, t.size);
    case CutKind::neg_ratio_assoc: return sum_over(q_neg_adj, t.size);
    case CutKind::pos_ratio_cut: return sum_over(q_pos_lap, t.size);
    case CutKind::neg_ratio_cut: return sum_over(q_neg_lap, t.size);
    case CutKind::balance_ratio_cut: return sum_over(q_bal_cut, t.size);
    case CutKind::balance_ratio_assoc: return sum_over(q_bal_assoc, t.size);
    case CutKind::balance_ncut: need_volume(t.vol_abs); return sum_over(q_bal_cut, t.vol_abs);
    case CutKind::balance_nassoc: need_volume(t.vol_abs); return sum_over(q_bal_assoc, t.vol_abs);
  }
  throw InvalidArgument("unhandled cut kind");
}

}  // namespace sgc
