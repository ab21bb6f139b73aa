#pragma once

#include <string>

#include "sgc/graph.hpp"

namespace sgc {

enum class CutKind {
  cut,
  rcut,
  ncut,
  scut,
  signed_rcut,
  signed_ncut,
  pos_ratio_assoc,
  neg_ratio_assoc,
  pos_ratio_cut,
  neg_ratio_cut,
  balance_ratio_cut,
  balance_ratio_assoc,
  balance_ncut,
  balance_nassoc
};

CutKind parse_cut_kind(const std::string& name);
std::string to_string(CutKind kind);

// cut(X, Y) sums A_ij over i in X, j in Y, so cut(X, X) counts internal
// edges twice. cut/rcut/ncut use |A|. scut is 2 cut+(X, Xc) summed with
// cut-(X, X) over clusters. signed_rcut/signed_ncut scale scut by
// 1/|X| + 1/|Y| (or volumes) for two clusters and use the Rayleigh sums
// x^T Lbar x / x^T x (/ x^T Dbar x) otherwise. The remaining kinds are sums
// over clusters of x^T M x / x^T x or / x^T Dbar x for indicator vectors x.
double evaluate_cut(const SignedGraph& g, const Labeling& labels, CutKind kind);

}  // namespace sgc
