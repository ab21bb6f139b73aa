#pragma once

#include <string>

#include "sgc/graph.hpp"
#include "sgc/sparse.hpp"

namespace sgc {

enum class LaplacianKind { unsigned_plain, unsigned_sym, unsigned_rw, signed_plain, signed_sym, signed_rw, signed_sym_separated };

LaplacianKind parse_laplacian_kind(const std::string& name);
std::string to_string(LaplacianKind kind);
bool is_normalized(LaplacianKind kind);

// Sign-filtered pieces of a signed graph. A = A+ - A-, both parts non-negative.
struct SignedMatrices {
  SparseSymOperator a;      // signed adjacency
  SparseSymOperator a_abs;  // |A|
  SparseSymOperator a_pos;  // A+
  SparseSymOperator a_neg;  // A-
  Eigen::VectorXd d_pos;
  Eigen::VectorXd d_neg;
  Eigen::VectorXd d_bar;  // D+ + D-
};

SignedMatrices signed_matrices(const SignedGraph& g);

// d^(-1/2) with zero entries kept at zero.
Eigen::VectorXd inv_sqrt_or_zero(const Eigen::VectorXd& d);

// D - M
SparseSymOperator degree_minus(const Eigen::VectorXd& d, const SparseSymOperator& m);
// D^(-1/2) (D - M) D^(-1/2), rows of zero-degree vertices left at zero
SparseSymOperator normalized_laplacian(const Eigen::VectorXd& d, const SparseSymOperator& m);

// The named matrix. Random-walk kinds are not symmetric; for them this returns
// the similar symmetric matrix D^(1/2) L_rw D^(-1/2), which shares the spectrum.
SparseSymOperator build_laplacian(const SignedGraph& g, LaplacianKind kind);

// Pencil (a, b) whose generalized eigenvectors are the eigenvectors of the
// named matrix; b is the identity except for random-walk kinds (b = D).
struct Pencil {
  SparseSymOperator a;
  SparseSymOperator b;
  bool standard = true;
};

Pencil laplacian_pencil(const SignedGraph& g, LaplacianKind kind);

// Throws DataError listing isolated vertices when kind normalizes by degree.
void require_no_isolated(const SignedGraph& g, const char* what);

}  // namespace sgc
