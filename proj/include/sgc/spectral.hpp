#pragma once

#include <cstdint>
#include <optional>

#include "sgc/eigensolver.hpp"
#include "sgc/graph.hpp"
#include "sgc/kmeans.hpp"
#include "sgc/laplacian.hpp"

namespace sgc {

struct SpectralOptions {
  EigenOptions eigen;
  KMeansOptions kmeans;
  std::optional<bool> row_normalize;  // unset: per-method default
};

struct SpongeConfig {
  double tau_plus = 1.0;
  double tau_minus = 1.0;
  bool symmetric = false;
};

struct SpectralResult {
  Labeling labels;
  Embedding embedding;  // as fed to k-means
  Eigen::VectorXd eigenvalues;
};

// k smallest eigenvectors of the chosen Laplacian, then k-means++.
// Rows are normalized by default for signed_sym only.
SpectralResult spectral_embed_cluster(const SignedGraph& g, LaplacianKind kind, std::size_t k, std::uint64_t seed,
                                      const SpectralOptions& opt = {});
Labeling spectral_cluster(const SignedGraph& g, LaplacianKind kind, std::size_t k, std::uint64_t seed,
                          const SpectralOptions& opt = {});

// Balance normalized cut relaxation: pencil (D+ - A, Dbar), or the standard
// problem Dbar^(-1/2) (D+ - A) Dbar^(-1/2) when symmetric.
SpectralResult bnc_embed_cluster(const SignedGraph& g, std::size_t k, bool symmetric, std::uint64_t seed,
                                 const SpectralOptions& opt = {});
Labeling bnc_cluster(const SignedGraph& g, std::size_t k, bool symmetric, std::uint64_t seed, const SpectralOptions& opt = {});

// Pencil (L+ + tau- D-, L- + tau+ D+); the symmetric variant uses
// (L+_sym + tau- I, L-_sym + tau+ I). Rows normalized by default when symmetric.
SpectralResult sponge_embed_cluster(const SignedGraph& g, std::size_t k, const SpongeConfig& cfg, std::uint64_t seed,
                                    const SpectralOptions& opt = {});
Labeling sponge_cluster(const SignedGraph& g, std::size_t k, const SpongeConfig& cfg, std::uint64_t seed,
                        const SpectralOptions& opt = {});

// The SPONGE pencil itself, exposed for diagnostics and tests.
Pencil sponge_pencil(const SignedGraph& g, const SpongeConfig& cfg);
Pencil bnc_pencil(const SignedGraph& g, bool symmetric);

}  // namespace sgc
