#include "sgc/spectral.hpp"

#include <string>

#include "sgc/error.hpp"

namespace sgc {
namespace {

void check_k(const SignedGraph& g, std::size_t k) {
  if (k < 2) throw InvalidArgument("spectral clustering needs k >= 2");
  if (k > g.num_vertices()) {
    throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " + std::to_string(g.num_vertices()) + " vertices");
  }
}

SpectralResult finish(const Pencil& p, std::size_t k, bool normalize, std::uint64_t seed, const SpectralOptions& opt) {
  EigenOptions eo = opt.eigen;
  eo.seed = seed;
  const EigenPairs pairs = p.standard ? smallest_k_eigenpairs(p.a, k, eo) : generalized_smallest_k(p.a, p.b, k, eo);
  SpectralResult r;
  r.eigenvalues = pairs.values;
  r.embedding = opt.row_normalize.value_or(normalize) ? row_normalized(pairs.vectors) : pairs.vectors;
  KMeansOptions ko = opt.kmeans;
  ko.seed = seed;
  r.labels = kmeans_pp(r.embedding, k, ko).labels;
  return r;
}

}  // namespace

SpectralResult spectral_embed_cluster(const SignedGraph& g, LaplacianKind kind, std::size_t k, std::uint64_t seed,
                                      const SpectralOptions& opt) {
  check_k(g, k);
  return finish(laplacian_pencil(g, kind), k, kind == LaplacianKind::signed_sym, seed, opt);
}

Labeling spectral_cluster(const SignedGraph& g, LaplacianKind kind, std::size_t k, std::uint64_t seed,
                          const SpectralOptions& opt) {
  return spectral_embed_cluster(g, kind, k, seed, opt).labels;
}

Pencil bnc_pencil(const SignedGraph& g, bool symmetric) {
  require_no_isolated(g, "balance normalized cut");
  const SignedMatrices m = signed_matrices(g);
  SparseSymOperator num = degree_minus(m.d_pos, m.a);  // D+ - A
  if (symmetric) {
    num = num.scaled(inv_sqrt_or_zero(m.d_bar));
    return {std::move(num), SparseSymOperator::identity(g.num_vertices()), true};
  }
  return {std::move(num), SparseSymOperator::diagonal(m.d_bar), false};
}

SpectralResult bnc_embed_cluster(const SignedGraph& g, std::size_t k, bool symmetric, std::uint64_t seed,
                                 const SpectralOptions& opt) {
  check_k(g, k);
  return finish(bnc_pencil(g, symmetric), k, false, seed, opt);
}

Labeling bnc_cluster(const SignedGraph& g, std::size_t k, bool symmetric, std::uint64_t seed, const SpectralOptions& opt) {
  return bnc_embed_cluster(g, k, symmetric, seed, opt).labels;
}

Pencil sponge_pencil(const SignedGraph& g, const SpongeConfig& cfg) {
  if (!(cfg.tau_plus > 0.0) || !(cfg.tau_minus > 0.0)) throw InvalidArgument("SPONGE taus must be positive");
  const SignedMatrices m = signed_matrices(g);
  const std::size_t n = g.num_vertices();
  if (cfg.symmetric) {
    const auto id = SparseSymOperator::identity(n);
    return {SparseSymOperator::combine(1.0, normalized_laplacian(m.d_pos, m.a_pos), cfg.tau_minus, id),
            SparseSymOperator::combine(1.0, normalized_laplacian(m.d_neg, m.a_neg), cfg.tau_plus, id), false};
  }
  return {SparseSymOperator::combine(1.0, degree_minus(m.d_pos, m.a_pos), cfg.tau_minus, SparseSymOperator::diagonal(m.d_neg)),
          SparseSymOperator::combine(1.0, degree_minus(m.d_neg, m.a_neg), cfg.tau_plus, SparseSymOperator::diagonal(m.d_pos)),
          false};
}

SpectralResult sponge_embed_cluster(const SignedGraph& g, std::size_t k, const SpongeConfig& cfg, std::uint64_t seed,
                                    const SpectralOptions& opt) {
  check_k(g, k);
  try {
    return finish(sponge_pencil(g, cfg), k, cfg.symmetric, seed, opt);
  } catch (const DefinitenessError& e) {
    throw DefinitenessError(std::string("SPONGE denominator L- + tau+ D+ is not positive definite (") + e.what() +
                            "); try a larger tau-plus");
  }
}

Labeling sponge_cluster(const SignedGraph& g, std::size_t k, const SpongeConfig& cfg, std::uint64_t seed,
                        const SpectralOptions& opt) {
  return sponge_embed_cluster(g, k, cfg, seed, opt).labels;
}

}  // namespace sgc
