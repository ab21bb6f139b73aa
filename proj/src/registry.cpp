#include "sgc/registry.hpp"

#include "sgc/concor.hpp"
#include "sgc/error.hpp"
#include "sgc/rwg.hpp"
#include "sgc/spectral.hpp"

namespace sgc {
namespace {

SpectralOptions spectral_options(const MethodParams& p) {
  SpectralOptions o;
  o.eigen.tol = p.tol;
  o.eigen.seed = p.seed;
  o.kmeans.restarts = p.restarts;
  o.kmeans.seed = p.seed;
  o.kmeans.workers = p.workers;
  return o;
}

KMeansOptions kmeans_options(const MethodParams& p) {
  KMeansOptions o;
  o.restarts = p.restarts;
  o.seed = p.seed;
  o.workers = p.workers;
  return o;
}

MethodFn laplacian_method(LaplacianKind kind) {
  return [kind](const SignedGraph& g, std::size_t k, const MethodParams& p) {
    return MethodOutput{spectral_cluster(g, kind, k, p.seed, spectral_options(p)), std::nullopt};
  };
}

MethodFn bnc_method(bool symmetric) {
  return [symmetric](const SignedGraph& g, std::size_t k, const MethodParams& p) {
    return MethodOutput{bnc_cluster(g, k, symmetric, p.seed, spectral_options(p)), std::nullopt};
  };
}

MethodFn sponge_method(bool symmetric) {
  return [symmetric](const SignedGraph& g, std::size_t k, const MethodParams& p) {
    SpongeConfig cfg{p.tau_plus, p.tau_minus, symmetric};
    return MethodOutput{sponge_cluster(g, k, cfg, p.seed, spectral_options(p)), std::nullopt};
  };
}

std::vector<MethodInfo> build_registry() {
  std::vector<MethodInfo> r;
  r.push_back({"lap_none", "signed Laplacian D - A", laplacian_method(LaplacianKind::signed_plain)});
  r.push_back({"lap_sym", "symmetric normalized signed Laplacian", laplacian_method(LaplacianKind::signed_sym)});
  r.push_back({"lap_sep", "separately normalized positive and negative Laplacians",
               laplacian_method(LaplacianKind::signed_sym_separated)});
  r.push_back({"BNC_none", "balance normalized cut, generalized form", bnc_method(false)});
  r.push_back({"BNC_sym", "balance normalized cut, symmetric form", bnc_method(true)});
  r.push_back({"SPONGE_none", "SPONGE generalized eigenproblem", sponge_method(false)});
  r.push_back({"SPONGE_sym", "SPONGE with normalized Laplacians", sponge_method(true)});
  r.push_back({"FCSG", "random-walk-gap contraction", [](const SignedGraph& g, std::size_t, const MethodParams& p) {
                 return MethodOutput{fcsg_cluster(g, RwgConfig{p.walk_len}), std::nullopt};
               }});
  r.push_back({"graphB_km", "k-means on sampled status and influence",
               [](const SignedGraph& g, std::size_t k, const MethodParams& p) {
                 StatusInfluence si;
                 auto labels = graphb_km_cluster(g, k, p.trees, p.seed, kmeans_options(p), &si);
                 return MethodOutput{std::move(labels), std::move(si)};
               }});
  r.push_back({"harary", "Harary bipartition, then k/2 unsigned clusters per side",
               [](const SignedGraph& g, std::size_t k, const MethodParams& p) {
                 const std::size_t inner = std::max<std::size_t>(1, k / 2);
                 return MethodOutput{harary_cluster(g, inner, p.seed, spectral_options(p)), std::nullopt};
               }});
  r.push_back({"weak_balance", "positive components of a complete graph",
               [](const SignedGraph& g, std::size_t, const MethodParams&) {
                 return MethodOutput{weak_balance_cluster(g), std::nullopt};
               }});
  r.push_back({"completion", "rank-k sign completion, then spectral k-means",
               [](const SignedGraph& g, std::size_t k, const MethodParams& p) {
                 return MethodOutput{matrix_completion_cluster(g, k, p.seed, kmeans_options(p)), std::nullopt};
               }});
  r.push_back({"concor", "iterated column correlations on the adjacency matrix",
               [](const SignedGraph& g, std::size_t k, const MethodParams&) {
                 return MethodOutput{concor_cluster(g, k), std::nullopt};
               }});
  return r;
}

}  // namespace

const std::vector<MethodInfo>& method_registry() {
  static const std::vector<MethodInfo> registry = build_registry();
  return registry;
}

const MethodInfo& find_method(const std::string& name) {
  for (const auto& m : method_registry()) {
    if (m.name == name) return m;
  }
  throw InvalidArgument("unknown method '" + name + "'; available: " + method_names_joined());
}

std::vector<std::string> method_names() {
  std::vector<std::string> out;
  for (const auto& m : method_registry()) out.push_back(m.name);
  return out;
}

std::string method_names_joined(const std::string& sep) {
  std::string out;
  for (const auto& m : method_registry()) out += (out.empty() ? "" : sep) + m.name;
  return out;
}

MethodOutput run_method(const std::string& name, const SignedGraph& g, std::size_t k, const MethodParams& p) {
  return find_method(name).run(g, k, p);
}

}  // namespace sgc
