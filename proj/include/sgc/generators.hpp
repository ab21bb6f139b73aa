#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

struct PowerLawConfig {
  std::size_t vertices = 10000;
  std::size_t edges = 100000;
  double exponent = 2.5;          // degree distribution tail
  double positive_fraction = 0.8;  // exact share of positive edges
  std::size_t factions = 0;       // 0: signs placed uniformly at random
};

// Chung-Lu graph with power-law expected degrees. With factions > 0 every
// vertex joins a random faction, internal edges are positive and the negative
// quota is drawn from the cross-faction edges.
struct GeneratedGraph {
  SignedGraph graph;
  Labeling factions;  // empty when factions == 0
};

GeneratedGraph powerlaw_signed(const PowerLawConfig& cfg, std::uint64_t seed);

struct PlantedConfig {
  std::vector<std::size_t> sizes;
  double p_in = 0.5;
  double p_out = 0.1;
  double flip = 0.0;  // probability of flipping each edge sign
};

// Signed block model: internal edges positive, cross edges negative, then
// each sign flipped with probability flip.
GeneratedGraph planted_factions(const PlantedConfig& cfg, std::uint64_t seed);

// n points per center, isotropic noise with the given deviation.
Eigen::MatrixXd gaussian_blobs(const Eigen::MatrixXd& centers, std::size_t per_center, double stddev,
                               std::uint64_t seed, Labeling* truth = nullptr);

}  // namespace sgc
