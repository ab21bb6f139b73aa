#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "sgc/graph.hpp"

namespace sgc {

struct GraphStats {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double density = 0.0;
  double pct_positive = 0.0;  // percent, 0..100
  double degree_avg = 0.0;
  double degree_median = 0.0;
  double degree_max = 0.0;
  std::size_t triangles = 0;
  std::optional<double> bal3;  // absent without triangles
};

GraphStats compute_stats(const SignedGraph& g);

// Triangle counts on the underlying unsigned graph: (total, balanced).
std::pair<std::size_t, std::size_t> count_triangles(const SignedGraph& g);

std::string stats_to_json(const GraphStats& s, int indent = 2);

}  // namespace sgc
