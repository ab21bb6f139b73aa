#include "sgc/augment.hpp"

#include <cmath>
#include <map>
#include <set>
#include <string>

#include "sgc/error.hpp"
#include "sgc/rng.hpp"

namespace sgc {

SignedGraph augment_negative_edges(const SignedGraph& g, const Labeling& labels, double ratio, std::uint64_t seed) {
  if (g.num_negative() != 0) throw InvalidArgument("augmentation expects an all-positive graph");
  if (labels.size() != g.num_vertices()) throw InvalidArgument("labeling length does not match graph");
  if (!(ratio >= 0.0) || !std::isfinite(ratio)) throw InvalidArgument("ratio must be a finite non-negative number");
  for (auto c : labels) {
    if (c == kUnassigned) throw InvalidArgument("augmentation needs every vertex labeled");
  }
  const auto requested = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(g.num_positive())));
  if (requested == 0) return g;

  const Labeling canon = canonical_labels(labels);
  const std::size_t k = num_clusters(canon);
  std::vector<std::vector<Vertex>> members(k);
  for (Vertex v = 0; v < g.num_vertices(); ++v) members[canon[v]].push_back(v);

  // Free (non-adjacent) slots per community pair a < b.
  std::map<std::pair<ClusterId, ClusterId>, std::size_t> existing;
  for (const auto& e : g.edges()) {
    auto a = canon[e.u], b = canon[e.v];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    ++existing[{a, b}];
  }
  std::vector<std::pair<ClusterId, ClusterId>> pairs;
  std::vector<std::size_t> free_slots;
  std::size_t available = 0;
  for (ClusterId a = 0; a < static_cast<ClusterId>(k); ++a) {
    for (ClusterId b = a + 1; b < static_cast<ClusterId>(k); ++b) {
      const std::size_t slots = members[a].size() * members[b].size() - existing[{a, b}];
      if (slots == 0) continue;
      pairs.emplace_back(a, b);
      free_slots.push_back(slots);
      available += slots;
    }
  }
  if (available < requested) {
    throw DataError("augmentation shortfall: requested " + std::to_string(requested) +
                    " negative edges but only " + std::to_string(available) +
                    " non-adjacent cross-community pairs exist");
  }

  Rng rng = make_rng(seed, 0xa06e);
  std::set<std::pair<Vertex, Vertex>> added;
  std::vector<Edge> edges = g.edges();
  while (added.size() < requested) {
    const std::size_t p = uniform_index(rng, pairs.size());
    const auto [a, b] = pairs[p];
    Vertex u = members[a][uniform_index(rng, members[a].size())];
    Vertex v = members[b][uniform_index(rng, members[b].size())];
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v) || !added.emplace(u, v).second) continue;
    edges.push_back({u, v, Sign::negative, 1.0});
    if (--free_slots[p] == 0) {
      pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(p));
      free_slots.erase(free_slots.begin() + static_cast<std::ptrdiff_t>(p));
    }
  }
  return SignedGraph(g.num_vertices(), std::move(edges), g.original_ids());
}

}  // namespace sgc
