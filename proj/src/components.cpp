#include "sgc/components.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sgc {
namespace {

bool keep(const Neighbor& nb, ComponentMode mode) { return mode == ComponentMode::all_edges || nb.w > 0.0; }

}  // namespace

std::vector<std::uint32_t> connected_components(const SignedGraph& g, ComponentMode mode) {
  constexpr auto unseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> comp(g.num_vertices(), unseen);
  std::uint32_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (comp[s] != unseen) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      for (const auto& nb : g.neighbors(u)) {
        if (keep(nb, mode) && comp[nb.v] == unseen) {
          comp[nb.v] = next;
          stack.push_back(nb.v);
        }
      }
    }
    ++next;
  }
  return comp;
}

std::size_t count_components(const SignedGraph& g, ComponentMode mode) {
  const auto comp = connected_components(g, mode);
  return comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
}

bool is_connected(const SignedGraph& g, ComponentMode mode) { return count_components(g, mode) <= 1; }

ComponentView greatest_connected_component(const SignedGraph& g, ComponentMode mode) {
  ComponentView view;
  view.old_to_new.assign(g.num_vertices(), -1);
  if (g.num_vertices() == 0) return view;
  const auto comp = connected_components(g, mode);
  std::vector<std::size_t> size(*std::max_element(comp.begin(), comp.end()) + 1, 0);
  for (auto c : comp) ++size[c];
  // Components are numbered by smallest member, so the first maximum wins ties.
  const auto best = static_cast<std::uint32_t>(std::max_element(size.begin(), size.end()) - size.begin());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (comp[v] == best) {
      view.old_to_new[v] = static_cast<std::int64_t>(view.new_to_old.size());
      view.new_to_old.push_back(v);
    }
  }
  view.graph = g.induced_subgraph(view.new_to_old);
  return view;
}

std::vector<std::int64_t> bfs_distances(const SignedGraph& g, Vertex src, ComponentMode mode) {
  std::vector<std::int64_t> dist(g.num_vertices(), -1);
  std::queue<Vertex> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (const auto& nb : g.neighbors(u)) {
      if (keep(nb, mode) && dist[nb.v] < 0) {
        dist[nb.v] = dist[u] + 1;
        q.push(nb.v);
      }
    }
  }
  return dist;
}

}  // namespace sgc
