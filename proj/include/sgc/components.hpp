#pragma once

#include <cstdint>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

enum class ComponentMode { all_edges, positive_only };

// Component index per vertex, numbered by smallest member vertex.
std::vector<std::uint32_t> connected_components(const SignedGraph& g, ComponentMode mode = ComponentMode::all_edges);
std::size_t count_components(const SignedGraph& g, ComponentMode mode = ComponentMode::all_edges);
bool is_connected(const SignedGraph& g, ComponentMode mode = ComponentMode::all_edges);

struct ComponentView {
  SignedGraph graph;
  std::vector<std::int64_t> old_to_new;  // -1 for dropped vertices
  std::vector<Vertex> new_to_old;
};

// Largest component under the edge filter; ties go to the component whose
// smallest vertex id is lowest. The subgraph keeps every edge induced on the
// chosen vertices, negative ones included.
ComponentView greatest_connected_component(const SignedGraph& g, ComponentMode mode = ComponentMode::all_edges);

// Undirected BFS hop distances from src over the filtered edges; -1 if unreachable.
std::vector<std::int64_t> bfs_distances(const SignedGraph& g, Vertex src, ComponentMode mode);

}  // namespace sgc
