#pragma once

#include <cstdint>

#include "sgc/graph.hpp"

namespace sgc {

// Adds floor(ratio * e+) negative edges between distinct communities: a
// community pair is drawn uniformly among pairs with free slots, then one
// vertex uniformly from each side; draws hitting an existing edge are rejected.
SignedGraph augment_negative_edges(const SignedGraph& g, const Labeling& labels, double ratio, std::uint64_t seed);

}  // namespace sgc
