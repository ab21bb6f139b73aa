#pragma once

#include <iosfwd>
#include <string>

#include "sgc/graph.hpp"

namespace sgc {

enum class EdgeFormat { snap, csv };

EdgeFormat parse_edge_format(const std::string& name);

// Reads `u v s` lines. '#' and '%' start comments. Directed rows are
// symmetrized, duplicate pairs aggregated by sign sum (zero sum drops the
// pair), self-loops dropped. Ids are compacted in ascending original order;
// ids seen only on self-loops still become vertices.
SignedGraph load_edge_list(const std::string& path, EdgeFormat format = EdgeFormat::snap);
SignedGraph read_edge_list(std::istream& in, EdgeFormat format = EdgeFormat::snap);

// Writes one `u v s` line per edge using original ids, sorted.
void write_edge_list(const SignedGraph& g, std::ostream& out, EdgeFormat format = EdgeFormat::snap);
void save_edge_list(const SignedGraph& g, const std::string& path, EdgeFormat format = EdgeFormat::snap);

// `u label` lines keyed by original id; label values are compacted to 0..k-1
// in ascending order. Vertices not listed are kUnassigned.
Labeling load_labels(const std::string& path, const SignedGraph& g);
Labeling read_labels(std::istream& in, const SignedGraph& g);
void write_labels(const SignedGraph& g, const Labeling& labels, std::ostream& out);

}  // namespace sgc
