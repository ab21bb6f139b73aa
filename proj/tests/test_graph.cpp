#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles/oracles.hpp"
#include "sgc/augment.hpp"
#include "sgc/components.hpp"
#include "sgc/error.hpp"
#include "sgc/io.hpp"
#include "sgc/stats.hpp"

using namespace sgc;

namespace {

SignedGraph parse(const std::string& text, EdgeFormat f = EdgeFormat::snap) {
  std::istringstream in(text);
  return read_edge_list(in, f);
}

std::multiset<std::tuple<std::int64_t, std::int64_t, int>> edge_multiset(const SignedGraph& g) {
  std::multiset<std::tuple<std::int64_t, std::int64_t, int>> out;
  for (const auto& e : g.edges()) {
    auto a = g.original_id(e.u), b = g.original_id(e.v);
    out.emplace(std::min(a, b), std::max(a, b), sign_value(e.sign));
  }
  return out;
}

}  // namespace

TEST(LoadEdgeList, PathWithMixedSigns) {
  auto g = parse("0 1 1\n1 2 -1\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_DOUBLE_EQ(compute_stats(g).pct_positive, 50.0);
}

TEST(LoadEdgeList, DuplicateCollapsedSelfLoopDropped) {
  auto g = parse("0 1 1\n1 0 1\n2 2 -1\n");
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_EQ(g.edges()[0].sign, Sign::positive);
}

TEST(LoadEdgeList, ConflictingSignsCancel) {
  auto g = parse("0 1 1\n1 0 -1\n1 2 -1\n2 1 -1\n0 2 1\n");
  EXPECT_EQ(g.num_edges(), 2u);
  EXPECT_FALSE(g.has_edge(0, 1));
  EXPECT_EQ(g.weight(1, 2), -1.0);
}

TEST(LoadEdgeList, MajoritySignWins) {
  auto g = parse("0 1 1\n1 0 -1\n0 1 -1\n");
  EXPECT_EQ(g.weight(0, 1), -1.0);
}

TEST(LoadEdgeList, CommentsCommasAndCompaction) {
  auto g = parse("# header\n% konect\n10,20,1\n20 , 40, -1  # tail\n\n", EdgeFormat::csv);
  EXPECT_EQ(g.num_vertices(), 3u);
  EXPECT_EQ(g.original_id(0), 10);
  EXPECT_EQ(g.original_id(2), 40);
  EXPECT_EQ(g.weight(1, 2), -1.0);
}

TEST(LoadEdgeList, CsvHeaderSkipped) {
  auto g = parse("from,to,sign\n1,2,1\n", EdgeFormat::csv);
  EXPECT_EQ(g.num_edges(), 1u);
}

TEST(LoadEdgeList, ParseErrorCarriesLineNumber) {
  try {
    parse("0 1 1\n# ok\n1 x 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse("0 1 2\n"), ParseError);
  EXPECT_THROW(parse("0 1 0\n"), ParseError);
  EXPECT_THROW(parse("0 1\n"), ParseError);
  EXPECT_THROW(parse("0 1 1 5\n"), ParseError);
  EXPECT_THROW(load_edge_list("/nonexistent/file.txt"), DataError);
}

TEST(LoadEdgeList, RoundTripPreservesEdgeMultiset) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = oracle::random_connected(15, 0.3, 0.4, seed);
    std::ostringstream out;
    write_edge_list(g, out);
    auto h = parse(out.str());
    EXPECT_EQ(edge_multiset(g), edge_multiset(h));
    std::ostringstream again;
    write_edge_list(h, again);
    EXPECT_EQ(out.str(), again.str());
    std::ostringstream csv;
    write_edge_list(g, csv, EdgeFormat::csv);
    EXPECT_EQ(edge_multiset(parse(csv.str(), EdgeFormat::csv)), edge_multiset(g));
  }
}

TEST(Labels, ReadCompactsAndMarksMissing) {
  auto g = parse("5 6 1\n6 7 1\n7 8 -1\n");
  std::istringstream in("5 3\n6 3\n8 -1\n");
  auto lab = read_labels(in, g);
  EXPECT_EQ(lab, (Labeling{1, 1, kUnassigned, 0}));
  std::istringstream dup("5 1\n5 2\n");
  EXPECT_THROW(read_labels(dup, g), ParseError);
}

TEST(Gcc, TieGoesToLowestVertex) {
  auto g = parse("0 1 1\n2 3 1\n");
  auto view = greatest_connected_component(g);
  EXPECT_EQ(view.graph.num_vertices(), 2u);
  EXPECT_EQ(view.new_to_old, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(view.old_to_new[2], -1);
}

TEST(Gcc, ConnectedGraphIsIdentity) {
  auto g = oracle::random_connected(12, 0.2, 0.3, 4);
  auto view = greatest_connected_component(g);
  EXPECT_EQ(view.graph.num_vertices(), g.num_vertices());
  EXPECT_EQ(edge_multiset(view.graph), edge_multiset(g));
  for (Vertex v = 0; v < g.num_vertices(); ++v) EXPECT_EQ(view.old_to_new[v], v);
}

TEST(Gcc, PositiveOnlyKeepsInducedNegativesAndIsSubset) {
  auto g = parse("0 1 1\n1 2 1\n2 3 -1\n3 4 1\n0 2 -1\n");
  auto pos = greatest_connected_component(g, ComponentMode::positive_only);
  EXPECT_EQ(pos.graph.num_vertices(), 3u);
  EXPECT_EQ(pos.graph.num_negative(), 1u);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto h = oracle::random_connected(14, 0.05, 0.5, seed);
    auto all = greatest_connected_component(h, ComponentMode::all_edges);
    auto p = greatest_connected_component(h, ComponentMode::positive_only);
    for (Vertex v : p.new_to_old) EXPECT_GE(all.old_to_new[v], 0);
  }
  EXPECT_EQ(greatest_connected_component(SignedGraph()).graph.num_vertices(), 0u);
}

TEST(Stats, TriangleK3) {
  auto g = parse("0 1 1\n1 2 1\n0 2 1\n");
  auto s = compute_stats(g);
  EXPECT_DOUBLE_EQ(s.density, 1.0);
  ASSERT_TRUE(s.bal3.has_value());
  EXPECT_DOUBLE_EQ(*s.bal3, 1.0);
}

TEST(Stats, Bal3AbsentWithoutTriangles) {
  auto s = compute_stats(parse("0 1 1\n1 2 -1\n"));
  EXPECT_FALSE(s.bal3.has_value());
  EXPECT_DOUBLE_EQ(s.degree_median, 1.0);
  EXPECT_DOUBLE_EQ(s.degree_max, 2.0);
  EXPECT_NE(stats_to_json(s).find("\"bal3\": null"), std::string::npos);
}

TEST(Stats, SingleVertexIsError) {
  EXPECT_THROW(compute_stats(SignedGraph(1, {})), DataError);
}

TEST(Stats, TrianglesMatchCubicScan) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto g = oracle::random_connected(18, 0.35, 0.4, seed);
    EXPECT_EQ(count_triangles(g), oracle::triangles(g));
  }
}

TEST(Stats, InvariantUnderRelabeling) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = oracle::random_connected(20, 0.25, 0.3, seed);
    std::vector<Vertex> perm(g.num_vertices());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng = make_rng(seed, 5);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({perm[e.u], perm[e.v], e.sign, 1.0});
    SignedGraph h(g.num_vertices(), edges);
    auto a = compute_stats(g), b = compute_stats(h);
    EXPECT_DOUBLE_EQ(a.density, b.density);
    EXPECT_DOUBLE_EQ(a.degree_avg, b.degree_avg);
    EXPECT_DOUBLE_EQ(a.degree_median, b.degree_median);
    EXPECT_DOUBLE_EQ(a.degree_max, b.degree_max);
    EXPECT_EQ(a.bal3, b.bal3);
  }
}

TEST(Augment, RatioZeroUnchanged) {
  auto g = parse("0 1 1\n1 2 1\n");
  auto h = augment_negative_edges(g, {0, 0, 1}, 0.0, 1);
  EXPECT_EQ(edge_multiset(g), edge_multiset(h));
}

TEST(Augment, ShortfallNamesCounts) {
  auto g = parse("0 1 1\n1 2 1\n");
  try {
    augment_negative_edges(g, {0, 0, 1}, 1.0, 1);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("requested 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("only 1"), std::string::npos);
  }
}

TEST(Augment, RejectsBadInput) {
  auto g = parse("0 1 1\n1 2 -1\n");
  EXPECT_THROW(augment_negative_edges(g, {0, 0, 1}, 0.5, 1), InvalidArgument);
  auto p = parse("0 1 1\n1 2 1\n");
  EXPECT_THROW(augment_negative_edges(p, {0, kUnassigned, 1}, 0.5, 1), InvalidArgument);
  EXPECT_THROW(augment_negative_edges(p, {0, 0, 1}, -0.5, 1), InvalidArgument);
}

TEST(Augment, NegativesOnlyBetweenCommunitiesAndDeterministic) {
  const std::size_t n = 60;
  Labeling lab(n);
  for (std::size_t i = 0; i < n; ++i) lab[i] = static_cast<ClusterId>(i % 4);
  auto base = oracle::planted(lab, 0.5, 0.0, 3);
  ASSERT_EQ(base.num_negative(), 0u);
  for (double ratio : {0.2, 0.5, 1.0}) {
    auto h = augment_negative_edges(base, lab, ratio, 42);
    EXPECT_EQ(h.num_positive(), base.num_positive());
    EXPECT_EQ(h.num_negative(), static_cast<std::size_t>(std::floor(ratio * base.num_positive())));
    for (const auto& e : h.edges())
      if (e.sign == Sign::negative) EXPECT_NE(lab[e.u], lab[e.v]);
    EXPECT_EQ(edge_multiset(h), edge_multiset(augment_negative_edges(base, lab, ratio, 42)));
  }
  EXPECT_NE(edge_multiset(augment_negative_edges(base, lab, 0.3, 1)),
            edge_multiset(augment_negative_edges(base, lab, 0.3, 2)));
}

TEST(Augment, FillsEveryAdmissiblePair) {
  // Two communities of 3 with no cross edges: exactly 9 admissible pairs.
  auto g = parse("0 1 1\n1 2 1\n0 2 1\n3 4 1\n4 5 1\n3 5 1\n");
  auto h = augment_negative_edges(g, {0, 0, 0, 1, 1, 1}, 1.5, 9);
  EXPECT_EQ(h.num_negative(), 9u);
  EXPECT_THROW(augment_negative_edges(g, {0, 0, 0, 1, 1, 1}, 10.0 / 6.0, 9), DataError);
}

TEST(Labeling, Helpers) {
  Labeling l{5, kUnassigned, 5, 2};
  EXPECT_EQ(canonical_labels(l), (Labeling{0, kUnassigned, 0, 1}));
  EXPECT_EQ(with_outcast_cluster(l), (Labeling{0, 2, 0, 1}));
  EXPECT_EQ(num_clusters(l), 2u);
  EXPECT_EQ(cluster_sizes(l), (std::vector<std::size_t>{2, 1}));
}

TEST(SignedGraphCtor, RejectsInvalid) {
  EXPECT_THROW(SignedGraph(2, {{0, 0, Sign::positive, 1.0}}), InvalidArgument);
  EXPECT_THROW(SignedGraph(2, {{0, 1, Sign::positive, 1.0}, {1, 0, Sign::negative, 1.0}}), InvalidArgument);
  EXPECT_THROW(SignedGraph(2, {{0, 2, Sign::positive, 1.0}}), InvalidArgument);
}
