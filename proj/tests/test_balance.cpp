#include <gtest/gtest.h>

#include <set>

#include "oracles/oracles.hpp"
#include "sgc/balance.hpp"
#include "sgc/components.hpp"
#include "sgc/concor.hpp"
#include "sgc/error.hpp"
#include "sgc/generators.hpp"
#include "sgc/log.hpp"
#include "sgc/metrics.hpp"
#include "sgc/rwg.hpp"
#include "sgc/spectral.hpp"

using namespace sgc;
using Eigen::MatrixXd;

namespace {

const Edge P(Vertex u, Vertex v) { return {u, v, Sign::positive, 1.0}; }
const Edge N(Vertex u, Vertex v) { return {u, v, Sign::negative, 1.0}; }

SignedGraph triangle_ppn() { return SignedGraph(3, {P(0, 1), P(1, 2), N(0, 2)}); }

SignedGraph complete(std::size_t n, const std::vector<ClusterId>& f) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back(f[u] == f[v] ? P(u, v) : N(u, v));
  return SignedGraph(n, e);
}

std::size_t frustration_by_definition(const SignedGraph& g, const std::vector<std::int8_t>& s) {
  std::size_t bad = 0;
  for (const auto& e : g.edges()) bad += sign_value(e.sign) != s[e.u] * s[e.v];
  return bad;
}

bool weakly_balanced_by_enumeration(const SignedGraph& g) {
  bool found = false;
  for (std::size_t k = 1; k <= g.num_vertices() && !found; ++k) {
    oracle::for_each_partition(g.num_vertices(), k, [&](const std::vector<ClusterId>& l) {
      bool ok = true;
      for (const auto& e : g.edges()) ok &= (l[e.u] == l[e.v]) == (e.sign == Sign::positive);
      found |= ok;
    });
  }
  return found;
}

}  // namespace

TEST(Harary, FourCycle) {
  const SignedGraph g(4, {P(0, 1), N(1, 2), P(2, 3), N(3, 0)});
  ASSERT_TRUE(oracle::balanced(g));
  const auto r = harary_bipartition(g);
  ASSERT_TRUE(r.balanced);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(r.parts, {0, 0, 1, 1}), 1.0);
}

TEST(Harary, UnbalancedTriangleWitness) {
  const auto r = harary_bipartition(triangle_ppn());
  EXPECT_FALSE(r.balanced);
  const std::set<Vertex> cyc(r.witness_cycle.begin(), r.witness_cycle.end());
  EXPECT_EQ(cyc, (std::set<Vertex>{0, 1, 2}));
}

TEST(Harary, AllPositiveIsOneSide) {
  const auto g = oracle::random_connected(8, 0.3, 0.0, 4);
  const auto r = harary_bipartition(g);
  ASSERT_TRUE(r.balanced);
  EXPECT_EQ(r.parts, Labeling(8, 0));
}

TEST(Harary, AgreesWithSwitchingOracle) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t n = 2 + s % 11;
    SignedGraph g = oracle::random_connected(n, 0.2, s % 2 ? 0.3 : 0.0, 400 + s);
    if (s % 3 == 0) {
      std::vector<ClusterId> f(n);
      for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<ClusterId>((i * 5 + s) % 2);
      g = oracle::planted(f, 0.8, 0.8, s);
      if (!is_connected(g)) continue;
    }
    const auto r = harary_bipartition(g);
    ASSERT_EQ(r.balanced, oracle::balanced(g)) << "seed " << s;
    if (r.balanced) {
      for (const auto& e : g.edges()) EXPECT_EQ(r.parts[e.u] == r.parts[e.v], e.sign == Sign::positive);
    } else {
      ASSERT_GE(r.witness_cycle.size(), 3u);
      int product = 1;
      for (std::size_t i = 0; i < r.witness_cycle.size(); ++i) {
        const Vertex a = r.witness_cycle[i], b = r.witness_cycle[(i + 1) % r.witness_cycle.size()];
        ASSERT_TRUE(g.has_edge(a, b)) << "seed " << s;
        product *= g.weight(a, b) > 0 ? 1 : -1;
      }
      EXPECT_EQ(product, -1) << "seed " << s;
    }
  }
}

TEST(Harary, DisconnectedRejected) {
  EXPECT_THROW(harary_bipartition(SignedGraph(4, {P(0, 1), N(2, 3)})), DataError);
}

TEST(Harary, ClusterVariants) {
  // Two positive cliques joined by negative edges.
  std::vector<ClusterId> f{0, 0, 0, 0, 1, 1, 1, 1};
  const auto g = complete(8, f);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(harary_cluster(g, 1, 0), f), 1.0);
  // Balanced with k_inner = 1 reproduces the bipartition.
  const SignedGraph c4(4, {P(0, 1), N(1, 2), P(2, 3), N(3, 0)});
  EXPECT_EQ(harary_cluster(c4, 1, 0), harary_bipartition(c4).parts);
  // All positive: one side, split by unsigned spectral clustering.
  std::vector<Edge> e;
  for (Vertex base : {Vertex{0}, Vertex{5}})
    for (Vertex i = 0; i < 5; ++i)
      for (Vertex j = i + 1; j < 5; ++j) e.push_back(P(base + i, base + j));
  e.push_back(P(0, 5));
  const SignedGraph bridge(10, e);
  const auto expected = spectral_cluster(bridge, LaplacianKind::unsigned_plain, 2, 0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(harary_cluster(bridge, 2, 0), expected), 1.0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(expected, {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}), 1.0);
  EXPECT_THROW(harary_cluster(triangle_ppn(), 1, 0), MethodError);
}

TEST(WeakBalance, Examples) {
  const auto k3 = complete(3, {0, 1, 2});
  EXPECT_EQ(weak_balance_cluster(k3), (Labeling{0, 1, 2}));
  const auto k4 = complete(4, {0, 1, 0, 1});
  EXPECT_DOUBLE_EQ(adjusted_rand_index(weak_balance_cluster(k4), {0, 1, 0, 1}), 1.0);
  const auto r = weak_balance_partition(triangle_ppn());
  EXPECT_FALSE(r.weakly_balanced);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->sign, Sign::negative);
  EXPECT_THROW(weak_balance_cluster(triangle_ppn()), MethodError);
  EXPECT_THROW(weak_balance_partition(SignedGraph(3, {P(0, 1), P(1, 2)})), InvalidArgument);
}

TEST(WeakBalance, AgreesWithPartitionEnumeration) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t n = 3 + s % 4;
    Rng rng = make_rng(s, 12);
    std::vector<Edge> e;
    std::vector<ClusterId> f(n);
    for (auto& x : f) x = static_cast<ClusterId>(uniform_index(rng, 3));
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        bool pos = f[u] == f[v];
        if (s % 2 && uniform01(rng) < 0.15) pos = !pos;
        e.push_back(pos ? P(u, v) : N(u, v));
      }
    const SignedGraph g(n, e);
    EXPECT_EQ(weak_balance_partition(g).weakly_balanced, weakly_balanced_by_enumeration(g)) << "seed " << s;
  }
}

TEST(Completion, CompleteGraphIsNoOp) {
  const std::vector<ClusterId> f{0, 0, 1, 1};
  const auto g = complete(4, f);
  const MatrixXd c = complete_signs(g, 2);
  EXPECT_TRUE(c.isApprox(oracle::adjacency(g)));
  EXPECT_DOUBLE_EQ(adjusted_rand_index(matrix_completion_cluster(g, 2, 0), f), 1.0);
}

TEST(Completion, BalancedFourCycle) {
  const SignedGraph c4(4, {P(0, 1), N(1, 2), P(2, 3), N(3, 0)});
  const MatrixXd c = complete_signs(c4, 2);
  // Balanced completion of parts {0,1}|{2,3}.
  EXPECT_LT(c(0, 2), 0);
  EXPECT_LT(c(1, 3), 0);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(matrix_completion_cluster(c4, 2, 0), {0, 0, 1, 1}), 1.0);
  EXPECT_THROW(matrix_completion_cluster(c4, 1, 0), InvalidArgument);
}

TEST(BalancedStates, BalancedGraphHasNoFrustration) {
  std::vector<ClusterId> f{0, 1, 0, 1, 1, 0, 0, 1, 1};
  const auto g = oracle::planted(f, 0.8, 0.8, 2);
  ASSERT_TRUE(is_connected(g));
  for (const auto& st : sample_balanced_states(g, 20, 1)) EXPECT_EQ(st.frustration, 0u);
}

TEST(BalancedStates, TriangleEveryTreeFrustratesOnce) {
  const auto states = sample_balanced_states(triangle_ppn(), 30, 5);
  std::set<std::vector<std::pair<Vertex, Vertex>>> trees;
  for (const auto& st : states) {
    EXPECT_EQ(st.frustration, 1u);
    auto t = st.source_tree;
    std::sort(t.begin(), t.end());
    trees.insert(t);
  }
  EXPECT_EQ(trees.size(), 3u);
}

TEST(BalancedStates, NeverBelowFrustrationIndex) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto g = oracle::random_connected(3 + s % 10, 0.3, 0.4, 900 + s);
    const auto index = oracle::frustration_index(g);
    const auto states = sample_balanced_states(g, 25, s);
    std::size_t best = SIZE_MAX;
    for (const auto& st : states) {
      EXPECT_GE(st.frustration, index);
      EXPECT_EQ(st.frustration, frustration_by_definition(g, st.vertex_signs));
      EXPECT_EQ(st.frustration, frustration_of(g, st.vertex_signs));
      EXPECT_EQ(st.source_tree.size(), g.num_vertices() - 1);
      EXPECT_EQ(st.vertex_signs[0], 1);
      best = std::min(best, st.frustration);
    }
    EXPECT_GE(best, index);
  }
}

TEST(BalancedStates, DeterministicAcrossWorkers) {
  const auto g = oracle::random_connected(30, 0.1, 0.3, 3);
  const auto a = sample_balanced_states(g, 40, 7, 1);
  const auto b = sample_balanced_states(g, 40, 7, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].vertex_signs, b[i].vertex_signs);
  EXPECT_THROW(sample_balanced_states(SignedGraph(4, {P(0, 1), P(2, 3)}), 3, 0), DataError);
}

TEST(StatusInfluence, Invariants) {
  const auto pos = oracle::random_connected(10, 0.3, 0.0, 1);
  const auto si_pos = status_influence(pos, sample_balanced_states(pos, 10, 0));
  for (double s : si_pos.status) EXPECT_DOUBLE_EQ(s, 1.0);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = oracle::random_connected(5 + s % 20, 0.2, 0.4, 60 + s);
    const auto si = status_influence(g, sample_balanced_states(g, 30, s));
    EXPECT_EQ(si.samples, 30u);
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      EXPECT_GE(si.influence[v], 0.0);
      EXPECT_LE(si.influence[v], si.status[v] + 1e-15);
      EXPECT_LE(si.status[v], 1.0);
    }
  }
}

TEST(GraphB, TwoFactionsRecovered) {
  std::vector<ClusterId> f(24);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = static_cast<ClusterId>(i < 16 ? 0 : 1);
  const auto g = oracle::planted(f, 0.6, 0.3, 8);
  ASSERT_TRUE(is_connected(g));
  StatusInfluence si;
  const auto l = graphb_km_cluster(g, 2, 200, 1, {}, &si);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(l, f), 1.0);
  EXPECT_EQ(si.status.size(), g.num_vertices());
}

TEST(Rwg, NoNegativesGiveOnes) {
  const auto g = oracle::random_connected(7, 0.3, 0.0, 2);
  EXPECT_TRUE(rwg_matrix(g, {7}).isApprox(MatrixXd::Ones(7, 7)));
  const SignedGraph edge(2, {P(0, 1)});
  EXPECT_TRUE(rwg_matrix(edge, {1}).isApprox(MatrixXd::Ones(2, 2)));
}

TEST(Rwg, HandComputedTriangle) {
  // Positive path 0-1-2 plus a negative chord: with L = 2 only the chord
  // pair gains walk mass, so H is all ones except H(0,2).
  const auto g = triangle_ppn();
  MatrixXd expected = MatrixXd::Ones(3, 3);
  expected(0, 2) = expected(2, 0) = 0.0;
  EXPECT_LT((rwg_matrix(g, {2}) - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Rwg, Constraints) {
  const SignedGraph path(4, {P(0, 1), P(1, 2), P(2, 3), N(0, 3)});
  EXPECT_EQ(positive_diameter(path), 3u);
  EXPECT_THROW(rwg_matrix(path, {2}), MethodError);
  EXPECT_THROW(rwg_matrix(SignedGraph(3, {P(0, 1), N(1, 2)}), {5}), DataError);
  std::vector<std::string> warnings;
  set_warning_sink([&](const std::string& w) { warnings.push_back(w); });
  rwg_matrix(path, {12});
  set_warning_sink(nullptr);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Rwg, EntriesInUnitIntervalAndSymmetric) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = oracle::random_connected(6 + s % 10, 0.3, 0.3, 30 + s);
    if (!is_connected(g, ComponentMode::positive_only)) continue;
    const MatrixXd h = rwg_matrix(g, {std::max<std::size_t>(5, positive_diameter(g))});
    EXPECT_GE(h.minCoeff(), 0.0);
    EXPECT_LE(h.maxCoeff(), 1.0);
    EXPECT_LT((h - h.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Fcsg, TriangleMergesFirstPositivePair) {
  const auto r = fcsg_partition(triangle_ppn(), {2});
  EXPECT_EQ(r.labels, (Labeling{0, 0, 1}));
}

TEST(Fcsg, CliquesJoinedByNegativeEdge) {
  const auto g = complete(8, {0, 0, 0, 0, 1, 1, 1, 1});
  // Drop the extra negatives so the positive part stays connected through one bridge.
  std::vector<Edge> e;
  for (const auto& ed : g.edges())
    if (ed.sign == Sign::positive) e.push_back(ed);
  e.push_back(P(3, 4));
  e.push_back(N(0, 7));
  e.push_back(N(1, 6));
  e.push_back(N(2, 5));
  const SignedGraph h(8, e);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(fcsg_cluster(h, {5}), {0, 0, 0, 0, 1, 1, 1, 1}), 1.0);
}

TEST(Fcsg, OutsidePositiveComponentUnassigned) {
  const SignedGraph g(5, {P(0, 1), P(1, 2), N(2, 3), N(3, 4), N(0, 4)});
  const auto r = fcsg_partition(g, {5});
  EXPECT_EQ(r.gcc_vertices, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(r.labels[3], kUnassigned);
  EXPECT_EQ(r.labels[4], kUnassigned);
}

TEST(Fcsg, EveryPositiveEdgeInternalAfterContraction) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = oracle::random_connected(6 + s % 12, 0.3, 0.35, 80 + s);
    const auto view = greatest_connected_component(g, ComponentMode::positive_only);
    const std::size_t walk = std::max<std::size_t>(5, positive_diameter(view.graph));
    const auto r = fcsg_partition(g, {walk});
    // Clusters are unions of positive components of the contracted graph.
    for (const auto& e : view.graph.edges()) {
      if (e.sign != Sign::positive) continue;
      const auto a = r.labels[view.new_to_old[e.u]], b = r.labels[view.new_to_old[e.v]];
      ASSERT_NE(a, kUnassigned);
      if (a != b) {
        // A surviving cross-cluster positive edge must be cancelled by negatives.
        double total = 0;
        for (const auto& f : view.graph.edges()) {
          const auto x = r.labels[view.new_to_old[f.u]], y = r.labels[view.new_to_old[f.v]];
          if ((x == a && y == b) || (x == b && y == a)) total += f.sign == Sign::positive ? r.h(f.u, f.v) : -1.0;
        }
        EXPECT_LE(total, 1e-12) << "seed " << s;
      }
    }
  }
}

TEST(Concor, AnticorrelatedGroups) {
  MatrixXd m(6, 6);
  Eigen::VectorXd a(6);
  a << 1, -2, 0.5, 3, -1, 2;
  for (int j = 0; j < 6; ++j) m.col(j) = j < 3 ? a : Eigen::VectorXd(-a);
  const auto r = concor(m);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(r.leaves(), {0, 0, 0, 1, 1, 1}), 1.0);
}

TEST(Concor, DepthTwoFourGroups) {
  Rng rng = make_rng(5, 0);
  const int rows = 40, per = 5;
  MatrixXd base(rows, 4);
  for (Eigen::Index i = 0; i < base.size(); ++i) base.data()[i] = standard_normal(rng);
  // Groups 0/1 and 2/3 are anti-aligned pairs, the pairs are independent.
  base.col(1) = -base.col(0) + 0.3 * base.col(1);
  base.col(3) = -base.col(2) + 0.3 * base.col(3);
  MatrixXd m(rows, 4 * per);
  Labeling truth;
  for (int gi = 0; gi < 4; ++gi)
    for (int c = 0; c < per; ++c) {
      Eigen::VectorXd noise(rows);
      for (auto& x : noise) x = 0.05 * standard_normal(rng);
      m.col(gi * per + c) = base.col(gi) + noise;
      truth.push_back(gi);
    }
  ConcorOptions opt;
  opt.depth = 2;
  const auto r = concor(m, opt);
  ASSERT_EQ(r.levels.size(), 2u);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(r.leaves(), truth), 1.0);
}

TEST(Concor, ConstantColumnHandled) {
  MatrixXd m(5, 4);
  m << 1, 1, 2, -1,  //
      2, 1, 4, -2,   //
      3, 1, 6, -3,   //
      4, 1, 8, -4,   //
      0, 1, 1, 0;
  const auto a = concor(m), b = concor(m);
  EXPECT_EQ(a.leaves(), b.leaves());
  EXPECT_EQ(a.leaves().size(), 4u);
}

TEST(Concor, NonConvergenceReported) {
  Rng rng = make_rng(1, 0);
  MatrixXd m(10, 8);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = standard_normal(rng);
  ConcorOptions opt;
  opt.max_iter = 1;
  EXPECT_THROW(concor(m, opt), ConvergenceError);
  EXPECT_THROW(concor(MatrixXd::Ones(3, 1)), InvalidArgument);
}

TEST(Concor, TwoColumnsSplitOnlyWhenAnticorrelated) {
  MatrixXd m(4, 2);
  m << 1, 2, 2, 4, 3, 5, 4, 9;
  EXPECT_EQ(concor(m).leaves(), (Labeling{0, 0}));
  m.col(1) = -m.col(1);
  EXPECT_EQ(concor(m).leaves(), (Labeling{0, 1}));
}

TEST(Concor, GraphWrapper) {
  // Groups {0,1} and {2,3} never meet; the two pairs of groups are hostile.
  const std::vector<ClusterId> f{0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3};
  std::vector<Edge> e;
  for (Vertex u = 0; u < 12; ++u)
    for (Vertex v = u + 1; v < 12; ++v) {
      if (f[u] == f[v]) e.push_back(P(u, v));
      else if (f[u] / 2 != f[v] / 2) e.push_back(N(u, v));
    }
  const SignedGraph g(12, e);
  const auto l = concor_cluster(g, 4);
  EXPECT_DOUBLE_EQ(adjusted_rand_index(l, f), 1.0);
  EXPECT_THROW(concor_cluster(g, 1), InvalidArgument);
}
