#include "sgc/stats.hpp"

#include <algorithm>
#include <json.hpp>
#include <vector>

#include "sgc/error.hpp"

namespace sgc {

std::pair<std::size_t, std::size_t> count_triangles(const SignedGraph& g) {
  std::size_t total = 0, balanced = 0;
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    const auto nu = g.neighbors(u);
    for (const auto& a : nu) {
      if (a.v <= u) continue;
      const auto nv = g.neighbors(a.v);
      // Intersect the parts of both rows above a.v so each triangle u<v<w is seen once.
      auto i = std::upper_bound(nu.begin(), nu.end(), a.v, [](Vertex x, const Neighbor& n) { return x < n.v; });
      auto j = std::upper_bound(nv.begin(), nv.end(), a.v, [](Vertex x, const Neighbor& n) { return x < n.v; });
      while (i != nu.end() && j != nv.end()) {
        if (i->v < j->v) {
          ++i;
        } else if (j->v < i->v) {
          ++j;
        } else {
          ++total;
          if (a.w * i->w * j->w > 0.0) ++balanced;
          ++i;
          ++j;
        }
      }
    }
  }
  return {total, balanced};
}

GraphStats compute_stats(const SignedGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw DataError("density undefined for fewer than 2 vertices");
  GraphStats s;
  s.vertices = n;
  s.edges = g.num_edges();
  s.density = 2.0 * static_cast<double>(s.edges) / (static_cast<double>(n) * static_cast<double>(n - 1));
  s.pct_positive = s.edges == 0 ? 0.0 : 100.0 * static_cast<double>(g.num_positive()) / static_cast<double>(s.edges);
  std::vector<double> deg(n);
  for (Vertex v = 0; v < n; ++v) deg[v] = static_cast<double>(g.degree(v));
  std::sort(deg.begin(), deg.end());
  s.degree_avg = 2.0 * static_cast<double>(s.edges) / static_cast<double>(n);
  s.degree_median = n % 2 ? deg[n / 2] : 0.5 * (deg[n / 2 - 1] + deg[n / 2]);
  s.degree_max = deg.back();
  const auto [tri, bal] = count_triangles(g);
  s.triangles = tri;
  if (tri > 0) s.bal3 = static_cast<double>(bal) / static_cast<double>(tri);
  return s;
}

std::string stats_to_json(const GraphStats& s, int indent) {
  nlohmann::json j;
  j["vertices"] = s.vertices;
  j["edges"] = s.edges;
  j["density"] = s.density;
  j["pct_positive"] = s.pct_positive;
  j["degree_avg"] = s.degree_avg;
  j["degree_median"] = s.degree_median;
  j["degree_max"] = s.degree_max;
  j["triangles"] = s.triangles;
  j["bal3"] = s.bal3 ? nlohmann::json(*s.bal3) : nlohmann::json(nullptr);
  return j.dump(indent);
}

}  // namespace sgc
