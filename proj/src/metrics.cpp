#include "sgc/metrics.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "sgc/error.hpp"

namespace sgc {
namespace {

double choose2(double x) { return 0.5 * x * (x - 1.0); }

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string opt_csv(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

double adjusted_rand_index(const Labeling& a, const Labeling& b) {
  if (a.size() != b.size()) throw InvalidArgument("labelings differ in length");
  std::map<std::pair<ClusterId, ClusterId>, double> joint;
  std::map<ClusterId, double> ra, rb;
  double n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == kUnassigned || b[i] == kUnassigned) continue;
    joint[{a[i], b[i]}] += 1.0;
    ra[a[i]] += 1.0;
    rb[b[i]] += 1.0;
    n += 1.0;
  }
  if (n == 0.0) throw InvalidArgument("ARI undefined: no vertex is assigned in both labelings");
  double index = 0.0, sa = 0.0, sb = 0.0;
  for (const auto& [key, c] : joint) index += choose2(c);
  for (const auto& [key, c] : ra) sa += choose2(c);
  for (const auto& [key, c] : rb) sb += choose2(c);
  const double pairs = choose2(n);
  const double expected = pairs > 0.0 ? sa * sb / pairs : 0.0;
  const double max_index = 0.5 * (sa + sb);
  // Both trivial in the same way (all singletons or one block): identical partitions.
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

EdgeAgreement edge_agreement(const SignedGraph& g, const Labeling& labels) {
  if (labels.size() != g.num_vertices()) throw InvalidArgument("labeling length does not match graph");
  const Labeling full = with_outcast_cluster(labels);
  std::size_t pos_in = 0, neg_out = 0;
  for (const auto& e : g.edges()) {
    const bool same = full[e.u] == full[e.v];
    if (e.sign == Sign::positive && same) ++pos_in;
    if (e.sign == Sign::negative && !same) ++neg_out;
  }
  EdgeAgreement r;
  if (g.num_positive()) r.pos_in = static_cast<double>(pos_in) / static_cast<double>(g.num_positive());
  if (g.num_negative()) r.neg_out = static_cast<double>(neg_out) / static_cast<double>(g.num_negative());
  return r;
}

AriMatrix mutual_ari_matrix(const std::vector<NamedLabeling>& labelings) {
  if (labelings.size() < 2) throw InvalidArgument("need at least two labelings");
  AriMatrix m;
  const auto k = static_cast<Eigen::Index>(labelings.size());
  m.values = Eigen::MatrixXd::Identity(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    m.names.push_back(labelings[static_cast<std::size_t>(i)].first);
    for (Eigen::Index j = i + 1; j < k; ++j) {
      const double v = adjusted_rand_index(labelings[static_cast<std::size_t>(i)].second,
                                           labelings[static_cast<std::size_t>(j)].second);
      m.values(i, j) = m.values(j, i) = v;
    }
  }
  return m;
}

void write_ari_csv(const AriMatrix& m, std::ostream& out) {
  out << "method";
  for (const auto& n : m.names) out << ',' << n;
  out << '\n';
  for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
    out << m.names[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
      out << ',';
      if (!std::isnan(m.values(i, j))) out << format_real(m.values(i, j));
    }
    out << '\n';
  }
}

AriMatrix read_ari_csv(std::istream& in) {
  AriMatrix m;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty ARI csv");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "method") throw ParseError(1, "ARI csv header must start with 'method'");
  m.names.assign(header.begin() + 1, header.end());
  const auto k = static_cast<Eigen::Index>(m.names.size());
  m.values = Eigen::MatrixXd::Constant(k, k, std::nan(""));
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!std::getline(in, line)) throw DataError("ARI csv has too few rows");
    auto cells = split_csv_line(line);
    if (static_cast<Eigen::Index>(cells.size()) != k + 1 || cells[0] != m.names[static_cast<std::size_t>(i)]) {
      throw ParseError(static_cast<std::size_t>(i) + 2, "malformed ARI csv row");
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& c = cells[static_cast<std::size_t>(j) + 1];
      if (!c.empty()) m.values(i, j) = std::stod(c);
    }
  }
  return m;
}

EvalReport evaluate(const SignedGraph& g, const Labeling& labels, const std::optional<Labeling>& truth) {
  EvalReport r;
  const auto agreement = edge_agreement(g, labels);
  r.pos_in = agreement.pos_in;
  r.neg_out = agreement.neg_out;
  r.community_sizes = cluster_sizes(labels);
  r.k = r.community_sizes.size();
  for (auto c : labels) r.unassigned += c == kUnassigned;
  if (truth) r.ari_vs_ground = adjusted_rand_index(labels, *truth);
  return r;
}

std::string report_to_json(const EvalReport& r, int indent) {
  nlohmann::json j;
  j["method"] = r.method;
  j["dataset"] = r.dataset;
  j["k"] = r.k;
  j["ari_vs_ground"] = opt_json(r.ari_vs_ground);
  j["pos_in"] = opt_json(r.pos_in);
  j["neg_out"] = opt_json(r.neg_out);
  j["runtime_seconds"] = r.runtime_seconds;
  j["community_sizes"] = r.community_sizes;
  j["unassigned"] = r.unassigned;
  return j.dump(indent);
}

std::string report_csv_header() { return "dataset,method,k,ari_vs_ground,pos_in,neg_out,runtime_seconds,clusters,unassigned"; }

std::string report_to_csv_row(const EvalReport& r) {
  std::ostringstream out;
  out << r.dataset << ',' << r.method << ',' << r.k << ',' << opt_csv(r.ari_vs_ground) << ',' << opt_csv(r.pos_in) << ','
      << opt_csv(r.neg_out) << ',' << format_real(r.runtime_seconds) << ',' << r.community_sizes.size() << ','
      << r.unassigned;
  return out.str();
}

}  // namespace sgc
