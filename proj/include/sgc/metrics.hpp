#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgc/graph.hpp"

namespace sgc {

// Pair-counting ARI over vertices assigned in both labelings.
double adjusted_rand_index(const Labeling& a, const Labeling& b);

struct EdgeAgreement {
  std::optional<double> pos_in;   // absent without positive edges
  std::optional<double> neg_out;  // absent without negative edges
};

// Unassigned vertices count as one extra cluster.
EdgeAgreement edge_agreement(const SignedGraph& g, const Labeling& labels);

using NamedLabeling = std::pair<std::string, Labeling>;

struct AriMatrix {
  std::vector<std::string> names;
  Eigen::MatrixXd values;
};

AriMatrix mutual_ari_matrix(const std::vector<NamedLabeling>& labelings);
// Header "method,<names>", then one row per name.
void write_ari_csv(const AriMatrix& m, std::ostream& out);
AriMatrix read_ari_csv(std::istream& in);

struct EvalReport {
  std::string method;
  std::string dataset;
  std::size_t k = 0;
  std::optional<double> ari_vs_ground;
  std::optional<double> pos_in;
  std::optional<double> neg_out;
  double runtime_seconds = 0.0;
  std::vector<std::size_t> community_sizes;  // descending
  std::size_t unassigned = 0;
};

EvalReport evaluate(const SignedGraph& g, const Labeling& labels, const std::optional<Labeling>& truth);
std::string report_to_json(const EvalReport& r, int indent = 2);
std::string report_csv_header();
std::string report_to_csv_row(const EvalReport& r);

// Shortest decimal text that parses back to the same double.
std::string format_real(double x);

}  // namespace sgc
