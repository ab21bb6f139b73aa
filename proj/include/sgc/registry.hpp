#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sgc/balance.hpp"
#include "sgc/graph.hpp"

namespace sgc {

struct MethodParams {
  std::uint64_t seed = 0;
  std::size_t restarts = 20;
  double tol = 1e-8;
  double tau_plus = 1.0;
  double tau_minus = 1.0;
  std::size_t walk_len = 5;
  std::size_t trees = 1000;
  std::size_t workers = 0;
};

struct MethodOutput {
  Labeling labels;
  std::optional<StatusInfluence> status_influence;  // graphB_km only
};

using MethodFn = std::function<MethodOutput(const SignedGraph&, std::size_t k, const MethodParams&)>;

struct MethodInfo {
  std::string name;
  std::string description;
  MethodFn run;
};

const std::vector<MethodInfo>& method_registry();
// Throws InvalidArgument listing the registered names.
const MethodInfo& find_method(const std::string& name);
std::vector<std::string> method_names();
std::string method_names_joined(const std::string& sep = ", ");

MethodOutput run_method(const std::string& name, const SignedGraph& g, std::size_t k, const MethodParams& p);

}  // namespace sgc
