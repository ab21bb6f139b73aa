#include "sgc/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>
#include <vector>

#include "sgc/error.hpp"

namespace sgc {
namespace {

std::string_view strip_comment(std::string_view line) {
  const auto pos = line.find_first_of("#%");
  if (pos != std::string_view::npos) line = line.substr(0, pos);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  return line;
}

// Fields are separated by whitespace and/or commas in either format.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view s, std::int64_t& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

EdgeFormat parse_edge_format(const std::string& name) {
  if (name == "snap") return EdgeFormat::snap;
  if (name == "csv") return EdgeFormat::csv;
  throw InvalidArgument("unknown edge format '" + name + "' (expected snap or csv)");
}

SignedGraph read_edge_list(std::istream& in, EdgeFormat format) {
  std::map<std::int64_t, Vertex> ids;
  std::map<std::pair<std::int64_t, std::int64_t>, int> sums;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_data = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_comment(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    std::int64_t u = 0, v = 0, s = 0;
    const bool ok = fields.size() == 3 && parse_int(fields[0], u) && parse_int(fields[1], v) &&
                    parse_int(fields[2], s);
    if (!ok) {
      // A csv may open with a column header.
      if (format == EdgeFormat::csv && !seen_data && !fields.empty() && !parse_int(fields[0], u)) {
        seen_data = true;
        continue;
      }
      throw ParseError(line_no, "expected 'u v sign', got '" + std::string(line) + "'");
    }
    seen_data = true;
    if (s != 1 && s != -1) throw ParseError(line_no, "sign must be 1 or -1, got " + std::to_string(s));
    if (u < 0 || v < 0) throw ParseError(line_no, "negative vertex id");
    ids.emplace(u, 0);
    ids.emplace(v, 0);
    if (u == v) continue;
    sums[{std::min(u, v), std::max(u, v)}] += static_cast<int>(s);
  }
  std::vector<std::int64_t> original;
  original.reserve(ids.size());
  for (auto& [orig, dense] : ids) {
    dense = static_cast<Vertex>(original.size());
    original.push_back(orig);
  }
  std::vector<Edge> edges;
  edges.reserve(sums.size());
  for (const auto& [pair, total] : sums) {
    if (total == 0) continue;
    edges.push_back({ids[pair.first], ids[pair.second], total > 0 ? Sign::positive : Sign::negative, 1.0});
  }
  const std::size_t n = original.size();
  return SignedGraph(n, std::move(edges), std::move(original));
}

SignedGraph load_edge_list(const std::string& path, EdgeFormat format) {
  auto in = open_input(path);
  return read_edge_list(in, format);
}

void write_edge_list(const SignedGraph& g, std::ostream& out, EdgeFormat format) {
  const char* sep = format == EdgeFormat::csv ? "," : " ";
  std::vector<std::tuple<std::int64_t, std::int64_t, int>> rows;
  rows.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    auto a = g.original_id(e.u), b = g.original_id(e.v);
    if (a > b) std::swap(a, b);
    rows.emplace_back(a, b, sign_value(e.sign));
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [a, b, s] : rows) out << a << sep << b << sep << s << '\n';
}

void save_edge_list(const SignedGraph& g, const std::string& path, EdgeFormat format) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  write_edge_list(g, out, format);
}

Labeling read_labels(std::istream& in, const SignedGraph& g) {
  std::map<std::int64_t, Vertex> index;
  for (Vertex v = 0; v < g.num_vertices(); ++v) index[g.original_id(v)] = v;
  std::map<std::int64_t, std::vector<Vertex>> groups;
  std::vector<bool> seen(g.num_vertices(), false);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = strip_comment(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    std::int64_t u = 0, c = 0;
    if (fields.size() != 2 || !parse_int(fields[0], u) || !parse_int(fields[1], c)) {
      if (line_no == 1 && !fields.empty() && !parse_int(fields[0], u)) continue;  // header
      throw ParseError(line_no, "expected 'vertex label', got '" + std::string(line) + "'");
    }
    auto it = index.find(u);
    if (it == index.end()) continue;  // vertex not in this graph (e.g. dropped by GCC)
    if (seen[it->second]) throw ParseError(line_no, "vertex " + std::to_string(u) + " labeled twice");
    seen[it->second] = true;
    groups[c].push_back(it->second);
  }
  Labeling labels(g.num_vertices(), kUnassigned);
  ClusterId next = 0;
  for (const auto& [c, members] : groups) {
    for (auto v : members) labels[v] = next;
    ++next;
  }
  return labels;
}

Labeling load_labels(const std::string& path, const SignedGraph& g) {
  auto in = open_input(path);
  return read_labels(in, g);
}

void write_labels(const SignedGraph& g, const Labeling& labels, std::ostream& out) {
  out << "vertex,cluster\n";
  for (Vertex v = 0; v < g.num_vertices(); ++v) out << g.original_id(v) << ',' << labels[v] << '\n';
}

}  // namespace sgc
