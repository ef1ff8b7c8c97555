#include "nhc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "nhc/error.hpp"

namespace nhc {
namespace {

std::optional<std::uint64_t> as_index(const std::string& s) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

std::optional<std::size_t> parse_nodes_header(const std::string& line) {
  std::istringstream ss(line.substr(1));
  std::string key;
  std::size_t n = 0;
  if (ss >> key && key == "nodes:" && ss >> n) return n;
  return std::nullopt;
}

}  // namespace

LabelledGraph parse_edgelist(std::istream& in, EdgeListFormat format) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::optional<std::size_t> declared_nodes;
  bool skip_size_line = format == EdgeListFormat::matrix_market;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '%') {
      if (line.rfind("%%MatrixMarket", first) == first && format == EdgeListFormat::automatic) {
        skip_size_line = true;
      }
      continue;
    }
    if (line[first] == '#') {
      if (auto n = parse_nodes_header(line.substr(first))) declared_nodes = n;
      continue;
    }
    std::istringstream ss(line);
    std::string a;
    std::string b;
    if (!(ss >> a >> b)) {
      throw Error("malformed edge on line " + std::to_string(line_no) + ": '" + line + "'");
    }
    if (skip_size_line) {
      skip_size_line = false;
      continue;
    }
    raw.emplace_back(std::move(a), std::move(b));
  }
  if (raw.empty() && !declared_nodes) throw Error("empty edge list");

  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> id_of;
  std::vector<Edge> edges;
  edges.reserve(raw.size());

  const bool all_integer = std::all_of(raw.begin(), raw.end(), [](const auto& e) {
    return as_index(e.first) && as_index(e.second);
  });

  if (all_integer && declared_nodes) {
    const std::size_t n = *declared_nodes;
    for (const auto& [a, b] : raw) {
      edges.push_back({static_cast<NodeId>(*as_index(a)), static_cast<NodeId>(*as_index(b))});
    }
    LabelledGraph out{build_graph(edges, n), {}};
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.labels.push_back(std::to_string(i));
    return out;
  }

  if (all_integer) {
    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& [a, b] : raw) {
      ids.push_back(*as_index(a));
      ids.push_back(*as_index(b));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (const auto id : ids) {
      id_of.emplace(std::to_string(id), static_cast<NodeId>(labels.size()));
      labels.push_back(std::to_string(id));
    }
    // Canonicalise spellings like "007".
    for (const auto& [a, b] : raw) {
      edges.push_back({id_of.at(std::to_string(*as_index(a))), id_of.at(std::to_string(*as_index(b)))});
    }
  } else {
    auto intern = [&](const std::string& s) {
      auto [it, fresh] = id_of.emplace(s, static_cast<NodeId>(labels.size()));
      if (fresh) labels.push_back(s);
      return it->second;
    };
    for (const auto& [a, b] : raw) {
      const NodeId u = intern(a);
      const NodeId v = intern(b);
      edges.push_back({u, v});
    }
  }
  return {build_graph(edges, labels.size()), std::move(labels)};
}

LabelledGraph read_edgelist(const std::filesystem::path& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list '" + path.string() + "'");
  try {
    return parse_edgelist(in, format);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_edgelist(std::ostream& out, const Graph& g) {
  out << "# nodes: " << g.node_count() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edgelist(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_edgelist(out, g);
}

}  // namespace nhc
