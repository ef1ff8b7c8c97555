#include "nhc/graph.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <string>

#include "nhc/error.hpp"

namespace nhc {

double Graph::density() const {
  const auto n = static_cast<double>(node_count());
  if (n < 2.0) return 0.0;
  return 2.0 * static_cast<double>(edge_count_) / (n * (n - 1.0));
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  // Search the shorter list.
  if (degree_[u] > degree_[v]) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

std::size_t Graph::component_count() const {
  const std::size_t n = node_count();
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::size_t components = n;
  for (NodeId u = 0; u < n; ++u) {
    for (const NodeId v : neighbors(u)) {
      if (v <= u) continue;
      const NodeId a = find(u);
      const NodeId b = find(v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  return components;
}

Graph build_graph_from_canonical(std::size_t n, std::vector<Edge> edges) {
  assert(std::is_sorted(edges.begin(), edges.end()));
  Graph g;
  g.degree_.assign(n, 0);
  for (const auto& e : edges) {
    assert(e.u < e.v && e.v < n);
    ++g.degree_[e.u];
    ++g.degree_[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + g.degree_[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted (u, v) with u < v: for fixed target, sources arrive ascending, so
  // filling lower neighbours first then upper neighbours keeps lists sorted.
  for (const auto& e : edges) g.adjacency_[cursor[e.v]++] = e.u;
  for (const auto& e : edges) g.adjacency_[cursor[e.u]++] = e.v;
  for (std::size_t i = 0; i < n; ++i) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
    assert(std::is_sorted(first, last));
    (void)first;
    (void)last;
  }
  g.edge_count_ = edges.size();
  return g;
}

Graph build_graph(std::span<const Edge> edges, std::optional<std::size_t> n_hint) {
  if (edges.empty() && !n_hint) throw Error("empty graph");

  std::size_t n = n_hint.value_or(0);
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    const std::size_t hi = std::max(e.u, e.v);
    if (n_hint && hi >= *n_hint) {
      throw Error("id out of range: node " + std::to_string(hi) + " >= n " +
                  std::to_string(*n_hint));
    }
    if (!n_hint) n = std::max(n, hi + 1);
    if (e.u == e.v) continue;
    canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return build_graph_from_canonical(n, std::move(canon));
}

void nds_into(const Graph& g, NodeId i, std::span<Degree> out) {
  const auto nb = g.neighbors(i);
  assert(out.size() == nb.size());
  std::transform(nb.begin(), nb.end(), out.begin(), [&](NodeId v) { return g.degree(v); });
  std::sort(out.begin(), out.end());
}

std::vector<Degree> nds(const Graph& g, NodeId i) {
  if (i >= g.node_count()) {
    throw Error("node id " + std::to_string(i) + " out of range");
  }
  std::vector<Degree> out(g.degree(i));
  nds_into(g, i, out);
  return out;
}

NdsMatrix nds_matrix(const Graph& g, Degree k) {
  if (k == 0) throw Error("nds_matrix requires degree k >= 1");
  NdsMatrix s;
  s.degree = k;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (g.degree(i) != k) continue;
    s.values.resize(s.values.size() + k);
    nds_into(g, i, std::span<Degree>(s.values).last(k));
    ++s.rows;
  }
  return s;
}

std::vector<std::vector<NodeId>> nodes_by_degree(const Graph& g) {
  const auto degs = g.degrees();
  const Degree max_k = degs.empty() ? 0 : *std::max_element(degs.begin(), degs.end());
  std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(max_k) + 1);
  for (NodeId i = 0; i < g.node_count(); ++i) out[degs[i]].push_back(i);
  return out;
}

std::vector<Degree> degree_support_d2(const Graph& g) {
  const auto degs = g.degrees();
  const Degree max_k = degs.empty() ? 0 : *std::max_element(degs.begin(), degs.end());
  std::vector<std::size_t> count(static_cast<std::size_t>(max_k) + 1, 0);
  for (const Degree k : degs) ++count[k];
  std::vector<Degree> out;
  for (Degree k = 1; k <= max_k; ++k) {
    if (count[k] >= 2) out.push_back(k);
  }
  return out;
}

}  // namespace nhc
