#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nhc {

using NodeId = std::uint32_t;
using Degree = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Immutable simple undirected graph in CSR form.
///
/// Neighbour lists are sorted ascending and symmetric; there are no
/// self-loops and no parallel edges. A built Graph is safe to share between
/// threads for reading.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return degree_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// 2m / (n(n-1)); zero when n < 2.
  double density() const;

  Degree degree(NodeId v) const { return degree_[v]; }
  std::span<const Degree> degrees() const { return degree_; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  bool has_edge(NodeId u, NodeId v) const;

  /// Canonical edge list: u < v, lexicographically sorted.
  std::vector<Edge> edges() const;

  std::size_t component_count() const;

  bool operator==(const Graph&) const = default;

 private:
  friend Graph build_graph(std::span<const Edge>, std::optional<std::size_t>);
  friend Graph build_graph_from_canonical(std::size_t, std::vector<Edge>);

  std::size_t edge_count_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<Degree> degree_;
};

/// Builds a simple graph from an arbitrary edge list. Self-loops, duplicate
/// edges and reversed orientations collapse. With `n_hint` the graph has
/// exactly that many nodes (isolated ones included); otherwise
/// n = 1 + largest id seen.
Graph build_graph(std::span<const Edge> edges, std::optional<std::size_t> n_hint = std::nullopt);

/// Fast path for generators: `edges` must already be canonical (u < v,
/// sorted, unique). Not validated beyond debug assertions.
Graph build_graph_from_canonical(std::size_t n, std::vector<Edge> edges);

/// The k x ell matrix of stacked neighbourhood degree sequences for all
/// nodes of one degree, row-major, rows in ascending node id.
struct NdsMatrix {
  Degree degree = 0;
  std::size_t rows = 0;
  std::vector<Degree> values;

  std::span<const Degree> row(std::size_t r) const {
    return {values.data() + r * degree, degree};
  }
  Degree at(std::size_t r, std::size_t col) const { return values[r * degree + col]; }
};

/// Neighbourhood degree sequence of node `i`: neighbour degrees, ascending.
std::vector<Degree> nds(const Graph& g, NodeId i);

/// Writes the NDS of `i` into `out` (size must equal degree(i)).
void nds_into(const Graph& g, NodeId i, std::span<Degree> out);

NdsMatrix nds_matrix(const Graph& g, Degree k);

/// Degrees k >= 1 held by at least two nodes, ascending.
std::vector<Degree> degree_support_d2(const Graph& g);

/// Node ids grouped by degree: result[k] lists the nodes of degree k in
/// ascending order. Size is max degree + 1.
std::vector<std::vector<NodeId>> nodes_by_degree(const Graph& g);

}  // namespace nhc
