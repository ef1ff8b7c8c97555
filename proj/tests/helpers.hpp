#pragma once

#include <utility>
#include <vector>

#include "nhc/graph.hpp"

namespace testutil {

inline nhc::Graph make(std::size_t n, const std::vector<std::pair<int, int>>& es) {
  std::vector<nhc::Edge> edges;
  for (auto [u, v] : es) edges.push_back({nhc::NodeId(u), nhc::NodeId(v)});
  // n == 0: size from the largest id
  return n ? nhc::build_graph(edges, n) : nhc::build_graph(edges);
}

inline std::vector<std::pair<int, int>> pairs_of(const nhc::Graph& g) {
  std::vector<std::pair<int, int>> out;
  for (auto e : g.edges()) out.emplace_back(int(e.u), int(e.v));
  return out;
}

inline nhc::Graph sixnode() { return make(6, {{0, 1}, {1, 2}, {2, 3}, {1, 3}, {3, 4}, {4, 5}}); }
inline nhc::Graph path(std::size_t n) {
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i + 1 < n; ++i) es.emplace_back(int(i), int(i + 1));
  return make(n, es);
}
inline nhc::Graph cycle(std::size_t n) {
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i < n; ++i) es.emplace_back(int(i), int((i + 1) % n));
  return make(n, es);
}
inline nhc::Graph complete(std::size_t n) {
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) es.emplace_back(int(i), int(j));
  return make(n, es);
}
inline nhc::Graph star(std::size_t leaves) {
  std::vector<std::pair<int, int>> es;
  for (std::size_t i = 1; i <= leaves; ++i) es.emplace_back(0, int(i));
  return make(leaves + 1, es);
}

}  // namespace testutil
