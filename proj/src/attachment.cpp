#include "nhc/attachment.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "nhc/complexity.hpp"
#include "nhc/error.hpp"
#include "nhc/log.hpp"
#include "nhc/rng.hpp"

namespace nhc {
namespace {

// Above this many non-edges, random and hierarchical draws switch from
// enumeration to rejection sampling.
constexpr std::size_t kEnumerationLimit = std::size_t{1} << 24;

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

template <class Fn>
void for_each_non_edge(const Graph& g, Fn&& fn) {
  const std::size_t n = g.node_count();
  for (NodeId u = 0; u < n; ++u) {
    const auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (NodeId v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      fn(u, v);
    }
  }
}

// Non-edges sharing at least one neighbour, with the size of the overlap.
template <class Fn>
void for_each_two_hop_pair(const Graph& g, Fn&& fn) {
  const std::size_t n = g.node_count();
  std::vector<std::uint32_t> common(n, 0);
  std::vector<char> adjacent(n, 0);
  std::vector<NodeId> touched;
  for (NodeId u = 0; u < n; ++u) {
    for (const NodeId x : g.neighbors(u)) adjacent[x] = 1;
    for (const NodeId x : g.neighbors(u)) {
      for (const NodeId v : g.neighbors(x)) {
        if (v <= u || adjacent[v]) continue;
        if (common[v]++ == 0) touched.push_back(v);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (const NodeId v : touched) {
      fn(u, v, common[v]);
      common[v] = 0;
    }
    touched.clear();
    for (const NodeId x : g.neighbors(u)) adjacent[x] = 0;
  }
}

std::vector<Edge> draw_by_rejection(const Graph& g, Mechanism mechanism, std::size_t count,
                                    std::mt19937_64& rng) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> stubs;
  if (mechanism == Mechanism::hierarchical && g.edge_count() > 0) {
    stubs.reserve(2 * g.edge_count());
    for (NodeId u = 0; u < n; ++u) stubs.insert(stubs.end(), g.degree(u), u);
  }
  std::unordered_set<std::uint64_t> chosen;
  std::vector<Edge> out;
  out.reserve(count);
  while (out.size() < count) {
    NodeId u = 0;
    NodeId v = 0;
    if (stubs.empty()) {
      u = static_cast<NodeId>(uniform_below(rng, n));
      v = static_cast<NodeId>(uniform_below(rng, n));
    } else {
      // One endpoint by degree, the other uniform: the unordered pair {i, j}
      // is proposed with probability proportional to k_i + k_j.
      u = stubs[uniform_below(rng, stubs.size())];
      v = static_cast<NodeId>(uniform_below(rng, n - 1));
      if (v >= u) ++v;
    }
    if (u == v || g.has_edge(u, v)) continue;
    if (!chosen.insert(edge_key(u, v)).second) continue;
    out.push_back({std::min(u, v), std::max(u, v)});
  }
  return out;
}

std::vector<Edge> draw_non_edges(const Graph& g, Mechanism mechanism, std::size_t count,
                                 std::mt19937_64& rng) {
  const std::size_t available = pair_count(g.node_count()) - g.edge_count();
  if (count > available) {
    throw Error("cannot add " + std::to_string(count) + " edges: only " +
                std::to_string(available) + " non-edges remain");
  }
  if (count == 0) return {};
  if ((mechanism == Mechanism::random || mechanism == Mechanism::hierarchical) &&
      available > kEnumerationLimit) {
    return draw_by_rejection(g, mechanism, count, rng);
  }

  const auto weights = edge_weights(g, mechanism);
  // Weighted sampling without replacement: keep the `count` largest keys
  // log(U) / w (Efraimidis-Spirakis).
  struct Keyed {
    double key;
    std::size_t idx;
  };
  std::vector<Keyed> keyed(weights.pairs.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    const double u = 1.0 - uniform01(rng);
    keyed[i] = {std::log(u) / weights.pairs[i].weight, i};
  }
  const std::size_t take = std::min(count, keyed.size());
  auto by_key = [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key > b.key : a.idx < b.idx;
  };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end(),
                    by_key);
  std::vector<Edge> out;
  out.reserve(count);
  for (std::size_t i = 0; i < take; ++i) out.push_back(weights.pairs[keyed[i].idx].pair);

  if (take < count) {
    warn("only " + std::to_string(take) + " non-edges carry positive " +
         std::string(to_string(mechanism)) + " weight; drawing the rest uniformly");
    std::unordered_set<std::uint64_t> positive;
    for (const auto& pw : weights.pairs) positive.insert(edge_key(pw.pair.u, pw.pair.v));
    std::vector<Edge> rest;
    for_each_non_edge(g, [&](NodeId u, NodeId v) {
      if (!positive.count(edge_key(u, v))) rest.push_back({u, v});
    });
    for (std::size_t i = 0; i < count - take; ++i) {
      const std::size_t j = i + uniform_below(rng, rest.size() - i);
      std::swap(rest[i], rest[j]);
      out.push_back(rest[i]);
    }
  }
  return out;
}

Graph with_edges(const Graph& g, std::vector<Edge> added) {
  auto edges = g.edges();
  std::sort(added.begin(), added.end());
  std::vector<Edge> merged;
  merged.reserve(edges.size() + added.size());
  std::merge(edges.begin(), edges.end(), added.begin(), added.end(), std::back_inserter(merged));
  return build_graph_from_canonical(g.node_count(), std::move(merged));
}

}  // namespace

std::string_view to_string(Mechanism m) {
  switch (m) {
    case Mechanism::random: return "random";
    case Mechanism::hierarchical: return "hierarchical";
    case Mechanism::similarity: return "similarity";
    case Mechanism::combined: return "combined";
  }
  return "?";
}

Mechanism parse_mechanism(std::string_view name) {
  for (const auto m : kAllMechanisms) {
    if (to_string(m) == name) return m;
  }
  throw Error("unknown attachment mechanism '" + std::string(name) +
              "' (expected random, hierarchical, similarity or combined)");
}

EdgeWeights edge_weights(const Graph& g, Mechanism mechanism) {
  const std::size_t n = g.node_count();
  if (n < 2 || g.edge_count() == pair_count(n)) throw Error("graph has no non-edges");
  EdgeWeights out;
  auto push = [&](NodeId u, NodeId v, double w) {
    out.pairs.push_back({{u, v}, w});
    out.total += w;
  };
  switch (mechanism) {
    case Mechanism::random:
      for_each_non_edge(g, [&](NodeId u, NodeId v) { push(u, v, 1.0); });
      break;
    case Mechanism::hierarchical:
      for_each_non_edge(g, [&](NodeId u, NodeId v) {
        const double w = static_cast<double>(g.degree(u)) + g.degree(v);
        if (w > 0.0) push(u, v, w);
      });
      break;
    case Mechanism::similarity:
      for_each_two_hop_pair(g, [&](NodeId u, NodeId v, std::uint32_t common) {
        const double uni = static_cast<double>(g.degree(u)) + g.degree(v) - common;
        push(u, v, common / uni);
      });
      break;
    case Mechanism::combined:
      for_each_two_hop_pair(
          g, [&](NodeId u, NodeId v, std::uint32_t common) { push(u, v, common); });
      break;
  }
  if (out.pairs.empty()) {
    warn("all " + std::string(to_string(mechanism)) +
         " weights are zero; falling back to uniform attachment");
    out.uniform_fallback = true;
    for_each_non_edge(g, [&](NodeId u, NodeId v) { push(u, v, 1.0); });
  }
  return out;
}

Graph add_edges(const Graph& g, Mechanism mechanism, std::size_t count, std::uint64_t seed) {
  auto rng = make_stream(seed);
  return with_edges(g, draw_non_edges(g, mechanism, count, rng));
}

std::vector<double> default_fractions() {
  std::vector<double> out;
  for (int i = 0; i <= 20; ++i) out.push_back(i / 1000.0);
  return out;
}

SweepTrace density_sweep(const Graph& g, Mechanism mechanism, std::span<const double> fractions,
                         std::uint64_t seed, GrowthMode mode, std::string base_id) {
  if (fractions.empty() || fractions.front() != 0.0) {
    throw Error("sweep fractions must start at 0");
  }
  for (std::size_t i = 1; i < fractions.size(); ++i) {
    if (!(fractions[i] > fractions[i - 1])) throw Error("sweep fractions must be strictly increasing");
  }
  SweepTrace trace;
  trace.mechanism = mechanism;
  trace.base_id = std::move(base_id);
  const auto m0 = static_cast<double>(g.edge_count());
  const auto pairs = static_cast<double>(pair_count(g.node_count()));

  Graph current = g;
  for (std::size_t step = 0; step < fractions.size(); ++step) {
    const double f = fractions[step];
    const double target = mode == GrowthMode::relative ? std::round(m0 * (1.0 + f))
                                                       : m0 + std::round(f * pairs);
    const auto want = static_cast<std::size_t>(target);
    if (want > current.edge_count()) {
      auto rng = make_stream(seed, step);
      current = with_edges(current,
                           draw_non_edges(current, mechanism, want - current.edge_count(), rng));
    }
    trace.steps.push_back({f, current.edge_count(), nhc_global(current)});
  }
  return trace;
}

}  // namespace nhc
