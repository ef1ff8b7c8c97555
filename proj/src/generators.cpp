#include "nhc/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "nhc/error.hpp"
#include "nhc/rng.hpp"

namespace nhc {
namespace {

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Histogram key: the top 20 bits of a positive double (exponent plus eight
// mantissa bits) are monotone in its value.
constexpr int kBucketShift = 44;
constexpr std::size_t kBucketCount = std::size_t{1} << (64 - kBucketShift);

std::size_t bucket_of(double w) { return std::bit_cast<std::uint64_t>(w) >> kBucketShift; }

struct Candidate {
  double weight;
  NodeId u;
  NodeId v;
};

/// Exact top-m selection over all n(n-1)/2 pairs by weight descending, ties
/// broken by (u, v) ascending. Weights are recomputed in two streaming
/// passes: a histogram pass to locate the bucket holding the m-th largest
/// weight, then a collection pass. Memory is O(m + boundary bucket).
template <class WeightFn>
std::vector<Edge> select_top_pairs(std::size_t n, std::size_t m, WeightFn&& weight) {
  std::vector<Edge> edges;
  if (m == 0) return edges;
  edges.reserve(m);
  if (m >= pair_count(n)) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
    return edges;
  }

  std::vector<std::uint32_t> hist(kBucketCount, 0);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) ++hist[bucket_of(weight(u, v))];

  std::size_t above = 0;
  std::size_t boundary = kBucketCount;
  while (boundary-- > 0) {
    if (above + hist[boundary] >= m) break;
    above += hist[boundary];
  }
  const std::size_t need = m - above;
  hist = {};

  std::vector<Candidate> ties;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double w = weight(u, v);
      const std::size_t b = bucket_of(w);
      if (b > boundary) {
        edges.push_back({u, v});
      } else if (b == boundary) {
        ties.push_back({w, u, v});
      }
    }
  }
  auto better = [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  };
  std::nth_element(ties.begin(), ties.begin() + static_cast<std::ptrdiff_t>(need - 1), ties.end(),
                   better);
  for (std::size_t i = 0; i < need; ++i) edges.push_back({ties[i].u, ties[i].v});
  std::sort(edges.begin(), edges.end());
  return edges;
}

/// n points in [0,1]^q, row-major. A point identical to an earlier one is
/// redrawn so that all pairwise distances are positive.
std::vector<double> sample_points(std::size_t n, unsigned q, std::mt19937_64& rng) {
  std::vector<double> pts(n * q);
  auto point_less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(pts.begin() + a * q, pts.begin() + (a + 1) * q,
                                        pts.begin() + b * q, pts.begin() + (b + 1) * q);
  };
  auto point_eq = [&](std::size_t a, std::size_t b) {
    return std::equal(pts.begin() + a * q, pts.begin() + (a + 1) * q, pts.begin() + b * q);
  };
  for (auto& x : pts) x = uniform01(rng);
  for (;;) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return point_less(a, b) || (!point_less(b, a) && a < b);
    });
    bool redrawn = false;
    for (std::size_t i = 1; i < n; ++i) {
      if (point_eq(order[i - 1], order[i])) {
        const std::size_t later = std::max(order[i - 1], order[i]);
        for (unsigned c = 0; c < q; ++c) pts[later * q + c] = uniform01(rng);
        redrawn = true;
      }
    }
    if (!redrawn) return pts;
  }
}

double inverse_distance(const std::vector<double>& pts, unsigned q, NodeId u, NodeId v) {
  double sq = 0.0;
  const double* a = pts.data() + static_cast<std::size_t>(u) * q;
  const double* b = pts.data() + static_cast<std::size_t>(v) * q;
  for (unsigned c = 0; c < q; ++c) {
    const double diff = a[c] - b[c];
    sq += diff * diff;
  }
  return 1.0 / std::sqrt(sq);
}

void check_geometric(std::size_t n, double density, unsigned q) {
  if (n < 2) throw Error("geometric graphs need n >= 2");
  if (!(density > 0.0 && density <= 1.0)) throw Error("target density must lie in (0, 1]");
  if (q < 1) throw Error("dimension q must be >= 1");
}

std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  const std::size_t n = g.node_count();
  edges.reserve(pair_count(n) - g.edge_count());
  for (NodeId u = 0; u < n; ++u) {
    const auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (NodeId v = u + 1; v < n; ++v) {
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      edges.push_back({u, v});
    }
  }
  return build_graph_from_canonical(n, std::move(edges));
}

Graph pair_and_repair(std::span<const Degree> seq, std::mt19937_64& rng) {
  const std::size_t n = seq.size();
  std::vector<NodeId> stubs;
  for (NodeId i = 0; i < n; ++i) stubs.insert(stubs.end(), seq[i], i);
  const std::size_t m = stubs.size() / 2;
  if (m == 0) return build_graph_from_canonical(n, {});

  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Edge> edges(m);
  std::unordered_map<std::uint64_t, std::uint32_t> count;
  count.reserve(m * 2);
  for (std::size_t e = 0; e < m; ++e) {
    edges[e] = {std::min(stubs[2 * e], stubs[2 * e + 1]), std::max(stubs[2 * e], stubs[2 * e + 1])};
    ++count[edge_key(edges[e].u, edges[e].v)];
  }
  auto is_bad = [&](const Edge& e) { return e.u == e.v || count[edge_key(e.u, e.v)] > 1; };

  std::vector<std::size_t> bad;
  for (std::size_t e = 0; e < m; ++e)
    if (is_bad(edges[e])) bad.push_back(e);

  const std::size_t budget = std::max<std::size_t>(100 * m, 1000);
  std::size_t attempts = 0;
  while (!bad.empty()) {
    const std::size_t slot = uniform_below(rng, bad.size());
    const std::size_t e = bad[slot];
    if (!is_bad(edges[e])) {
      bad[slot] = bad.back();
      bad.pop_back();
      continue;
    }
    if (attempts++ >= budget) throw Error("non-graphical or repair exhausted");
    const std::size_t f = uniform_below(rng, m);
    if (f == e) continue;
    const NodeId a = edges[e].u;
    const NodeId b = edges[e].v;
    NodeId c = edges[f].u;
    NodeId d = edges[f].v;
    if (rng() & 1U) std::swap(c, d);
    // (a,b),(c,d) -> (a,d),(c,b)
    if (a == d || c == b) continue;
    const auto k1 = edge_key(a, d);
    const auto k2 = edge_key(c, b);
    if (k1 == k2) continue;
    const auto it1 = count.find(k1);
    const auto it2 = count.find(k2);
    if ((it1 != count.end() && it1->second > 0) || (it2 != count.end() && it2->second > 0)) continue;

    --count[edge_key(a, b)];
    --count[edge_key(edges[f].u, edges[f].v)];
    ++count[k1];
    ++count[k2];
    edges[e] = {std::min(a, d), std::max(a, d)};
    edges[f] = {std::min(c, b), std::max(c, b)};
  }
  std::sort(edges.begin(), edges.end());
  return build_graph_from_canonical(n, std::move(edges));
}

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::er: return "ER";
    case Family::rgg: return "RGG";
    case Family::rhgg: return "RHGG";
    case Family::rhg: return "RHG";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "er") return Family::er;
  if (s == "rgg") return Family::rgg;
  if (s == "rhgg") return Family::rhgg;
  if (s == "rhg") return Family::rhg;
  throw Error("unknown model family '" + std::string(name) + "' (expected er, rgg, rhgg or rhg)");
}

std::size_t target_edge_count(std::size_t n, double density) {
  const double pairs = static_cast<double>(pair_count(n));
  const double m = std::round(std::clamp(density, 0.0, 1.0) * pairs);
  return std::min(static_cast<std::size_t>(m), pair_count(n));
}

Graph gen_er(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw Error("ER graphs need n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("edge probability must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p == 0.0) return build_graph_from_canonical(n, {});
  if (p == 1.0) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
    return build_graph_from_canonical(n, std::move(edges));
  }

  // Geometric skipping over pairs (w, v), w < v, in column order.
  auto rng = make_stream(seed);
  const double log_q = std::log1p(-p);
  edges.reserve(static_cast<std::size_t>(p * static_cast<double>(pair_count(n)) * 1.1) + 16);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = uniform01(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
  }
  std::sort(edges.begin(), edges.end());
  return build_graph_from_canonical(n, std::move(edges));
}

Graph gen_rgg(std::size_t n, double density, unsigned q, std::uint64_t seed) {
  check_geometric(n, density, q);
  auto rng = make_stream(seed);
  const auto pts = sample_points(n, q, rng);
  auto edges = select_top_pairs(n, target_edge_count(n, density),
                                [&](NodeId u, NodeId v) { return inverse_distance(pts, q, u, v); });
  return build_graph_from_canonical(n, std::move(edges));
}

Graph gen_rhgg(std::size_t n, double density, unsigned q, double mu, double sigma_h,
               std::uint64_t seed) {
  check_geometric(n, density, q);
  if (!(sigma_h >= 0.0)) throw Error("sigma_h must be >= 0");
  auto rng = make_stream(seed);
  const auto pts = sample_points(n, q, rng);
  std::vector<double> fitness(n);
  if (sigma_h == 0.0) {
    std::fill(fitness.begin(), fitness.end(), std::exp(mu));
  } else {
    std::lognormal_distribution<double> lognormal(mu, sigma_h);
    for (auto& s : fitness) s = lognormal(rng);
  }
  auto edges = select_top_pairs(n, target_edge_count(n, density), [&](NodeId u, NodeId v) {
    return inverse_distance(pts, q, u, v) * (fitness[u] + fitness[v]);
  });
  return build_graph_from_canonical(n, std::move(edges));
}

bool is_graphical(std::span<const Degree> degree_sequence) {
  std::vector<std::uint64_t> d(degree_sequence.begin(), degree_sequence.end());
  const std::size_t n = d.size();
  const std::uint64_t total = std::accumulate(d.begin(), d.end(), std::uint64_t{0});
  if (total % 2 != 0) return false;
  std::sort(d.begin(), d.end(), std::greater<>());
  if (n > 0 && d.front() >= n) return false;
  // suffix[i] = sum of d[i..n)
  std::vector<std::uint64_t> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];
  std::uint64_t lhs = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    lhs += d[k - 1];
    // Among d[k..n), entries >= k contribute k, the rest contribute themselves.
    const auto first_small =
        std::partition_point(d.begin() + static_cast<std::ptrdiff_t>(k), d.end(),
                             [&](std::uint64_t x) { return x >= k; });
    const auto big = static_cast<std::uint64_t>(first_small - (d.begin() + static_cast<std::ptrdiff_t>(k)));
    const std::uint64_t rhs = k * (k - 1) + big * k + suffix[static_cast<std::size_t>(first_small - d.begin())];
    if (lhs > rhs) return false;
  }
  return true;
}

Graph gen_config(std::span<const Degree> degree_sequence, std::uint64_t seed) {
  const std::size_t n = degree_sequence.size();
  if (n == 0) throw Error("empty degree sequence");
  if (!is_graphical(degree_sequence)) throw Error("non-graphical or repair exhausted");
  const std::uint64_t total =
      std::accumulate(degree_sequence.begin(), degree_sequence.end(), std::uint64_t{0});
  auto rng = make_stream(seed);
  // Dense sequences are realised through their complement, whose stub
  // pairing collides far less often.
  if (total / 2 > pair_count(n) / 2) {
    std::vector<Degree> comp(n);
    for (std::size_t i = 0; i < n; ++i) comp[i] = static_cast<Degree>(n - 1 - degree_sequence[i]);
    return complement(pair_and_repair(comp, rng));
  }
  return pair_and_repair(degree_sequence, rng);
}

std::vector<Degree> degree_sequence(const Graph& g) {
  return {g.degrees().begin(), g.degrees().end()};
}

void validate(const ModelSpec& spec) {
  if (spec.n < 2) throw Error("model spec: n must be >= 2");
  if (spec.family == Family::er) {
    if (!(spec.target >= 0.0 && spec.target <= 1.0)) throw Error("model spec: p must lie in [0, 1]");
    return;
  }
  if (!(spec.target > 0.0 && spec.target <= 1.0)) {
    throw Error("model spec: target density must lie in (0, 1]");
  }
  if (spec.dims < 1) throw Error("model spec: dims must be >= 1");
  if (!(spec.sigma_h >= 0.0)) throw Error("model spec: sigma_h must be >= 0");
  if (spec.family == Family::rhg && !spec.degree_sequence.empty()) {
    if (spec.degree_sequence.size() != spec.n) {
      throw Error("model spec: degree sequence length differs from n");
    }
    if (!is_graphical(spec.degree_sequence)) throw Error("model spec: degree sequence is not graphical");
  }
}

Graph generate(const ModelSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::er: return gen_er(spec.n, spec.target, spec.seed);
    case Family::rgg: return gen_rgg(spec.n, spec.target, spec.dims, spec.seed);
    case Family::rhgg:
      return gen_rhgg(spec.n, spec.target, spec.dims, spec.mu, spec.sigma_h, spec.seed);
    case Family::rhg: {
      std::vector<Degree> seq = spec.degree_sequence;
      if (seq.empty()) {
        seq = degree_sequence(
            gen_rhgg(spec.n, spec.target, spec.dims, spec.mu, spec.sigma_h, spec.seed));
      }
      return gen_config(seq, splitmix64(spec.seed ^ 0x5248475f636f6e66ULL));
    }
  }
  throw Error("unreachable model family");
}

}  // namespace nhc
