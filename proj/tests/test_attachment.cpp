#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "helpers.hpp"
#include "nhc/attachment.hpp"
#include "nhc/complexity.hpp"
#include "nhc/error.hpp"
#include "nhc/generators.hpp"
#include "nhc/log.hpp"

using namespace nhc;
using testutil::make;

namespace {

// Weights straight from neighbour sets, over every non-edge.
std::map<std::pair<int, int>, double> brute_weights(const Graph& g, Mechanism mech) {
  std::map<std::pair<int, int>, double> out;
  const int n = int(g.node_count());
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.has_edge(NodeId(u), NodeId(v))) continue;
      std::set<int> a, b;
      for (auto x : g.neighbors(NodeId(u))) a.insert(int(x));
      for (auto x : g.neighbors(NodeId(v))) b.insert(int(x));
      std::set<int> both, either = a;
      for (int x : b) {
        if (a.count(x)) both.insert(x);
        either.insert(x);
      }
      double w = 0;
      switch (mech) {
        case Mechanism::random: w = 1; break;
        case Mechanism::hierarchical: w = double(a.size() + b.size()); break;
        case Mechanism::similarity: w = either.empty() ? 0 : double(both.size()) / double(either.size()); break;
        case Mechanism::combined: w = double(both.size()); break;
      }
      out[{u, v}] = w;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("mechanism names") {
  CHECK(parse_mechanism("combined") == Mechanism::combined);
  CHECK(to_string(Mechanism::similarity) == "similarity");
  CHECK_THROWS_AS(parse_mechanism("preferential"), Error);
}

TEST_CASE("hand-computed weights") {
  const auto p3 = testutil::path(3);
  const auto h = edge_weights(p3, Mechanism::hierarchical);
  REQUIRE(h.pairs.size() == 1);
  CHECK(h.pairs[0].weight == 2.0);
  CHECK(h.probability(0) == 1.0);
  CHECK(edge_weights(p3, Mechanism::similarity).pairs[0].weight == 1.0);

  const auto c4 = edge_weights(testutil::cycle(4), Mechanism::combined);
  REQUIRE(c4.pairs.size() == 2);
  CHECK(c4.pairs[0].weight == 2.0);
  CHECK(c4.probability(0) == 0.5);
  CHECK(c4.probability(1) == 0.5);

  CHECK_THROWS_AS(edge_weights(testutil::complete(4), Mechanism::random), Error);
}

TEST_CASE("weights match brute force on every graph with at most 6 nodes") {
  std::size_t checked = 0;
  auto prev = set_warning_sink([](std::string_view) {});
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask + 1 < (1u << pairs.size()); ++mask) {
      std::vector<std::pair<int, int>> es;
      for (std::size_t b = 0; b < pairs.size(); ++b)
        if (mask >> b & 1) es.push_back(pairs[b]);
      const auto g = make(std::size_t(n), es);
      for (auto mech : kAllMechanisms) {
        const auto want = brute_weights(g, mech);
        double total = 0;
        for (auto& [_, w] : want) total += w;
        const auto got = edge_weights(g, mech);
        if (total == 0) {
          CHECK(got.uniform_fallback);
          CHECK(got.pairs.size() == want.size());
          continue;
        }
        std::map<std::pair<int, int>, double> listed;
        long double prob = 0;
        for (std::size_t i = 0; i < got.pairs.size(); ++i) {
          listed[{int(got.pairs[i].pair.u), int(got.pairs[i].pair.v)}] = got.pairs[i].weight;
          prob += got.probability(i);
        }
        CHECK(std::abs(double(prob) - 1.0) < 1e-9);
        for (auto& [pr, w] : want) {
          const auto it = listed.find(pr);
          const double g_w = it == listed.end() ? 0.0 : it->second;
          if (std::abs(g_w - w) > 1e-12) FAIL("weight mismatch");
        }
        ++checked;
      }
    }
  }
  set_warning_sink(prev);
  CHECK(checked > 100000);
}

TEST_CASE("similarity and hierarchical disagree on a constructed graph") {
  // Pair (0,1) shares both neighbours but has low degree; pair (2,5) has a
  // large degree sum and no overlap.
  const auto g = make(10, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 6}, {2, 7}, {5, 8}, {5, 9}, {5, 4}, {4, 3}});
  auto weight = [&](Mechanism m, NodeId u, NodeId v) {
    for (auto& pw : edge_weights(g, m).pairs)
      if (pw.pair.u == u && pw.pair.v == v) return pw.weight;
    return 0.0;
  };
  CHECK(weight(Mechanism::similarity, 0, 1) > weight(Mechanism::similarity, 2, 5));
  CHECK(weight(Mechanism::hierarchical, 0, 1) < weight(Mechanism::hierarchical, 2, 5));
}

TEST_CASE("add_edges") {
  const auto c6 = testutil::cycle(6);
  for (auto mech : kAllMechanisms) {
    auto prev = set_warning_sink([](std::string_view) {});
    CHECK(add_edges(c6, mech, 9, 1) == testutil::complete(6));
    set_warning_sink(prev);
  }
  CHECK_THROWS_AS(add_edges(c6, Mechanism::random, 10, 1), Error);

  // Growth only adds: every base edge survives and no degree drops.
  const auto base = gen_er(80, 0.05, 2);
  for (auto mech : kAllMechanisms) {
    const auto g = add_edges(base, mech, 40, 9);
    CHECK(g.edge_count() == base.edge_count() + 40);
    for (auto e : base.edges()) CHECK(g.has_edge(e.u, e.v));
  }
  CHECK(add_edges(c6, Mechanism::random, 0, 1) == c6);

  // Star: every non-edge is leaf-leaf with weight 2, so each is equally likely.
  const auto s = testutil::star(5);
  std::map<std::pair<int, int>, int> hits;
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const auto g = add_edges(s, Mechanism::hierarchical, 1, seed);
    for (auto e : g.edges())
      if (e.u != 0) ++hits[{int(e.u), int(e.v)}];
  }
  CHECK(hits.size() == 10);
  for (auto& [_, c] : hits) CHECK(std::abs(c - 400) < 80);

  // Too few positive weights: the rest comes uniformly, with a warning.
  std::vector<std::string> warnings;
  auto prev = set_warning_sink([&](std::string_view w) { warnings.emplace_back(w); });
  const auto grown = add_edges(make(6, {{0, 1}, {1, 2}, {3, 4}}), Mechanism::combined, 5, 3);
  set_warning_sink(prev);
  CHECK(grown.edge_count() == 8);
  CHECK_FALSE(warnings.empty());
}

TEST_CASE("random attachment on ER matches the denser ER") {
  const std::size_t n = 400;
  double grown_mean = 0, direct_mean = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto base = gen_er(n, 0.02, s);
    const std::size_t extra = target_edge_count(n, 0.04) - base.edge_count();
    grown_mean += 2.0 * add_edges(base, Mechanism::random, extra, 100 + s).edge_count() / n;
    direct_mean += 2.0 * gen_er(n, 0.04, 200 + s).edge_count() / n;
  }
  grown_mean /= 20;
  direct_mean /= 20;
  CHECK(std::abs(grown_mean - direct_mean) < 0.5);
}

TEST_CASE("density sweep") {
  const auto base = gen_rhgg(300, 0.03, 3, 0.0, 0.2, 5);
  CHECK(default_fractions().size() == 21);
  CHECK(default_fractions().back() == doctest::Approx(0.02));

  const std::vector<double> zero{0.0};
  const auto t0 = density_sweep(base, Mechanism::combined, zero, 1);
  REQUIRE(t0.steps.size() == 1);
  CHECK(t0.steps[0].r_hat == nhc_global(base));
  CHECK(density_sweep(testutil::cycle(30), Mechanism::random, zero, 1).steps[0].r_hat == 0.0);

  const std::vector<double> fr{0.0, 0.05, 0.1, 0.2};
  for (auto mech : kAllMechanisms) {
    const auto t = density_sweep(base, mech, fr, 7, GrowthMode::relative, "b");
    CHECK(t.base_id == "b");
    CHECK(t.mechanism == mech);
    for (std::size_t i = 0; i < fr.size(); ++i) {
      CHECK(t.steps[i].edges == std::size_t(std::llround(base.edge_count() * (1 + fr[i]))));
    }
  }
  const auto abs = density_sweep(base, Mechanism::random, fr, 7, GrowthMode::absolute);
  CHECK(abs.steps[1].edges == base.edge_count() + std::size_t(std::llround(0.05 * 300 * 299 / 2)));
  const auto again = density_sweep(base, Mechanism::similarity, fr, 7);
  const auto twice = density_sweep(base, Mechanism::similarity, fr, 7);
  for (std::size_t i = 0; i < fr.size(); ++i) CHECK(again.steps[i].r_hat == twice.steps[i].r_hat);

  const std::vector<double> bad{0.01, 0.02};
  CHECK_THROWS_AS(density_sweep(base, Mechanism::random, bad, 1), Error);
  const std::vector<double> unsorted{0.0, 0.02, 0.01};
  CHECK_THROWS_AS(density_sweep(base, Mechanism::random, unsorted, 1), Error);
}

TEST_CASE("large sparse graphs use rejection sampling") {
  // 6000 nodes leave more than 2^24 non-edges.
  const auto base = gen_er(6000, 0.0005, 4);
  for (auto mech : {Mechanism::random, Mechanism::hierarchical}) {
    const auto g = add_edges(base, mech, 500, 2);
    CHECK(g.edge_count() == base.edge_count() + 500);
    for (auto e : base.edges()) CHECK(g.has_edge(e.u, e.v));
  }
  // Hierarchical picks favour high-degree endpoints.
  double added_deg = 0, mean_deg = 2.0 * base.edge_count() / 6000;
  const auto g = add_edges(base, Mechanism::hierarchical, 2000, 3);
  for (auto e : g.edges())
    if (!base.has_edge(e.u, e.v)) added_deg += base.degree(e.u) + base.degree(e.v);
  CHECK(added_deg / 2000 > 2 * mean_deg);
}
